use std::fmt::Debug;

use super::poly::ExactPoly;
use super::rational::Rational;

/// A commutative coefficient ring. Operations receive a context value
/// (the prime for `Fp`, unit for the characteristic-zero rings) so that
/// elements themselves stay small.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Ctx: Clone + PartialEq + Debug + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(ctx: &Self::Ctx, a: &Self, b: &Self) -> Self;
    fn sub(ctx: &Self::Ctx, a: &Self, b: &Self) -> Self;
    fn mul(ctx: &Self::Ctx, a: &Self, b: &Self) -> Self;
    fn neg(ctx: &Self::Ctx, a: &Self) -> Self;
    fn from_int(ctx: &Self::Ctx, n: i64) -> Self;
    /// Image of a rational number; `None` when its denominator is not a
    /// unit in the ring.
    fn from_rational(ctx: &Self::Ctx, q: &Rational) -> Option<Self>;

    fn pow(ctx: &Self::Ctx, a: &Self, mut e: u64) -> Self {
        let mut base = a.clone();
        let mut acc = Self::one(ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mul(ctx, &acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = Self::mul(ctx, &base, &base);
            }
        }
        acc
    }
}

/// Rings in which every nonzero element is invertible.
pub trait Field: Scalar {
    fn inv(ctx: &Self::Ctx, a: &Self) -> Option<Self>;
}

/// A residue modulo the prime carried in the context.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Fp(pub u32);

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return None;
    }
    // Fermat; p is prime.
    let mut base = a;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    Some(acc)
}

impl Fp {
    pub fn new(v: i64, p: u32) -> Fp {
        Fp(v.rem_euclid(p as i64) as u32)
    }
}

impl Scalar for Fp {
    type Ctx = u32;

    fn zero(_: &u32) -> Self {
        Fp(0)
    }
    fn one(p: &u32) -> Self {
        Fp(1 % p)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(p: &u32, a: &Self, b: &Self) -> Self {
        let s = a.0 as u64 + b.0 as u64;
        Fp((s % *p as u64) as u32)
    }
    fn sub(p: &u32, a: &Self, b: &Self) -> Self {
        let s = a.0 as u64 + *p as u64 - b.0 as u64;
        Fp((s % *p as u64) as u32)
    }
    fn mul(p: &u32, a: &Self, b: &Self) -> Self {
        Fp((a.0 as u64 * b.0 as u64 % *p as u64) as u32)
    }
    fn neg(p: &u32, a: &Self) -> Self {
        if a.0 == 0 {
            *a
        } else {
            Fp(p - a.0)
        }
    }
    fn from_int(p: &u32, n: i64) -> Self {
        Fp::new(n, *p)
    }
    fn from_rational(p: &u32, q: &Rational) -> Option<Self> {
        q.mod_p(*p as u64).map(Fp)
    }
}

impl Field for Fp {
    fn inv(p: &u32, a: &Self) -> Option<Self> {
        inv_mod(a.0 as u64, *p as u64).map(|v| Fp(v as u32))
    }
}

impl Scalar for Rational {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Rational::zero()
    }
    fn one(_: &()) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(_: &(), a: &Self, b: &Self) -> Self {
        a + b
    }
    fn sub(_: &(), a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(_: &(), a: &Self, b: &Self) -> Self {
        a * b
    }
    fn neg(_: &(), a: &Self) -> Self {
        -a
    }
    fn from_int(_: &(), n: i64) -> Self {
        Rational::from_int(n)
    }
    fn from_rational(_: &(), q: &Rational) -> Option<Self> {
        Some(q.clone())
    }
}

impl Field for Rational {
    fn inv(_: &(), a: &Self) -> Option<Self> {
        a.recip().ok()
    }
}

impl Scalar for ExactPoly {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        ExactPoly::zero()
    }
    fn one(_: &()) -> Self {
        ExactPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        ExactPoly::is_zero(self)
    }
    fn add(_: &(), a: &Self, b: &Self) -> Self {
        a + b
    }
    fn sub(_: &(), a: &Self, b: &Self) -> Self {
        a - b
    }
    fn mul(_: &(), a: &Self, b: &Self) -> Self {
        a * b
    }
    fn neg(_: &(), a: &Self) -> Self {
        -a
    }
    fn from_int(_: &(), n: i64) -> Self {
        ExactPoly::constant(Rational::from_int(n))
    }
    fn from_rational(_: &(), q: &Rational) -> Option<Self> {
        Some(ExactPoly::constant(q.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        let p = 7;
        assert_eq!(Fp::add(&p, &Fp(5), &Fp(4)), Fp(2));
        assert_eq!(Fp::sub(&p, &Fp(2), &Fp(5)), Fp(4));
        assert_eq!(Fp::mul(&p, &Fp(3), &Fp(5)), Fp(1));
        assert_eq!(Fp::inv(&p, &Fp(3)), Some(Fp(5)));
        assert_eq!(Fp::inv(&p, &Fp(0)), None);
        assert_eq!(Fp::pow(&p, &Fp(3), 6), Fp(1));
        assert_eq!(Fp::from_int(&p, -1), Fp(6));
    }

    #[test]
    fn rational_images_in_fp() {
        let p = 5;
        assert_eq!(Fp::from_rational(&p, &Rational::frac(1, 6)), Some(Fp(1)));
        assert_eq!(Fp::from_rational(&p, &Rational::frac(1, 10)), None);
    }
}
