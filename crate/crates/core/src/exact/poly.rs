use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rational::Rational;
use super::scalar::Scalar;

/// Exponent vector; index `i` is the exponent of variable `i`. Trailing
/// zeros are trimmed so each monomial has exactly one representation.
pub type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[u32], b: &[u32]) -> Monomial {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, e) in out.iter_mut().zip(short) {
        *o += e;
    }
    out
}

/// A multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in a sorted map from exponent vectors to nonzero
/// coefficients; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ExactPoly {
    pub fn zero() -> Self {
        ExactPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, vec![])
    }

    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Self::term(Rational::one(), m)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(m), c);
        }
        ExactPoly { terms }
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in iter {
            let e = acc.entry(trim(m)).or_insert_with(Rational::zero);
            *e += &c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Rational>) -> Self {
        ExactPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &[u32]) -> Rational {
        self.terms.get(&trim(m.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Number of variables that can occur, i.e. one past the highest index used.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.get(var).copied().unwrap_or(0)).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ExactPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(m, c)| {
            let e = *m.get(var)?;
            if e == 0 {
                return None;
            }
            let mut m = m.clone();
            m[var] -= 1;
            Some((m, c * &Rational::from_int(e as i64)))
        }))
    }

    /// Substitute `values[i]` for variable `i` in a coefficient ring `S`.
    /// Returns `None` if some coefficient has no image in `S`.
    pub fn eval<S: Scalar>(&self, ctx: &S::Ctx, values: &[S]) -> Option<S> {
        assert!(values.len() >= self.num_vars(), "too few values for polynomial variables");
        let mut acc = S::zero(ctx);
        for (m, c) in &self.terms {
            let mut t = S::from_rational(ctx, c)?;
            for (v, &e) in values.iter().zip(m) {
                if e > 0 {
                    t = S::mul(ctx, &t, &S::pow(ctx, v, e as u64));
                }
            }
            acc = S::add(ctx, &acc, &t);
        }
        Some(acc)
    }

    /// Substitute polynomials for variables.
    pub fn compose(&self, values: &[ExactPoly]) -> ExactPoly {
        self.eval(&(), values).expect("rational coefficients always embed")
    }

    /// Rename variable `i` to `map[i]`.
    pub fn remap_vars(&self, map: &[usize]) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, c)| {
            let width = map.iter().copied().max().map_or(0, |w| w + 1);
            let mut out = vec![0; width];
            for (i, &e) in m.iter().enumerate() {
                out[map[i]] += e;
            }
            (out, c.clone())
        }))
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(Rational::is_integer)
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        // Highest total degree first reads more naturally.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = names.get(i).map(|s| s.to_string()).unwrap_or_else(|| format!("x{i}"));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{abs}*{}", mono.join("*")));
            }
        }
        out
    }
}

impl fmt::Display for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl fmt::Debug for ExactPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &ExactPoly {
    type Output = ExactPoly;
    fn add(self, rhs: &ExactPoly) -> ExactPoly {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            match terms.get_mut(m) {
                Some(a) => {
                    *a += c;
                    if a.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        ExactPoly { terms }
    }
}

impl Neg for &ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        ExactPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Sub for &ExactPoly {
    type Output = ExactPoly;
    fn sub(self, rhs: &ExactPoly) -> ExactPoly {
        self + &(-rhs)
    }
}

impl Mul for &ExactPoly {
    type Output = ExactPoly;
    fn mul(self, rhs: &ExactPoly) -> ExactPoly {
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let e = acc.entry(mono_mul(ma, mb)).or_insert_with(Rational::zero);
                *e += &(ca * cb);
            }
        }
        ExactPoly::from_map(acc)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactPoly {
            type Output = ExactPoly;
            fn $m(self, rhs: ExactPoly) -> ExactPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for ExactPoly {
    type Output = ExactPoly;
    fn neg(self) -> ExactPoly {
        -&self
    }
}
