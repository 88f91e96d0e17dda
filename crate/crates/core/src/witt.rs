//! Witt vectors of finite length and the invariant derivations of
//! unipotent group laws.
//!
//! Group laws are polynomial maps `S(X, Y)` with the two arguments
//! interleaved: `X_i` is variable `2i` and `Y_i` is variable `2i + 1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{check_prime, ExactPoly, Fp, Monomial, Rational, Scalar};

fn p_power(p: u64, k: usize) -> BigInt {
    BigInt::from(p).pow(k as u32)
}

fn witt_poly_in(p: u64, m: usize, var: impl Fn(usize) -> usize) -> ExactPoly {
    let mut acc = ExactPoly::zero();
    for k in 0..=m {
        let e = p.pow((m - k) as u32) as u32;
        let mut mono = vec![0u32; var(k) + 1];
        mono[var(k)] = e;
        acc = &acc + &ExactPoly::term(Rational::from_int(p_power(p, k)), mono);
    }
    acc
}

/// `w_m = X_0^{p^m} + p X_1^{p^{m-1}} + … + p^m X_m`, with `X_k` as variable `k`.
pub fn witt_polynomial(p: u64, m: usize) -> ExactPoly {
    witt_poly_in(p, m, |k| k)
}

/// `f^e` by repeated multiplication by `f`, which is much cheaper than
/// squaring when `f` is small and the power is large.
fn power_by_steps(f: &ExactPoly, e: u64) -> ExactPoly {
    let mut acc = ExactPoly::constant(Rational::one());
    for _ in 0..e {
        acc = &acc * f;
    }
    acc
}

fn extend_sums(p: u64, sums: &mut Vec<ExactPoly>, n: usize) -> Result<()> {
    while sums.len() < n {
        let m = sums.len();
        let mut acc = &witt_poly_in(p, m, |k| 2 * k) + &witt_poly_in(p, m, |k| 2 * k + 1);
        for (k, s) in sums.iter().enumerate() {
            let pw = power_by_steps(s, p.pow((m - k) as u32));
            acc = &acc - &pw.scale(&Rational::from_int(p_power(p, k)));
        }
        let s = acc.scale(&Rational::new(1, p_power(p, m))?);
        if !s.has_integer_coeffs() {
            return Err(Error::NonIntegral(format!("sum polynomial {m} for p = {p}")));
        }
        sums.push(s);
    }
    Ok(())
}

type SumCache = Mutex<HashMap<u64, Arc<Vec<ExactPoly>>>>;

fn sum_cache() -> &'static SumCache {
    static CACHE: OnceLock<SumCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `S_0, …, S_{n-1}` with `w_m(S) = w_m(X) + w_m(Y)`, in interleaved
/// variables. Each coefficient is checked to be an integer.
pub fn witt_sum_polynomials(p: u64, n: usize) -> Result<Vec<ExactPoly>> {
    check_prime(p)?;
    let cached = sum_cache().lock().expect("cache lock").get(&p).cloned();
    if let Some(c) = &cached {
        if c.len() >= n {
            return Ok(c[..n].to_vec());
        }
    }
    let mut sums = cached.map(|c| c.as_ref().clone()).unwrap_or_default();
    extend_sums(p, &mut sums, n)?;
    let out = sums[..n].to_vec();
    let mut cache = sum_cache().lock().expect("cache lock");
    let longer = cache.get(&p).is_none_or(|c| c.len() < sums.len());
    if longer {
        cache.insert(p, Arc::new(sums));
    }
    Ok(out)
}

/// Display names `X0, Y0, X1, Y1, …` for interleaved variables.
pub fn law_var_names(n: usize) -> Vec<String> {
    (0..n).flat_map(|i| [format!("X{i}"), format!("Y{i}")]).collect()
}

/// A polynomial with coefficients already mapped into a ring `S`.
#[derive(Clone, Debug)]
struct CompiledPoly<S: Scalar> {
    terms: Vec<(S, Vec<(usize, u32)>)>,
}

impl<S: Scalar> CompiledPoly<S> {
    fn new(ctx: &S::Ctx, f: &ExactPoly) -> Option<Self> {
        let mut terms = Vec::with_capacity(f.num_terms());
        for (m, c) in f.terms() {
            let c = S::from_rational(ctx, c)?;
            if c.is_zero() {
                continue;
            }
            let vars = m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect();
            terms.push((c, vars));
        }
        Some(CompiledPoly { terms })
    }

    fn eval(&self, ctx: &S::Ctx, values: &[S]) -> S {
        let mut acc = S::zero(ctx);
        for (c, vars) in &self.terms {
            let mut t = c.clone();
            for &(i, e) in vars {
                if values[i].is_zero() {
                    t = S::zero(ctx);
                    break;
                }
                t = S::mul(ctx, &t, &S::pow(ctx, &values[i], e as u64));
            }
            if !t.is_zero() {
                acc = S::add(ctx, &acc, &t);
            }
        }
        acc
    }
}

fn interleave<S: Clone>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter().zip(b).flat_map(|(x, y)| [x.clone(), y.clone()]).collect()
}

/// A commutative unipotent group law on `n` coordinates in which
/// coordinate `m` of the sum is `X_m + Y_m` plus terms in lower coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupLaw {
    p: u64,
    polys: Vec<ExactPoly>,
}

impl GroupLaw {
    /// The Witt vector law of length `n`.
    pub fn witt(p: u64, n: usize) -> Result<Self> {
        Ok(GroupLaw { p, polys: witt_sum_polynomials(p, n)? })
    }

    /// The two-coordinate law `(t_0 + s_0, F(t_0, s_0)^p + t_1 + s_1)`,
    /// with `F` the carry polynomial of `W_2`.
    pub fn frobenius_twisted(p: u64) -> Result<Self> {
        let w = witt_sum_polynomials(p, 2)?;
        let carry = &w[1] - &(&ExactPoly::var(2) + &ExactPoly::var(3));
        let s1 = &(&power_by_steps(&carry, p) + &ExactPoly::var(2)) + &ExactPoly::var(3);
        Ok(GroupLaw { p, polys: vec![w[0].clone(), s1] })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polys(&self) -> &[ExactPoly] {
        &self.polys
    }

    pub fn compile<S: Scalar>(&self, ctx: &S::Ctx) -> Result<CompiledLaw<S>> {
        let polys = self
            .polys
            .iter()
            .map(|f| CompiledPoly::new(ctx, f).ok_or(Error::PNotInvertible(self.p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CompiledLaw { p: self.p, ctx: ctx.clone(), polys })
    }

    /// `D_i(T_j) = ∂S_j/∂Y_i (T, 0)` reduced mod `p`, for each `i`.
    pub fn invariant_derivations(&self, degree_bound: u32) -> Result<Vec<TruncatedDerivation>> {
        let n = self.len();
        let subst: Vec<ExactPoly> =
            (0..2 * n).map(|v| if v % 2 == 0 { ExactPoly::var(v / 2) } else { ExactPoly::zero() }).collect();
        (0..n)
            .map(|i| {
                let images = self.polys.iter().map(|s| s.derivative(2 * i + 1).compose(&subst)).collect();
                TruncatedDerivation::new(self.p as u32, images, degree_bound)
            })
            .collect()
    }

    /// Whether `Σ_i ∂S_j/∂Y_i (X, Y) · D(T_i)(Y) = D(T_j)(S(X, Y))` mod `p`
    /// for every `j`, the condition for `D` to commute with translations.
    pub fn is_invariant(&self, d: &TruncatedDerivation) -> Result<bool> {
        let n = self.len();
        let p = self.p as u32;
        let at_y: Vec<ExactPoly> = (0..n).map(|i| ExactPoly::var(2 * i + 1)).collect();
        for j in 0..n {
            let mut lhs = ExactPoly::zero();
            for i in 0..n {
                lhs = &lhs + &(&self.polys[j].derivative(2 * i + 1) * &d.images[i].compose(&at_y));
            }
            let rhs = d.images[j].compose(&self.polys);
            if reduce_mod_p(&(&lhs - &rhs), p)? != ExactPoly::zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A [`GroupLaw`] specialized to a coefficient ring.
#[derive(Clone, Debug)]
pub struct CompiledLaw<S: Scalar> {
    p: u64,
    ctx: S::Ctx,
    polys: Vec<CompiledPoly<S>>,
}

impl<S: Scalar> CompiledLaw<S> {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn zero(&self) -> Vec<S> {
        vec![S::zero(&self.ctx); self.len()]
    }

    pub fn add(&self, a: &[S], b: &[S]) -> Vec<S> {
        let vals = interleave(a, b);
        self.polys.iter().map(|s| s.eval(&self.ctx, &vals)).collect()
    }

    /// Solves `S(a, b) = 0` one coordinate at a time.
    pub fn neg(&self, a: &[S]) -> Vec<S> {
        let ctx = &self.ctx;
        let n = self.len();
        let mut b = vec![S::zero(ctx); n];
        for m in 0..n {
            let mut trial_a = a.to_vec();
            trial_a[m] = S::zero(ctx);
            let rest = self.polys[m].eval(ctx, &interleave(&trial_a, &b));
            b[m] = S::neg(ctx, &S::add(ctx, &a[m], &rest));
        }
        b
    }

    /// Least `k ≥ 1` with `k·a = 0`, searched up to `max`.
    pub fn order(&self, a: &[S], max: u64) -> Option<u64> {
        let mut acc = a.to_vec();
        for k in 1..=max {
            if acc.iter().all(S::is_zero) {
                return Some(k);
            }
            acc = self.add(&acc, a);
        }
        None
    }
}

impl CompiledLaw<Fp> {
    /// Every point of `F_p^n`, coordinate 0 varying slowest.
    pub fn elements(&self) -> Vec<Vec<Fp>> {
        all_vectors(self.ctx, self.len())
    }

    /// Largest element order, by exhaustion.
    pub fn exponent(&self) -> u64 {
        let bound = self.p.pow(self.len() as u32);
        self.elements().iter().map(|a| self.order(a, bound).expect("finite group")).max().unwrap_or(1)
    }
}

/// All vectors in `F_p^n` in lexicographic order.
pub fn all_vectors(p: u32, n: usize) -> Vec<Vec<Fp>> {
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![Fp(0); n];
            for slot in v.iter_mut().rev() {
                *slot = Fp((idx % p as usize) as u32);
                idx /= p as usize;
            }
            v
        })
        .collect()
}

/// A Witt vector of length `n` over a coefficient ring `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct WittVector<S: Scalar> {
    p: u64,
    ctx: S::Ctx,
    coords: Vec<S>,
}

impl<S: Scalar> WittVector<S> {
    pub fn new(p: u64, ctx: &S::Ctx, coords: Vec<S>) -> Result<Self> {
        check_prime(p)?;
        Ok(WittVector { p, ctx: ctx.clone(), coords })
    }

    pub fn zero(p: u64, ctx: &S::Ctx, n: usize) -> Result<Self> {
        Self::new(p, ctx, vec![S::zero(ctx); n])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(S::is_zero)
    }
}

impl WittVector<Fp> {
    pub fn from_ints(p: u64, coords: &[i64]) -> Result<Self> {
        check_prime(p)?;
        let pp = p as u32;
        Self::new(p, &pp, coords.iter().map(|&c| Fp::new(c, pp)).collect())
    }
}

fn check_compatible<S: Scalar>(a: &WittVector<S>, b: &WittVector<S>) -> Result<()> {
    if a.p != b.p || a.len() != b.len() || a.ctx != b.ctx {
        return Err(Error::WittMismatch);
    }
    Ok(())
}

pub fn witt_add<S: Scalar>(a: &WittVector<S>, b: &WittVector<S>) -> Result<WittVector<S>> {
    check_compatible(a, b)?;
    let law = GroupLaw::witt(a.p, a.len())?.compile(&a.ctx)?;
    Ok(WittVector { p: a.p, ctx: a.ctx.clone(), coords: law.add(&a.coords, &b.coords) })
}

pub fn witt_neg<S: Scalar>(a: &WittVector<S>) -> Result<WittVector<S>> {
    let law = GroupLaw::witt(a.p, a.len())?.compile(&a.ctx)?;
    Ok(WittVector { p: a.p, ctx: a.ctx.clone(), coords: law.neg(&a.coords) })
}

/// Ghost components `(w_0(a), …, w_{n-1}(a))`; needs `p` invertible.
pub fn ghost<S: Scalar>(a: &WittVector<S>) -> Result<Vec<S>> {
    if S::from_rational(&a.ctx, &Rational::frac(1, a.p as i64)).is_none() {
        return Err(Error::PNotInvertible(a.p));
    }
    (0..a.len())
        .map(|m| witt_polynomial(a.p, m).eval(&a.ctx, &a.coords).ok_or(Error::PNotInvertible(a.p)))
        .collect()
}

/// Order of a Witt vector over `F_p` under addition.
pub fn witt_order(a: &WittVector<Fp>) -> Result<u64> {
    let law = GroupLaw::witt(a.p, a.len())?.compile(&a.ctx)?;
    Ok(law.order(&a.coords, a.p.pow(a.len() as u32)).expect("order divides p^n"))
}

/// Reduce integral coefficients into `0..p`.
pub fn reduce_mod_p(f: &ExactPoly, p: u32) -> Result<ExactPoly> {
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for (m, c) in f.terms() {
        let r = c.mod_p(p as u64).ok_or(Error::PNotInvertible(p as u64))?;
        if r != 0 {
            terms.push((m.clone(), Rational::from_int(r as i64)));
        }
    }
    Ok(ExactPoly::from_terms(terms))
}

/// A derivation of `F_p[T_0, …, T_{n-1}]` given by its values on the
/// generators. Agreement checks run over monomials of total degree up to
/// `degree_bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedDerivation {
    p: u32,
    images: Vec<ExactPoly>,
    degree_bound: u32,
}

impl TruncatedDerivation {
    pub fn new(p: u32, images: Vec<ExactPoly>, degree_bound: u32) -> Result<Self> {
        check_prime(p as u64)?;
        let images = images.iter().map(|f| reduce_mod_p(f, p)).collect::<Result<Vec<_>>>()?;
        Ok(TruncatedDerivation { p, images, degree_bound })
    }

    /// `∂/∂T_i` on `n` generators.
    pub fn partial(p: u32, n: usize, i: usize, degree_bound: u32) -> Result<Self> {
        let images = (0..n).map(|j| if i == j { ExactPoly::constant(Rational::one()) } else { ExactPoly::zero() }).collect();
        Self::new(p, images, degree_bound)
    }

    pub fn images(&self) -> &[ExactPoly] {
        &self.images
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(ExactPoly::is_zero)
    }

    /// `D(f) = Σ_i ∂f/∂T_i · D(T_i)` mod `p`.
    pub fn apply(&self, f: &ExactPoly) -> ExactPoly {
        let mut acc = ExactPoly::zero();
        for (i, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            acc = &acc + &(&f.derivative(i) * img);
        }
        reduce_mod_p(&acc, self.p).expect("integral coefficients")
    }

    pub fn linear_combination(&self, a: u32, other: &Self, b: u32) -> Result<Self> {
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(x, y)| {
                &x.scale(&Rational::from_int(a as i64)) + &y.scale(&Rational::from_int(b as i64))
            })
            .collect();
        Self::new(self.p, images, self.degree_bound.min(other.degree_bound))
    }

    fn max_image_degree(&self) -> u32 {
        self.images.iter().filter_map(ExactPoly::total_degree).max().unwrap_or(0)
    }

    /// The `p`-th power `D^p`, which is again a derivation in
    /// characteristic `p`. Its values on the generators are checked
    /// against `p`-fold iteration on every monomial up to the degree bound.
    pub fn p_power(&self) -> Result<Self> {
        let p = self.p;
        let need = p * self.max_image_degree().max(1);
        if self.degree_bound < need {
            return Err(Error::TruncationTooSmall { have: self.degree_bound as usize, need: need as usize });
        }
        let iterate = |f: &ExactPoly| -> ExactPoly {
            let mut g = f.clone();
            for _ in 0..p {
                g = self.apply(&g);
            }
            g
        };
        let n = self.num_generators();
        let images: Vec<ExactPoly> = (0..n).map(|i| iterate(&ExactPoly::var(i))).collect();
        let result = TruncatedDerivation { p, images, degree_bound: self.degree_bound };
        for mono in monomials_up_to(n, self.degree_bound) {
            let f = ExactPoly::term(Rational::one(), mono);
            if iterate(&f) != result.apply(&f) {
                return Err(Error::NonIntegral(format!("p-th power is not a derivation on {f}")));
            }
        }
        Ok(result)
    }
}

/// `D^p` of a derivation.
pub fn derivation_p_power(d: &TruncatedDerivation) -> Result<TruncatedDerivation> {
    d.p_power()
}

/// Exponent vectors in `n` variables of total degree at most `bound`.
pub fn monomials_up_to(n: usize, bound: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, bound, &mut Vec::new(), &mut out);
    out
}
