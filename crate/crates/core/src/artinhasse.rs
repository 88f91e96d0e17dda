//! The Artin-Hasse series `F(t) = exp(−(t + t^p/p + t^{p²}/p² + …))` and the
//! matrix homomorphisms `E_X(t) = F(t_0 X) F(t_1 X^p) ⋯ F(t_{n-1} X^{p^{n-1}})`
//! it defines on Witt vectors.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{check_prime, mobius, ExactSeries, Fp, Rational, Scalar, Valuation};
use crate::matlie::{exp_nilpotent, log_unipotent, nilpotence_degree, p_nilpotence_degree, FpMatrix, Matrix, QMatrix};
use crate::witt::{all_vectors, witt_polynomial};

/// `F(t)` modulo `t^{N+1}`, certified `p`-integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AhSeries {
    p: u64,
    series: ExactSeries,
}

impl AhSeries {
    fn certified(p: u64, series: ExactSeries) -> Result<Self> {
        if !series.is_p_integral(p) {
            let k = series.coeffs().iter().position(|c| !c.is_p_integral(p)).expect("some coefficient");
            return Err(Error::NonIntegral(format!("coefficient {k} of the Artin-Hasse series for p = {p}")));
        }
        Ok(AhSeries { p, series })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn series(&self) -> &ExactSeries {
        &self.series
    }

    pub fn coeffs(&self) -> &[Rational] {
        self.series.coeffs()
    }

    pub fn valuations(&self) -> Vec<Valuation> {
        self.series.valuations(self.p).expect("prime checked at construction")
    }

    pub fn coeffs_mod_p(&self) -> Vec<Fp> {
        self.coeffs().iter().map(|c| Fp(c.mod_p(self.p).expect("p-integral"))).collect()
    }
}

/// `−Σ_k t^{p^k}/p^k` modulo `t^{N+1}`.
pub fn ah_log(p: u64, order: usize) -> Result<ExactSeries> {
    check_prime(p)?;
    let mut s = ExactSeries::zero(order);
    let mut pk = 1u64;
    while pk as usize <= order {
        s = s.sub(&ExactSeries::monomial(Rational::frac(1, pk as i64), pk as usize, order));
        pk = match pk.checked_mul(p) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(s)
}

type AhCache = Mutex<HashMap<(u64, usize), Arc<AhSeries>>>;

fn ah_cache() -> &'static AhCache {
    static CACHE: OnceLock<AhCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `F(t)` modulo `t^{N+1}` through the exponential recurrence.
pub fn ah_series(p: u64, order: usize) -> Result<AhSeries> {
    if order == 0 {
        return Err(Error::TruncationTooSmall { have: 0, need: 1 });
    }
    if let Some(s) = ah_cache().lock().expect("cache lock").get(&(p, order)) {
        return Ok(s.as_ref().clone());
    }
    let s = AhSeries::certified(p, ah_log(p, order)?.exp()?)?;
    ah_cache().lock().expect("cache lock").insert((p, order), Arc::new(s.clone()));
    Ok(s)
}

/// `Π_{m ≤ N, p ∤ m} (1 − t^m)^{μ(m)/m}` modulo `t^{N+1}`.
pub fn ah_product_form(p: u64, order: usize) -> Result<AhSeries> {
    check_prime(p)?;
    if order == 0 {
        return Err(Error::TruncationTooSmall { have: 0, need: 1 });
    }
    let mut acc = ExactSeries::one(order);
    for m in 1..=order as u64 {
        let mu = mobius(m);
        if m % p == 0 || mu == 0 {
            continue;
        }
        let u = ExactSeries::monomial(-Rational::one(), m as usize, order);
        acc = acc.mul(&ExactSeries::binomial(&u, &Rational::frac(mu, m as i64))?);
    }
    AhSeries::certified(p, acc)
}

fn series_in<S: Scalar>(ctx: &S::Ctx, s: &AhSeries) -> Result<Vec<S>> {
    s.coeffs().iter().map(|c| S::from_rational(ctx, c).ok_or(Error::PNotInvertible(s.p))).collect()
}

/// `Σ_k a_k Y^k` for nilpotent `Y`, stopping once `Y^k = 0`.
fn eval_series_at<S: Scalar>(coeffs: &[S], y: &Matrix<S>) -> Matrix<S> {
    let ctx = y.ctx();
    let mut acc = Matrix::identity(ctx, y.rows()).scale(&coeffs[0]);
    let mut pow = Matrix::identity(ctx, y.rows());
    for a in &coeffs[1..] {
        pow = &pow * y;
        if pow.is_zero() {
            break;
        }
        acc = &acc + &pow.scale(a);
    }
    acc
}

fn check_witt_degree<S: Scalar>(x: &Matrix<S>, p: u64, n: usize) -> Result<usize> {
    check_prime(p)?;
    let deg = nilpotence_degree(x)?;
    let bound = (p as usize).saturating_pow(n as u32);
    if deg > bound {
        return Err(Error::DegreeExceedsWittLength { degree: deg, bound });
    }
    Ok(deg)
}

/// `E_X(t) = Π_i F(t_i X^{p^i})` for `X` with `X^{p^n} = 0`, `n = t.len()`.
pub fn ex_eval<S: Scalar>(x: &Matrix<S>, t: &[S], p: u64) -> Result<Matrix<S>> {
    let deg = check_witt_degree(x, p, t.len())?;
    let ctx = x.ctx();
    let f = ah_series(p, deg.max(2) - 1)?;
    let coeffs = series_in::<S>(ctx, &f)?;
    let mut acc = Matrix::identity(ctx, x.rows());
    let mut xp = x.clone();
    for ti in t {
        if xp.is_zero() {
            break;
        }
        acc = &acc * &eval_series_at(&coeffs, &xp.scale(ti));
        xp = xp.pow(p);
    }
    Ok(acc)
}

/// `Σ_j p^{-j} w_j(t) X^{p^j}`; needs `p` invertible in the coefficient ring.
pub fn ghost_argument<S: Scalar>(x: &Matrix<S>, t: &[S], p: u64) -> Result<Matrix<S>> {
    check_witt_degree(x, p, t.len())?;
    let ctx = x.ctx();
    let mut arg = Matrix::zeros(ctx, x.rows(), x.cols());
    let mut xp = x.clone();
    for j in 0..t.len() {
        let inv = S::from_rational(ctx, &Rational::frac(1, (p as i64).pow(j as u32))).ok_or(Error::PNotInvertible(p))?;
        let w = witt_polynomial(p, j).eval(ctx, t).ok_or(Error::PNotInvertible(p))?;
        arg = &arg + &xp.scale(&S::mul(ctx, &inv, &w));
        xp = xp.pow(p);
    }
    Ok(arg)
}

/// Whether `E_X(t) = exp(−Σ_j p^{-j} w_j(t) X^{p^j})` holds exactly. The
/// minus sign comes from the sign inside `F`.
pub fn ghost_factorization_check<S: Scalar>(x: &Matrix<S>, t: &[S], p: u64) -> Result<bool> {
    let arg = ghost_argument(x, t, p)?;
    Ok(exp_nilpotent(&-&arg)? == ex_eval(x, t, p)?)
}

/// `Σ X^i/i!` for nilpotent `X`; over `F_p` this requires `X^p = 0`.
pub fn trunc_exp<S: Scalar>(x: &Matrix<S>) -> Result<Matrix<S>> {
    exp_nilpotent(x)
}

/// Inverse of [`trunc_exp`] on unipotent matrices of the same degree bound.
pub fn trunc_log<S: Scalar>(u: &Matrix<S>) -> Result<Matrix<S>> {
    log_unipotent(u)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeReport {
    /// `exp(X)` maps the standard lattice into itself.
    pub preserved: bool,
    /// `X^p ≡ 0 mod p` entrywise and `X^{p²} = 0`, which is sufficient for
    /// `preserved`.
    pub sufficient_condition: bool,
    /// Least `p`-adic valuation among the entries of `exp(X)`.
    pub min_valuation: Option<i64>,
}

/// `p`-integrality of `exp(X)` for an integer nilpotent matrix.
pub fn lattice_preservation(x: &QMatrix, p: u64) -> Result<LatticeReport> {
    check_prime(p)?;
    if !x.entries().iter().all(Rational::is_integer) {
        return Err(Error::NonIntegral("lattice test needs integer entries".into()));
    }
    let e = exp_nilpotent(x)?;
    let min = e.entries().iter().map(|c| c.vp(p).expect("prime")).min().unwrap_or(Valuation::Infinity);
    let xp = x.pow(p);
    let xp_divisible = xp.entries().iter().all(|c| c.vp(p).expect("prime") >= Valuation::Finite(1));
    let sufficient_condition = xp_divisible && xp.pow(p).is_zero();
    Ok(LatticeReport { preserved: min.is_nonnegative(), sufficient_condition, min_valuation: min.finite() })
}

/// `X, X^p, …, X^{p^{n-1}}` for the Jordan block of size `p^{n-1} + 1`
/// over `F_p`, a basis of a Lie algebra closed under `p`-th powers.
pub fn witt_lie_basis(p: u64, n: usize) -> Result<Vec<FpMatrix>> {
    check_prime(p)?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let size = (p as usize).pow(n as u32 - 1) + 1;
    let x = crate::matlie::jordan_block::<Fp>(&(p as u32), size);
    let mut out = vec![x];
    for _ in 1..n {
        let next = out.last().expect("nonempty").pow(p);
        out.push(next);
    }
    Ok(out)
}

/// Largest `p`-nilpotence degree over all `F_p`-combinations of `basis`.
pub fn span_p_exponent(basis: &[FpMatrix]) -> Result<u32> {
    let Some(first) = basis.first() else {
        return Ok(0);
    };
    let p = first.prime();
    let mut best = 0;
    for c in all_vectors(p, basis.len()) {
        let mut y = FpMatrix::zeros(&p, first.rows(), first.cols());
        for (ci, b) in c.iter().zip(basis) {
            y = &y + &b.scale(ci);
        }
        best = best.max(p_nilpotence_degree(&y)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matlie::{jordan_block, unipotent_order};

    #[test]
    fn first_coefficients() {
        for p in [2, 3, 5] {
            let f = ah_series(p, 10).unwrap();
            assert_eq!(f.coeffs()[0], Rational::one());
            assert_eq!(f.coeffs()[1], -Rational::one());
        }
    }

    #[test]
    fn p2_is_integral_to_fifty() {
        let f = ah_series(2, 50).unwrap();
        assert!(f.valuations().iter().all(|v| v.is_nonnegative()));
    }

    #[test]
    fn product_form_agrees() {
        assert_eq!(ah_product_form(2, 1).unwrap().coeffs(), &[Rational::one(), -Rational::one()]);
        for p in [2, 3, 5, 7] {
            assert_eq!(ah_series(p, 60).unwrap(), ah_product_form(p, 60).unwrap(), "p = {p}");
        }
    }

    #[test]
    fn log_of_product_form() {
        for p in [2, 3] {
            let prod = ah_product_form(p, 40).unwrap();
            assert_eq!(prod.series().log().unwrap(), ah_log(p, 40).unwrap());
        }
    }

    #[test]
    fn zero_order_rejected() {
        assert!(ah_series(3, 0).is_err());
        assert!(ah_product_form(4, 5).is_err());
    }

    #[test]
    fn ex_of_zero_and_square_zero() {
        let p = 5u32;
        let z = FpMatrix::zeros(&p, 3, 3);
        assert!(ex_eval(&z, &[Fp(2), Fp(1)], 5).unwrap().is_identity());
        let x = FpMatrix::unit(&p, 3, 0, 2);
        let t0 = Fp(3);
        let expected = &FpMatrix::identity(&p, 3) - &x.scale(&t0);
        assert_eq!(ex_eval(&x, &[t0], 5).unwrap(), expected);
    }

    #[test]
    fn ex_rejects_excess_degree() {
        let x = jordan_block::<Fp>(&3, 4);
        assert!(matches!(ex_eval(&x, &[Fp(1)], 3), Err(Error::DegreeExceedsWittLength { .. })));
    }

    #[test]
    fn ex_order_on_jordan_block() {
        for (p, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
            let size = (p as usize).pow(n as u32 - 1) + 1;
            let x = jordan_block::<Fp>(&(p as u32), size);
            for t in all_vectors(p as u32, n) {
                let u = ex_eval(&x, &t, p).unwrap();
                let ord = unipotent_order(&u, n as u32 + 1).unwrap();
                assert_eq!(ord == p.pow(n as u32), t[0].0 != 0, "p={p} n={n} t={t:?}");
            }
        }
    }

    #[test]
    fn trunc_exp_and_log() {
        let p = 5u32;
        let x = FpMatrix::unit(&p, 2, 0, 1);
        assert_eq!(trunc_exp(&x).unwrap(), &FpMatrix::identity(&p, 2) + &x);
        let j6 = jordan_block::<Fp>(&p, 6);
        assert!(matches!(trunc_exp(&j6), Err(Error::DegreeExceedsPrime { degree: 6, p: 5 })));
        let j5 = jordan_block::<Fp>(&p, 5);
        assert_eq!(trunc_log(&trunc_exp(&j5).unwrap()).unwrap(), j5);
    }

    #[test]
    fn lattice_examples() {
        for p in [2u64, 3, 5] {
            let block = jordan_block::<Rational>(&(), p as usize);
            assert!(lattice_preservation(&block, p).unwrap().preserved);
            let big = jordan_block::<Rational>(&(), p as usize + 1);
            let r = lattice_preservation(&big, p).unwrap();
            assert!(!r.preserved);
            assert!(!r.sufficient_condition);
            let scaled = big.scale(&Rational::from_int(p as i64));
            let r = lattice_preservation(&scaled, p).unwrap();
            assert!(r.preserved && r.sufficient_condition);
        }
    }

    #[test]
    fn witt_lie_algebra_exponent() {
        for (p, n) in [(2u64, 2usize), (3, 2), (2, 3), (5, 2)] {
            let basis = witt_lie_basis(p, n).unwrap();
            for (i, b) in basis.iter().enumerate() {
                let pp = b.pow(p);
                if i + 1 < n {
                    assert_eq!(pp, basis[i + 1]);
                } else {
                    assert!(pp.is_zero());
                }
            }
            assert_eq!(span_p_exponent(&basis).unwrap(), n as u32);
        }
    }
}
