use std::fmt;

use serde::Serialize;

use super::rational::{Rational, Valuation};
use crate::error::{Error, Result};

/// A power series with rational coefficients, known modulo `t^(N+1)`.
///
/// The truncation order `N` is part of the value: arithmetic between two
/// series keeps the smaller of the two orders and never invents terms.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct ExactSeries {
    coeffs: Vec<Rational>,
}

impl ExactSeries {
    /// Series from explicit coefficients `c_0..c_N`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the constant term");
        ExactSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        ExactSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    /// The monomial `c·t^k` truncated at `order` (zero if `k > order`).
    pub fn monomial(c: Rational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        ExactSeries::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot extend precision by truncation");
        ExactSeries { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        ExactSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        ExactSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &other.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ExactSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ExactSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        ExactSeries { coeffs: out }
    }

    /// `exp(f)` for `f` with zero constant term, from `g' = f'g`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = self.order();
        let mut g = vec![Rational::zero(); n + 1];
        g[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                let f = &self.coeffs[k];
                if !f.is_zero() {
                    acc += &(f * &g[m - k] * Rational::from_int(k as i64));
                }
            }
            g[m] = acc / Rational::from_int(m as i64);
        }
        Ok(ExactSeries { coeffs: g })
    }

    /// `log(f)` for `f` with constant term 1, from `f·l' = f'`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne);
        }
        let n = self.order();
        let mut l = vec![Rational::zero(); n + 1];
        for m in 1..=n {
            let mut acc = &self.coeffs[m] * &Rational::from_int(m as i64);
            for k in 1..m {
                let f = &self.coeffs[m - k];
                if !f.is_zero() && !l[k].is_zero() {
                    acc -= &(&l[k] * f * Rational::from_int(k as i64));
                }
            }
            l[m] = acc / Rational::from_int(m as i64);
        }
        Ok(ExactSeries { coeffs: l })
    }

    /// `(1 + u)^e` for `u` with zero constant term and rational `e`.
    pub fn binomial(u: &Self, e: &Rational) -> Result<Self> {
        if !u.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = u.order();
        let mut g = vec![Rational::zero(); n + 1];
        g[0] = Rational::one();
        let e1 = e + &Rational::one();
        // m g_m = sum_{k=1}^m ((e+1)k - m) a_k g_{m-k}, a = 1 + u
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                let a = &u.coeffs[k];
                if a.is_zero() || g[m - k].is_zero() {
                    continue;
                }
                let w = &e1 * &Rational::from_int(k as i64) - Rational::from_int(m as i64);
                acc += &(w * a * &g[m - k]);
            }
            g[m] = acc / Rational::from_int(m as i64);
        }
        Ok(ExactSeries { coeffs: g })
    }

    /// Valuations of every coefficient.
    pub fn valuations(&self, p: u64) -> Result<Vec<Valuation>> {
        self.coeffs.iter().map(|c| c.vp(p)).collect()
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.coeffs.iter().all(|c| c.is_p_integral(p))
    }
}

impl fmt::Debug for ExactSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})t^{k}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0 + O(t^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(t^{})", terms.join(" + "), self.order() + 1)
        }
    }
}
