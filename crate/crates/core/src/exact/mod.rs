//! Exact rationals, `p`-adic valuations, truncated power series and
//! multivariate polynomials, plus the [`Scalar`] abstraction over the
//! coefficient rings used elsewhere (rationals, prime fields, polynomials).

mod poly;
mod rational;
mod scalar;
mod series;

pub use poly::{ExactPoly, Monomial};
pub use rational::{
    binomial, check_prime, factorial, is_prime, mobius, next_prime, Rational, Valuation,
};
pub use scalar::{inv_mod, Field, Fp, Scalar};
pub use series::ExactSeries;

/// `vp(q)`, the `p`-adic valuation of a rational.
pub fn vp(q: &Rational, p: u64) -> crate::Result<Valuation> {
    q.vp(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nonzero_rational() -> impl Strategy<Value = Rational> {
        (-5000i64..5000, 1i64..5000)
            .prop_filter("nonzero", |(n, _)| *n != 0)
            .prop_map(|(n, d)| Rational::frac(n, d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn valuation_is_multiplicative_and_ultrametric(
            x in nonzero_rational(),
            y in nonzero_rational(),
            pi in 0usize..4,
        ) {
            let p = [2u64, 3, 5, 7][pi];
            prop_assert_eq!(vp(&(&x * &y), p).unwrap(), vp(&x, p).unwrap() + vp(&y, p).unwrap());
            let s = &x + &y;
            prop_assert!(vp(&s, p).unwrap() >= vp(&x, p).unwrap().min(vp(&y, p).unwrap()));
        }

        #[test]
        fn addition_agrees_with_cross_multiplication(
            a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000,
        ) {
            let direct = Rational::frac(a, b) + Rational::frac(c, d);
            let cross = Rational::frac(a * d + c * b, b * d);
            prop_assert_eq!(direct, cross);
        }
    }
}
