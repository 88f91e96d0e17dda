use serde::Serialize;

use super::linalg::rank;
use super::matrix::{FpMatrix, Matrix, QMatrix};
use crate::error::{Error, Result};
use crate::exact::{Field, Rational, Scalar};

/// Least `e >= 1` with `X^e = 0`.
pub fn nilpotence_degree<S: Scalar>(x: &Matrix<S>) -> Result<usize> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch("nilpotence degree of a non-square matrix".into()));
    }
    let n = x.rows();
    let mut pow = x.clone();
    for e in 1..=n.max(1) {
        if pow.is_zero() {
            return Ok(e);
        }
        pow = &pow * x;
    }
    Err(Error::NotNilpotent)
}

/// Least `m >= 1` with `p^m >= degree`.
pub fn p_exponent_for_degree(p: u64, degree: usize) -> u32 {
    let mut m = 1;
    let mut pm = p as u128;
    while pm < degree as u128 {
        pm *= p as u128;
        m += 1;
    }
    m
}

/// Least `m >= 1` with `X^(p^m) = 0`, the `[p]`-map being the `p`-th
/// matrix power. The exponent is found by iterated `p`-th powers.
pub fn p_nilpotence_degree(x: &FpMatrix) -> Result<u32> {
    let p = x.prime() as u64;
    nilpotence_degree(x)?;
    let mut m = 1;
    let mut pow = x.pow(p);
    while !pow.is_zero() {
        pow = pow.pow(p);
        m += 1;
    }
    Ok(m)
}

/// A partition, parts in weakly decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.0.first().copied().unwrap_or(0)
    }

    /// Conjugate partition.
    pub fn dual(&self) -> Partition {
        let k = self.largest();
        Partition((1..=k).map(|i| self.0.iter().filter(|&&x| x >= i).count()).collect())
    }
}

/// A nilpotent Jordan block of size `n` (ones on the superdiagonal).
pub fn jordan_block<S: Scalar>(ctx: &S::Ctx, n: usize) -> Matrix<S> {
    Matrix::from_fn(ctx, n, n, |i, j| if j == i + 1 { S::one(ctx) } else { S::zero(ctx) })
}

/// Direct sum of nilpotent Jordan blocks with the given sizes.
pub fn jordan_matrix<S: Scalar>(ctx: &S::Ctx, parts: &[usize]) -> Matrix<S> {
    parts
        .iter()
        .map(|&k| jordan_block::<S>(ctx, k))
        .reduce(|a, b| a.direct_sum(&b))
        .unwrap_or_else(|| Matrix::zeros(ctx, 0, 0))
}

/// `rank X^i` for `i = 1..=n`.
pub fn rank_profile<F: Field>(x: &Matrix<F>) -> Vec<usize> {
    let n = x.rows();
    let mut out = Vec::with_capacity(n);
    let mut pow = x.clone();
    for i in 0..n {
        let r = if out.last() == Some(&0) { 0 } else { rank(&pow) };
        out.push(r);
        if i + 1 < n && r > 0 {
            pow = &pow * x;
        }
    }
    out
}

/// Jordan type of a nilpotent matrix over a field, from its rank sequence.
pub fn jordan_type<F: Field>(x: &Matrix<F>) -> Result<Partition> {
    nilpotence_degree(x)?;
    let n = x.rows();
    let mut ranks = vec![n];
    ranks.extend(rank_profile(x));
    ranks.push(0);
    // number of blocks of size >= i is ranks[i-1] - ranks[i]
    let at_least: Vec<usize> = (1..ranks.len()).map(|i| ranks[i - 1] - ranks[i]).collect();
    let mut parts = Vec::new();
    for (i, &c) in at_least.iter().enumerate() {
        let next = at_least.get(i + 1).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(i + 1, c - next));
    }
    Ok(Partition::new(parts))
}

/// `D = (ΣX_i)^p − ΣX_i^p` for strictly upper triangular `X_i`, together
/// with whether `D` lies in the `p`-th term of the lower central series of
/// the strictly upper triangular algebra, indexed so that the first term is
/// the whole algebra. That term consists of matrices supported on
/// superdiagonals `p, p+1, ...`.
pub fn jacobson_defect(xs: &[FpMatrix]) -> Result<(FpMatrix, bool)> {
    let first = xs.first().ok_or_else(|| Error::DimensionMismatch("empty list".into()))?;
    let p = first.prime();
    let n = first.rows();
    for x in xs {
        if x.prime() != p || x.rows() != n || x.cols() != n {
            return Err(Error::DimensionMismatch("matrices must share size and prime".into()));
        }
        if !x.is_strictly_upper() {
            return Err(Error::InvalidParabolic("jacobson_defect needs strictly upper triangular input".into()));
        }
    }
    let sum = xs.iter().skip(1).fold(first.clone(), |acc, x| &acc + x);
    let powers = xs.iter().map(|x| x.pow(p as u64)).reduce(|a, b| &a + &b).expect("nonempty");
    let d = &sum.pow(p as u64) - &powers;
    let in_term = (0..n).all(|i| (0..n).all(|j| j >= i + p as usize || d.get(i, j).is_zero()));
    Ok((d, in_term))
}

/// `Σ_{i<e} X^i / i!` for nilpotent `X` of degree `e`. Fails with
/// [`Error::DegreeExceedsPrime`] when some `1/i!` has no image in the ring.
pub fn exp_nilpotent<S: Scalar>(x: &Matrix<S>) -> Result<Matrix<S>> {
    let deg = nilpotence_degree(x)?;
    let ctx = x.ctx();
    let mut acc = Matrix::identity(ctx, x.rows());
    let mut pow = Matrix::identity(ctx, x.rows());
    let mut fact = Rational::one();
    for i in 1..deg {
        pow = &pow * x;
        fact = fact * Rational::from_int(i as i64);
        let c = S::from_rational(ctx, &fact.recip().expect("nonzero"))
            .ok_or(Error::DegreeExceedsPrime { degree: deg, p: i as u64 })?;
        acc = &acc + &pow.scale(&c);
    }
    Ok(acc)
}

/// `Σ (−1)^{k+1} (u − 1)^k / k` for unipotent `u`.
pub fn log_unipotent<S: Scalar>(u: &Matrix<S>) -> Result<Matrix<S>> {
    let ctx = u.ctx();
    let n = &u.clone() - &Matrix::identity(ctx, u.rows());
    let deg = nilpotence_degree(&n)?;
    let mut acc = Matrix::zeros(ctx, u.rows(), u.cols());
    let mut pow = Matrix::identity(ctx, u.rows());
    for k in 1..deg {
        pow = &pow * &n;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        let c = S::from_rational(ctx, &Rational::frac(sign, k as i64))
            .ok_or(Error::DegreeExceedsPrime { degree: deg, p: k as u64 })?;
        acc = &acc + &pow.scale(&c);
    }
    Ok(acc)
}

/// Hausdorff product `log(exp X · exp Y)` over the rationals.
pub fn bch(x: &QMatrix, y: &QMatrix) -> Result<QMatrix> {
    let u = exp_nilpotent(x)?.try_mul(&exp_nilpotent(y)?)?;
    log_unipotent(&u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Fp;
    use crate::matlie::linalg::inverse;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn nilpotence_degrees() {
        assert_eq!(nilpotence_degree(&QMatrix::zeros(&(), 3, 3)).unwrap(), 1);
        assert_eq!(nilpotence_degree(&jordan_block::<Rational>(&(), 6)).unwrap(), 6);
        let full = QMatrix::from_fn(&(), 5, 5, |i, j| if j > i { q(1, 1) } else { q(0, 1) });
        assert_eq!(nilpotence_degree(&full).unwrap(), 5);
        assert_eq!(nilpotence_degree(&QMatrix::identity(&(), 2)), Err(Error::NotNilpotent));
    }

    #[test]
    fn p_nilpotence_examples() {
        assert_eq!(p_nilpotence_degree(&jordan_block::<Fp>(&5, 6)).unwrap(), 2);
        assert_eq!(p_nilpotence_degree(&jordan_block::<Fp>(&5, 5)).unwrap(), 1);
        for (p, n) in [(2u32, 1u32), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
            let size = (p as usize).pow(n - 1) + 1;
            assert_eq!(p_nilpotence_degree(&jordan_block::<Fp>(&p, size)).unwrap(), n);
        }
    }

    fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in partitions(n - first, first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }

    #[test]
    fn p_nilpotence_matches_largest_block_for_all_small_jordan_types() {
        for p in [2u32, 3, 5, 7] {
            for n in 1..=10 {
                for parts in partitions(n, n) {
                    let x = jordan_matrix::<Fp>(&p, &parts);
                    let largest = parts[0];
                    let m = p_nilpotence_degree(&x).unwrap();
                    let pm = (p as usize).pow(m);
                    assert!(pm >= largest && (m == 1 || pm / (p as usize) < largest), "{parts:?} p={p}");
                    assert_eq!(m, p_exponent_for_degree(p as u64, largest));
                }
            }
        }
    }

    #[test]
    fn jordan_types() {
        assert_eq!(jordan_type(&QMatrix::zeros(&(), 3, 3)).unwrap(), Partition::new(vec![1, 1, 1]));
        assert_eq!(jordan_type(&jordan_block::<Rational>(&(), 4)).unwrap(), Partition::new(vec![4]));
        assert_eq!(jordan_type(&jordan_matrix::<Rational>(&(), &[3, 1])).unwrap(), Partition::new(vec![3, 1]));
    }

    #[test]
    fn dual_partition() {
        assert_eq!(Partition::new(vec![3, 1]).dual(), Partition::new(vec![2, 1, 1]));
        assert_eq!(Partition::new(vec![2, 2]).dual(), Partition::new(vec![2, 2]));
    }

    fn random_invertible(rng: &mut ChaCha8Rng, p: u32, n: usize) -> (FpMatrix, FpMatrix) {
        loop {
            let g = FpMatrix::from_fn(&p, n, n, |_, _| Fp(rng.gen_range(0..p)));
            if let Ok(inv) = inverse(&g) {
                return (g, inv);
            }
        }
    }

    #[test]
    fn jordan_type_is_conjugation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = 5u32;
        for parts in [vec![3, 2, 1], vec![4, 2], vec![2, 2, 2], vec![6]] {
            let x = jordan_matrix::<Fp>(&p, &parts);
            for _ in 0..20 {
                let (g, gi) = random_invertible(&mut rng, p, 6);
                let y = &(&g * &x) * &gi;
                assert_eq!(jordan_type(&y).unwrap(), Partition::new(parts.clone()));
            }
        }
    }

    #[test]
    fn jacobson_single_and_pair() {
        let p = 2u32;
        let e12 = FpMatrix::unit(&p, 3, 0, 1);
        let e23 = FpMatrix::unit(&p, 3, 1, 2);
        let (d, ok) = jacobson_defect(std::slice::from_ref(&e12)).unwrap();
        assert!(d.is_zero() && ok);
        let (d, ok) = jacobson_defect(&[e12, e23]).unwrap();
        assert_eq!(d, FpMatrix::unit(&p, 3, 0, 2));
        assert!(ok);
    }

    #[test]
    fn jacobson_detects_low_superdiagonal() {
        // A matrix on the first superdiagonal is not in the p-th term for p = 2.
        let p = 2u32;
        let e12 = FpMatrix::unit(&p, 3, 0, 1);
        let bad = e12.clone();
        let in_term = (0..3).all(|i| (0..3).all(|j| j >= i + 2 || bad.get(i, j).is_zero()));
        assert!(!in_term);
    }

    #[test]
    fn bch_commuting_and_heisenberg() {
        let x = QMatrix::unit(&(), 3, 0, 2).scale(&q(3, 1));
        let y = QMatrix::unit(&(), 3, 0, 1);
        // e13 is central, so the pair commutes.
        assert_eq!(bch(&x, &y).unwrap(), &x + &y);
        let e12 = QMatrix::unit(&(), 3, 0, 1);
        let e23 = QMatrix::unit(&(), 3, 1, 2);
        let expected = &(&e12 + &e23) + &QMatrix::unit(&(), 3, 0, 2).scale(&q(1, 2));
        assert_eq!(bch(&e12, &e23).unwrap(), expected);
    }

    #[test]
    fn bch_identities() {
        let x = QMatrix::from_fn(&(), 4, 4, |i, j| if j > i { q((i + 2 * j) as i64, 3) } else { q(0, 1) });
        assert_eq!(bch(&x, &QMatrix::zeros(&(), 4, 4)).unwrap(), x);
        assert!(bch(&x, &(-&x)).unwrap().is_zero());
    }

    #[test]
    fn bch_denominators_only_involve_small_primes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=5usize {
            for _ in 0..10 {
                let mut rand_upper = || {
                    QMatrix::from_fn(&(), n, n, |i, j| {
                        if j > i { q(rng.gen_range(-4..=4), 1) } else { q(0, 1) }
                    })
                };
                let (x, y) = (rand_upper(), rand_upper());
                let z = bch(&x, &y).unwrap();
                for e in z.entries() {
                    for p in [5u64, 7, 11, 13] {
                        if p >= n as u64 {
                            assert!(e.is_p_integral(p), "n={n} entry {e} has {p} in the denominator");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn exp_over_fp_rejects_large_degree() {
        let j6 = jordan_block::<Fp>(&5, 6);
        assert!(matches!(exp_nilpotent(&j6), Err(Error::DegreeExceedsPrime { .. })));
        let e = FpMatrix::unit(&5, 2, 0, 1);
        assert_eq!(exp_nilpotent(&e).unwrap(), &FpMatrix::identity(&5, 2) + &e);
    }
}
