//! Commuting tuples of `p`-nilpotent matrices over `F_p`: membership,
//! exhaustive point counts, the one-parameter-subgroup map and its
//! injectivity.
//!
//! Only the set of points is modelled. The variety is stable under
//! simultaneous conjugation; the Frobenius-twisted action on the later
//! entries of a tuple is not used.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::NilradicalModel;
use crate::error::{Error, Result};
use crate::exact::{binomial, check_prime, Fp, Rational, Scalar};
use crate::matlie::{from_columns, null_space, FpMatrix};
use crate::rng::StreamRng;

/// Largest number of points `|ambient|^d` a census may scan.
pub const CENSUS_BOUND: u128 = 10_000_000;
/// Largest tuple length a census accepts.
pub const MAX_CENSUS_D: usize = 3;
/// Largest ambient dimension a census accepts.
pub const MAX_CENSUS_DIM: usize = 6;

/// The Lie algebra the tuple entries range over.
#[derive(Clone, Debug)]
pub enum Ambient {
    /// All `n × n` matrices.
    Gl(usize),
    /// Strictly upper triangular `n × n` matrices.
    StrictUpper(usize),
    /// The nilradical of a parabolic.
    Nilradical(Box<NilradicalModel>),
}

impl Ambient {
    /// Size of the matrices.
    pub fn n(&self) -> usize {
        match self {
            Ambient::Gl(n) | Ambient::StrictUpper(n) => *n,
            Ambient::Nilradical(nm) => nm.dim(),
        }
    }

    /// Dimension as a vector space.
    pub fn dim(&self) -> usize {
        match self {
            Ambient::Gl(n) => n * n,
            Ambient::StrictUpper(n) => n * n.saturating_sub(1) / 2,
            Ambient::Nilradical(nm) => nm.basis().len(),
        }
    }

    /// A basis over `F_p`.
    pub fn basis(&self, p: u32) -> Result<Vec<FpMatrix>> {
        let n = self.n();
        Ok(match self {
            Ambient::Gl(_) => (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| FpMatrix::unit(&p, n, i, j)).collect(),
            Ambient::StrictUpper(_) => {
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| FpMatrix::unit(&p, n, i, j)).collect()
            }
            Ambient::Nilradical(nm) => nm.basis_fp(p)?,
        })
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::Gl(n) => write!(f, "gl:{n}"),
            Ambient::StrictUpper(n) => write!(f, "strict-upper:{n}"),
            Ambient::Nilradical(nm) => write!(f, "{}:{}", nm.group(), nm.parabolic()),
        }
    }
}

impl FromStr for Ambient {
    type Err = Error;

    /// `gl:N` or `strict-upper:N`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, n) = s.split_once(':').ok_or_else(|| Error::Parse(format!("expected KIND:N, got {s:?}")))?;
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad size in {s:?}")))?;
        if n == 0 {
            return Err(Error::Parse("ambient size must be positive".into()));
        }
        match kind {
            "gl" => Ok(Ambient::Gl(n)),
            "strict-upper" => Ok(Ambient::StrictUpper(n)),
            _ => Err(Error::Parse(format!("unknown ambient {kind:?}"))),
        }
    }
}

/// Pairwise commuting with vanishing `p`-th powers, `p` the field
/// characteristic.
pub fn is_member(tuple: &[FpMatrix]) -> Result<bool> {
    let Some(first) = tuple.first() else { return Ok(true) };
    let (n, p) = (first.rows(), first.prime());
    if tuple.iter().any(|x| x.rows() != n || x.cols() != n || x.prime() != p) {
        return Err(Error::DimensionMismatch("tuple entries must share size and field".into()));
    }
    if tuple.iter().any(|x| !x.pow(p as u64).is_zero()) {
        return Ok(false);
    }
    Ok(tuple.iter().enumerate().all(|(i, a)| tuple[i + 1..].iter().all(|b| a.commutes_with(b))))
}

/// Every element of the span of `basis` over `F_p`, in the order of their
/// base-`p` coordinate vectors.
fn all_elements(basis: &[FpMatrix], n: usize, p: u32) -> Vec<FpMatrix> {
    let total = (p as usize).pow(basis.len() as u32);
    (0..total)
        .into_par_iter()
        .map(|mut code| {
            let mut x = FpMatrix::zeros(&p, n, n);
            for b in basis {
                let c = Fp((code % p as usize) as u32);
                code /= p as usize;
                if !c.is_zero() {
                    x = &x + &b.scale(&c);
                }
            }
            x
        })
        .collect()
}

/// The `p`-nilpotent elements of the ambient over `F_p`.
pub fn p_nilpotent_elements(ambient: &Ambient, p: u32) -> Result<Vec<FpMatrix>> {
    check_prime(p as u64)?;
    let all = all_elements(&ambient.basis(p)?, ambient.n(), p);
    Ok(all.into_par_iter().filter(|x| x.pow(p as u64).is_zero()).collect())
}

/// Exact number of member `d`-tuples in the ambient over `F_p`.
pub fn census(p: u32, d: usize, ambient: &Ambient) -> Result<u64> {
    check_prime(p as u64)?;
    if d == 0 || d > MAX_CENSUS_D {
        return Err(Error::InvalidArgument(format!("tuple length must be in 1..={MAX_CENSUS_D}")));
    }
    if ambient.dim() > MAX_CENSUS_DIM {
        return Err(Error::InvalidArgument(format!("ambient dimension must be at most {MAX_CENSUS_DIM}")));
    }
    let points = (p as u128).pow((ambient.dim() * d) as u32);
    if points > CENSUS_BOUND {
        return Err(Error::CensusTooLarge { points, bound: CENSUS_BOUND });
    }
    let nil = p_nilpotent_elements(ambient, p)?;
    if d == 1 {
        return Ok(nil.len() as u64);
    }
    let neighbours: Vec<Vec<usize>> = nil
        .par_iter()
        .map(|x| (0..nil.len()).filter(|&j| x.commutes_with(&nil[j])).collect())
        .collect();
    let count = (0..nil.len())
        .into_par_iter()
        .map(|i| {
            if d == 2 {
                return neighbours[i].len() as u64;
            }
            let mut total = 0u64;
            for &j in &neighbours[i] {
                total += neighbours[j].iter().filter(|&&k| nil[i].commutes_with(&nil[k])).count() as u64;
            }
            total
        })
        .sum();
    Ok(count)
}

/// A matrix polynomial `Σ_k C_k t^k` over `F_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrixMap {
    p: u32,
    n: usize,
    coeffs: Vec<FpMatrix>,
}

impl PolyMatrixMap {
    fn constant(p: u32, m: FpMatrix) -> Self {
        PolyMatrixMap { p, n: m.rows(), coeffs: vec![m] }
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(FpMatrix::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    /// `Σ_j (X^j / j!) t^{step·j}`.
    fn exp_term(x: &FpMatrix, step: usize) -> Result<Self> {
        let p = x.prime();
        let n = x.rows();
        let mut coeffs = vec![FpMatrix::zeros(&p, n, n); step * (p as usize - 1) + 1];
        let mut pow = FpMatrix::identity(&p, n);
        let mut fact = Rational::one();
        for j in 0..p as usize {
            if j > 0 {
                pow = &pow * x;
                fact = fact * Rational::from_int(j as i64);
            }
            let c = Fp::from_rational(&p, &fact.recip().expect("nonzero")).expect("j < p");
            coeffs[j * step] = pow.scale(&c);
        }
        Ok(PolyMatrixMap { p, n, coeffs }.normalized())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `C_k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> FpMatrix {
        self.coeffs.get(k).cloned().unwrap_or_else(|| FpMatrix::zeros(&self.p, self.n, self.n))
    }

    pub fn coeffs(&self) -> &[FpMatrix] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![FpMatrix::zeros(&self.p, self.n, self.n); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        PolyMatrixMap { p: self.p, n: self.n, coeffs }.normalized()
    }

    pub fn eval(&self, t: Fp) -> FpMatrix {
        let p = self.p;
        self.coeffs.iter().rev().fold(FpMatrix::zeros(&p, self.n, self.n), |acc, c| &acc.scale(&t) + c)
    }

    /// `M(t + s) = M(t) M(s)` as an identity in `F_p[t, s]`: the
    /// coefficient of `t^j s^l` is `C(j+l, j) C_{j+l}` on the left and
    /// `C_j C_l` on the right.
    pub fn is_homomorphism(&self) -> bool {
        let p = self.p;
        let deg = self.degree();
        (0..=deg).all(|j| {
            (0..=deg).all(|l| {
                let b = Fp::from_rational(&p, &Rational::from_int(binomial((j + l) as u64, j as u64))).expect("integer");
                self.coeff(j + l).scale(&b) == &self.coeffs[j] * &self.coeffs[l]
            })
        })
    }
}

/// `t ↦ Π_{i<d} exp(t^{p^i} X_i)` for a member tuple `(X_0, …, X_{d−1})`.
pub fn one_psg(tuple: &[FpMatrix]) -> Result<PolyMatrixMap> {
    if tuple.is_empty() || !is_member(tuple)? {
        return Err(Error::NotMember);
    }
    let p = tuple[0].prime();
    let mut acc = PolyMatrixMap::constant(p, FpMatrix::identity(&p, tuple[0].rows()));
    for (i, x) in tuple.iter().enumerate() {
        acc = acc.mul(&PolyMatrixMap::exp_term(x, (p as usize).pow(i as u32))?);
    }
    Ok(acc)
}

/// Recovers `(X_0, …, X_{d−1})` from `one_psg`: `X_i` is the coefficient of
/// `t^{p^i}` once the factors for `X_0, …, X_{i−1}` have been divided off.
pub fn recover_tuple(map: &PolyMatrixMap, d: usize) -> Result<Vec<FpMatrix>> {
    let p = map.p;
    let mut rest = map.clone();
    let mut out = Vec::with_capacity(d);
    for i in 0..d {
        let step = (p as usize).pow(i as u32);
        let x = rest.coeff(step);
        let inverse = PolyMatrixMap::exp_term(&-&x, step)?;
        rest = inverse.mul(&rest);
        out.push(x);
    }
    if rest.degree() != 0 {
        return Err(Error::NotMember);
    }
    Ok(out)
}

/// Whether the map separates the two tuples exactly when they differ, with
/// tuples compared through [`recover_tuple`] applied to each map.
pub fn injectivity_check(a: &[FpMatrix], b: &[FpMatrix]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch("tuples of different lengths".into()));
    }
    let (ma, mb) = (one_psg(a)?, one_psg(b)?);
    let d = a.len();
    let recovered_equal = recover_tuple(&ma, d)? == recover_tuple(&mb, d)?;
    Ok((a == b) == (ma == mb) && (ma == mb) == recovered_equal)
}

/// Summary of an exhaustive injectivity scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    pub members: usize,
    /// Distinct maps among the members.
    pub distinct_maps: usize,
    /// Members whose tuple was not recovered from its map.
    pub recovery_failures: usize,
}

impl InjectivityReport {
    pub fn injective(&self) -> bool {
        self.members == self.distinct_maps && self.recovery_failures == 0
    }
}

/// Maps every member `d`-tuple in the ambient and checks that no two share
/// an image and that every tuple is recovered from its image.
pub fn injectivity_scan(p: u32, d: usize, ambient: &Ambient) -> Result<InjectivityReport> {
    census(p, d, ambient)?;
    let nil = p_nilpotent_elements(ambient, p)?;
    let mut tuples: Vec<Vec<usize>> = (0..nil.len()).map(|i| vec![i]).collect();
    for _ in 1..d {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                let next: Vec<usize> = (0..nil.len()).filter(|&j| t.iter().all(|&i| nil[i].commutes_with(&nil[j]))).collect();
                next.into_iter().map(move |j| {
                    let mut longer = t.clone();
                    longer.push(j);
                    longer
                })
            })
            .collect();
    }
    let results: Vec<(Vec<u32>, bool)> = tuples
        .par_iter()
        .map(|t| {
            let tuple: Vec<FpMatrix> = t.iter().map(|&i| nil[i].clone()).collect();
            let map = one_psg(&tuple)?;
            let ok = recover_tuple(&map, d)? == tuple;
            let key = map.coeffs.iter().flat_map(|c| c.entries().iter().map(|e| e.0)).collect();
            Ok((key, ok))
        })
        .collect::<Result<_>>()?;
    let mut seen = HashMap::new();
    for (key, _) in &results {
        *seen.entry(key).or_insert(0usize) += 1;
    }
    Ok(InjectivityReport {
        members: results.len(),
        distinct_maps: seen.len(),
        recovery_failures: results.iter().filter(|(_, ok)| !ok).count(),
    })
}

/// A random member `d`-tuple of strictly upper triangular `n × n` matrices
/// over `F_p`, for `n ≤ p`. Each entry is drawn uniformly from the joint
/// centralizer of the previous ones.
pub fn random_strict_upper_member(n: usize, p: u32, d: usize, rng: &mut StreamRng) -> Result<Vec<FpMatrix>> {
    check_prime(p as u64)?;
    if n > p as usize {
        return Err(Error::InvalidArgument(format!("strictly upper {n} × {n} matrices need not be {p}-nilpotent")));
    }
    let basis = Ambient::StrictUpper(n).basis(p)?;
    let mut out: Vec<FpMatrix> = Vec::with_capacity(d);
    for _ in 0..d {
        // Coordinates c with [Σ c_k B_k, X] = 0 for every earlier X.
        let rows: Vec<Vec<Fp>> = out
            .iter()
            .flat_map(|x| {
                let brackets: Vec<FpMatrix> = basis.iter().map(|b| b.commutator(x)).collect();
                (0..n * n).map(move |e| brackets.iter().map(|m| m.entries()[e]).collect::<Vec<_>>())
            })
            .collect();
        let kernel = if rows.is_empty() {
            (0..basis.len()).map(|k| (0..basis.len()).map(|j| Fp((j == k) as u32)).collect()).collect()
        } else {
            null_space(&from_columns(&p, basis.len(), &rows).transpose())
        };
        let mut x = FpMatrix::zeros(&p, n, n);
        for v in &kernel {
            let c = Fp(rng.gen_range(0..p));
            for (b, vk) in basis.iter().zip(v) {
                x = &x + &b.scale(&Fp::mul(&p, &c, vk));
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// A uniformly random invertible `n × n` matrix over `F_p`.
pub fn random_invertible(n: usize, p: u32, rng: &mut StreamRng) -> FpMatrix {
    loop {
        let g = FpMatrix::from_fn(&p, n, n, |_, _| Fp(rng.gen_range(0..p)));
        if crate::matlie::rank(&g) == n {
            return g;
        }
    }
}
