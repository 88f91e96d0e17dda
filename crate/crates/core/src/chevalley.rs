//! Matrix realizations of the classical Lie algebras with root-vector
//! bases, nilradicals of parabolics, Richardson sampling and the
//! order-formula harness.
//!
//! Forms are antidiagonal, so the Borel subalgebra is upper triangular and
//! every positive root vector is strictly upper triangular.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::artinhasse::{ex_eval, trunc_exp};
use crate::error::{Error, Result};
use crate::exact::{check_prime, is_prime, ExactPoly, Fp, Rational, Scalar};
use crate::matlie::{
    exp_nilpotent, jordan_type, nilpotence_degree, p_exponent_for_degree, p_nilpotence_degree,
    rank_profile, unipotent_order, FpMatrix, Matrix, PolyMatrix, QMatrix,
};
use crate::parabolic::{enumerate_distinguished, grade, levi_label, order_exponent};
use crate::rng::{stream, StreamRng};
use crate::rootsys::{height, Family, RootSystem};

/// Which classical group a realization models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Kind {
    /// `SL(V)`.
    Cg1,
    /// `Sp(V)` for a symplectic form.
    Cg2,
    /// `SO(V)` for a split symmetric form.
    Cg3,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Cg1 => "CG1",
            Kind::Cg2 => "CG2",
            Kind::Cg3 => "CG3",
        })
    }
}

impl FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CG1" => Ok(Kind::Cg1),
            "CG2" => Ok(Kind::Cg2),
            "CG3" => Ok(Kind::Cg3),
            _ => Err(Error::Parse(format!("unknown classical kind {s:?}"))),
        }
    }
}

/// Parses `gl_4`, `sl_3`, `sp_6` or `so_7` into a kind and a dimension.
/// `gl` and `sl` share the kind [`Kind::Cg1`].
pub fn parse_group(s: &str) -> Result<(Kind, usize)> {
    let (name, dim) = s.split_once('_').ok_or_else(|| Error::Parse(format!("expected NAME_DIM, got {s:?}")))?;
    let dim: usize = dim.parse().map_err(|_| Error::Parse(format!("bad dimension in {s:?}")))?;
    let kind = match name.to_ascii_lowercase().as_str() {
        "gl" | "sl" => Kind::Cg1,
        "sp" => Kind::Cg2,
        "so" => Kind::Cg3,
        _ => return Err(Error::Parse(format!("unknown group {s:?}"))),
    };
    Ok((kind, dim))
}

/// `XᵀJ + JX = 0`.
pub fn preserves_form<S: Scalar>(x: &Matrix<S>, form: &Matrix<S>) -> bool {
    (&(&x.transpose() * form) + &(form * x)).is_zero()
}

/// Entrywise reduction of a `p`-integral rational matrix.
pub fn to_fp(x: &QMatrix, p: u32) -> Result<FpMatrix> {
    x.try_map(&p, |q| Fp::from_rational(&p, q))
        .ok_or_else(|| Error::NonIntegral(format!("matrix is not {p}-integral")))
}

fn to_poly(x: &QMatrix) -> PolyMatrix {
    x.map(&(), |q| ExactPoly::constant(q.clone()))
}

/// The natural representation of a classical Lie algebra together with a
/// root vector for every positive root.
#[derive(Clone, Debug)]
pub struct ClassicalRealization {
    kind: Kind,
    dim: usize,
    characteristic: Option<u64>,
    form: QMatrix,
    root_system: RootSystem,
    root_vectors: Vec<QMatrix>,
    pivots: Vec<(usize, usize)>,
}

/// Builds `sl_n`, `sp_n` or `so_n` in dimension `dim`. A characteristic
/// may be given to validate the case; the matrices themselves are integral.
pub fn build_realization(kind: Kind, dim: usize, characteristic: Option<u64>) -> Result<ClassicalRealization> {
    if let Some(p) = characteristic {
        check_prime(p)?;
        if kind == Kind::Cg3 && p == 2 {
            return Err(Error::InvalidRealization("orthogonal groups need p ≠ 2".into()));
        }
    }
    let invalid = || Error::InvalidRealization(format!("no {kind} realization in dimension {dim}"));
    let (family, rank) = match kind {
        Kind::Cg1 if dim >= 2 => (Family::A, dim - 1),
        Kind::Cg2 if dim >= 4 && dim.is_multiple_of(2) => (Family::C, dim / 2),
        Kind::Cg3 if dim >= 5 && dim % 2 == 1 => (Family::B, dim / 2),
        Kind::Cg3 if dim >= 8 && dim.is_multiple_of(2) => (Family::D, dim / 2),
        _ => return Err(invalid()),
    };
    let root_system = RootSystem::new(family, rank)?;
    let width = if kind == Kind::Cg1 { dim } else { rank };

    let unit = |i: usize| -> Vec<i64> {
        let mut v = vec![0; width];
        v[i] = 1;
        v
    };
    let weights: Vec<Vec<i64>> = (0..dim)
        .map(|a| match kind {
            Kind::Cg1 => unit(a),
            _ if a < rank => unit(a),
            _ if dim % 2 == 1 && a == rank => vec![0; width],
            _ => unit(dim - 1 - a).into_iter().map(|x| -x).collect(),
        })
        .collect();
    let simple: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            let mut v = vec![0; width];
            match family {
                Family::B if i == rank - 1 => v[i] = 1,
                Family::C if i == rank - 1 => v[i] = 2,
                Family::D if i == rank - 1 => {
                    v[i - 1] = 1;
                    v[i] = 1;
                }
                _ => {
                    v[i] = 1;
                    v[i + 1] = -1;
                }
            }
            v
        })
        .collect();

    let form = match kind {
        Kind::Cg1 => QMatrix::zeros(&(), dim, dim),
        Kind::Cg2 => QMatrix::from_fn(&(), dim, dim, |i, j| {
            let s = if i < rank { 1 } else { -1 };
            Rational::from_int(if i + j == dim - 1 { s } else { 0 })
        }),
        Kind::Cg3 => QMatrix::from_fn(&(), dim, dim, |i, j| Rational::from_int((i + j == dim - 1) as i64)),
    };
    // The antidiagonal forms are signed permutation matrices, so J⁻¹ = Jᵀ.
    let form_inv = form.transpose();

    let mut root_vectors = Vec::new();
    let mut pivots = Vec::new();
    for coeffs in root_system.positive_roots() {
        let mut eps = vec![0i64; width];
        for (i, &c) in coeffs.iter().enumerate() {
            for (e, s) in eps.iter_mut().zip(&simple[i]) {
                *e += c * s;
            }
        }
        let (a, b) = (0..dim)
            .flat_map(|a| (a + 1..dim).map(move |b| (a, b)))
            .find(|&(a, b)| weights[a].iter().zip(&weights[b]).map(|(x, y)| x - y).eq(eps.iter().copied()))
            .ok_or_else(invalid)?;
        let m = QMatrix::unit(&(), dim, a, b);
        let x = if kind == Kind::Cg1 {
            m
        } else {
            let image = -&(&(&form_inv * &m.transpose()) * &form);
            if image == m {
                m
            } else {
                &m + &image
            }
        };
        debug_assert!(kind == Kind::Cg1 || preserves_form(&x, &form));
        root_vectors.push(x);
        pivots.push((a, b));
    }
    Ok(ClassicalRealization { kind, dim, characteristic, form, root_system, root_vectors, pivots })
}

impl ClassicalRealization {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn characteristic(&self) -> Option<u64> {
        self.characteristic
    }

    /// The form matrix; zero for [`Kind::Cg1`].
    pub fn form(&self) -> &QMatrix {
        &self.form
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    /// Root vectors in the order of [`RootSystem::positive_roots`].
    pub fn root_vectors(&self) -> &[QMatrix] {
        &self.root_vectors
    }

    pub fn root_vector(&self, k: usize) -> &QMatrix {
        &self.root_vectors[k]
    }

    /// The matrix position `(a, b)` at which root vector `k` has entry 1 and
    /// no other root vector is supported.
    pub fn pivot(&self, k: usize) -> (usize, usize) {
        self.pivots[k]
    }

    /// `sl_3`, `sp_4`, `so_7`, ...
    pub fn label(&self) -> String {
        let name = match self.kind {
            Kind::Cg1 => "sl",
            Kind::Cg2 => "sp",
            Kind::Cg3 => "so",
        };
        format!("{name}_{}", self.dim)
    }

    /// Membership in the Lie algebra: trace zero for `sl`, the form
    /// constraint otherwise.
    pub fn in_algebra(&self, x: &QMatrix) -> bool {
        match self.kind {
            Kind::Cg1 => (0..self.dim).map(|i| x.get(i, i).clone()).sum::<Rational>().is_zero(),
            _ => preserves_form(x, &self.form),
        }
    }

    pub fn form_fp(&self, p: u32) -> Result<FpMatrix> {
        to_fp(&self.form, p)
    }
}

/// The nilradical of a parabolic subalgebra, spanned by the root vectors
/// outside the Levi factor.
#[derive(Clone, Debug)]
pub struct NilradicalModel {
    group: String,
    parabolic: String,
    kind: Kind,
    root_system: RootSystem,
    levi: Vec<usize>,
    blocks: Option<Vec<usize>>,
    roots: Vec<usize>,
    basis: Vec<QMatrix>,
    form: QMatrix,
    n_p: u64,
}

/// Nilradical of the standard parabolic with Levi set `levi` (0-based
/// simple-root indices).
pub fn nilradical(real: &ClassicalRealization, levi: &[usize]) -> Result<NilradicalModel> {
    let gp = grade(&real.root_system, levi)?;
    let roots: Vec<usize> = (0..gp.f_values().len()).filter(|&k| gp.f_values()[k] > 0).collect();
    Ok(NilradicalModel {
        group: real.label(),
        parabolic: levi_label(gp.levi()),
        kind: real.kind,
        root_system: real.root_system.clone(),
        levi: gp.levi().to_vec(),
        blocks: None,
        basis: roots.iter().map(|&k| real.root_vectors[k].clone()).collect(),
        roots,
        form: real.form.clone(),
        n_p: gp.n_p(),
    })
}

/// Levi set of the block-upper-triangular parabolic of `gl_n` with the given
/// block sizes.
pub fn levi_of_blocks(blocks: &[usize]) -> Result<Vec<usize>> {
    if blocks.is_empty() || blocks.contains(&0) {
        return Err(Error::InvalidParabolic(format!("block sizes must be positive, got {blocks:?}")));
    }
    let mut levi = Vec::new();
    let mut start = 0;
    for &b in blocks {
        levi.extend(start..start + b - 1);
        start += b;
    }
    Ok(levi)
}

/// Nilradical of the block-upper-triangular parabolic of `gl_n`: the
/// matrices supported strictly above the diagonal blocks.
pub fn gl_block_nilradical(blocks: &[usize]) -> Result<NilradicalModel> {
    let levi = levi_of_blocks(blocks)?;
    let n: usize = blocks.iter().sum();
    let real = build_realization(Kind::Cg1, n, None)
        .map_err(|_| Error::InvalidParabolic(format!("gl_{n} has no proper parabolic")))?;
    let mut nm = nilradical(&real, &levi)?;
    let sizes: Vec<String> = blocks.iter().map(ToString::to_string).collect();
    nm.group = format!("gl_{n}");
    nm.parabolic = format!("({})", sizes.join(","));
    nm.blocks = Some(blocks.to_vec());
    Ok(nm)
}

impl NilradicalModel {
    pub fn group(&self) -> &str {
        &self.group
    }

    /// `{i,j}` for a Levi set, `(b1,b2,...)` for a block composition.
    pub fn parabolic(&self) -> &str {
        &self.parabolic
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.form.rows()
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.root_system
    }

    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    pub fn blocks(&self) -> Option<&[usize]> {
        self.blocks.as_deref()
    }

    /// Indices of the positive roots spanning the nilradical.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn basis(&self) -> &[QMatrix] {
        &self.basis
    }

    pub fn form(&self) -> &QMatrix {
        &self.form
    }

    /// `n(P)` from the grading.
    pub fn n_p(&self) -> u64 {
        self.n_p
    }

    pub fn basis_fp(&self, p: u32) -> Result<Vec<FpMatrix>> {
        self.basis.iter().map(|b| to_fp(b, p)).collect()
    }

    /// Whether an `F_p` matrix satisfies the defining constraint of the
    /// ambient algebra. Always true for [`Kind::Cg1`].
    pub fn satisfies_form(&self, x: &FpMatrix) -> Result<bool> {
        if self.kind == Kind::Cg1 {
            return Ok(true);
        }
        Ok(preserves_form(x, &to_fp(&self.form, x.prime())?))
    }

    /// A uniformly random element over `F_p`.
    pub fn random_element(&self, basis: &[FpMatrix], rng: &mut StreamRng) -> FpMatrix {
        combination(basis, self.dim(), rng)
    }
}

fn combination(basis: &[FpMatrix], n: usize, rng: &mut StreamRng) -> FpMatrix {
    let p = basis.first().map_or(2, FpMatrix::prime);
    let mut x = FpMatrix::zeros(&p, n, n);
    for b in basis {
        let c = Fp(rng.gen_range(0..p));
        if !c.is_zero() {
            x = &x + &b.scale(&c);
        }
    }
    x
}

fn dominates(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

/// The best element seen so far by rank profile.
struct Sampler {
    basis: Vec<FpMatrix>,
    n: usize,
    best: Option<(FpMatrix, Vec<usize>)>,
    drawn: usize,
}

impl Sampler {
    fn new(nm: &NilradicalModel, p: u32) -> Result<Self> {
        Ok(Sampler { basis: nm.basis_fp(p)?, n: nm.dim(), best: None, drawn: 0 })
    }

    fn draw(&mut self, rng: &mut StreamRng, count: usize) {
        for _ in 0..count {
            let x = combination(&self.basis, self.n, rng);
            let profile = rank_profile(&x);
            let better = match &self.best {
                None => true,
                Some((_, best)) => profile != *best && dominates(&profile, best),
            };
            if better {
                self.best = Some((x, profile));
            }
            self.drawn += 1;
        }
    }

    fn profile(&self) -> &[usize] {
        self.best.as_ref().map_or(&[], |(_, p)| p)
    }

    fn finish(self) -> RichardsonSample {
        let (element, profile) = self.best.expect("at least one draw");
        RichardsonSample { element, profile, trials: self.drawn }
    }
}

/// A sampled nilradical element of maximal rank profile.
#[derive(Clone, Debug, PartialEq)]
pub struct RichardsonSample {
    pub element: FpMatrix,
    /// `rank X^i` for `i = 1..=n`.
    pub profile: Vec<usize>,
    pub trials: usize,
}

/// Draws `trials` uniform elements of the nilradical over `F_q` and keeps
/// the one whose rank profile is componentwise maximal; the first
/// occurrence wins ties and incomparable profiles.
pub fn richardson_sample(nm: &NilradicalModel, q: u32, trials: usize, seed: u64) -> Result<RichardsonSample> {
    let mut rng = stream(seed, &format!("richardson/{}/{}/q={q}", nm.group, nm.parabolic));
    richardson_sample_with(nm, q, trials, &mut rng)
}

pub fn richardson_sample_with(
    nm: &NilradicalModel,
    q: u32,
    trials: usize,
    rng: &mut StreamRng,
) -> Result<RichardsonSample> {
    check_prime(q as u64)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let mut sampler = Sampler::new(nm, q)?;
    sampler.draw(rng, trials);
    Ok(sampler.finish())
}

/// Smallest prime `≥ 101` different from `p`, the field for reference
/// rank profiles.
pub fn reference_prime(p: u64) -> u64 {
    (101..).find(|&q| is_prime(q) && q != p).expect("primes are unbounded")
}

/// The number of draws may grow to this multiple of the requested trials
/// before a case is declared inconclusive.
pub const MAX_ESCALATION: usize = 64;

/// One nilradical at one prime.
#[derive(Clone, Debug)]
pub struct OrderCase {
    pub model: NilradicalModel,
    pub p: u64,
}

impl OrderCase {
    pub fn id(&self) -> String {
        format!("{}/{}/p={}", self.model.group, self.model.parabolic, self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    /// No sample reached the reference rank profile.
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub case_id: String,
    pub group: String,
    pub parabolic: String,
    pub p: u64,
    pub n_p: u64,
    pub m: u32,
    pub predicted_order: u64,
    /// Least `e` with `X^e = 0`.
    pub nilpotence_degree: usize,
    pub jordan_type: Vec<usize>,
    pub measured_degree: u32,
    pub measured_order: Option<u64>,
    pub trials_used: usize,
    pub outcome: Outcome,
}

/// Samples a Richardson element over `F_p`, measures its `p`-nilpotence
/// degree and the order of the associated unipotent, and compares both
/// with `m = order_exponent(p, n(P))`.
///
/// Genericity is judged against a reference profile computed over a field
/// of at least 101 elements. Draws double, up to [`MAX_ESCALATION`] times
/// the requested trials, until that profile is reached.
pub fn verify_order_formula(case: &OrderCase, trials: usize, seed: u64) -> Result<OrderReport> {
    let p = case.p;
    check_prime(p)?;
    let nm = &case.model;
    if !nm.root_system.is_good_prime(p)? || (nm.kind == Kind::Cg3 && p == 2) {
        return Err(Error::BadPrime(p));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let p32 = u32::try_from(p).map_err(|_| Error::InvalidArgument(format!("p = {p} is too large")))?;
    let id = case.id();
    let m = order_exponent(p, nm.n_p)?;
    let predicted_order = p.pow(m);

    let q = reference_prime(p) as u32;
    let reference = richardson_sample_with(nm, q, trials, &mut stream(seed, &format!("{id}/reference")))?.profile;

    let mut rng = stream(seed, &id);
    let mut sampler = Sampler::new(nm, p32)?;
    sampler.draw(&mut rng, trials);
    while !dominates(sampler.profile(), &reference) && sampler.drawn < trials * MAX_ESCALATION {
        let more = sampler.drawn;
        sampler.draw(&mut rng, more);
    }
    let generic = dominates(sampler.profile(), &reference);
    let sample = sampler.finish();
    let x = &sample.element;

    let nil = nilpotence_degree(x)?;
    let measured_degree = p_nilpotence_degree(x)?;
    let u = if nil <= p as usize {
        trunc_exp(x)?
    } else {
        let mut t = vec![Fp(0); p_exponent_for_degree(p, nil) as usize];
        t[0] = Fp(1);
        ex_eval(x, &t, p)?
    };
    let measured_order = unipotent_order(&u, measured_degree + 2);
    let outcome = if !generic {
        Outcome::Inconclusive
    } else if measured_degree == m && measured_order == Some(predicted_order) {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok(OrderReport {
        case_id: id,
        group: nm.group.clone(),
        parabolic: nm.parabolic.clone(),
        p,
        n_p: nm.n_p,
        m,
        predicted_order,
        nilpotence_degree: nil,
        jordan_type: jordan_type(x)?.parts().to_vec(),
        measured_degree,
        measured_order,
        trials_used: sample.trials,
        outcome,
    })
}

/// All compositions of `n`, lexicographically.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Which cases the order harness runs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderPlan {
    /// `gl_n` for `2 ≤ n ≤ max_gl`, every composition with at least two
    /// blocks.
    pub max_gl: usize,
    pub gl_primes: Vec<u64>,
    /// `(kind, dim)` pairs; every proper distinguished parabolic is used.
    pub classical: Vec<(Kind, usize)>,
    /// Primes that are bad for a classical case are skipped.
    pub classical_primes: Vec<u64>,
}

impl OrderPlan {
    /// `gl_n` for `n ≤ 8` at `p ∈ {2, 3, 5, 7}`; `sp_4`, `sp_6` and `so_7`
    /// at `p ∈ {5, 7, 11}`.
    pub fn standard() -> Self {
        OrderPlan {
            max_gl: 8,
            gl_primes: vec![2, 3, 5, 7],
            classical: vec![(Kind::Cg2, 4), (Kind::Cg2, 6), (Kind::Cg3, 7)],
            classical_primes: vec![5, 7, 11],
        }
    }

    pub fn cases(&self) -> Result<Vec<OrderCase>> {
        let mut out = Vec::new();
        for n in 2..=self.max_gl {
            for blocks in compositions(n).into_iter().filter(|b| b.len() >= 2) {
                let model = gl_block_nilradical(&blocks)?;
                for &p in &self.gl_primes {
                    check_prime(p)?;
                    out.push(OrderCase { model: model.clone(), p });
                }
            }
        }
        for &(kind, dim) in &self.classical {
            let real = build_realization(kind, dim, None)?;
            for levi in enumerate_distinguished(real.root_system())? {
                let model = nilradical(&real, &levi)?;
                if model.n_p <= 1 {
                    continue;
                }
                for &p in &self.classical_primes {
                    check_prime(p)?;
                    let good = real.root_system().is_good_prime(p)? && !(kind == Kind::Cg3 && p == 2);
                    if good {
                        out.push(OrderCase { model: model.clone(), p });
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Runs the cases in parallel; the reports are sorted by case id.
pub fn run_order_cases(cases: &[OrderCase], trials: usize, seed: u64) -> Result<Vec<OrderReport>> {
    let mut reports = cases
        .par_iter()
        .map(|c| verify_order_formula(c, trials, seed))
        .collect::<Result<Vec<_>>>()?;
    reports.sort_by(|a, b| a.case_id.cmp(&b.case_id));
    Ok(reports)
}

/// Coordinates `u` with `exp(Σ_k c_k e_{γ_k}) = Π_k exp(u_k e_{γ_k})`,
/// the product taken in the given root order.
///
/// `order` must list every positive root once with heights weakly
/// increasing, so each factor can be peeled off at its pivot entry.
pub fn exp_coordinates(real: &ClassicalRealization, order: &[usize], coeffs: &[ExactPoly]) -> Result<Vec<ExactPoly>> {
    let roots = real.root_system.positive_roots();
    let mut seen = vec![false; roots.len()];
    for &k in order {
        if k >= roots.len() || std::mem::replace(&mut seen[k], true) {
            return Err(Error::InvalidArgument(format!("{order:?} is not an ordering of the positive roots")));
        }
    }
    if seen.contains(&false) || coeffs.len() != order.len() {
        return Err(Error::InvalidArgument("need one coefficient per positive root".into()));
    }
    if order.windows(2).any(|w| height(&roots[w[0]]) > height(&roots[w[1]])) {
        return Err(Error::InvalidArgument("root order must have weakly increasing heights".into()));
    }
    let n = real.dim;
    let mut x = PolyMatrix::zeros(&(), n, n);
    for (&k, c) in order.iter().zip(coeffs) {
        x = &x + &to_poly(&real.root_vectors[k]).scale(c);
    }
    let mut rest = exp_nilpotent(&x)?;
    let mut out = Vec::with_capacity(order.len());
    for &k in order {
        let (a, b) = real.pivots[k];
        let u = rest.get(a, b).clone();
        let factor = exp_nilpotent(&to_poly(&real.root_vectors[k]).scale(&-&u))?;
        rest = &factor * &rest;
        out.push(u);
    }
    if !rest.is_identity() {
        return Err(Error::InvalidArgument("root order does not factor the exponential".into()));
    }
    Ok(out)
}

/// Exponential coordinates in `sp_4`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sp4Coordinates {
    /// On the long simple root `α`.
    pub long: ExactPoly,
    /// On the short simple root `β`.
    pub short: ExactPoly,
    /// On `α + β`.
    pub sum: ExactPoly,
    /// On the highest root `α + 2β`.
    pub top: ExactPoly,
}

/// Indices of `α` (long simple), `β` (short simple), `α + β`, `α + 2β` in
/// the positive roots of `C_2`.
pub fn sp4_root_order(real: &ClassicalRealization) -> Result<[usize; 4]> {
    let rs = real.root_system();
    let find = |c: [i64; 2]| rs.root_index(&c).ok_or_else(|| Error::InvalidRealization("expected sp_4".into()));
    if real.kind != Kind::Cg2 || real.dim != 4 {
        return Err(Error::InvalidRealization("expected sp_4".into()));
    }
    Ok([find([0, 1])?, find([1, 0])?, find([1, 1])?, find([2, 1])?])
}

/// Factors `exp(a e_α + b e_β + c e_{α+β} + d e_{α+2β})` in `Sp_4` as
/// `φ_α(·) φ_β(·) φ_{α+β}(·) φ_{α+2β}(·)` with `α` long and `β` short.
pub fn sp4_exp_coordinates(coeffs: &[ExactPoly; 4]) -> Result<Sp4Coordinates> {
    let real = build_realization(Kind::Cg2, 4, None)?;
    let order = sp4_root_order(&real)?;
    let mut u = exp_coordinates(&real, &order, coeffs)?.into_iter();
    let mut next = || u.next().expect("four coordinates");
    Ok(Sp4Coordinates { long: next(), short: next(), sum: next(), top: next() })
}
