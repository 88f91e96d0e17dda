//! Parabolic gradings, `n(P)`, the distinguished condition and the
//! exponential-type thresholds.
//!
//! A parabolic is given by its Levi set `I` of simple-root indices
//! (0-based). The grading is `f(α) = 2 Σ_{i ∉ I} c_i(α)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{check_prime, is_prime};
use crate::rootsys::{CartanType, DominantWeight, Family, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedParabolic {
    levi: Vec<usize>,
    /// `f` on each positive root, in the order of [`RootSystem::positive_roots`].
    f_values: Vec<i64>,
    graded_dims: BTreeMap<i64, usize>,
    component_dims: Vec<(usize, usize)>,
    component_top: Vec<i64>,
    n_p: u64,
}

impl GradedParabolic {
    pub fn levi(&self) -> &[usize] {
        &self.levi
    }

    pub fn f_values(&self) -> &[i64] {
        &self.f_values
    }

    /// `dim g(i)` for every degree that occurs, including negative ones.
    pub fn graded_dims(&self) -> &BTreeMap<i64, usize> {
        &self.graded_dims
    }

    pub fn dim(&self, degree: i64) -> usize {
        self.graded_dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn n_p(&self) -> u64 {
        self.n_p
    }

    /// `dim g_c(0)` and `dim g_c(2)` for each component `c`.
    pub fn component_dims(&self) -> &[(usize, usize)] {
        &self.component_dims
    }

    /// `½ f(θ_c)` for each component `c`.
    pub fn component_top(&self) -> &[i64] {
        &self.component_top
    }

    /// Dimension of the nilradical.
    pub fn nilradical_dim(&self) -> usize {
        self.f_values.iter().filter(|&&f| f > 0).count()
    }

    pub fn is_proper(&self) -> bool {
        self.n_p > 1
    }
}

/// Grade `rs` by the parabolic with Levi set `levi`.
pub fn grade(rs: &RootSystem, levi: &[usize]) -> Result<GradedParabolic> {
    let set: BTreeSet<usize> = levi.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&i| i >= rs.rank()) {
        return Err(Error::InvalidParabolic(format!("simple root index {bad} out of range for rank {}", rs.rank())));
    }
    let f_values: Vec<i64> = rs
        .positive_roots()
        .iter()
        .map(|c| 2 * c.iter().enumerate().filter(|(i, _)| !set.contains(i)).map(|(_, &x)| x).sum::<i64>())
        .collect();
    let mut graded_dims = BTreeMap::new();
    graded_dims.insert(0, rs.rank());
    for &f in &f_values {
        *graded_dims.entry(f).or_insert(0) += 1;
        *graded_dims.entry(-f).or_insert(0) += 1;
    }
    let mut component_dims = Vec::new();
    let mut component_top = Vec::new();
    for (ci, comp) in rs.components().iter().enumerate() {
        let roots: Vec<usize> = (0..f_values.len()).filter(|&k| rs.component_of(k) == ci).collect();
        let zero = roots.iter().filter(|&&k| f_values[k] == 0).count();
        let two = roots.iter().filter(|&&k| f_values[k] == 2).count();
        component_dims.push((comp.cartan_type.rank + 2 * zero, two));
        component_top.push(f_values[rs.highest_root_of_component(ci)] / 2);
    }
    let n_p = component_top.iter().map(|&t| t as u64 + 1).max().unwrap_or(1);
    Ok(GradedParabolic {
        levi: set.into_iter().collect(),
        f_values,
        graded_dims,
        component_dims,
        component_top,
        n_p,
    })
}

/// `n(P) = ½ f(θ) + 1`, maximized over components; 1 when `I = S`.
pub fn n_of_p(gp: &GradedParabolic) -> u64 {
    gp.n_p
}

/// `dim g(0) = dim g(2)` in every component, counting the torus in degree 0.
pub fn is_distinguished(gp: &GradedParabolic) -> bool {
    gp.component_dims.iter().all(|&(d0, d2)| d0 == d2)
}

/// Nilpotence class read from the descending central series
/// `C^{j-1} = span{α : f(α) ≥ 2j}`.
pub fn lcs_class(gp: &GradedParabolic) -> u64 {
    let mut e = 0u64;
    while gp.f_values.iter().any(|&f| f >= 2 * (e as i64 + 1)) {
        e += 1;
    }
    e
}

/// All Levi sets whose parabolic is distinguished, sorted by size and then
/// lexicographically.
pub fn enumerate_distinguished(rs: &RootSystem) -> Result<Vec<Vec<usize>>> {
    let r = rs.rank();
    if r > 16 {
        return Err(Error::InvalidParabolic(format!("subset scan over rank {r} is too large")));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << r) {
        let levi: Vec<usize> = (0..r).filter(|i| mask >> i & 1 == 1).collect();
        if is_distinguished(&grade(rs, &levi)?) {
            out.push(levi);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// A Levi set rendered as `{0,2}`.
pub fn levi_label(levi: &[usize]) -> String {
    let inner: Vec<String> = levi.iter().map(ToString::to_string).collect();
    format!("{{{}}}", inner.join(","))
}

/// Least `m ≥ 1` with `p^m ≥ n`.
pub fn order_exponent(p: u64, n: u64) -> Result<u32> {
    check_prime(p)?;
    let mut m = 1u32;
    let mut pm = p as u128;
    while pm < n as u128 {
        pm *= p as u128;
        m += 1;
    }
    Ok(m)
}

/// Extra condition under which a quasisimple group has an
/// exponential-type representation below the generic bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThresholdCondition {
    /// Type `A_r`: `r ≢ −1 (mod p)`.
    RankNotMinusOne { rank: usize },
    /// Types `B`, `C`, `D`: `p ≠ 2`.
    OddPrime,
    /// Exceptional types: `p ≥ p0`.
    AtLeast { p0: u64, v_min: String, n_v_min: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Threshold {
    pub cartan_type: String,
    /// `2h − 2`; every prime above it is admissible.
    pub generic_bound: i64,
    pub condition: ThresholdCondition,
}

impl Threshold {
    pub fn satisfies_condition(&self, p: u64) -> bool {
        match &self.condition {
            ThresholdCondition::RankNotMinusOne { rank } => !(*rank as u64 + 1).is_multiple_of(p),
            ThresholdCondition::OddPrime => p != 2,
            ThresholdCondition::AtLeast { p0, .. } => p >= *p0,
        }
    }

    pub fn admits(&self, p: u64) -> bool {
        p as i64 > self.generic_bound || self.satisfies_condition(p)
    }
}

/// Bourbaki label of the highest weight of the smallest nontrivial module.
pub fn minimal_module_label(t: CartanType) -> Option<usize> {
    match (t.family, t.rank) {
        (Family::G, 2) => Some(1),
        (Family::F, 4) => Some(4),
        (Family::E, 6) => Some(1),
        (Family::E, 7) => Some(7),
        (Family::E, 8) => Some(8),
        _ => None,
    }
}

/// The tabulated `p0` for exceptional types.
pub fn tabulated_p0(t: CartanType) -> Option<u64> {
    match (t.family, t.rank) {
        (Family::G, 2) => Some(7),
        (Family::F, 4) => Some(17),
        (Family::E, 6) => Some(17),
        (Family::E, 7) => Some(29),
        (Family::E, 8) => Some(59),
        _ => None,
    }
}

/// `n(V_min) = <λ, Σ α^∨>` for an exceptional type.
pub fn n_v_min(rs: &RootSystem) -> Result<Option<i64>> {
    let t = rs.cartan_type()?;
    let Some(label) = minimal_module_label(t) else {
        return Ok(None);
    };
    Ok(Some(rs.weight_phi_pairing(&DominantWeight::fundamental(rs.rank(), label)?)?))
}

/// Least prime strictly above `n`.
pub fn prime_above(n: i64) -> u64 {
    let mut q = (n.max(1) + 1) as u64;
    while !is_prime(q) {
        q += 1;
    }
    q
}

pub fn exponential_type_threshold(rs: &RootSystem) -> Result<Threshold> {
    let t = rs.cartan_type()?;
    let generic_bound = 2 * rs.coxeter_number()? - 2;
    let condition = match t.family {
        Family::A => ThresholdCondition::RankNotMinusOne { rank: t.rank },
        Family::B | Family::C | Family::D => ThresholdCondition::OddPrime,
        Family::E | Family::F | Family::G => {
            let n = n_v_min(rs)?.expect("exceptional types have a minimal module");
            let label = minimal_module_label(t).expect("exceptional");
            let p0 = prime_above(n);
            ThresholdCondition::AtLeast { p0, v_min: format!("L(w{label})"), n_v_min: n }
        }
    };
    Ok(Threshold { cartan_type: t.to_string(), generic_bound, condition })
}

/// One row of the exceptional-type summary table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalRow {
    pub root_system: String,
    pub two_h_minus_two: i64,
    pub v_min: String,
    pub n_v_min: i64,
    pub p0: u64,
    pub p0_tabulated: u64,
}

pub fn exceptional_types() -> Vec<CartanType> {
    ["G2", "F4", "E6", "E7", "E8"].iter().map(|s| s.parse().expect("valid type")).collect()
}

/// Rows for G2, F4, E6, E7, E8, all derived from root data.
pub fn exceptional_table() -> Result<Vec<ExceptionalRow>> {
    exceptional_types()
        .into_iter()
        .map(|t| {
            let rs = RootSystem::from_type(t);
            let th = exponential_type_threshold(&rs)?;
            let ThresholdCondition::AtLeast { p0, v_min, n_v_min } = th.condition else {
                unreachable!("exceptional threshold");
            };
            Ok(ExceptionalRow {
                root_system: t.to_string(),
                two_h_minus_two: th.generic_bound,
                v_min,
                n_v_min,
                p0,
                p0_tabulated: tabulated_p0(t).expect("exceptional"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::all_types;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_type(s.parse().unwrap())
    }

    fn dims(gp: &GradedParabolic) -> Vec<(i64, usize)> {
        gp.graded_dims().iter().map(|(&k, &v)| (k, v)).collect()
    }

    #[test]
    fn a2_borel_grading() {
        let gp = grade(&rs("A2"), &[]).unwrap();
        assert_eq!(dims(&gp), vec![(-4, 1), (-2, 2), (0, 2), (2, 2), (4, 1)]);
    }

    #[test]
    fn g2_short_levi() {
        let g2 = rs("G2");
        let gp = grade(&g2, &[0]).unwrap();
        assert_eq!((gp.dim(0), gp.dim(2), gp.dim(4)), (4, 4, 1));
        assert_eq!(n_of_p(&gp), 3);
        assert!(is_distinguished(&gp));
        assert_eq!(lcs_class(&gp), 2);
        let long = grade(&g2, &[1]).unwrap();
        assert!(!is_distinguished(&long));
        assert_eq!((long.dim(0), long.dim(2)), (4, 2));
        assert_eq!(n_of_p(&long), 4);
    }

    #[test]
    fn full_levi_is_degree_zero() {
        let r = rs("B3");
        let gp = grade(&r, &[0, 1, 2]).unwrap();
        assert_eq!(dims(&gp), vec![(0, 21)]);
        assert_eq!(n_of_p(&gp), 1);
        assert_eq!(lcs_class(&gp), 0);
    }

    #[test]
    fn borel_values() {
        assert_eq!(n_of_p(&grade(&rs("G2"), &[]).unwrap()), 6);
        assert_eq!(n_of_p(&grade(&rs("A3"), &[]).unwrap()), 4);
        assert_eq!(lcs_class(&grade(&rs("G2"), &[]).unwrap()), 5);
        assert_eq!(lcs_class(&grade(&rs("A3"), &[]).unwrap()), 3);
    }

    #[test]
    fn distinguished_enumeration() {
        assert_eq!(enumerate_distinguished(&rs("G2")).unwrap(), vec![vec![], vec![0]]);
        assert_eq!(enumerate_distinguished(&rs("A2")).unwrap(), vec![Vec::<usize>::new()]);
        assert_eq!(enumerate_distinguished(&rs("A1")).unwrap(), vec![Vec::<usize>::new()]);
        assert_eq!(enumerate_distinguished(&rs("A7")).unwrap().len(), 1);
    }

    #[test]
    fn distinguished_counts_match_known_orbit_counts() {
        // Classical counts: partitions into distinct odd (B, D) or even (C) parts.
        for (t, count) in [("F4", 4), ("E6", 3), ("E7", 6), ("E8", 11), ("B3", 1), ("C3", 2), ("D4", 2), ("B4", 2), ("C4", 2)] {
            assert_eq!(enumerate_distinguished(&rs(t)).unwrap().len(), count, "{t}");
        }
    }

    #[test]
    fn order_exponents() {
        assert_eq!(order_exponent(5, 6).unwrap(), 2);
        assert_eq!(order_exponent(7, 6).unwrap(), 1);
        assert_eq!(order_exponent(2, 1).unwrap(), 1);
        assert_eq!(order_exponent(2, 8).unwrap(), 3);
        assert_eq!(order_exponent(2, 9).unwrap(), 4);
        assert!(order_exponent(6, 3).is_err());
    }

    #[test]
    fn thresholds() {
        let e7 = exponential_type_threshold(&rs("E7")).unwrap();
        assert!(matches!(e7.condition, ThresholdCondition::AtLeast { p0: 29, .. }));
        assert_eq!(e7.generic_bound, 34);
        let g2 = exponential_type_threshold(&rs("G2")).unwrap();
        assert!(matches!(g2.condition, ThresholdCondition::AtLeast { p0: 7, .. }));
        let a4 = exponential_type_threshold(&rs("A4")).unwrap();
        assert_eq!(a4.condition, ThresholdCondition::RankNotMinusOne { rank: 4 });
        assert!(!a4.satisfies_condition(5));
        assert!(a4.satisfies_condition(3));
        assert!(a4.admits(11));
        let c3 = exponential_type_threshold(&rs("C3")).unwrap();
        assert!(!c3.admits(2));
        assert!(c3.admits(3));
    }

    #[test]
    fn derived_p0_matches_tabulated() {
        for row in exceptional_table().unwrap() {
            assert_eq!(row.p0, row.p0_tabulated, "{}", row.root_system);
        }
        let rows = exceptional_table().unwrap();
        let col = |f: fn(&ExceptionalRow) -> i64| rows.iter().map(f).collect::<Vec<_>>();
        assert_eq!(col(|r| r.two_h_minus_two), vec![10, 22, 22, 34, 58]);
        assert_eq!(col(|r| r.n_v_min), vec![6, 16, 16, 27, 58]);
        assert_eq!(col(|r| r.p0 as i64), vec![7, 17, 17, 29, 59]);
    }

    #[test]
    fn borel_n_is_coxeter_number() {
        for t in all_types(8) {
            let r = RootSystem::from_type(t);
            assert_eq!(n_of_p(&grade(&r, &[]).unwrap()) as i64, r.coxeter_number().unwrap(), "{t}");
        }
    }

    #[test]
    fn class_is_n_minus_one_and_borel_distinguished() {
        for t in all_types(6) {
            let r = RootSystem::from_type(t);
            assert!(is_distinguished(&grade(&r, &[]).unwrap()));
            for mask in 0u32..(1 << r.rank()) {
                let levi: Vec<usize> = (0..r.rank()).filter(|i| mask >> i & 1 == 1).collect();
                let gp = grade(&r, &levi).unwrap();
                assert_eq!(lcs_class(&gp), n_of_p(&gp) - 1, "{t} {levi:?}");
                let total: usize = gp.graded_dims().values().sum();
                assert_eq!(total, r.num_roots() + r.rank());
                for (&k, &v) in gp.graded_dims() {
                    assert_eq!(gp.dim(-k), v);
                    assert_eq!(k % 2, 0);
                }
            }
        }
    }

    #[test]
    fn p_at_least_h_forces_m_one() {
        for t in all_types(8) {
            let r = RootSystem::from_type(t);
            let h = r.coxeter_number().unwrap() as u64;
            let p = prime_above(h as i64 - 1);
            for levi in enumerate_distinguished(&r).unwrap() {
                let n = n_of_p(&grade(&r, &levi).unwrap());
                assert_eq!(order_exponent(p, n).unwrap(), 1);
            }
        }
    }

    #[test]
    fn diagram_automorphism_invariance() {
        let check = |r: &RootSystem, sigma: &dyn Fn(usize) -> usize| {
            let ds = enumerate_distinguished(r).unwrap();
            let set: BTreeSet<Vec<usize>> = ds.iter().cloned().collect();
            for levi in &ds {
                let mut image: Vec<usize> = levi.iter().map(|&i| sigma(i)).collect();
                image.sort();
                assert!(set.contains(&image));
            }
        };
        for r in 1..=8 {
            let a = RootSystem::new(Family::A, r).unwrap();
            check(&a, &|i| r - 1 - i);
        }
        for r in 4..=8 {
            let d = RootSystem::new(Family::D, r).unwrap();
            check(&d, &|i| if i == r - 2 { r - 1 } else if i == r - 1 { r - 2 } else { i });
        }
        let e6 = rs("E6");
        check(&e6, &|i| [5, 1, 4, 3, 2, 0][i]);
    }

    #[test]
    fn products_take_supremum() {
        let r = RootSystem::product(&["A1".parse().unwrap(), "G2".parse().unwrap()]);
        let gp = grade(&r, &[1]).unwrap();
        assert_eq!(n_of_p(&gp), 3);
        assert!(is_distinguished(&gp));
        let gp = grade(&r, &[0]).unwrap();
        assert_eq!(n_of_p(&gp), 6);
        assert!(!is_distinguished(&gp));
    }
}
