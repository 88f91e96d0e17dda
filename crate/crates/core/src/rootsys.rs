//! Root systems of types A–G as integer data over the simple roots.
//!
//! Simple roots follow Bourbaki numbering. The Cartan matrix convention is
//! `a_ij = <α_i^∨, α_j>`, so the simple reflection `s_i` sends a root with
//! coefficients `c` to `c − (Σ_j a_ij c_j) e_i`. Decomposable systems are
//! products of indecomposable components laid out consecutively.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{check_prime, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    pub fn is_exceptional(self) -> bool {
        matches!(self, Family::E | Family::F | Family::G)
    }
}

/// A family letter with a rank, e.g. `E8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidRootSystem { family: family.letter(), rank })
        }
    }

    /// Cartan matrix in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut a = vec![vec![0i64; r]; r];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            a[i][j] = -1;
            a[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C => {
                for i in 0..r - 1 {
                    link(i, i + 1);
                }
            }
            Family::D => {
                for i in 0..r - 2 {
                    link(i, i + 1);
                }
                link(r - 3, r - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 2..r - 1 {
                    link(i, i + 1);
                }
            }
            Family::F => {
                link(0, 1);
                link(1, 2);
                link(2, 3);
            }
            Family::G => link(0, 1),
        }
        match self.family {
            // α_r short
            Family::B => a[r - 1][r - 2] = -2,
            // α_r long
            Family::C => a[r - 2][r - 1] = -2,
            // α_1, α_2 long; α_3, α_4 short
            Family::F => a[2][1] = -2,
            // α_1 short, α_2 long
            Family::G => a[0][1] = -3,
            _ => {}
        }
        a
    }

    /// Bad primes of the indecomposable system.
    pub fn bad_primes(&self) -> &'static [u64] {
        match self.family {
            Family::A => &[],
            Family::B | Family::C | Family::D => &[2],
            Family::E if self.rank == 8 => &[2, 3, 5],
            Family::E | Family::F | Family::G => &[2, 3],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses `G2`, `e8`, `A_3`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| Error::Parse("empty Cartan type".into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return Err(Error::Parse(format!("unknown family in {s:?}"))),
        };
        let rank: usize = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in {s:?}")))?;
        CartanType::new(family, rank)
    }
}

/// One indecomposable factor; its simple roots are `offset..offset + rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub cartan_type: CartanType,
    pub offset: usize,
}

impl Component {
    pub fn simple_indices(&self) -> std::ops::Range<usize> {
        self.offset..self.offset + self.cartan_type.rank
    }
}

/// Non-negative coefficients over the fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominantWeight(Vec<i64>);

impl DominantWeight {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.iter().any(|&c| c < 0) {
            return Err(Error::NonDominantWeight(coeffs));
        }
        Ok(DominantWeight(coeffs))
    }

    /// The fundamental weight `ϖ_i` (1-based Bourbaki label).
    pub fn fundamental(rank: usize, label: usize) -> Result<Self> {
        if label == 0 || label > rank {
            return Err(Error::DimensionMismatch(format!("no fundamental weight {label} in rank {rank}")));
        }
        let mut c = vec![0; rank];
        c[label - 1] = 1;
        Ok(DominantWeight(c))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }
}

/// Which length class a root belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Length {
    Long,
    Short,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    components: Vec<Component>,
    cartan: Vec<Vec<i64>>,
    /// `d_i = (α_i, α_i)/2`, scaled so the shortest root in each component has 1.
    symmetrizer: Vec<i64>,
    positive: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    lengths: Vec<Length>,
    component_of_root: Vec<usize>,
}

impl RootSystem {
    /// The indecomposable system of the given type.
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        Ok(Self::product(&[CartanType::new(family, rank)?]))
    }

    pub fn from_type(t: CartanType) -> Self {
        Self::product(&[t])
    }

    /// Product of indecomposable systems.
    pub fn product(types: &[CartanType]) -> Self {
        let rank: usize = types.iter().map(|t| t.rank).sum();
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut components = Vec::new();
        let mut offset = 0;
        for &t in types {
            let a = t.cartan_matrix();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    cartan[offset + i][offset + j] = a[i][j];
                }
            }
            components.push(Component { cartan_type: t, offset });
            offset += t.rank;
        }
        let symmetrizer = symmetrizer(&cartan);
        let positive = enumerate_positive_roots(&cartan);
        let component_of_root = positive
            .iter()
            .map(|c| {
                components
                    .iter()
                    .position(|comp| comp.simple_indices().any(|i| c[i] != 0))
                    .expect("root lies in a component")
            })
            .collect::<Vec<_>>();
        let norms: Vec<i64> = positive.iter().map(|c| norm(&cartan, &symmetrizer, c)).collect();
        let lengths = positive
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let comp = component_of_root[k];
                let max = (0..positive.len())
                    .filter(|&j| component_of_root[j] == comp)
                    .map(|j| norms[j])
                    .max()
                    .expect("component has roots");
                if norms[k] == max {
                    Length::Long
                } else {
                    Length::Short
                }
            })
            .collect();
        let coroots = positive
            .iter()
            .zip(&norms)
            .map(|(c, &nrm)| {
                c.iter()
                    .enumerate()
                    .map(|(i, &ci)| {
                        let num = ci * 2 * symmetrizer[i];
                        assert_eq!(num % nrm, 0, "coroot coefficients are integral");
                        num / nrm
                    })
                    .collect()
            })
            .collect();
        RootSystem { components, cartan, symmetrizer, positive, coroots, lengths, component_of_root }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_indecomposable(&self) -> bool {
        self.components.len() == 1
    }

    /// Type of an indecomposable system.
    pub fn cartan_type(&self) -> Result<CartanType> {
        match self.components.as_slice() {
            [c] => Ok(c.cartan_type),
            _ => Err(Error::Decomposable),
        }
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    /// Positive roots as coefficient vectors, sorted by height then lexicographically.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn coroot(&self, k: usize) -> &[i64] {
        &self.coroots[k]
    }

    pub fn length(&self, k: usize) -> Length {
        self.lengths[k]
    }

    pub fn component_of(&self, k: usize) -> usize {
        self.component_of_root[k]
    }

    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.positive.iter().position(|c| c == coeffs)
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    /// Squared length `(α, α)` in the normalization of [`Self::symmetrizer`].
    pub fn norm(&self, coeffs: &[i64]) -> i64 {
        norm(&self.cartan, &self.symmetrizer, coeffs)
    }

    /// `<α^∨, β>` for coefficient vectors `α`, `β`.
    pub fn pairing(&self, alpha: &[i64], beta: &[i64]) -> Rational {
        let ip = inner(&self.cartan, &self.symmetrizer, alpha, beta);
        Rational::frac(2 * ip, self.norm(alpha))
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, i: usize, coeffs: &[i64]) -> Vec<i64> {
        reflect(&self.cartan, i, coeffs)
    }

    fn single(&self) -> Result<&Component> {
        match self.components.as_slice() {
            [c] => Ok(c),
            _ => Err(Error::Decomposable),
        }
    }

    fn highest_of(&self, comp: usize, len: Length) -> Option<usize> {
        let candidates: Vec<usize> = (0..self.positive.len())
            .filter(|&k| self.component_of_root[k] == comp && self.lengths[k] == len)
            .collect();
        let max = candidates.iter().map(|&k| height(&self.positive[k])).max()?;
        let top: Vec<usize> = candidates.into_iter().filter(|&k| height(&self.positive[k]) == max).collect();
        assert_eq!(top.len(), 1, "maximal height root of a length class is unique");
        Some(top[0])
    }

    /// Index of the highest root of a component (always long).
    pub fn highest_root_of_component(&self, comp: usize) -> usize {
        self.highest_of(comp, Length::Long).expect("long roots exist")
    }

    /// Index of the short root of maximal height of a component; the
    /// highest root when the component is simply laced.
    pub fn highest_short_root_of_component(&self, comp: usize) -> usize {
        self.highest_of(comp, Length::Short)
            .unwrap_or_else(|| self.highest_root_of_component(comp))
    }

    /// Coefficients of the long root of maximal height.
    pub fn highest_long_root(&self) -> Result<Vec<i64>> {
        self.single()?;
        Ok(self.positive[self.highest_root_of_component(0)].clone())
    }

    /// Coefficients of the short root of maximal height.
    pub fn highest_short_root(&self) -> Result<Vec<i64>> {
        self.single()?;
        Ok(self.positive[self.highest_short_root_of_component(0)].clone())
    }

    /// `h = ht(θ) + 1`.
    pub fn coxeter_number(&self) -> Result<i64> {
        Ok(height(&self.highest_long_root()?) + 1)
    }

    pub fn coxeter_number_of_component(&self, comp: usize) -> i64 {
        height(&self.positive[self.highest_root_of_component(comp)]) + 1
    }

    /// Goodness of `p`, decided from the bad-prime list and again from the
    /// coroot of the highest short root; the two must agree.
    pub fn is_good_prime(&self, p: u64) -> Result<bool> {
        check_prime(p)?;
        let mut good = true;
        for (ci, comp) in self.components.iter().enumerate() {
            let by_list = !comp.cartan_type.bad_primes().contains(&p);
            let beta = self.highest_short_root_of_component(ci);
            let by_coroot = comp.simple_indices().all(|i| self.coroots[beta][i] % p as i64 != 0);
            if by_list != by_coroot {
                return Err(Error::GoodPrimeDisagreement {
                    family: comp.cartan_type.family.letter(),
                    rank: comp.cartan_type.rank,
                    p,
                });
            }
            good &= by_list;
        }
        Ok(good)
    }

    /// Order of the fundamental group, the determinant of the Cartan matrix.
    pub fn fundamental_group_order(&self) -> i64 {
        determinant(&self.cartan)
    }

    /// Σ over positive roots of the coroot coefficient vectors.
    pub fn coroot_sum(&self) -> Vec<i64> {
        let mut s = vec![0; self.rank()];
        for c in &self.coroots {
            for (a, b) in s.iter_mut().zip(c) {
                *a += b;
            }
        }
        s
    }

    /// `<λ, Σ_{α>0} α^∨>` for a dominant weight `λ`.
    pub fn weight_phi_pairing(&self, lambda: &DominantWeight) -> Result<i64> {
        if lambda.coeffs().len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "weight has {} coefficients, rank is {}",
                lambda.coeffs().len(),
                self.rank()
            )));
        }
        Ok(lambda.coeffs().iter().zip(self.coroot_sum()).map(|(l, c)| l * c).sum())
    }

    /// A root expressed over the fundamental weights: `(<α_i^∨, β>)_i`.
    pub fn root_as_weight(&self, coeffs: &[i64]) -> Vec<i64> {
        (0..self.rank()).map(|i| (0..self.rank()).map(|j| self.cartan[i][j] * coeffs[j]).sum()).collect()
    }

    pub fn dump(&self) -> RootSystemDump {
        RootSystemDump {
            components: self.components.iter().map(|c| c.cartan_type.to_string()).collect(),
            rank: self.rank(),
            cartan: self.cartan.clone(),
            positive_roots: (0..self.positive.len())
                .map(|k| RootEntry {
                    coeffs: self.positive[k].clone(),
                    height: height(&self.positive[k]),
                    coroot: self.coroots[k].clone(),
                    length: self.lengths[k],
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootEntry {
    pub coeffs: Vec<i64>,
    pub height: i64,
    pub coroot: Vec<i64>,
    pub length: Length,
}

/// Serializable view of a root system.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystemDump {
    pub components: Vec<String>,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<RootEntry>,
}

pub fn height(coeffs: &[i64]) -> i64 {
    coeffs.iter().sum()
}

fn reflect(cartan: &[Vec<i64>], i: usize, c: &[i64]) -> Vec<i64> {
    let k: i64 = (0..c.len()).map(|j| cartan[i][j] * c[j]).sum();
    let mut out = c.to_vec();
    out[i] -= k;
    out
}

fn inner(cartan: &[Vec<i64>], d: &[i64], a: &[i64], b: &[i64]) -> i64 {
    let r = a.len();
    let mut s = 0;
    for i in 0..r {
        if a[i] == 0 {
            continue;
        }
        for j in 0..r {
            s += a[i] * b[j] * d[i] * cartan[i][j];
        }
    }
    s
}

fn norm(cartan: &[Vec<i64>], d: &[i64], c: &[i64]) -> i64 {
    inner(cartan, d, c, c)
}

/// `d` with `d_i a_ij = d_j a_ji`, normalized per connected component so
/// that the smallest entry is 1.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let r = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; r];
    let mut out = vec![0; r];
    for start in 0..r {
        if d[start].is_some() {
            continue;
        }
        let mut comp = vec![start];
        d[start] = Some(Rational::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..r {
                if i != j && cartan[i][j] != 0 && d[j].is_none() {
                    let di = d[i].clone().expect("visited");
                    d[j] = Some(di * Rational::frac(cartan[i][j], cartan[j][i]));
                    comp.push(j);
                    queue.push_back(j);
                }
            }
        }
        let min = comp.iter().map(|&i| d[i].clone().expect("set")).min().expect("nonempty");
        for &i in &comp {
            let v = d[i].clone().expect("set") / min.clone();
            out[i] = v.to_i64().expect("symmetrizer ratios are integral");
        }
    }
    out
}

/// Positive roots by closing the simple roots under simple reflections.
fn enumerate_positive_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut e = vec![0; r];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(c) = queue.pop_front() {
        for i in 0..r {
            let s = reflect(cartan, i, &c);
            if s.iter().all(|&x| x >= 0) && seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    roots.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
    roots
}

fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> =
        m.iter().map(|row| row.iter().map(|&x| Rational::from_int(x)).collect()).collect();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det = det * a[c][c].clone();
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= &t;
            }
        }
    }
    det.to_i64().expect("integer determinant")
}

/// All indecomposable types of rank at most `max_rank`.
pub fn all_types(max_rank: usize) -> Vec<CartanType> {
    let mut out = Vec::new();
    for r in 1..=max_rank {
        out.push(CartanType { family: Family::A, rank: r });
    }
    for r in 2..=max_rank {
        out.push(CartanType { family: Family::B, rank: r });
    }
    for r in 3..=max_rank {
        out.push(CartanType { family: Family::C, rank: r });
    }
    for r in 4..=max_rank {
        out.push(CartanType { family: Family::D, rank: r });
    }
    for r in 6..=max_rank.min(8) {
        out.push(CartanType { family: Family::E, rank: r });
    }
    if max_rank >= 4 {
        out.push(CartanType { family: Family::F, rank: 4 });
    }
    if max_rank >= 2 {
        out.push(CartanType { family: Family::G, rank: 2 });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::from_type(s.parse().unwrap())
    }

    #[test]
    fn g2_roots_and_heights() {
        let g2 = rs("G2");
        let mut heights: Vec<i64> = g2.positive_roots().iter().map(|c| height(c)).collect();
        heights.sort();
        assert_eq!(heights, vec![1, 1, 2, 3, 4, 5]);
        assert_eq!(g2.highest_long_root().unwrap(), vec![3, 2]);
        assert_eq!(g2.highest_short_root().unwrap(), vec![2, 1]);
        assert_eq!(g2.coxeter_number().unwrap(), 6);
    }

    #[test]
    fn a1_single_root() {
        let a1 = rs("A1");
        assert_eq!(a1.positive_roots(), &[vec![1]]);
        assert_eq!(a1.fundamental_group_order(), 2);
    }

    #[test]
    fn classical_counts() {
        let expected = |t: CartanType| -> usize {
            let r = t.rank;
            match t.family {
                Family::A => r * (r + 1) / 2,
                Family::B | Family::C => r * r,
                Family::D => r * (r - 1),
                Family::E => [36, 63, 120][r - 6],
                Family::F => 24,
                Family::G => 6,
            }
        };
        for t in all_types(8) {
            assert_eq!(RootSystem::from_type(t).positive_roots().len(), expected(t), "{t}");
        }
    }

    #[test]
    fn highest_roots_and_coxeter_numbers() {
        assert_eq!(rs("A4").highest_long_root().unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(height(&rs("C3").highest_long_root().unwrap()), 5);
        assert_eq!(rs("C3").coxeter_number().unwrap(), 6);
        assert_eq!(rs("E8").coxeter_number().unwrap(), 30);
        assert_eq!(rs("F4").coxeter_number().unwrap(), 12);
        assert_eq!(rs("E7").coxeter_number().unwrap(), 18);
        assert_eq!(rs("E6").coxeter_number().unwrap(), 12);
    }

    #[test]
    fn good_primes() {
        assert!(!rs("B3").is_good_prime(2).unwrap());
        assert!(rs("A5").is_good_prime(2).unwrap());
        assert!(!rs("E8").is_good_prime(5).unwrap());
        assert!(rs("E7").is_good_prime(5).unwrap());
        assert!(!rs("G2").is_good_prime(3).unwrap());
        assert!(rs("G2").is_good_prime(5).unwrap());
        assert_eq!(rs("A2").is_good_prime(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn good_prime_forms_agree_everywhere() {
        for t in all_types(8) {
            let r = RootSystem::from_type(t);
            for p in (2..=31).filter(|&p| crate::exact::is_prime(p)) {
                r.is_good_prime(p).unwrap();
            }
        }
    }

    #[test]
    fn fundamental_group_orders() {
        assert_eq!(rs("A2").fundamental_group_order(), 3);
        assert_eq!(rs("E8").fundamental_group_order(), 1);
        assert_eq!(rs("E6").fundamental_group_order(), 3);
        assert_eq!(rs("D4").fundamental_group_order(), 4);
        assert_eq!(rs("B3").fundamental_group_order(), 2);
    }

    #[test]
    fn minimal_module_pairings() {
        let pair = |t: &str, label: usize| {
            let r = rs(t);
            r.weight_phi_pairing(&DominantWeight::fundamental(r.rank(), label).unwrap()).unwrap()
        };
        assert_eq!(pair("G2", 1), 6);
        assert_eq!(pair("F4", 4), 16);
        assert_eq!(pair("E6", 1), 16);
        assert_eq!(pair("E7", 7), 27);
        assert_eq!(pair("E8", 8), 58);
    }

    #[test]
    fn adjoint_pairing_is_twice_coxeter_minus_two() {
        for t in all_types(8) {
            let r = RootSystem::from_type(t);
            let theta = r.highest_long_root().unwrap();
            let w = DominantWeight::new(r.root_as_weight(&theta)).unwrap();
            assert_eq!(r.weight_phi_pairing(&w).unwrap(), 2 * r.coxeter_number().unwrap() - 2, "{t}");
        }
    }

    #[test]
    fn non_dominant_rejected() {
        assert!(matches!(DominantWeight::new(vec![1, -1]), Err(Error::NonDominantWeight(_))));
        let r = rs("A2");
        assert!(r.weight_phi_pairing(&DominantWeight::new(vec![1]).unwrap()).is_err());
    }

    #[test]
    fn closure_and_positivity() {
        for t in all_types(8) {
            let r = RootSystem::from_type(t);
            let pos: HashSet<Vec<i64>> = r.positive_roots().iter().cloned().collect();
            let neg: HashSet<Vec<i64>> = pos.iter().map(|c| c.iter().map(|x| -x).collect()).collect();
            assert!(pos.is_disjoint(&neg));
            for c in &pos {
                for i in 0..r.rank() {
                    let s = r.reflect(i, c);
                    assert!(pos.contains(&s) || neg.contains(&s), "{t}: s_{i}({c:?}) = {s:?}");
                }
            }
            let simple = r.positive_roots().iter().filter(|c| height(c) == 1).count();
            assert_eq!(simple, r.rank());
        }
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(RootSystem::new(Family::G, 3).is_err());
        assert!(RootSystem::new(Family::E, 9).is_err());
        assert!(RootSystem::new(Family::A, 0).is_err());
        assert!("X4".parse::<CartanType>().is_err());
    }

    #[test]
    fn products_are_componentwise() {
        let r = RootSystem::product(&["A1".parse().unwrap(), "G2".parse().unwrap()]);
        assert_eq!(r.positive_roots().len(), 7);
        assert!(!r.is_good_prime(3).unwrap());
        assert!(r.is_good_prime(5).unwrap());
        assert_eq!(r.coxeter_number(), Err(Error::Decomposable));
        assert_eq!(r.fundamental_group_order(), 2);
    }

    #[test]
    fn length_classes() {
        let b2 = rs("B2");
        let long = (0..4).filter(|&k| b2.length(k) == Length::Long).count();
        assert_eq!(long, 2);
        let e6 = rs("E6");
        assert!((0..36).all(|k| e6.length(k) == Length::Long));
    }
}
