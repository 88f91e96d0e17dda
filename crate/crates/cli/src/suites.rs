//! Verification suites run by `verify`. Every check yields one row.

use rand::Rng;
use serde::Serialize;
use unipotent::artinhasse::{
    ah_product_form, ah_series, ex_eval, ghost_factorization_check, lattice_preservation, span_p_exponent, witt_lie_basis,
};
use unipotent::chevalley::{run_order_cases, Kind, OrderPlan, OrderReport, Outcome};
use unipotent::commvar::{
    census, injectivity_scan, is_member, one_psg, random_invertible, random_strict_upper_member, recover_tuple, Ambient,
};
use unipotent::exact::{ExactPoly, Fp, Rational};
use unipotent::matlie::{
    bch, exp_nilpotent, inverse, jacobson_defect, jordan_block, simultaneous_strict_triangularize, unipotent_order,
    FpMatrix, Matrix, QMatrix,
};
use unipotent::rng::stream;
use unipotent::witt::{all_vectors, witt_sum_polynomials, GroupLaw, TruncatedDerivation};
use unipotent::Result;

pub const SUITES: [&str; 5] = ["orders", "witt", "artinhasse", "bch", "commvar"];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub max_rank: usize,
    pub primes: Vec<u64>,
    pub classical_primes: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub suite: &'static str,
    pub case: String,
    pub outcome: Outcome,
    pub detail: String,
}

fn row(suite: &'static str, case: impl Into<String>, pass: bool, detail: impl Into<String>) -> Row {
    Row { suite, case: case.into(), outcome: if pass { Outcome::Pass } else { Outcome::Fail }, detail: detail.into() }
}

pub fn run(suite: &str, cfg: &SuiteConfig) -> Result<Vec<Row>> {
    match suite {
        "orders" => orders(cfg),
        "witt" => witt(cfg),
        "artinhasse" => artin_hasse(cfg),
        "bch" => bch_suite(cfg),
        "commvar" => commvar(cfg),
        _ => unreachable!("suite names are validated by the caller"),
    }
}

/// `gl_n` for `n ≤ max_rank` at `primes`; every classical realization of
/// dimension at most `max_rank` at the good primes among `classical_primes`.
pub fn order_plan(cfg: &SuiteConfig) -> OrderPlan {
    let mut classical = Vec::new();
    for dim in 4..=cfg.max_rank {
        if dim % 2 == 0 {
            classical.push((Kind::Cg2, dim));
        }
        if dim >= 5 && (dim % 2 == 1 || dim >= 8) {
            classical.push((Kind::Cg3, dim));
        }
    }
    OrderPlan {
        max_gl: cfg.max_rank,
        gl_primes: cfg.primes.clone(),
        classical,
        classical_primes: cfg.classical_primes.clone(),
    }
}

fn report_row(r: &OrderReport) -> Row {
    let jordan: Vec<String> = r.jordan_type.iter().map(ToString::to_string).collect();
    let order = r.measured_order.map_or("none".to_string(), |o| o.to_string());
    Row {
        suite: "orders",
        case: r.case_id.clone(),
        outcome: r.outcome,
        detail: format!(
            "n_p={} m={} predicted={} degree={} order={} jordan=({}) trials={}",
            r.n_p,
            r.m,
            r.predicted_order,
            r.measured_degree,
            order,
            jordan.join(","),
            r.trials_used
        ),
    }
}

fn orders(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let cases = order_plan(cfg).cases()?;
    Ok(run_order_cases(&cases, cfg.trials, cfg.seed)?.iter().map(report_row).collect())
}

fn witt(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (p, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let law = GroupLaw::witt(p, n)?.compile(&(p as u32))?;
        let elems = law.elements();
        let zero = law.zero();
        let ok = elems.iter().all(|a| {
            law.add(a, &zero) == *a
                && law.add(a, &law.neg(a)) == zero
                && elems.iter().all(|b| {
                    let ab = law.add(a, b);
                    ab == law.add(b, a) && elems.iter().all(|c| law.add(&ab, c) == law.add(a, &law.add(b, c)))
                })
        });
        rows.push(row("witt", format!("group_law/p={p}/n={n}"), ok, format!("{} elements, exhaustive", elems.len())));
    }
    for (p, n) in [(5u64, 2usize), (3, 3)] {
        let law = GroupLaw::witt(p, n)?.compile(&(p as u32))?;
        let mut rng = stream(cfg.seed, &format!("witt/sampled/{p}/{n}"));
        let mut draw = || -> Vec<Fp> { (0..n).map(|_| Fp(rng.gen_range(0..p as u32))).collect() };
        let ok = (0..1000).all(|_| {
            let (a, b, c) = (draw(), draw(), draw());
            law.add(&a, &b) == law.add(&b, &a) && law.add(&law.add(&a, &b), &c) == law.add(&a, &law.add(&b, &c))
        });
        rows.push(row("witt", format!("group_law_sampled/p={p}/n={n}"), ok, "1000 random triples"));
    }
    for p in [2u64, 3, 5] {
        let sums = witt_sum_polynomials(p, 4)?;
        let ok = sums.iter().all(ExactPoly::has_integer_coeffs);
        rows.push(row("witt", format!("integrality/p={p}/n=4"), ok, "sum polynomials S_0..S_3"));
    }
    for p in [2u64, 3, 5] {
        let law = GroupLaw::witt(p, 2)?.compile(&(p as u32))?;
        let full = p * p;
        let ok = law.elements().iter().all(|a| (law.order(a, full) == Some(full)) == (a[0].0 != 0));
        rows.push(row("witt", format!("order/p={p}/n=2"), ok, "order p^2 iff t0 != 0"));
    }
    for p in [2u32, 3, 5] {
        let bound = 4 * p;
        let ds = GroupLaw::witt(p as u64, 2)?.invariant_derivations(bound)?;
        let d1 = TruncatedDerivation::partial(p, 2, 1, bound)?;
        let ok = ds[0].p_power()? == d1 && ds[1] == d1;
        rows.push(row("witt", format!("derivation_p_power/p={p}"), ok, "X0^[p] = X1 at degree 4p"));
    }
    for p in [2u32, 3] {
        let law = GroupLaw::frobenius_twisted(p as u64)?;
        let ds = law.invariant_derivations(4 * p)?;
        let mut ok = law.compile(&p)?.exponent() == (p as u64).pow(2);
        for a in 0..p {
            for b in 0..p {
                ok &= ds[0].linear_combination(a, &ds[1], b)?.p_power()?.is_zero();
            }
        }
        rows.push(row("witt", format!("twisted_law/p={p}"), ok, "exponent p^2, p-th powers vanish"));
    }
    Ok(rows)
}

fn artin_hasse(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let f = ah_series(p, 60)?;
        let integral = f.valuations().iter().all(|v| v.is_nonnegative());
        rows.push(row("artinhasse", format!("integrality/p={p}"), integral, "60 coefficients"));
        let product = ah_product_form(p, 60)?;
        rows.push(row("artinhasse", format!("product_form/p={p}"), product.coeffs() == f.coeffs(), "60 coefficients"));
    }
    for (p, n) in [(2u64, 2usize), (3, 2)] {
        let size = (p as usize).pow(n as u32 - 1) + 1;
        let x = jordan_block::<Fp>(&(p as u32), size);
        let law = GroupLaw::witt(p, n)?.compile(&(p as u32))?;
        let elems = all_vectors(p as u32, n);
        let images = elems.iter().map(|t| ex_eval(&x, t, p)).collect::<Result<Vec<_>>>()?;
        let mut hom = true;
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                let k = elems.iter().position(|e| *e == law.add(a, b)).expect("closed");
                hom &= images[k] == &images[i] * &images[j];
            }
        }
        rows.push(row("artinhasse", format!("homomorphism/p={p}/n={n}"), hom, "exhaustive"));
        let full = p.pow(n as u32);
        let orders = elems.iter().zip(&images).all(|(t, u)| (unipotent_order(u, n as u32 + 1) == Some(full)) == (t[0].0 != 0));
        rows.push(row("artinhasse", format!("witt_subgroup_order/p={p}/n={n}"), orders, "order p^n iff t0 != 0"));
    }
    for (p, n) in [(2u64, 2usize), (3, 2), (2, 3), (5, 2)] {
        let e = span_p_exponent(&witt_lie_basis(p, n)?)?;
        rows.push(row("artinhasse", format!("span_p_exponent/p={p}/n={n}"), e == n as u32, format!("exponent {e}")));
    }
    for (p, n) in [(2u64, 2usize), (3, 2), (2, 3), (3, 3)] {
        let size = (p as usize).pow(n as u32 - 1) + 1;
        let x: Matrix<ExactPoly> = jordan_block(&(), size);
        let t: Vec<ExactPoly> = (0..n).map(ExactPoly::var).collect();
        let ok = ghost_factorization_check(&x, &t, p)?;
        rows.push(row("artinhasse", format!("ghost_factorization/p={p}/n={n}"), ok, "symbolic"));
    }
    let mut rng = stream(cfg.seed, "artinhasse/ghost");
    let x = jordan_block::<Rational>(&(), 3);
    let mut ok = true;
    for _ in 0..50 {
        let t: Vec<Rational> = (0..2).map(|_| Rational::frac(rng.gen_range(-20..20), rng.gen_range(1..9))).collect();
        ok &= ghost_factorization_check(&x, &t, 2)?;
    }
    rows.push(row("artinhasse", "ghost_factorization_sampled/p=2/n=2", ok, "50 rational points"));
    for p in [3u64, 5] {
        let j = jordan_block::<Rational>(&(), p as usize + 1);
        let plain = lattice_preservation(&j, p)?;
        let scaled = lattice_preservation(&j.scale(&Rational::from_int(p as i64)), p)?;
        let ok = !plain.preserved && scaled.preserved && scaled.sufficient_condition;
        rows.push(row("artinhasse", format!("lattice/p={p}"), ok, "J_{p+1} fails, p*J_{p+1} preserves"));
    }
    Ok(rows)
}

fn random_strict_upper_q(n: usize, rng: &mut unipotent::rng::StreamRng) -> QMatrix {
    QMatrix::from_fn(&(), n, n, |i, j| {
        if j > i { Rational::frac(rng.gen_range(-6..=6), rng.gen_range(1..=4)) } else { Rational::zero() }
    })
}

fn bch_suite(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let mut rng = stream(cfg.seed, "bch");
    let half = Rational::frac(1, 2);
    let twelfth = Rational::frac(1, 12);
    for n in 3..=6usize {
        let (mut group, mut cubic, mut integral) = (true, true, true);
        for _ in 0..25 {
            let x = random_strict_upper_q(n, &mut rng);
            let y = random_strict_upper_q(n, &mut rng);
            let z = bch(&x, &y)?;
            group &= exp_nilpotent(&z)? == &exp_nilpotent(&x)? * &exp_nilpotent(&y)?;
            if n <= 4 {
                let xy = x.commutator(&y);
                let series = &(&(&x + &y) + &xy.scale(&half))
                    + &(&x.commutator(&xy) + &y.commutator(&y.commutator(&x))).scale(&twelfth);
                cubic &= z == series;
            }
            let scaled = bch(&x.scale(&Rational::from_int(12)), &y.scale(&Rational::from_int(12)))?;
            for p in [7u64, 11, 13] {
                if p >= n as u64 {
                    integral &= scaled.entries().iter().all(|e| e.is_p_integral(p));
                }
            }
        }
        rows.push(row("bch", format!("exp_of_product/n={n}"), group, "25 random pairs"));
        if n <= 4 {
            rows.push(row("bch", format!("cubic_truncation/n={n}"), cubic, "class <= 3"));
        }
        rows.push(row("bch", format!("denominators/n={n}"), integral, "p-integral for p >= n"));
    }
    let mut defect_ok = true;
    for _ in 0..500 {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(2..=4);
        let xs: Vec<FpMatrix> = (0..k)
            .map(|_| FpMatrix::from_fn(&p, n, n, |i, j| if j > i { Fp(rng.gen_range(0..p)) } else { Fp(0) }))
            .collect();
        defect_ok &= jacobson_defect(&xs)?.1;
    }
    rows.push(row("bch", "jacobson_defect", defect_ok, "500 random families"));
    Ok(rows)
}

fn commvar(cfg: &SuiteConfig) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (p, d, ambient, expected) in
        [(2u32, 1usize, "strict-upper:2", 2u64), (2, 2, "strict-upper:2", 4), (2, 1, "gl:2", 4), (2, 2, "gl:2", 10)]
    {
        let count = census(p, d, &ambient.parse()?)?;
        rows.push(row("commvar", format!("census/{ambient}/p={p}/d={d}"), count == expected, format!("count {count}")));
    }
    let report = injectivity_scan(5, 2, &Ambient::StrictUpper(3))?;
    rows.push(row(
        "commvar",
        "injectivity/strict-upper:3/p=5/d=2",
        report.injective(),
        format!("{} members, {} distinct maps", report.members, report.distinct_maps),
    ));
    let mut rng = stream(cfg.seed, "commvar/triangularize");
    let mut ok = true;
    for _ in 0..500 {
        let d = rng.gen_range(1..=3);
        let tri = random_strict_upper_member(4, 5, d, &mut rng)?;
        let g = random_invertible(4, 5, &mut rng);
        let gi = inverse(&g)?;
        let tuple: Vec<FpMatrix> = tri.iter().map(|x| &(&g * x) * &gi).collect();
        ok &= is_member(&tuple)?;
        let h = simultaneous_strict_triangularize(&tuple)?;
        let hi = inverse(&h)?;
        ok &= tuple.iter().all(|x| (&(&h * x) * &hi).is_strictly_upper());
    }
    rows.push(row("commvar", "triangularize/gl:4/p=5", ok, "500 conjugated members"));
    let mut rng = stream(cfg.seed, "commvar/homomorphism");
    let mut ok = true;
    for _ in 0..100 {
        let t = random_strict_upper_member(3, 5, 2, &mut rng)?;
        let m = one_psg(&t)?;
        ok &= m.is_homomorphism() && recover_tuple(&m, 2)? == t;
    }
    rows.push(row("commvar", "homomorphism/strict-upper:3/p=5/d=2", ok, "100 random members"));
    Ok(rows)
}
