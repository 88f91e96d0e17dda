use rand::Rng;
use unipotent::artinhasse::{ah_series, ex_eval, ghost_argument, ghost_factorization_check};
use unipotent::matlie::exp_nilpotent;
use unipotent::exact::{ExactPoly, Fp, Rational};
use unipotent::matlie::{jordan_block, Matrix};
use unipotent::rng::stream;
use unipotent::witt::{all_vectors, GroupLaw};

#[test]
fn integrality_first_sixty() {
    for p in [2, 3, 5, 7] {
        let f = ah_series(p, 60).unwrap();
        assert!(f.valuations().iter().all(|v| v.is_nonnegative()), "p = {p}");
    }
}

fn homomorphism_exhaustive(p: u64, n: usize) {
    let size = (p as usize).pow(n as u32 - 1) + 1;
    let x = jordan_block::<Fp>(&(p as u32), size);
    let law = GroupLaw::witt(p, n).unwrap().compile(&(p as u32)).unwrap();
    let elems = all_vectors(p as u32, n);
    let images: Vec<_> = elems.iter().map(|t| ex_eval(&x, t, p).unwrap()).collect();
    for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate() {
            let sum = law.add(a, b);
            let k = elems.iter().position(|e| *e == sum).unwrap();
            assert_eq!(images[k], &images[i] * &images[j], "p={p} n={n} a={a:?} b={b:?}");
        }
    }
}

#[test]
fn ex_is_a_homomorphism() {
    homomorphism_exhaustive(2, 2);
    homomorphism_exhaustive(3, 2);
    homomorphism_exhaustive(2, 3);
}

#[test]
fn ghost_factorization_rational_samples() {
    let x = jordan_block::<Rational>(&(), 3);
    let mut rng = stream(5, "ghost-factorization");
    for _ in 0..50 {
        let t: Vec<Rational> =
            (0..2).map(|_| Rational::frac(rng.gen_range(-20..20), rng.gen_range(1..9))).collect();
        assert!(ghost_factorization_check(&x, &t, 2).unwrap());
    }
}

#[test]
fn ghost_factorization_symbolic() {
    for (p, n) in [(2u64, 2usize), (3, 2), (2, 3), (3, 3)] {
        let size = (p as usize).pow(n as u32 - 1) + 1;
        let x: Matrix<ExactPoly> = jordan_block(&(), size);
        let t: Vec<ExactPoly> = (0..n).map(ExactPoly::var).collect();
        assert!(ghost_factorization_check(&x, &t, p).unwrap(), "p={p} n={n}");
    }
}

#[test]
fn ghost_factorization_of_zero() {
    let z = Matrix::<Rational>::zeros(&(), 3, 3);
    assert!(ghost_factorization_check(&z, &[Rational::one(), Rational::one()], 3).unwrap());
}

#[test]
fn unsigned_exponential_is_ex_at_the_witt_negative() {
    for (p, n) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let size = (p as usize).pow(n as u32 - 1) + 1;
        let x: Matrix<ExactPoly> = jordan_block(&(), size);
        let t: Vec<ExactPoly> = (0..n).map(ExactPoly::var).collect();
        let law = GroupLaw::witt(p, n).unwrap().compile(&()).unwrap();
        let plus = exp_nilpotent(&ghost_argument(&x, &t, p).unwrap()).unwrap();
        assert_eq!(plus, ex_eval(&x, &law.neg(&t), p).unwrap(), "p={p} n={n}");
        assert_ne!(plus, ex_eval(&x, &t, p).unwrap());
    }
}
