use unipotent::exact::{Fp, Rational};
use unipotent::rng::stream;
use unipotent::witt::{ghost, witt_add, witt_sum_polynomials, GroupLaw, WittVector};

use rand::Rng;

fn check_group_exhaustive(p: u64, n: usize) {
    let law = GroupLaw::witt(p, n).unwrap().compile(&(p as u32)).unwrap();
    let elems = law.elements();
    let zero = law.zero();
    for a in &elems {
        assert_eq!(&law.add(a, &zero), a);
        assert!(law.add(a, &law.neg(a)).iter().all(|x| x.0 == 0));
        for b in &elems {
            let ab = law.add(a, b);
            assert_eq!(ab, law.add(b, a));
            for c in &elems {
                assert_eq!(law.add(&ab, c), law.add(a, &law.add(b, c)), "p={p} n={n} {a:?} {b:?} {c:?}");
            }
        }
    }
}

#[test]
fn abelian_group_exhaustive() {
    for (p, n) in [(2, 2), (3, 2), (2, 3)] {
        check_group_exhaustive(p, n);
    }
}

#[test]
fn abelian_group_sampled() {
    for (p, n) in [(5u64, 2usize), (3, 3)] {
        let law = GroupLaw::witt(p, n).unwrap().compile(&(p as u32)).unwrap();
        let mut rng = stream(1, &format!("witt-{p}-{n}"));
        let mut draw = || -> Vec<Fp> { (0..n).map(|_| Fp(rng.gen_range(0..p as u32))).collect() };
        for _ in 0..1000 {
            let (a, b, c) = (draw(), draw(), draw());
            assert_eq!(law.add(&a, &b), law.add(&b, &a));
            assert_eq!(law.add(&law.add(&a, &b), &c), law.add(&a, &law.add(&b, &c)));
            assert!(law.add(&a, &law.neg(&a)).iter().all(|x| x.0 == 0));
        }
    }
}

#[test]
fn sum_polynomials_integral() {
    for p in [2, 3, 5] {
        let sums = witt_sum_polynomials(p, 4).unwrap();
        assert!(sums.iter().all(|s| s.has_integer_coeffs()));
    }
}

#[test]
fn order_is_maximal_iff_leading_coordinate_nonzero() {
    for p in [2u64, 3, 5] {
        for n in [1usize, 2] {
            let law = GroupLaw::witt(p, n).unwrap().compile(&(p as u32)).unwrap();
            let full = p.pow(n as u32);
            let mut exponent = 1;
            for a in law.elements() {
                let ord = law.order(&a, full).unwrap();
                let lead = a.iter().take_while(|x| x.0 == 0).count();
                assert_eq!(ord, p.pow((n - lead.min(n)) as u32));
                assert_eq!(ord == full, a[0].0 != 0);
                exponent = exponent.max(ord);
            }
            assert_eq!(exponent, full);
        }
    }
}

#[test]
fn ghost_is_additive_and_injective() {
    let mut rng = stream(1, "ghost");
    let mut q = || Rational::frac(rng.gen_range(-50..50), rng.gen_range(1..20));
    let p = 3;
    for _ in 0..100 {
        let a = WittVector::new(p, &(), vec![q(), q(), q()]).unwrap();
        let b = WittVector::new(p, &(), vec![q(), q(), q()]).unwrap();
        let s = witt_add(&a, &b).unwrap();
        let (ga, gb, gs) = (ghost(&a).unwrap(), ghost(&b).unwrap(), ghost(&s).unwrap());
        for i in 0..3 {
            assert_eq!(gs[i], &ga[i] + &gb[i]);
        }
        if a != b {
            assert_ne!(ga, gb);
        }
    }
}
