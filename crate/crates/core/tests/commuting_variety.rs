use proptest::prelude::*;
use rand::Rng;
use unipotent::commvar::{
    census, injectivity_scan, is_member, one_psg, random_invertible, random_strict_upper_member, recover_tuple, Ambient,
};
use unipotent::exact::Fp;
use unipotent::matlie::{inverse, jacobson_defect, simultaneous_strict_triangularize, FpMatrix};
use unipotent::rng::stream;

#[test]
fn one_psg_is_injective_on_strict_upper_3_over_f5() {
    let ambient = Ambient::StrictUpper(3);
    let report = injectivity_scan(5, 2, &ambient).unwrap();
    // [X, Y] = 0 iff the superdiagonals are proportional: 145 such pairs,
    // times 25 choices of corner entries.
    assert_eq!(report.members, 145 * 25);
    assert_eq!(report.members as u64, census(5, 2, &ambient).unwrap());
    assert!(report.injective(), "{report:?}");
}

#[test]
fn gl4_members_triangularize_simultaneously() {
    let mut rng = stream(42, "triangularize");
    for _ in 0..500 {
        let d = rng.gen_range(1..=3);
        let tri = random_strict_upper_member(4, 5, d, &mut rng).unwrap();
        let g = random_invertible(4, 5, &mut rng);
        let gi = inverse(&g).unwrap();
        let tuple: Vec<FpMatrix> = tri.iter().map(|x| &(&g * x) * &gi).collect();
        assert!(is_member(&tuple).unwrap());
        let h = simultaneous_strict_triangularize(&tuple).unwrap();
        let hi = inverse(&h).unwrap();
        for x in &tuple {
            assert!((&(&h * x) * &hi).is_strictly_upper());
        }
    }
}

#[test]
fn jacobson_defect_lies_in_the_pth_central_term() {
    let mut rng = stream(42, "jacobson");
    for _ in 0..500 {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let n = rng.gen_range(2..=6);
        let k = rng.gen_range(2..=4);
        let xs: Vec<FpMatrix> = (0..k)
            .map(|_| FpMatrix::from_fn(&p, n, n, |i, j| if j > i { Fp(rng.gen_range(0..p)) } else { Fp(0) }))
            .collect();
        let (_, in_term) = jacobson_defect(&xs).unwrap();
        assert!(in_term);
    }
}

fn member(seed: u64) -> Vec<FpMatrix> {
    random_strict_upper_member(3, 5, 2, &mut stream(seed, "member")).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn one_psg_is_a_homomorphism(seed in any::<u64>()) {
        let t = member(seed);
        let m = one_psg(&t).unwrap();
        prop_assert!(m.is_homomorphism());
        prop_assert!(m.degree() < 25);
        prop_assert!(m.coeff(0).is_identity());
        prop_assert_eq!(recover_tuple(&m, 2).unwrap(), t);
    }

    #[test]
    fn evaluations_have_order_dividing_p_to_the_d(seed in any::<u64>(), s in 0u32..5) {
        let m = one_psg(&member(seed)).unwrap();
        prop_assert!(m.eval(Fp(s)).pow(25).is_identity());
    }

    #[test]
    fn conjugation_preserves_membership(seed in any::<u64>()) {
        let mut rng = stream(seed, "conjugate");
        let t = random_strict_upper_member(4, 5, 3, &mut rng).unwrap();
        let g = random_invertible(4, 5, &mut rng);
        let gi = inverse(&g).unwrap();
        let c: Vec<FpMatrix> = t.iter().map(|x| &(&g * x) * &gi).collect();
        prop_assert!(is_member(&c).unwrap());
    }
}
