use super::*;
use crate::halfalg::words::weights_of_degree;
use crate::datum::{even_rank_two, osp_datum, LatticeChoice};
use crate::scalars::{make_root_context, EllPrimeChoice};

fn ctx(ell: u64, pi: i8) -> RootContext {
    make_root_context(ell, EllPrimeChoice::Default, pi).unwrap()
}

fn osp(n: usize) -> SuperDatum {
    osp_datum(n, LatticeChoice::Weight)
}

#[test]
fn derived_scalar_identities() {
    for ell in 1..=8 {
        for pi in [1, -1] {
            for d in [osp(1), osp(2), osp(3)] {
                let r = verify_scalar_identities(&d, &ctx(ell, pi), 10);
                assert!(r.passed(), "ell={ell} pi={pi} {:?}", r.failures);
            }
        }
    }
}

#[test]
fn divided_power_identities_rank_one() {
    for ell in [2, 3, 4, 5] {
        for pi in [1, -1] {
            let mut fr = Frobenius::new(&osp(1), &ctx(ell, pi)).unwrap();
            let r = fr.verify_divided_power_identities(4).unwrap();
            assert!(r.passed(), "ell={ell} pi={pi} {:?}", r.failures);
        }
    }
}

#[test]
fn fr_prime_serre_sums_vanish() {
    for pi in [1, -1] {
        let mut fr = Frobenius::new(&osp(2), &ctx(3, pi)).unwrap();
        let r = fr.verify_fr_prime_serre().unwrap();
        assert!(r.passed(), "pi={pi} {:?}", r.failures);
    }
    let mut fr = Frobenius::new(&even_rank_two([[2, -1], [-1, 2]], LatticeChoice::Weight), &ctx(3, 1)).unwrap();
    assert!(fr.verify_fr_prime_serre().unwrap().passed());
    let mut fr = Frobenius::new(&osp(1), &ctx(3, 1)).unwrap();
    assert_eq!(fr.verify_fr_prime_serre().unwrap().checked, 0);
}

#[test]
fn rank_one_frobenius_examples() {
    let mut fr = Frobenius::new(&osp(1), &ctx(3, -1)).unwrap();
    let x = fr.fd.monomial(&DividedMonomial::generator(0, 2));
    let y = fr.fr_prime(&x).unwrap();
    assert_eq!(y, fr.sf.monomial(&DividedMonomial::generator(0, 6)).unwrap());
    let six = fr.sf.monomial(&DividedMonomial::generator(0, 6)).unwrap();
    assert_eq!(fr.fr(&six).unwrap(), x);
    let four = fr.sf.monomial(&DividedMonomial::generator(0, 4)).unwrap();
    assert!(fr.fr(&four).unwrap().is_empty());
    let one = fr.fd.monomial(&DividedMonomial::one());
    assert_eq!(fr.fr_prime(&one).unwrap(), fr.sf.one());
}

#[test]
fn chi_rank_one_and_zero_weight() {
    let mut fr = Frobenius::new(&osp(1), &ctx(3, -1)).unwrap();
    let v = fr.chi_weight_check(&[7]).unwrap();
    assert!(v.bijective() && v.dim == 1, "{v:?}");
    let v = fr.chi_weight_check(&[0]).unwrap();
    assert!(v.bijective() && v.dim == 1);
}

#[test]
fn assumptions_reject_osp4_at_two() {
    assert!(matches!(Frobenius::new(&osp(2), &ctx(2, 1)), Err(FrobError::Assumptions(_))));
}

#[test]
fn homomorphism_sweeps_osp4() {
    for ell in [3, 4] {
        for pi in [1, -1] {
            let mut fr = Frobenius::new(&osp(2), &ctx(ell, pi)).unwrap();
            let r = fr.verify_fr_homomorphism(6).unwrap();
            assert!(r.passed() && r.checked > 0, "{:?}", r.failures);
            let r = fr.verify_fr_prime_homomorphism(2).unwrap();
            assert!(r.passed() && r.checked > 0, "{:?}", r.failures);
        }
    }
}

#[test]
fn tensor_map_is_bijective_osp4() {
    let mut fr = Frobenius::new(&osp(2), &ctx(3, -1)).unwrap();
    for deg in 0..=6 {
        for nu in weights_of_degree(2, deg) {
            let v = fr.chi_weight_check(&nu).unwrap();
            assert!(v.bijective(), "{v:?}");
        }
    }
}

#[test]
fn generation_by_small_and_ell_powers() {
    let mut fr = Frobenius::new(&osp(2), &ctx(3, 1)).unwrap();
    assert!(fr.verify_generation(7).unwrap().passed());
}

#[test]
fn steinberg_rank_one() {
    for ell in 2..=5 {
        let mut fr = Frobenius::new(&osp(1), &ctx(ell, -1)).unwrap();
        let (r, kf, v) = fr.verify_steinberg_dims(3 * ell as i64).unwrap();
        assert!(r.passed());
        assert_eq!((kf, v), (ell as usize, ell as usize));
    }
    let root = osp_datum(2, LatticeChoice::Root);
    let mut fr = Frobenius::new(&root, &ctx(3, 1)).unwrap();
    assert!(matches!(fr.verify_steinberg_dims(4), Err(FrobError::NotSimplyConnected)));
}

mod props {
    use super::*;
    use proptest::prelude::*;

    fn monomial() -> impl Strategy<Value = DividedMonomial> {
        prop::collection::vec((0usize..2, 1u32..5), 0..3).prop_map(DividedMonomial::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn fr_is_multiplicative_on_monomials(x in monomial(), y in monomial(), pi in prop::sample::select(vec![1i8, -1])) {
            let mut fr = Frobenius::new(&osp(2), &ctx(3, pi)).unwrap();
            let xy = fr.sf.monomial(&x.concat(&y)).unwrap();
            let lhs = fr.fr(&xy).unwrap();
            let mx = fr.sf.monomial(&x).unwrap();
            let my = fr.sf.monomial(&y).unwrap();
            let fx = fr.fr(&mx).unwrap();
            let fy = fr.fr(&my).unwrap();
            prop_assert_eq!(lhs, fr.fd.multiply(&fx, &fy));
        }

        #[test]
        fn fr_after_fr_prime_is_identity(x in monomial(), pi in prop::sample::select(vec![1i8, -1])) {
            let mut fr = Frobenius::new(&osp(2), &ctx(2 + (x.factors.len() as u64 % 2) * 2 + 1, pi)).unwrap();
            let xe = fr.fd.monomial(&x);
            let back = fr.fr_prime(&xe).and_then(|y| fr.fr(&y)).unwrap();
            prop_assert_eq!(back, xe);
        }
    }
}
