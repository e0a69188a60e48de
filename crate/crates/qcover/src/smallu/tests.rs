use super::*;
use crate::scalars::{make_root_context, EllPrimeChoice};

fn ctx(ell: u64, pi: i8) -> RootContext {
    make_root_context(ell, EllPrimeChoice::Default, pi).unwrap()
}

#[test]
fn coset_counts() {
    let w = osp_datum(1, LatticeChoice::Weight);
    let r = osp_datum(1, LatticeChoice::Root);
    assert_eq!(enumerate_cosets(&w, &ctx(3, -1)).len(), 12);
    assert_eq!(enumerate_cosets(&r, &ctx(3, -1)).len(), 6);
    assert_eq!(enumerate_cosets(&osp_datum(2, LatticeChoice::Weight), &ctx(3, 1)).len(), 144);
    assert_eq!(enumerate_cosets(&osp_datum(2, LatticeChoice::Root), &ctx(3, 1)).len(), 72);
    assert!(!enumerate_cosets(&w, &ctx(1, 1)).is_empty());
}

#[test]
fn cosets_partition_the_sweep() {
    let d = osp_datum(2, LatticeChoice::Root);
    let c = ctx(4, 1);
    let cosets = enumerate_cosets(&d, &c);
    for lambda in coset_sweep(&d, &c) {
        assert_eq!(cosets.iter().filter(|k| k.contains(&d, coset_period(&c), &lambda)).count(), 1);
    }
}

#[test]
fn idempotent_formula_on_rank_one() {
    for ell in [3, 4] {
        for pi in [1, -1] {
            let d = osp_datum(1, LatticeChoice::Weight);
            let c = ctx(ell, pi);
            let r = verify_idempotent_formula(&d, &c, &enumerate_cosets(&d, &c), &coset_sweep(&d, &c));
            // The l~-term K-sum only sees <i,lambda> modulo l~; the J-factor supplies
            // the remaining parity, which needs pi = -1.
            assert_eq!(r.passed(), pi == -1, "ell={ell} pi={pi} {:?}", r.failures.len());
        }
    }
}

#[test]
fn binomials_depend_on_coset_only() {
    for (n, ell) in [(1, 3), (1, 4), (2, 4)] {
        for pi in [1, -1] {
            let r = verify_coset_binomial_invariance(&osp_datum(n, LatticeChoice::Weight), &ctx(ell, pi), 2);
            assert!(r.passed(), "n={n} ell={ell} pi={pi} {:?}", r.failures);
        }
    }
}

#[test]
fn rank_one_dimensions() {
    for (ell, w, r) in [(3, 108, 54), (5, 500, 250)] {
        let a = small_u_dimension(1, &ctx(ell, -1), Lattice::Weight).unwrap();
        let b = small_u_dimension(1, &ctx(ell, -1), Lattice::Root).unwrap();
        assert_eq!((a.formula, a.computed), (w, w));
        assert_eq!((b.formula, b.computed), (r, r));
    }
}

#[test]
fn excluded_pair_is_rejected() {
    assert!(matches!(small_u_dimension(2, &ctx(2, 1), Lattice::Weight), Err(SmallUError::Assumptions(_))));
}

#[test]
fn counit_examples() {
    let c = ctx(3, -1);
    let one = DividedMonomial::one();
    let mut x = SmallElement::default();
    x.add_term(one.clone(), vec![0], one.clone(), c.int(5));
    x.add_term(one.clone(), vec![3], one.clone(), c.int(7));
    x.add_term(DividedMonomial::generator(0, 1), vec![0], one.clone(), c.int(2));
    assert_eq!(counit(&x, &c).unwrap(), c.int(5));
    let mut y = SmallElement::default();
    y.add_term(DividedMonomial::new(vec![]), vec![0], one.clone(), c.one());
    assert!(counit(&y, &c).unwrap().is_one());
}

#[test]
fn hopf_checks_on_generators() {
    for pi in [1, -1] {
        let d = osp_datum(1, LatticeChoice::Weight);
        let c = ctx(3, pi);
        let partial = hopf_generator_checks(&d, &c, None).unwrap();
        assert!(partial.passed(), "{:?}", partial.failures);
        assert_eq!(partial.params["antipode"], "not configured: antipode axiom skipped");
        let s = AntipodeConfig { e: [0, 0], f: [0, 0] };
        let wrong = hopf_generator_checks(&d, &c, Some(&s)).unwrap();
        assert!(!wrong.passed());
        let s = AntipodeConfig { e: [1, 0], f: [1, 0] };
        let signed = hopf_generator_checks(&d, &c, Some(&s)).unwrap();
        assert_eq!(signed.passed(), pi == -1);
    }
}
