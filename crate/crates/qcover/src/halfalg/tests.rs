use super::free::*;
use super::ring::*;
use super::shuffle::*;
use crate::datum::{even_rank_two, osp_datum, LatticeChoice};

#[test]
fn serre_elements_have_zero_shuffle_image() {
    let data = [osp_datum(2, LatticeChoice::Weight), osp_datum(3, LatticeChoice::Weight), even_rank_two([[2, -1], [-1, 2]], LatticeChoice::Weight), even_rank_two([[4, -2], [-2, 4]], LatticeChoice::Weight)];
    for d in &data {
        let b = Braiding::new(d);
        for pi in d.pi_signs() {
            let r = LaurentRing { pi_sign: pi };
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    if i != j {
                        let s = serre_element(d, i, j).unwrap();
                        let v = s.psi(&r, &b);
                        assert!(is_zero(&r, &v), "{:?} {} {} pi={} {:?}", d.dot, i, j, pi, v.coeffs);
                    }
                }
            }
        }
    }
}


#[test]
fn higher_serre_elements_have_zero_shuffle_image() {
    let data = [osp_datum(2, LatticeChoice::Weight), even_rank_two([[2, -1], [-1, 2]], LatticeChoice::Weight)];
    for d in &data {
        let b = Braiding::new(d);
        for pi in d.pi_signs() {
            let r = LaurentRing { pi_sign: pi };
            for (i, j) in [(0, 1), (1, 0)] {
                let alpha = -d.cartan(i, j) as u32;
                for n in 1..=3u32 {
                    for m in alpha * n + 1..=alpha * n + 3 {
                        for e in [1i8, -1] {
                            let s = higher_serre_element(d, i, j, n, m, e).unwrap();
                            assert!(is_zero(&r, &s.psi(&r, &b)), "{:?} i={} j={} n={} m={} e={} pi={}", d.dot, i, j, n, m, e, pi);
                        }
                    }
                }
                assert!(higher_serre_element(d, i, j, 1, alpha, 1).is_err());
            }
        }
    }
}


fn kostant_b2(a: i64, b: i64) -> usize {
    // Roots a1, a2, a1+a2, a1+2a2.
    let mut n = 0;
    for x in 0..=a.min(b / 2) {
        for y in 0..=(a - x).min(b - 2 * x) {
            let (ra, rb) = (a - x - y, b - 2 * x - y);
            if ra >= 0 && rb >= 0 {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn generic_dims_match_kostant_count() {
    let d = osp_datum(2, LatticeChoice::Weight);
    for pi in [1i8, -1] {
        for a in 0..=5 {
            for b in 0..=(10 - a).min(6) {
                assert_eq!(super::generic_dim(&d, &[a, b], pi).unwrap(), kostant_b2(a, b), "({},{}) pi={}", a, b, pi);
            }
        }
    }
    let d1 = osp_datum(1, LatticeChoice::Weight);
    for n in 0..=12 {
        let wb = super::weight_basis(&d1, &[n], -1).unwrap();
        assert_eq!(wb.basis_monomials.len(), 1);
    }
}

fn ctx(ell: u64, pi: i8) -> crate::scalars::RootContext {
    crate::scalars::make_root_context(ell, crate::scalars::EllPrimeChoice::Default, pi).unwrap()
}

#[test]
fn small_subalgebra_rank_one() {
    let d = osp_datum(1, LatticeChoice::Weight);
    for ell in 2..=7u64 {
        for pi in [1i8, -1] {
            let c = ctx(ell, pi);
            let mut sf = super::SpecF::new(&d, &c).unwrap();
            let ell_i = [crate::datum::ell_i(d.d(0), ell)];
            let gens = super::small_generators(&mut sf, &ell_i).unwrap();
            let t = super::specialized_span_dims(&mut sf, &gens, 40).unwrap();
            assert_eq!(t.total() as i64, ell_i[0], "ell={} pi={}", ell, pi);
            let a = [ell_i[0] - 1];
            let v = super::v_lambda_dims(&mut sf, &a, 40).unwrap();
            assert_eq!(v.support(), t.support());
        }
    }
}

#[test]
fn small_subalgebra_osp4_ell3() {
    let d = osp_datum(2, LatticeChoice::Weight);
    let c = ctx(3, -1);
    let mut sf = super::SpecF::new(&d, &c).unwrap();
    let gens = super::small_generators(&mut sf, &[3, 3]).unwrap();
    let t0 = std::time::Instant::now();
    let t = super::specialized_span_dims(&mut sf, &gens, 40).unwrap();
    eprintln!("kf: total {} in {:?}, support {:?}", t.total(), t0.elapsed(), t.support());
    assert_eq!(t.total(), 81);
}

#[test]
fn steinberg_matches_small_subalgebra_osp4() {
    let d = osp_datum(2, LatticeChoice::Weight);
    for (ell, li) in [(3u64, [3i64, 3]), (4, [2, 4])] {
        let c = ctx(ell, -1);
        let mut sf = super::SpecF::new(&d, &c).unwrap();
        let gens = super::small_generators(&mut sf, &li).unwrap();
        let t0 = std::time::Instant::now();
        let t = super::specialized_span_dims(&mut sf, &gens, 40).unwrap();
        eprintln!("ell={} kf total {} in {:?}", ell, t.total(), t0.elapsed());
        let v = super::v_lambda_dims(&mut sf, &[li[0] - 1, li[1] - 1], 40).unwrap();
        eprintln!("ell={} V total {} in {:?}", ell, v.total(), t0.elapsed());
        assert_eq!(v.support(), t.support());
    }
}

#[test]
fn divided_powers_multiply_by_binomials() {
    use super::words::DividedMonomial;
    use crate::qpicalc::qpi_binomial;
    use crate::scalars::PiLaurent;
    let d = osp_datum(2, LatticeChoice::Weight);
    for i in 0..2 {
        for a in 0..5u32 {
            for b in 0..5u32 {
                let lhs = FreeElement::monomial(2, DividedMonomial::new(vec![(i, a), (i, b)]));
                let c = qpi_binomial((a + b) as i64, a).at_index(d.d(i));
                let rhs = FreeElement::monomial(2, DividedMonomial::generator(i, a + b)).scale(&(-&c));
                assert!(super::reduces_to_zero(&d, &lhs.add(&rhs)).unwrap());
                let wrong = FreeElement::monomial(2, DividedMonomial::generator(i, a + b)).scale(&(-&(&c + &PiLaurent::one())));
                assert!(!super::reduces_to_zero(&d, &lhs.add(&wrong)).unwrap());
            }
        }
    }
}

#[test]
fn mixed_product_expands_in_the_two_dimensional_space() {
    use super::words::DividedMonomial;
    let d = osp_datum(2, LatticeChoice::Weight);
    let mut sf = super::SpecF::new(&d, &ctx(3, -1)).unwrap();
    assert_eq!(sf.dim(&[2, 1]).unwrap(), 2);
    let x = sf.monomial(&DividedMonomial::new(vec![(0, 1), (1, 1)])).unwrap();
    let y = sf.monomial(&DividedMonomial::generator(0, 1)).unwrap();
    let xy = sf.multiply(&x, &y).unwrap();
    let direct = sf.monomial(&DividedMonomial::new(vec![(0, 1), (1, 1), (0, 1)])).unwrap();
    assert_eq!(xy, direct);
    assert_eq!(sf.multiply(&sf.one(), &x).unwrap(), x);
    // The Serre element of weight (2,1) specializes to zero.
    let s = serre_element(&d, 0, 1).unwrap();
    let mut acc = super::GradedElement::zero();
    for (c, m) in &s.terms {
        let v = sf.monomial(m).unwrap().scale(&crate::scalars::specialize(c, &sf.ctx));
        acc = acc.add(&v);
    }
    assert!(acc.is_zero());
}

#[test]
fn generic_dims_do_not_depend_on_pi() {
    let data = [osp_datum(1, LatticeChoice::Weight), osp_datum(2, LatticeChoice::Weight), even_rank_two([[4, -2], [-2, 4]], LatticeChoice::Weight)];
    for d in &data {
        for deg in 0..=10 {
            for nu in super::words::weights_of_degree(d.rank(), deg) {
                assert_eq!(super::generic_dim(d, &nu, 1).unwrap(), super::generic_dim(d, &nu, -1).unwrap(), "{:?}", nu);
            }
        }
    }
}

mod props {
    use super::super::words::DividedMonomial;
    use super::*;
    use proptest::prelude::*;

    fn mono() -> impl Strategy<Value = DividedMonomial> {
        proptest::collection::vec((0usize..2, 1u32..3), 0..3).prop_map(DividedMonomial::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn specialized_product_is_associative(a in mono(), b in mono(), c in mono(), ell in 3u64..6, pi in prop_oneof![Just(1i8), Just(-1i8)]) {
            let d = osp_datum(2, LatticeChoice::Weight);
            let mut sf = super::super::SpecF::new(&d, &ctx(ell, pi)).unwrap();
            let (x, y, z) = (sf.monomial(&a).unwrap(), sf.monomial(&b).unwrap(), sf.monomial(&c).unwrap());
            let xy = sf.multiply(&x, &y).unwrap();
            let yz = sf.multiply(&y, &z).unwrap();
            prop_assert_eq!(sf.multiply(&xy, &z).unwrap(), sf.multiply(&x, &yz).unwrap());
            // Concatenation of monomials is the product.
            prop_assert_eq!(xy, sf.monomial(&a.concat(&b)).unwrap());
        }
    }
}
