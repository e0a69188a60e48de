use super::*;
use crate::datum::{osp_datum, LatticeChoice};
use crate::qpicalc::{qpi_factorial, qpi_integer};
use crate::scalars::{make_root_context, EllPrimeChoice, PiLaurent};

fn ctx(ell: u64, pi: i8) -> RootContext {
    make_root_context(ell, EllPrimeChoice::Default, pi).unwrap()
}

fn setup(n: usize, ell: u64, pi: i8) -> (UdotEngine, SpecF) {
    let d = osp_datum(n, LatticeChoice::Weight);
    let c = ctx(ell, pi);
    (UdotEngine::new(UdotDatum::of(&d), &c), SpecF::new(&d, &c).unwrap())
}

#[test]
fn rank_one_relations_match_displayed_instances() {
    for pi in [1, -1] {
        let (mut eng, mut sf) = setup(1, 3, pi);
        let e = DividedMonomial::generator(0, 1);
        let one = DividedMonomial::one();
        for a in -4..=4 {
            let lambda = vec![a];
            let sh = |k: i64| eng.datum.shift_one(&lambda, 0, k);
            let (up2, up1, dn2, dn1) = (sh(2), sh(1), sh(-2), sh(-1));
            let a = eng.datum.pair(0, &lambda);
            let got = eng.straighten_rank1(&mut sf, 0, 1, &lambda, 1, true).unwrap();
            let pi1 = eng.ctx.int(eng.ctx.pi_pow_sign(1));
            let mut want = eng.term(&mut sf, Orientation::MinusLeft, &pi1, &e, &up2, &e).unwrap();
            let br = specialize(&qpi_integer(a + 2), &eng.ctx);
            want = want.add(&eng.term(&mut sf, Orientation::MinusLeft, &br, &one, &up1, &one).unwrap());
            assert_eq!(got, want, "pi={pi} a={a}");

            let got = eng.straighten_rank1(&mut sf, 0, 1, &lambda, 0, true).unwrap();
            let c1 = eng.ctx.one();
            assert_eq!(got, eng.term(&mut sf, Orientation::MinusLeft, &c1, &one, &up1, &e).unwrap());

            let got = eng.straighten_rank1(&mut sf, 0, 1, &lambda, 1, false).unwrap();
            let mut want = eng.term(&mut sf, Orientation::PlusLeft, &pi1, &e, &dn2, &e).unwrap();
            let c = &eng.ctx.int(eng.ctx.pi_pow_sign(1 + a)) * &specialize(&qpi_integer(2 - a), &eng.ctx);
            want = want.add(&eng.term(&mut sf, Orientation::PlusLeft, &c, &one, &dn1, &one).unwrap());
            assert_eq!(got, want, "second relation pi={pi} a={a}");
        }
    }
}

#[test]
fn idempotents_are_orthogonal() {
    let (mut eng, mut sf) = setup(1, 3, -1);
    let a = eng.idempotent(&[2]);
    let b = eng.idempotent(&[3]);
    assert!(eng.multiply(&mut sf, &a, &b).unwrap().is_zero());
    assert_eq!(eng.multiply(&mut sf, &a, &a).unwrap(), a);
}

#[test]
fn distinct_indices_swap_with_sign() {
    for pi in [1, -1] {
        let (mut eng, mut sf) = setup(2, 3, pi);
        let lambda = vec![1, 2];
        let f = eng.f_gen(&mut sf, 1, 1, &lambda).unwrap();
        let top = eng.datum.shift_one(&lambda, 1, -1);
        let e = eng.e_gen(&mut sf, 0, 1, &top).unwrap();
        let ef = eng.multiply(&mut sf, &e, &f).unwrap();
        let e2 = eng.e_gen(&mut sf, 0, 1, &lambda).unwrap();
        let top2 = eng.datum.shift_one(&lambda, 0, 1);
        let f2 = eng.f_gen(&mut sf, 1, 1, &top2).unwrap();
        let fe = eng.multiply(&mut sf, &f2, &e2).unwrap();
        let sign = eng.ctx.int(eng.ctx.pi_pow_sign(eng.datum.parity[0] * eng.datum.parity[1]));
        assert_eq!(ef, fe.scale(&sign), "pi={pi}");
    }
}

#[test]
fn relations_round_trip() {
    for (n, ell) in [(1, 3), (1, 4), (2, 3)] {
        for pi in [1, -1] {
            let (mut eng, mut sf) = setup(n, ell, pi);
            let lambdas = frob::lambda_box(n, 4);
            let r = frob::verify_relation_roundtrip(&mut eng, &mut sf, 3, &lambdas).unwrap();
            assert!(r.passed(), "n={n} ell={ell} pi={pi} {:?}", r.failures);
        }
    }
}

#[test]
fn associativity_small_sample() {
    for (n, ell) in [(1, 3), (2, 3)] {
        for pi in [1, -1] {
            let (mut eng, mut sf) = setup(n, ell, pi);
            let r = frob::verify_associativity(&mut eng, &mut sf, &vec![3; n], 6, 11, 20).unwrap();
            assert!(r.passed(), "n={n} ell={ell} pi={pi} {:?}", r.failures);
        }
    }
}

/// Expands `(A + B)^m` with `B A = x A B` and divides by `[m]!`; the coefficient
/// of `A^{(p)} B^{(r)}` is returned.
fn skew_coefficient(x: &PiLaurent, p: u32, r: u32) -> PiLaurent {
    let m = p + r;
    let mut g = vec![PiLaurent::one()];
    for k in 1..=m {
        let mut next = vec![PiLaurent::zero(); k as usize + 1];
        for (q, c) in g.iter().enumerate() {
            next[q] = &next[q] + c;
            let mut xs = PiLaurent::one();
            for _ in 0..(k - 1 - q as u32) {
                xs = &xs * x;
            }
            next[q + 1] = &next[q + 1] + &(c * &xs);
        }
        g = next;
    }
    (&g[p as usize] * &(&qpi_factorial(p) * &qpi_factorial(r))).exact_div(&qpi_factorial(m)).unwrap()
}

#[test]
fn divided_power_coproduct_coefficients() {
    // E (x) 1 and JK (x) E satisfy B A = pi q^2 A B; F (x) K_{-i} and 1 (x) F satisfy B A = pi q^{-2} A B.
    for p in 0..4 {
        for r in 0..4 {
            let pr = (p * r) as i64;
            assert_eq!(skew_coefficient(&PiLaurent::pi_q(1, 2), p, r), PiLaurent::pi_q(0, pr));
            assert_eq!(skew_coefficient(&PiLaurent::pi_q(1, -2), p, r), PiLaurent::pi_q(pr, -pr));
        }
    }
    assert_ne!(skew_coefficient(&PiLaurent::pi_q(1, 2), 1, 1), PiLaurent::pi_q(1, 1));
}

fn ufr(n: usize, ell: u64, pi: i8, tw: Twist) -> UdotFrobenius {
    UdotFrobenius::new(&osp_datum(n, LatticeChoice::Weight), &ctx(ell, pi), tw).unwrap()
}

#[test]
fn generator_rule_examples() {
    for pi in [1, -1] {
        let mut u = ufr(1, 3, pi, Twist::Binomial);
        // <1, lambda> = 3 puts lambda in X<>.
        let lambda = vec![3];
        let got = u.fr_generator(&Generator::e(0, 3, &lambda)).unwrap();
        let small = Generator::e(0, 1, &lambda).element(&mut u.down, &mut u.fr.fd).unwrap();
        assert_eq!(got, small.scale(&u.ctx().int(u.ctx().pi_pow_sign(3))));
        let got = u.fr_generator(&Generator::f(0, 3, &lambda)).unwrap();
        assert_eq!(got, Generator::f(0, 1, &lambda).element(&mut u.down, &mut u.fr.fd).unwrap());
        assert!(u.fr_generator(&Generator::e(0, 3, &[1])).unwrap().is_zero());
        assert!(u.fr_generator(&Generator::e(0, 2, &lambda)).unwrap().is_zero());
    }
}

#[test]
fn frobenius_is_multiplicative_rank_one() {
    for ell in [3, 4] {
        for pi in [1, -1] {
            let mut u = ufr(1, ell, pi, Twist::Binomial);
            let lambdas = frob::lambda_box(1, 2 * u.ctx().ell_tilde() as i64);
            let nm = u.default_n_max();
            let r = u.verify_homomorphism(&lambdas, &nm).unwrap();
            assert!(r.passed(), "ell={ell} pi={pi} {:?}", r.failures);
        }
    }
}

#[test]
fn psi_twist_agrees_only_when_binomial_exponent_is_odd() {
    for ell in [3, 4, 5] {
        for pi in [1i8, -1] {
            let mut u = ufr(1, ell, pi, Twist::Binomial);
            let lambdas = frob::lambda_box(1, 2 * u.ctx().ell_tilde() as i64);
            let r = u.verify_psi_consistency(&lambdas, 2).unwrap();
            let l = u.fr.dd.ell_i[0];
            let agree = pi == 1 || (l * (l - 1) / 2) % 2 == 1;
            assert_eq!(r.passed(), agree, "ell={ell} pi={pi}");
            // Under the psi twist the map stops being multiplicative exactly then.
            let mut v = ufr(1, ell, pi, Twist::Psi);
            let nm = v.default_n_max();
            assert_eq!(v.verify_homomorphism(&lambdas, &nm).unwrap().passed(), agree, "ell={ell} pi={pi}");
        }
    }
}

#[test]
fn coproduct_worked_components() {
    let (eng, _) = setup(2, 3, -1);
    let d = &eng.datum;
    let lambda = vec![2, -1];
    let nu = vec![1, 3];
    let rest: Vec<i64> = lambda.iter().zip(&nu).map(|(a, b)| a - b).collect();
    let g = Generator::e(0, 1, &lambda);
    let t = frob::coproduct_component(&eng, &g, &d.shift_one(&rest, 0, 1), &rest, &nu, &nu).unwrap().unwrap();
    assert!(t.coefficient.is_one());
    assert_eq!((t.left.clone(), t.right.clone()), (Generator::e(0, 1, &rest), Generator::e(0, 0, &nu)));
    let t = frob::coproduct_component(&eng, &g, &rest, &rest, &d.shift_one(&nu, 0, 1), &nu).unwrap().unwrap();
    let a = d.pair(0, &rest);
    let di = d.d[0];
    assert_eq!(t.coefficient, eng.ctx.pi_q(di * a, di * a));
    let one = Generator::e(0, 0, &lambda);
    let t = frob::coproduct_component(&eng, &one, &rest, &rest, &nu, &nu).unwrap().unwrap();
    assert!(t.coefficient.is_one());
    assert!(frob::coproduct_component(&eng, &g, &rest, &rest, &nu, &nu).is_err());
}

#[test]
fn frobenius_respects_coproduct() {
    for (n, ell) in [(1, 3), (1, 5), (2, 3)] {
        for pi in [1, -1] {
            let mut u = ufr(n, ell, pi, Twist::Binomial);
            let period = if n == 1 { 2 * u.ctx().ell_tilde() as i64 } else { 4 };
            let lambdas = frob::lambda_box(n, period);
            let nm = u.default_n_max();
            let r = u.verify_fr_coproduct(&lambdas, &nm).unwrap();
            assert!(r.passed(), "n={n} ell={ell} pi={pi} {:?}", r.failures);
        }
    }
}
