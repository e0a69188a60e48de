//! The (q, pi)-integers, factorials and binomials, generically and at roots of
//! unity, together with exhaustive identity sweeps.

use crate::scalars::{CycField, Laurent, PiLaurent, RootContext};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use std::sync::Arc;

/// `[a]_{q,pi} = ((pi q)^a - q^{-a}) / (pi q - q^{-1})`, computed as an exact quotient.
pub fn qpi_integer(a: i64) -> PiLaurent {
    let num = &PiLaurent::pi_q(a, a) - &PiLaurent::q_pow(-a);
    let den = &PiLaurent::pi_q(1, 1) - &PiLaurent::q_pow(-1);
    num.exact_div(&den).expect("the (q,pi)-integer quotient is exact")
}

/// `[n]^!_{q,pi}`.
pub fn qpi_factorial(n: u32) -> PiLaurent {
    (1..=n as i64).fold(PiLaurent::one(), |acc, k| &acc * &qpi_integer(k))
}

/// `prod_{i=1}^n [a+1-i] / [n]^!`, an exact quotient for every integer `a`.
pub fn qpi_binomial(a: i64, n: u32) -> PiLaurent {
    let num = (1..=n as i64).fold(PiLaurent::one(), |acc, i| &acc * &qpi_integer(a + 1 - i));
    num.exact_div(&qpi_factorial(n)).expect("the (q,pi)-binomial quotient is exact")
}

/// The classical binomial `a(a-1)...(a-n+1)/n!` for any integer `a`.
pub fn classical_binomial(a: i64, n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..n {
        num *= BigInt::from(a - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Cyclotomic integers in reduced power-basis form.
type Zv = Vec<BigInt>;

fn zv_zero(f: &CycField) -> Zv {
    vec![BigInt::zero(); f.deg]
}

fn zv_add(a: &mut Zv, b: &Zv) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

/// `sign * zeta^k * v`.
fn zv_mono(f: &CycField, v: &Zv, neg: bool, k: i64) -> Zv {
    let mut out = zv_zero(f);
    for (j, a) in v.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (slot, p) in out.iter_mut().zip(f.power(j as i64 + k)) {
            if *p != 0 {
                *slot += a * *p;
            }
        }
    }
    if neg {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

fn zv_scalar(f: &CycField, a: BigInt) -> Zv {
    let mut v = zv_zero(f);
    v[0] = a;
    v
}

fn zv_mul(f: &CycField, a: &Zv, b: &Zv) -> Zv {
    let mut out = zv_zero(f);
    for (k, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let scaled: Zv = b.iter().map(|y| y * x).collect();
        zv_add(&mut out, &zv_mono(f, &scaled, false, k as i64));
    }
    out
}

/// Specialized (q, pi)-binomials with `q = zeta^q_exp` and `pi = pi_sign`.
///
/// Filled by the Pascal rule `[a,t] = (pi q)^t [a-1,t] + q^{t-a} [a-1,t-1]`,
/// which holds identically in the generic ring, so the table is the exact
/// image of the generic binomials.
pub struct SpecBinomials {
    field: Arc<CycField>,
    q_exp: i64,
    pi_neg: bool,
    amax: i64,
    tmax: i64,
    table: Vec<Vec<Zv>>,
}

impl SpecBinomials {
    pub fn new(field: &Arc<CycField>, q_exp: i64, pi_sign: i8, amax: i64, tmax: i64) -> Self {
        let f = field.as_ref();
        let pi_neg = pi_sign < 0;
        let mut table: Vec<Vec<Zv>> = Vec::with_capacity(amax as usize + 1);
        for a in 0..=amax {
            let mut row = Vec::with_capacity(tmax as usize + 1);
            for t in 0..=tmax {
                let v = if t == 0 {
                    zv_scalar(f, BigInt::one())
                } else if a == 0 {
                    zv_zero(f)
                } else {
                    let prev: &Vec<Zv> = &table[a as usize - 1];
                    let mut v = zv_mono(f, &prev[t as usize], pi_neg && t % 2 == 1, q_exp * t);
                    zv_add(&mut v, &zv_mono(f, &prev[t as usize - 1], false, q_exp * (t - a)));
                    v
                };
                row.push(v);
            }
            table.push(row);
        }
        SpecBinomials { field: field.clone(), q_exp, pi_neg, amax, tmax, table }
    }

    /// The specialized `[a, t]` for any integer `a` and `t`.
    pub fn get(&self, a: i64, t: i64) -> Vec<BigInt> {
        if t < 0 {
            return zv_zero(&self.field);
        }
        assert!(t <= self.tmax, "binomial table too small in t");
        if a >= 0 {
            assert!(a <= self.amax, "binomial table too small in a");
            return self.table[a as usize][t as usize].clone();
        }
        // [-b, t] = (-1)^t pi^{bt + t(t-1)/2} [b+t-1, t].
        let b = -a;
        let base = self.get(b + t - 1, t);
        let pi_odd = self.pi_neg && (b * t + t * (t - 1) / 2).rem_euclid(2) == 1;
        let neg = (t % 2 == 1) ^ pi_odd;
        zv_mono(&self.field, &base, neg, 0)
    }

    pub fn q_exp(&self) -> i64 {
        self.q_exp
    }
}

/// Result of an identity sweep.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub suite: String,
    pub params: serde_json::Value,
    pub checked: u64,
    pub failures: Vec<Vec<i64>>,
}

impl IdentityReport {
    pub fn new(suite: &str, params: serde_json::Value) -> Self {
        IdentityReport { suite: suite.to_string(), params, checked: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one instance.
    pub fn record(&mut self, ok: bool, instance: Vec<i64>) {
        self.checked += 1;
        if !ok {
            self.failures.push(instance);
        }
    }

    /// Folds another report's counts and failures into this one.
    pub fn absorb(&mut self, o: &IdentityReport) {
        self.checked += o.checked;
        self.failures.extend(o.failures.iter().cloned());
    }
}

/// The identity suites over the (q, pi)-binomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SuiteId {
    /// Binomials with `l | n`, `l ∤ t` vanish.
    Vanishing,
    /// `[l n1, l t1]` as a unit times a classical binomial.
    EllMultiple,
    /// The `n = n0 + l n1`, `t = t0 + l t1` factorization.
    Factorization,
    /// `v^{l^2+l} = (-1)^{l+1}`.
    PowerSign,
    /// `[l b]! / ([l]!)^b = b! (pi q)^{l^2 b(b-1)/2}`.
    FactorialRatio,
    /// The alternating sum identity for `0 <= r <= a < l`.
    AlternatingSum,
    /// Binomials at `(q_i, pi_i)` versus the derived parameters.
    DiamondBinomial,
    /// `[n, t]_{q,pi} = sqrt(pi)^{(n-t)t} [n, t]_v` with `v = sqrt(pi) q`, generically.
    VSubstitution,
    /// `v^{2l} = 1` and `v^{2t} != 1` for `0 < t < l`.
    VOrder,
}

impl SuiteId {
    pub const ALL_SCALAR: [SuiteId; 8] = [
        SuiteId::Vanishing,
        SuiteId::EllMultiple,
        SuiteId::Factorization,
        SuiteId::PowerSign,
        SuiteId::FactorialRatio,
        SuiteId::AlternatingSum,
        SuiteId::VSubstitution,
        SuiteId::VOrder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SuiteId::Vanishing => "vanishing",
            SuiteId::EllMultiple => "ell-multiple",
            SuiteId::Factorization => "factorization",
            SuiteId::PowerSign => "power-sign",
            SuiteId::FactorialRatio => "factorial-ratio",
            SuiteId::AlternatingSum => "alternating-sum",
            SuiteId::DiamondBinomial => "diamond-binomial",
            SuiteId::VSubstitution => "v-substitution",
            SuiteId::VOrder => "v-order",
        }
    }

    pub fn parse(s: &str) -> Option<SuiteId> {
        [SuiteId::DiamondBinomial].into_iter().chain(Self::ALL_SCALAR).find(|x| x.name() == s)
    }
}

/// Sweep bounds: `|n| <= n_max`, `0 <= t <= t_max`, `0 <= b <= b_max`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SuiteRanges {
    pub n_max: i64,
    pub t_max: i64,
    pub b_max: i64,
}

impl Default for SuiteRanges {
    fn default() -> Self {
        SuiteRanges { n_max: 40, t_max: 40, b_max: 10 }
    }
}

/// Index data for the derived-parameter suite: `d_i = (i.i)/2` and `l_i`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IndexParams {
    pub d_i: i64,
    pub ell_i: i64,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    Unknown(String),
    #[error("the derived-parameter binomial suite needs a datum index")]
    MissingIndex,
}

fn unit_times(ctx: &RootContext, v: &Zv, pi_e: i64, q_e: i64) -> Zv {
    let m = ctx.pi_q_mono(pi_e, q_e);
    zv_mono(&ctx.field, v, m.neg, m.exp as i64)
}

fn params_json(ctx: &RootContext, r: &SuiteRanges) -> serde_json::Value {
    serde_json::json!({
        "ell": ctx.ell, "ell_prime": ctx.ell_prime, "pi": ctx.pi_sign,
        "n_max": r.n_max, "t_max": r.t_max, "b_max": r.b_max,
    })
}

/// Runs one identity suite exhaustively over the given ranges.
pub fn run_identity_suite(
    suite: SuiteId,
    ctx: &RootContext,
    r: &SuiteRanges,
    index: Option<IndexParams>,
) -> Result<IdentityReport, SuiteError> {
    let l = ctx.ell as i64;
    let f = ctx.field.as_ref();
    let mut rep = IdentityReport::new(suite.name(), params_json(ctx, r));
    let binoms = || SpecBinomials::new(&ctx.field, ctx.q_exp, ctx.pi_sign, r.n_max + r.t_max + l * (r.b_max + 1), r.t_max.max(l));
    match suite {
        SuiteId::Vanishing => {
            let b = binoms();
            for n in (-r.n_max..=r.n_max).filter(|n| n % l == 0) {
                for t in (1..=r.t_max).filter(|t| t % l != 0) {
                    rep.record(b.get(n, t).iter().all(|x| x.is_zero()), vec![n, t]);
                }
            }
        }
        SuiteId::EllMultiple => {
            let b = binoms();
            for n1 in (-r.n_max / l)..=(r.n_max / l) {
                for t1 in 0..=(r.t_max / l) {
                    let lhs = b.get(l * n1, l * t1);
                    let pi_e = l * l * (t1 * n1 - t1 * (t1 - 1) / 2);
                    let q_e = l * l * t1 * (n1 + 1);
                    let rhs = unit_times(ctx, &zv_scalar(f, classical_binomial(n1, t1)), pi_e, q_e);
                    rep.record(lhs == rhs, vec![n1, t1]);
                }
            }
        }
        SuiteId::Factorization => {
            let b = binoms();
            for n in -r.n_max..=r.n_max {
                let (n1, n0) = n.div_mod_floor(&l);
                for t in 0..=r.t_max {
                    let (t1, t0) = (t / l, t % l);
                    let lhs = b.get(n, t);
                    let pi_e = l * (n0 - t0) * t1 + l * l * (n1 * t1 - t1 * (t1 - 1) / 2);
                    let q_e = l * (n0 * t1 - n1 * t0) + l * l * (n1 + 1) * t1;
                    let inner: Zv = b.get(n0, t0).iter().map(|x| x * classical_binomial(n1, t1)).collect();
                    let rhs = unit_times(ctx, &inner, pi_e, q_e);
                    rep.record(lhs == rhs, vec![n, t]);
                }
            }
        }
        SuiteId::PowerSign => {
            let v = ctx.v.pow(l * l + l);
            let mid = ctx.pi_q(l * (l + 1) / 2, l * l + l);
            let sign = ctx.int(if l % 2 == 1 { 1 } else { -1 });
            rep.record(v == mid, vec![0]);
            rep.record(mid == sign, vec![1]);
        }
        SuiteId::FactorialRatio => {
            let b = binoms();
            for bb in 0..=r.b_max {
                let mut lhs = zv_scalar(f, BigInt::one());
                for k in 1..=bb {
                    lhs = zv_mul(f, &lhs, &b.get(k * l, l));
                }
                let fact: BigInt = (1..=bb).map(BigInt::from).product();
                let e = l * l * bb * (bb - 1) / 2;
                let rhs = unit_times(ctx, &zv_scalar(f, fact), e, e);
                rep.record(lhs == rhs, vec![bb]);
            }
        }
        SuiteId::AlternatingSum => {
            let b = binoms();
            let c2 = |x: i64| x * (x - 1) / 2;
            for a in 0..l {
                for rr in 0..=a {
                    let mut lhs = zv_zero(f);
                    for s in 0..=(l - a - 1) {
                        let sign_neg = (l - rr + 1 + s).rem_euclid(2) == 1;
                        let pi_e = c2(s + 1) + s * (rr - l);
                        let q_e = -(l - rr) * (a - l + 1 + s) + s;
                        let mut term = unit_times(ctx, &b.get(l - rr, s), pi_e, q_e);
                        if sign_neg {
                            term.iter_mut().for_each(|x| *x = -&*x);
                        }
                        zv_add(&mut lhs, &term);
                    }
                    let rhs = unit_times(ctx, &b.get(a, rr), c2(rr) - c2(l) - a * (rr - l), l * (a - rr));
                    rep.record(lhs == rhs, vec![a, rr]);
                }
            }
        }
        SuiteId::DiamondBinomial => {
            let ip = index.ok_or(SuiteError::MissingIndex)?;
            let li = ip.ell_i;
            let sign_i = if ctx.pi_sign < 0 && ip.d_i % 2 == 1 { -1 } else { 1 };
            let nmax = r.n_max;
            let lhs_t = SpecBinomials::new(&ctx.field, ctx.q_exp * ip.d_i, sign_i, 2 * nmax + 1, r.t_max);
            let dia_sign = if sign_i < 0 && (li * li) % 2 == 1 { -1 } else { 1 };
            let rhs_t = SpecBinomials::new(&ctx.field, ctx.q_exp * ip.d_i * li * li, dia_sign, 2 * nmax / li + 1, r.t_max / li);
            for n in (-nmax..=nmax).filter(|n| n % li == 0) {
                for t in (0..=r.t_max).filter(|t| t % li == 0) {
                    rep.record(lhs_t.get(n, t) == rhs_t.get(n / li, t / li), vec![n, t]);
                }
            }
            rep.params["d_i"] = ip.d_i.into();
            rep.params["ell_i"] = ip.ell_i.into();
        }
        SuiteId::VSubstitution => {
            let m = r.n_max.min(12);
            for n in 0..=m {
                for t in 0..=n {
                    rep.record(v_substitution_holds(n, t), vec![n, t]);
                }
            }
        }
        SuiteId::VOrder => {
            rep.record(ctx.v.pow(2 * l).is_one(), vec![l]);
            for t in 1..l {
                rep.record(!ctx.v.pow(2 * t).is_one(), vec![t]);
            }
            // (pi q~^2)^{2l} = 1 since v^2 = pi q~^2.
            rep.record(ctx.pi_q(1, 2).pow(2 * l).is_one(), vec![-1]);
        }
    }
    Ok(rep)
}

/// The ordinary symmetric v-binomial as an integer Laurent polynomial in `v`.
pub fn v_binomial(n: i64, t: u32) -> Laurent<BigInt> {
    let vint = |a: i64| -> Laurent<BigInt> {
        let num = &Laurent::monomial(BigInt::one(), a) - &Laurent::monomial(BigInt::one(), -a);
        let den = &Laurent::monomial(BigInt::one(), 1) - &Laurent::monomial(BigInt::one(), -1);
        num.exact_div(&den).unwrap()
    };
    let num = (1..=t as i64).fold(Laurent::one(), |acc, i| &acc * &vint(n + 1 - i));
    let den = (1..=t as i64).fold(Laurent::one(), |acc, i| &acc * &vint(i));
    num.exact_div(&den).unwrap()
}

/// Checks the v-substitution identity for `[n, t]` in both pi-components and
/// both square roots of pi, with Gaussian-integer coefficients.
pub fn v_substitution_holds(n: i64, t: i64) -> bool {
    let lhs = qpi_binomial(n, t as u32);
    let vb = v_binomial(n, t as u32);
    let pref = (n - t) * t;
    // sqrt(pi) = s * i^k with k = 0 for pi = 1 and k = 1 for pi = -1.
    for (pi_sign, k) in [(1i8, 0i64), (-1, 1)] {
        for s in [1i64, -1] {
            let mut terms = Vec::new();
            for (e, c) in vb.terms() {
                // sqrt(pi)^{pref} (sqrt(pi) q)^e contributes sqrt(pi)^{pref+e} q^e.
                let pow = pref + e;
                let sign = if pow.rem_euclid(2) == 1 { s } else { 1 };
                let (re, im) = gauss_unit(k * pow);
                if im != 0 {
                    return false;
                }
                terms.push((e, c * BigInt::from(sign * re)));
            }
            if &Laurent::from_terms(terms) != lhs.component(pi_sign) {
                return false;
            }
        }
    }
    true
}

/// `i^k` as a Gaussian integer `(re, im)`.
fn gauss_unit(k: i64) -> (i64, i64) {
    match k.rem_euclid(4) {
        0 => (1, 0),
        1 => (0, 1),
        2 => (-1, 0),
        _ => (0, -1),
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Signed;
    use super::*;
    use crate::scalars::{make_root_context, specialize, EllPrimeChoice};

    fn lp(lo: i64, c: &[i64]) -> Laurent<BigInt> {
        Laurent::from_parts(lo, c.iter().map(|x| BigInt::from(*x)).collect())
    }

    #[test]
    fn small_integers() {
        assert!(qpi_integer(0).is_zero());
        assert_eq!(qpi_integer(1), PiLaurent::one());
        // [2] = pi q + q^-1
        assert_eq!(qpi_integer(2), &PiLaurent::pi_q(1, 1) + &PiLaurent::q_pow(-1));
        // [3] = q^2 + pi + q^-2
        assert_eq!(qpi_integer(3), &(&PiLaurent::q_pow(2) + &PiLaurent::pi()) + &PiLaurent::q_pow(-2));
    }

    #[test]
    fn integer_matches_sum_formula() {
        for a in 1..=15i64 {
            let mut s = PiLaurent::zero();
            for k in 0..a {
                s = &s + &PiLaurent::pi_q(a - 1 - k, a - 1 - 2 * k);
            }
            assert_eq!(qpi_integer(a), s);
        }
    }

    /// Independent oracle: the same binomials by the Pascal rule in the generic ring.
    fn pascal(a: i64, t: i64) -> PiLaurent {
        if t == 0 {
            return PiLaurent::one();
        }
        if t < 0 || a == 0 {
            return PiLaurent::zero();
        }
        if a > 0 {
            &(&PiLaurent::pi_q(t, t) * &pascal(a - 1, t)) + &(&PiLaurent::q_pow(t - a) * &pascal(a - 1, t - 1))
        } else {
            // solve the rule for [a, t] given [a+1, t] and [a, t-1]
            let up = pascal(a + 1, t);
            let side = &PiLaurent::q_pow(t - a - 1) * &pascal(a, t - 1);
            (&up - &side).exact_div(&PiLaurent::pi_q(t, t)).unwrap()
        }
    }

    #[test]
    fn binomial_matches_pascal_oracle() {
        for a in -6..=9i64 {
            for t in 0..=6i64 {
                assert_eq!(qpi_binomial(a, t as u32), pascal(a, t), "a={} t={}", a, t);
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(qpi_binomial(7, 0), PiLaurent::one());
        assert_eq!(qpi_binomial(2, 1), qpi_integer(2));
        // [4,2] = pi * [4,2]_v at v = sqrt(pi) q; at pi = 1 it is the usual one
        let b = qpi_binomial(4, 2);
        assert_eq!(b.plus, lp(-4, &[1, 0, 1, 0, 2, 0, 1, 0, 1]));
        assert!(v_substitution_holds(4, 2));
    }

    #[test]
    fn specialized_table_is_the_homomorphic_image() {
        for ell in [2u64, 3, 5] {
            for pi in [1i8, -1] {
                let ctx = make_root_context(ell, EllPrimeChoice::Default, pi).unwrap();
                let tab = SpecBinomials::new(&ctx.field, ctx.q_exp, pi, 12, 6);
                for a in -5..=6i64 {
                    for t in 0..=6i64 {
                        let exact = specialize(&qpi_binomial(a, t as u32), &ctx);
                        let got = tab.get(a, t);
                        let want: Vec<BigInt> = exact.coeffs().iter().map(|x| x.to_integer()).collect();
                        assert_eq!(got, want, "ell={} pi={} a={} t={}", ell, pi, a, t);
                    }
                }
            }
        }
    }

    #[test]
    fn classical_at_ell_one() {
        let ctx = make_root_context(1, EllPrimeChoice::Ell, 1).unwrap();
        for a in 0..=12i64 {
            for n in 0..=a {
                let s = specialize(&qpi_binomial(a, n as u32), &ctx);
                assert_eq!(s.as_rational().unwrap().to_integer(), classical_binomial(a, n));
            }
        }
    }

    #[test]
    fn nonnegative_in_pi_basis() {
        for n in 0..=10i64 {
            let (a, b) = qpi_integer(n).pi_basis().unwrap();
            assert!(a.terms().chain(b.terms()).all(|(_, c)| !c.is_negative()));
            for t in 0..=n {
                let (a, b) = qpi_binomial(n, t as u32).pi_basis().unwrap();
                assert!(a.terms().chain(b.terms()).all(|(_, c)| !c.is_negative()), "n={} t={}", n, t);
            }
        }
    }

    #[test]
    fn documented_instances() {
        // l = 2, pi = +1: [2, 1] vanishes at q~.
        let ctx = make_root_context(2, EllPrimeChoice::Default, 1).unwrap();
        assert!(specialize(&qpi_binomial(2, 1), &ctx).is_zero());
        // l = 3: [6, 3] = 2 q~^27 (pi^18 = 1).
        for pi in [1i8, -1] {
            let ctx = make_root_context(3, EllPrimeChoice::Default, pi).unwrap();
            let lhs = specialize(&qpi_binomial(6, 3), &ctx);
            assert_eq!(lhs, ctx.q_tilde_pow(27).scale_int(2));
        }
        // l = 2: v^6 = -1.
        let ctx = make_root_context(2, EllPrimeChoice::Default, -1).unwrap();
        assert_eq!(ctx.v.pow(6), ctx.int(-1));
    }

    #[test]
    fn unknown_suite_is_rejected() {
        assert_eq!(SuiteId::parse("nope"), None);
        let ctx = make_root_context(3, EllPrimeChoice::Default, 1).unwrap();
        assert_eq!(
            run_identity_suite(SuiteId::DiamondBinomial, &ctx, &SuiteRanges::default(), None),
            Err(SuiteError::MissingIndex)
        );
    }

    #[test]
    fn suites_pass_small() {
        let r = SuiteRanges { n_max: 12, t_max: 12, b_max: 4 };
        for ell in 1..=4u64 {
            for pi in [1i8, -1] {
                let ctx = make_root_context(ell, EllPrimeChoice::Default, pi).unwrap();
                for s in SuiteId::ALL_SCALAR {
                    let rep = run_identity_suite(s, &ctx, &r, None).unwrap();
                    assert!(rep.passed(), "{:?} ell={} pi={} {:?}", s, ell, pi, rep.failures);
                }
            }
        }
    }
}
