//! The small quantum covering group `R (x) u`: coset idempotents, the `K_i, J_i`
//! product formula for them, the counit, generator-level Hopf checks and the
//! dimension count for `osp(1|2n)`.
//!
//! Elements are indexed by cosets `c_a = { lambda : <i, lambda> = a_i mod 2l~ }`
//! and never by individual weights.

use crate::datum::{check_frobenius_assumptions, osp_datum, LatticeChoice, SuperDatum, Violation};
use crate::frobenius::{FrobError, Frobenius};
use crate::halfalg::words::DividedMonomial;
use crate::modifiedu::{frob::coproduct_component, Generator, UdotDatum, UdotEngine, XWeight};
use crate::qpicalc::{qpi_binomial, IdentityReport};
use crate::scalars::cyclo::CycNumber;
use crate::scalars::{specialize, RootContext};
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Debug, thiserror::Error)]
pub enum SmallUError {
    #[error("Frobenius assumptions fail: {0:?}")]
    Assumptions(Vec<Violation>),
    #[error(transparent)]
    Frob(#[from] FrobError),
    #[error("the element is not written over a basis whose only weight-zero vector is 1")]
    BadBasis,
    #[error("weights do not match: {0}")]
    Weights(String),
}

/// `c_a` with a representative weight.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Coset {
    pub residues: Vec<i64>,
    pub representative: XWeight,
}

impl Coset {
    pub fn contains(&self, d: &SuperDatum, period: i64, lambda: &[i64]) -> bool {
        residues_of(d, period, lambda) == self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|a| *a == 0)
    }
}

/// `2 l~`.
pub fn coset_period(ctx: &RootContext) -> i64 {
    2 * ctx.ell_tilde() as i64
}

pub fn residues_of(d: &SuperDatum, period: i64, lambda: &[i64]) -> Vec<i64> {
    (0..d.rank()).map(|i| d.pair(i, lambda).rem_euclid(period)).collect()
}

/// The nonempty cosets: the subgroup of `(Z/2l~)^I` generated by the residues
/// of a basis of X, each with a representative weight.
pub fn enumerate_cosets(d: &SuperDatum, ctx: &RootContext) -> Vec<Coset> {
    let period = coset_period(ctx);
    let k = d.lattice_rank();
    let basis: Vec<XWeight> = (0..k).map(|j| (0..k).map(|t| (t == j) as i64).collect()).collect();
    let zero = vec![0; k];
    let mut seen: BTreeMap<Vec<i64>, XWeight> = BTreeMap::new();
    seen.insert(residues_of(d, period, &zero), zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for b in &basis {
            let y: XWeight = x.iter().zip(b).map(|(a, c)| a + c).collect();
            let r = residues_of(d, period, &y);
            if !seen.contains_key(&r) {
                seen.insert(r, y.clone());
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().map(|(residues, representative)| Coset { residues, representative }).collect()
}

/// The operator `prod_i (2l~)^{-1} (1 + pi_{c,i} J_i)(sum_{k < l~} q~_{c,i}^{-k} K_i^k)`
/// evaluated on `1_lambda`, where `K_i 1_lambda = q~^{<i,lambda>} 1_lambda`
/// and `J_i 1_lambda = pi^{<i,lambda>} 1_lambda`.
pub fn idempotent_formula_scalar(d: &SuperDatum, ctx: &RootContext, c: &Coset, lambda: &[i64]) -> CycNumber {
    let lt = ctx.ell_tilde() as i64;
    let mut out = ctx.one();
    for i in 0..d.rank() {
        let a_c = d.pair(i, &c.representative);
        let a = d.pair(i, lambda);
        let j = &ctx.one() + &ctx.int(ctx.pi_pow_sign(a_c + a));
        let mut k = ctx.zero();
        for s in 0..lt {
            k = &k + &ctx.q_tilde_pow(s * (a - a_c));
        }
        out = &(&out * &(&j * &k)) * &ctx.int(2 * lt).inv().expect("nonzero integer");
    }
    out
}

/// Both sides of the idempotent formula on every coset and every weight of the sweep.
pub fn verify_idempotent_formula(d: &SuperDatum, ctx: &RootContext, cosets: &[Coset], lambdas: &[XWeight]) -> IdentityReport {
    let period = coset_period(ctx);
    let mut rep = IdentityReport::new("idempotent_formula", json!({ "ell": ctx.ell, "pi": ctx.pi_sign, "cosets": cosets.len(), "lambdas": lambdas.len() }));
    for (ci, c) in cosets.iter().enumerate() {
        for lambda in lambdas {
            let want = if c.contains(d, period, lambda) { ctx.one() } else { ctx.zero() };
            let got = idempotent_formula_scalar(d, ctx, c, lambda);
            rep.record(got == want, [vec![ci as i64], lambda.clone()].concat());
        }
    }
    rep
}

/// `[m, t]_i` at `(q~_i, pi_i)` depends on `m` only modulo `2l~`, for `t < l_i`.
pub fn verify_coset_binomial_invariance(d: &SuperDatum, ctx: &RootContext, offsets: i64) -> IdentityReport {
    let period = coset_period(ctx);
    let mut rep = IdentityReport::new("coset_binomial_invariance", json!({ "ell": ctx.ell, "pi": ctx.pi_sign, "period": period }));
    for i in 0..d.rank() {
        let l = crate::datum::ell_i(d.d(i), ctx.ell);
        for t in 0..l as u32 {
            for m in 0..period {
                let base = specialize(&qpi_binomial(m, t).at_index(d.d(i)), ctx);
                for k in -offsets..=offsets {
                    let other = specialize(&qpi_binomial(m + k * period, t).at_index(d.d(i)), ctx);
                    rep.record(base == other, vec![i as i64, t as i64, m, k]);
                }
            }
        }
    }
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lattice {
    Weight,
    Root,
}

/// Formula and computed dimension of `R (x) u` for `osp(1|2n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRecord {
    pub n: usize,
    pub ell: u64,
    pub ell_prime: u64,
    pub ell_tilde: u64,
    pub lattice: Lattice,
    pub kf_total: u128,
    pub cosets: u128,
    pub formula: u128,
    pub computed: u128,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// `l^{2n^2} / gcd(2,l)^{2n^2-2n}` times `(2l~)^n` (weight lattice) or `2^{n-1} l~^n` (root lattice).
pub fn small_u_formula(n: usize, ell: u64, ell_tilde: u64, lattice: Lattice) -> u128 {
    let n = n as u32;
    let g = ell.gcd(&2) as u128;
    let half = (ell as u128).pow(2 * n * n) / g.pow(2 * n * n - 2 * n);
    let cosets = match lattice {
        Lattice::Weight => (2 * ell_tilde as u128).pow(n),
        Lattice::Root => 2u128.pow(n - 1) * (ell_tilde as u128).pow(n),
    };
    half * cosets
}

/// `(dim kf)^2` times the number of cosets, against the closed formula.
pub fn small_u_dimension(n: usize, ctx: &RootContext, lattice: Lattice) -> Result<DimensionRecord, SmallUError> {
    let d = osp_datum(n, match lattice {
        Lattice::Weight => LatticeChoice::Weight,
        Lattice::Root => LatticeChoice::Root,
    });
    let v = check_frobenius_assumptions(&d, ctx);
    if !v.is_empty() {
        return Err(SmallUError::Assumptions(v));
    }
    let mut fr = Frobenius::new(&d, ctx)?;
    let spans = fr.kf_spans(i64::MAX / 4)?;
    let kf_total: u128 = spans.values().map(|e| e.rank() as u128).sum();
    let cosets = enumerate_cosets(&d, ctx).len() as u128;
    let formula = small_u_formula(n, ctx.ell, ctx.ell_tilde(), lattice);
    let computed = kf_total * kf_total * cosets;
    Ok(DimensionRecord { n, ell: ctx.ell, ell_prime: ctx.ell_prime, ell_tilde: ctx.ell_tilde(), lattice, kf_total, cosets, formula, computed, matches: formula == computed })
}

/// `sum r b^+ b'^- 1_{c}` over a fixed weight basis of `kf`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SmallElement {
    pub terms: BTreeMap<(DividedMonomial, Vec<i64>, DividedMonomial), CycNumber>,
}

impl SmallElement {
    pub fn add_term(&mut self, plus: DividedMonomial, residues: Vec<i64>, minus: DividedMonomial, c: CycNumber) {
        let key = (plus, residues, minus);
        let v = match self.terms.remove(&key) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(key, v);
        }
    }
}

/// `e(r b^+ b'^- 1_{c_a}) = r` when `b = b' = 1` and `a = 0`, and 0 otherwise.
/// Every monomial of weight zero must be the empty monomial.
pub fn counit(x: &SmallElement, ctx: &RootContext) -> Result<CycNumber, SmallUError> {
    let mut out = ctx.zero();
    for ((b, a, b2), r) in &x.terms {
        for m in [b, b2] {
            if !m.factors.is_empty() && m.factors.iter().all(|f| f.1 == 0) {
                return Err(SmallUError::BadBasis);
            }
        }
        if b.factors.is_empty() && b2.factors.is_empty() && a.iter().all(|v| *v == 0) {
            out = &out + r;
        }
    }
    Ok(out)
}

/// Antipode images of the generators, `S(E_i) = c_E (J_i K_i)^{-1} E_i` and
/// `S(F_i) = c_F F_i K_i`, with `c = pi^a q~_i^b` given as `[a, b]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntipodeConfig {
    pub e: [i64; 2],
    pub f: [i64; 2],
}

/// Generator-level checks at rank one: coassociativity of the divided-power
/// coproduct components, the counit axioms on coset idempotents, `Delta(K) = K (x) K`,
/// and the antipode axiom when one is configured.
pub fn hopf_generator_checks(d: &SuperDatum, ctx: &RootContext, antipode: Option<&AntipodeConfig>) -> Result<IdentityReport, SmallUError> {
    let v = check_frobenius_assumptions(d, ctx);
    if !v.is_empty() {
        return Err(SmallUError::Assumptions(v));
    }
    let period = coset_period(ctx);
    let cosets = enumerate_cosets(d, ctx);
    let eng = UdotEngine::new(UdotDatum::of(d), ctx);
    let mut rep = IdentityReport::new(
        "hopf_generators",
        json!({ "ell": ctx.ell, "pi": ctx.pi_sign, "antipode": if antipode.is_some() { "configured" } else { "not configured: antipode axiom skipped" } }),
    );
    let reps: Vec<XWeight> = cosets.iter().map(|c| c.representative.clone()).collect();
    // Weights in the zero coset: 0 and 2l~ times each basis vector of X.
    let k = d.lattice_rank();
    let zeros: Vec<XWeight> = std::iter::once(vec![0; k]).chain((0..k).map(|j| (0..k).map(|t| if t == j { period } else { 0 }).collect())).collect();
    let add = |a: &[i64], b: &[i64]| -> XWeight { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let sub = |a: &[i64], b: &[i64]| -> XWeight { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let comp = |g: &Generator, p: u32, m1: &[i64], m2: &[i64]| -> Result<Option<CycNumber>, SmallUError> {
        let s = g.sign();
        let l1 = eng.datum.shift_one(m1, g.i, s * p as i64);
        let l2 = eng.datum.shift_one(m2, g.i, s * (g.n - p) as i64);
        Ok(coproduct_component(&eng, g, &l1, m1, &l2, m2).map_err(|e| SmallUError::Weights(e.to_string()))?.map(|t| t.coefficient))
    };
    for i in 0..d.rank() {
        let l = crate::datum::ell_i(d.d(i), ctx.ell);
        if l < 2 {
            continue;
        }
        for kind in 0..2 {
            for n in 0..l as u32 {
                for m1 in &reps {
                    for m2 in &reps {
                        for m3 in &reps {
                            let lambda = add(&add(m1, m2), m3);
                            let g = if kind == 0 { Generator::e(i, n, &lambda) } else { Generator::f(i, n, &lambda) };
                            for p1 in 0..=n {
                                for p2 in 0..=(n - p1) {
                                    let p3 = n - p1 - p2;
                                    let mk = |n: u32, w: &[i64]| Generator { n, lambda: w.to_vec(), ..g.clone() };
                                    let m12 = add(m1, m2);
                                    let m23 = add(m2, m3);
                                    let left = match (comp(&g, p1 + p2, &m12, m3)?, comp(&mk(p1 + p2, &m12), p1, m1, m2)?) {
                                        (Some(a), Some(b)) => &a * &b,
                                        _ => ctx.zero(),
                                    };
                                    let right = match (comp(&g, p1, m1, &m23)?, comp(&mk(p2 + p3, &m23), p2, m2, m3)?) {
                                        (Some(a), Some(b)) => &a * &b,
                                        _ => ctx.zero(),
                                    };
                                    let code = [vec![0, kind, i as i64, n as i64, p1 as i64, p2 as i64], lambda.clone()].concat();
                                    rep.record(left == right, code);
                                }
                            }
                        }
                    }
                }
                // Counit: only the component with the trivial factor in the zero coset survives.
                for lambda in &reps {
                    let g = if kind == 0 { Generator::e(i, n, lambda) } else { Generator::f(i, n, lambda) };
                    for zero_w in &zeros {
                        let left = comp(&g, 0, zero_w, &sub(lambda, zero_w))?;
                        let right = comp(&g, n, &sub(lambda, zero_w), zero_w)?;
                        let code = [vec![1, kind, i as i64, n as i64], lambda.clone(), zero_w.clone()].concat();
                        rep.record(left.is_some_and(|c| c.is_one()) && right.is_some_and(|c| c.is_one()), code);
                    }
                }
            }
        }
        // K_i 1_lambda = q~^{<i,lambda>} 1_lambda against K_i (x) K_i on the split lambda = m1 + m2.
        for m1 in &reps {
            for m2 in &reps {
                let lambda = add(m1, m2);
                let k = ctx.q_tilde_pow(d.pair(i, &lambda));
                let kk = &ctx.q_tilde_pow(d.pair(i, m1)) * &ctx.q_tilde_pow(d.pair(i, m2));
                let j = ctx.pi_pow_sign(d.pair(i, &lambda));
                let jj = ctx.pi_pow_sign(d.pair(i, m1)) * ctx.pi_pow_sign(d.pair(i, m2));
                rep.record(k == kk && j == jj, [vec![2, i as i64], lambda].concat());
            }
        }
        if let Some(s) = antipode {
            // m (S (x) id) Delta and m (id (x) S) Delta both reduce to (c + 1) times a
            // unit on E_i and F_i; the counit of E_i, F_i is 0.
            for (kind, c) in [(0, s.e), (1, s.f)] {
                let coeff = ctx.pi_q(c[0], d.d(i) * c[1]);
                rep.record((&coeff + &ctx.one()).is_zero(), vec![3, kind, i as i64]);
            }
        }
    }
    Ok(rep)
}

/// Coset representatives together with every weight in the box `[0, 2l~)^k`.
pub fn coset_sweep(d: &SuperDatum, ctx: &RootContext) -> Vec<XWeight> {
    let period = coset_period(ctx);
    let mut out: BTreeSet<XWeight> = crate::modifiedu::frob::lambda_box(d.lattice_rank(), period).into_iter().collect();
    out.extend(enumerate_cosets(d, ctx).into_iter().map(|c| c.representative));
    out.into_iter().collect()
}

#[cfg(test)]
mod tests;
