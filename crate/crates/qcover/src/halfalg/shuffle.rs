//! The braided shuffle algebra on words and the embedding of f into it.
//!
//! The product of words is
//! `(u * v)_w = sum_S u(w_S) v(w_{S^c}) prod_{k in S^c, j in S, k < j} chi(w_k, w_j)`
//! with `chi(a, b) = q^{-a.b} pi^{p(a)p(b)}`. A generator `theta_i` goes to the
//! one-letter word `i`, which forces
//! `theta_i^{(n)} -> pi_i^{C(n,2)} q_i^{-C(n,2)} i^n`.
//! On the quotient by the Serre ideal this map is injective (generically in q),
//! so equality in f can be tested on shuffle images.

use super::ring::Ring;
use super::words::{word_space, DividedMonomial, Weight, WordSpace};
use crate::datum::SuperDatum;
use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::Arc;

/// The part of a datum the shuffle product depends on.
#[derive(Clone, Debug)]
pub struct Braiding {
    pub rank: usize,
    pub dot: Vec<Vec<i64>>,
    pub parity: Vec<i64>,
}

impl Braiding {
    pub fn new(d: &SuperDatum) -> Self {
        Braiding { rank: d.rank(), dot: d.dot.clone(), parity: (0..d.rank()).map(|i| d.p(i)).collect() }
    }

    /// Exponents `(pi, q)` of `chi(a, b)`.
    pub fn chi(&self, a: usize, b: usize) -> (i64, i64) {
        (self.parity[a] * self.parity[b], -self.dot[a][b])
    }

    /// Exponents `(pi, q)` of the scalar in the image of `theta_i^{(n)}`.
    pub fn divided_power_scalar(&self, i: usize, n: u32) -> (i64, i64) {
        let d = self.dot[i][i] / 2;
        let c = n as i64 * (n as i64 - 1) / 2;
        (d * c, -d * c)
    }
}

/// A homogeneous element of the shuffle algebra, dense over its word space.
#[derive(Clone, Debug)]
pub struct ShuffleVec<E> {
    pub space: Arc<WordSpace>,
    pub coeffs: Vec<E>,
}

impl<E: Clone> ShuffleVec<E> {
    pub fn weight(&self) -> &Weight {
        &self.space.weight
    }

    pub fn at(&self, w: &[u8]) -> &E {
        &self.coeffs[self.space.position(w)]
    }
}

pub fn unit<R: Ring>(r: &R, rank: usize) -> ShuffleVec<R::E> {
    ShuffleVec { space: word_space(&vec![0; rank]), coeffs: vec![r.one()] }
}

pub fn is_zero<R: Ring>(r: &R, v: &ShuffleVec<R::E>) -> bool {
    v.coeffs.iter().all(|c| r.is_zero(c))
}

/// `u * theta_i^{(n)}`.
pub fn times_divided_power<R: Ring>(r: &R, b: &Braiding, u: &ShuffleVec<R::E>, i: usize, n: u32) -> ShuffleVec<R::E> {
    let mut wt = u.space.weight.clone();
    wt[i] += n as i64;
    let space = word_space(&wt);
    let mut out = vec![r.zero(); space.len()];
    let (dp_a, dp_b) = b.divided_power_scalar(i, n);
    let chi_i: Vec<(i64, i64)> = (0..b.rank).map(|c| b.chi(i, c)).collect();
    let len = u.space.words.first().map_or(0, |w| w.len()) + n as usize;
    let mut w = Vec::with_capacity(len);
    for (uw, c) in u.space.words.iter().zip(&u.coeffs) {
        if r.is_zero(c) {
            continue;
        }
        // Interleave `uw` with n copies of `i`; every block letter to the left
        // of a letter of `uw` contributes chi(i, that letter).
        w.clear();
        interleave(r, &space, uw, i as u8, n, &chi_i, c, &mut w, 0, 0, dp_a, dp_b, &mut out);
    }
    ShuffleVec { space, coeffs: out }
}

#[allow(clippy::too_many_arguments)]
fn interleave<R: Ring>(
    r: &R,
    space: &WordSpace,
    uw: &[u8],
    letter: u8,
    n: u32,
    chi_i: &[(i64, i64)],
    c: &R::E,
    w: &mut Vec<u8>,
    pos: usize,
    placed: u32,
    ea: i64,
    eb: i64,
    out: &mut [R::E],
) {
    if pos == uw.len() && placed == n {
        let k = space.position(w);
        let t = r.scale_mono(c, ea, eb);
        r.add_assign(&mut out[k], &t);
        return;
    }
    if placed < n {
        w.push(letter);
        interleave(r, space, uw, letter, n, chi_i, c, w, pos, placed + 1, ea, eb, out);
        w.pop();
    }
    if pos < uw.len() {
        let (a, bq) = chi_i[uw[pos] as usize];
        w.push(uw[pos]);
        interleave(r, space, uw, letter, n, chi_i, c, w, pos + 1, placed, ea + placed as i64 * a, eb + placed as i64 * bq, out);
        w.pop();
    }
}

/// The shuffle image of a divided monomial.
pub fn psi_monomial<R: Ring>(r: &R, b: &Braiding, m: &DividedMonomial) -> ShuffleVec<R::E> {
    if block_cost(b, m) < interleave_cost(b, m) {
        return psi_monomial_blocks(r, b, m);
    }
    let mut v = unit(r, b.rank);
    for (i, n) in &m.factors {
        v = times_divided_power(r, b, &v, *i, *n);
    }
    v
}

fn binomial_f64(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Interleavings enumerated by the factor-by-factor product.
fn interleave_cost(b: &Braiding, m: &DividedMonomial) -> f64 {
    let mut wt = vec![0i64; b.rank];
    let mut cost = 0.0;
    for (i, n) in &m.factors {
        let len: i64 = wt.iter().sum();
        cost += word_space(&wt).len() as f64 * binomial_f64((len + *n as i64) as u64, *n as u64);
        wt[*i] += *n as i64;
    }
    cost
}

/// Word count times length times a bound on the block-count states.
fn block_cost(b: &Braiding, m: &DividedMonomial) -> f64 {
    let wt = m.weight(b.rank);
    // For each letter, its count splits among the blocks carrying that letter.
    let states: f64 = (0..b.rank)
        .map(|a| {
            let k = m.factors.iter().filter(|(i, _)| *i == a).count() as u64;
            if k == 0 {
                1.0
            } else {
                binomial_f64(wt[a] as u64 + k - 1, k - 1)
            }
        })
        .product();
    if states > 1e12 {
        return f64::INFINITY;
    }
    word_space(&wt).len() as f64 * wt.iter().sum::<i64>() as f64 * states
}

/// Per-word dynamic program: positions of `w` are assigned left to right to
/// the blocks of the monomial, tracking how many letters each block holds. A
/// letter placed in block `t` after letters of later blocks `s > t` picks up
/// `chi(i_s, i_t)` for each of them.
fn psi_monomial_blocks<R: Ring>(r: &R, b: &Braiding, m: &DividedMonomial) -> ShuffleVec<R::E> {
    let space = word_space(&m.weight(b.rank));
    let blocks = &m.factors;
    let nb = blocks.len();
    let mut radix = vec![1u64; nb + 1];
    for t in 0..nb {
        radix[t + 1] = radix[t] * (blocks[t].1 as u64 + 1);
    }
    let full: u64 = (0..nb).map(|t| blocks[t].1 as u64 * radix[t]).sum();
    let (sa, sb) = blocks.iter().fold((0, 0), |(x, y), (i, n)| {
        let (a, c) = b.divided_power_scalar(*i, *n);
        (x + a, y + c)
    });
    let chi: Vec<Vec<(i64, i64)>> = blocks.iter().map(|(s, _)| blocks.iter().map(|(t, _)| b.chi(*s, *t)).collect()).collect();
    let mut coeffs = Vec::with_capacity(space.len());
    let mut cur: HashMap<u64, R::E> = HashMap::new();
    let mut next: HashMap<u64, R::E> = HashMap::new();
    for w in &space.words {
        cur.clear();
        cur.insert(0, r.one());
        for &a in w {
            next.clear();
            for (key, val) in &cur {
                for t in 0..nb {
                    if blocks[t].0 != a as usize {
                        continue;
                    }
                    let ct = key / radix[t] % (blocks[t].1 as u64 + 1);
                    if ct == blocks[t].1 as u64 {
                        continue;
                    }
                    let (mut ea, mut eb) = (0, 0);
                    for s in t + 1..nb {
                        let cs = (key / radix[s] % (blocks[s].1 as u64 + 1)) as i64;
                        ea += cs * chi[s][t].0;
                        eb += cs * chi[s][t].1;
                    }
                    let v = r.scale_mono(val, ea, eb);
                    match next.entry(key + radix[t]) {
                        Entry::Occupied(mut e) => r.add_assign(e.get_mut(), &v),
                        Entry::Vacant(e) => {
                            e.insert(v);
                        }
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        coeffs.push(cur.get(&full).map_or_else(|| r.zero(), |v| r.scale_mono(v, sa, sb)));
    }
    ShuffleVec { space, coeffs }
}

/// Adds `c * src` into `dst` (same weight).
pub fn axpy<R: Ring>(r: &R, dst: &mut ShuffleVec<R::E>, c: &R::E, src: &ShuffleVec<R::E>) {
    debug_assert_eq!(dst.space.weight, src.space.weight);
    for (d, s) in dst.coeffs.iter_mut().zip(&src.coeffs) {
        if !r.is_zero(s) {
            let t = r.mul(c, s);
            r.add_assign(d, &t);
        }
    }
}

pub fn zero_vec<R: Ring>(r: &R, weight: &[i64]) -> ShuffleVec<R::E> {
    let space = word_space(weight);
    let coeffs = vec![r.zero(); space.len()];
    ShuffleVec { space, coeffs }
}

/// The coefficient of the word `w` in `u * v`.
pub fn product_coeff_at<R: Ring>(r: &R, b: &Braiding, u: &ShuffleVec<R::E>, v: &ShuffleVec<R::E>, w: &[u8]) -> R::E {
    let mut need_u = u.space.weight.clone();
    let mut need_v = v.space.weight.clone();
    let mut acc = r.zero();
    let mut su = Vec::with_capacity(w.len());
    let mut sv = Vec::with_capacity(w.len());
    let mut vcount = vec![0i64; b.rank];
    split(r, b, u, v, w, 0, &mut need_u, &mut need_v, &mut su, &mut sv, &mut vcount, 0, 0, &mut acc);
    acc
}

#[allow(clippy::too_many_arguments)]
fn split<R: Ring>(
    r: &R,
    b: &Braiding,
    u: &ShuffleVec<R::E>,
    v: &ShuffleVec<R::E>,
    w: &[u8],
    pos: usize,
    need_u: &mut Vec<i64>,
    need_v: &mut Vec<i64>,
    su: &mut Vec<u8>,
    sv: &mut Vec<u8>,
    vcount: &mut Vec<i64>,
    ea: i64,
    eb: i64,
    acc: &mut R::E,
) {
    if pos == w.len() {
        let cu = u.at(su);
        let cv = v.at(sv);
        if !r.is_zero(cu) && !r.is_zero(cv) {
            let t = r.scale_mono(&r.mul(cu, cv), ea, eb);
            r.add_assign(acc, &t);
        }
        return;
    }
    let c = w[pos] as usize;
    if need_u[c] > 0 {
        // Letter goes to the left factor; it pays chi against earlier right-factor letters.
        let (mut da, mut db) = (0, 0);
        for (a, k) in vcount.iter().enumerate() {
            if *k != 0 {
                let (x, y) = b.chi(a, c);
                da += k * x;
                db += k * y;
            }
        }
        need_u[c] -= 1;
        su.push(c as u8);
        split(r, b, u, v, w, pos + 1, need_u, need_v, su, sv, vcount, ea + da, eb + db, acc);
        su.pop();
        need_u[c] += 1;
    }
    if need_v[c] > 0 {
        need_v[c] -= 1;
        vcount[c] += 1;
        sv.push(c as u8);
        split(r, b, u, v, w, pos + 1, need_u, need_v, su, sv, vcount, ea, eb, acc);
        sv.pop();
        vcount[c] -= 1;
        need_v[c] += 1;
    }
}

/// The full product `u * v`.
pub fn product<R: Ring>(r: &R, b: &Braiding, u: &ShuffleVec<R::E>, v: &ShuffleVec<R::E>) -> ShuffleVec<R::E> {
    let wt: Weight = u.space.weight.iter().zip(&v.space.weight).map(|(x, y)| x + y).collect();
    let space = word_space(&wt);
    let coeffs = space.words.iter().map(|w| product_coeff_at(r, b, u, v, w)).collect();
    ShuffleVec { space, coeffs }
}

#[cfg(test)]
mod block_tests {
    use super::*;
    use crate::datum::{osp_datum, LatticeChoice};
    use crate::halfalg::ring::LaurentRing;

    #[test]
    fn block_program_matches_factorwise_product() {
        let b = Braiding::new(&osp_datum(2, LatticeChoice::Weight));
        for pi in [1, -1] {
            let r = LaurentRing { pi_sign: pi };
            for f in [vec![(0, 2), (1, 1), (0, 3)], vec![(1, 2), (0, 1), (1, 1), (0, 2)], vec![(0, 1), (0, 2)]] {
                let m = DividedMonomial::new(f);
                let a = psi_monomial_blocks(&r, &b, &m);
                let mut v = unit(&r, b.rank);
                for (i, n) in &m.factors {
                    v = times_divided_power(&r, &b, &v, *i, *n);
                }
                assert_eq!(a.coeffs, v.coeffs);
            }
        }
    }
}
