//! `R (x) f<>` for the derived datum, computed directly at the specialized
//! parameters `q~_i<> = q~^{d_i l_i^2}`, `pi_i<> = pi^{d_i l_i^2}`.
//!
//! These parameters satisfy `pi_i<> (q~_i<>)^2 = 1`, so every quantum factorial
//! is a unit times an ordinary factorial and the Serre presentation can be
//! used over Q(zeta) without passing through generic q.

use crate::datum::DiamondDatum;
use crate::halfalg::serre_element;
use crate::halfalg::words::{weight_sub, word_space, DividedMonomial, Weight};
use crate::qpicalc::qpi_factorial;
use crate::scalars::cyclo::CycNumber;
use crate::scalars::linalg::{cyc_inverse, vec_mat, CycEchelon};
use crate::scalars::{specialize, RootContext};
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

struct Level {
    dim: usize,
    /// Quotient coordinates of every word.
    q: Vec<Vec<CycNumber>>,
    /// Inverse of the normal words' quotient coordinates.
    minv: Vec<Vec<CycNumber>>,
    /// Basis monomials (normal words read as runs) and their word-to-monomial scalars.
    basis: Vec<DividedMonomial>,
    scale: Vec<CycNumber>,
}

/// A homogeneous-by-weight element of `R (x) f<>` in monomial-basis coordinates.
pub type DiamondElement = BTreeMap<Weight, Vec<CycNumber>>;

pub struct FDiamond {
    pub dd: DiamondDatum,
    pub ctx: RootContext,
    serre: Vec<(Weight, Vec<(CycNumber, Vec<u8>)>)>,
    levels: HashMap<Weight, Level>,
    products: HashMap<(Weight, Weight), Arc<Vec<Vec<Vec<CycNumber>>>>>,
}

impl FDiamond {
    pub fn new(dd: &DiamondDatum, ctx: &RootContext) -> Self {
        let derived = &dd.derived;
        let mut serre = Vec::new();
        let mut f = FDiamond { dd: dd.clone(), ctx: ctx.clone(), serre: Vec::new(), levels: HashMap::new(), products: HashMap::new() };
        for i in 0..derived.rank() {
            for j in 0..derived.rank() {
                if i == j {
                    continue;
                }
                let s = serre_element(derived, i, j).expect("distinct indices");
                let words = s
                    .terms
                    .iter()
                    .map(|(c, m)| {
                        let inv = f.monomial_denominator(m).inv().expect("quasi-classical factorials are units");
                        (&specialize(c, ctx) * &inv, m.word())
                    })
                    .collect();
                serre.push((s.weight, words));
            }
        }
        f.serre = serre;
        f
    }

    pub fn rank(&self) -> usize {
        self.dd.base.rank()
    }

    /// `[n]!` at `(q~_i<>, pi_i<>)`.
    pub fn factorial(&self, i: usize, n: u32) -> CycNumber {
        specialize(&qpi_factorial(n).at_index(self.dd.d_diamond(i)), &self.ctx)
    }

    /// `prod [n_k]_{i_k}!` for a monomial: the word equals this scalar times the monomial.
    fn monomial_denominator(&self, m: &DividedMonomial) -> CycNumber {
        m.factors.iter().fold(self.ctx.one(), |acc, (i, n)| &acc * &self.factorial(*i, *n))
    }

    fn level(&mut self, nu: &[i64]) -> &Level {
        if !self.levels.contains_key(nu) {
            let lv = self.build_level(nu);
            self.levels.insert(nu.to_vec(), lv);
        }
        &self.levels[nu]
    }

    fn build_level(&mut self, nu: &[i64]) -> Level {
        let field = self.ctx.field.clone();
        let rank = self.rank();
        let space = word_space(nu);
        if nu.iter().all(|x| *x == 0) {
            return Level { dim: 1, q: vec![vec![self.ctx.one()]], minv: vec![vec![self.ctx.one()]], basis: vec![DividedMonomial::one()], scale: vec![self.ctx.one()] };
        }
        let mut offsets = vec![0usize; rank];
        let mut total = 0;
        for (i, off) in offsets.iter_mut().enumerate() {
            *off = total;
            if nu[i] > 0 {
                let mut sub = nu.to_vec();
                sub[i] -= 1;
                total += self.level(&sub).dim;
            }
        }
        let embed = |this: &Self, w: &[u8]| -> Vec<CycNumber> {
            let i = w[0] as usize;
            let mut sub = nu.to_vec();
            sub[i] -= 1;
            let lv = &this.levels[&sub];
            let pos = word_space(&sub).position(&w[1..]);
            let mut v = vec![CycNumber::zero(&field); total];
            v[offsets[i]..offsets[i] + lv.dim].clone_from_slice(&lv.q[pos]);
            v
        };
        let mut ech = CycEchelon::new(&field);
        for (sw, terms) in &self.serre {
            let Some(rest) = weight_sub(nu, sw) else { continue };
            for u in &word_space(&rest).words {
                let mut rel = vec![CycNumber::zero(&field); total];
                for (c, s) in terms {
                    let w: Vec<u8> = s.iter().chain(u.iter()).copied().collect();
                    for (a, b) in rel.iter_mut().zip(embed(self, &w)) {
                        if !b.is_zero() {
                            *a = &*a + &(c * &b);
                        }
                    }
                }
                ech.insert(rel);
            }
        }
        let pivots = ech.pivots();
        let free: Vec<usize> = (0..total).filter(|c| !pivots.contains(c)).collect();
        let q: Vec<Vec<CycNumber>> = space
            .words
            .iter()
            .map(|w| {
                let r = ech.reduce(embed(self, w));
                free.iter().map(|c| r[*c].clone()).collect()
            })
            .collect();
        let mut sel = CycEchelon::new(&field);
        let mut normal = Vec::new();
        for (k, v) in q.iter().enumerate() {
            if sel.rank() == free.len() {
                break;
            }
            if sel.insert(v.clone()) {
                normal.push(k);
            }
        }
        let m: Vec<Vec<CycNumber>> = normal.iter().map(|k| q[*k].clone()).collect();
        let minv = cyc_inverse(&field, &m).expect("normal words are independent");
        let basis: Vec<DividedMonomial> = normal.iter().map(|k| DividedMonomial::from_word(&space.words[*k])).collect();
        let scale = basis.iter().map(|b| self.monomial_denominator(b)).collect();
        Level { dim: free.len(), q, minv, basis, scale }
    }

    pub fn dim(&mut self, nu: &[i64]) -> usize {
        self.level(nu).dim
    }

    pub fn basis(&mut self, nu: &[i64]) -> Vec<DividedMonomial> {
        self.level(nu).basis.clone()
    }

    /// Coordinates of a divided monomial in the monomial basis.
    pub fn monomial_coords(&mut self, m: &DividedMonomial) -> Vec<CycNumber> {
        let nu = m.weight(self.rank());
        let den = self.monomial_denominator(m).inv().expect("unit");
        let field = self.ctx.field.clone();
        let lv = self.level(&nu);
        let pos = word_space(&nu).position(&m.word());
        let word_coords = vec_mat(&field, &lv.q[pos], &lv.minv);
        word_coords.iter().zip(&lv.scale).map(|(c, s)| &(c * s) * &den).collect()
    }

    pub fn monomial(&mut self, m: &DividedMonomial) -> DiamondElement {
        let mut e = DiamondElement::new();
        let c = self.monomial_coords(m);
        if c.iter().any(|x| !x.is_zero()) {
            e.insert(m.weight(self.rank()), c);
        }
        e
    }

    pub fn structure(&mut self, mu: &[i64], nu: &[i64]) -> Arc<Vec<Vec<Vec<CycNumber>>>> {
        let key = (mu.to_vec(), nu.to_vec());
        if let Some(t) = self.products.get(&key) {
            return t.clone();
        }
        let bm = self.basis(mu);
        let bn = self.basis(nu);
        let t: Vec<Vec<Vec<CycNumber>>> = bm.iter().map(|a| bn.iter().map(|b| self.monomial_coords(&a.concat(b))).collect()).collect();
        let t = Arc::new(t);
        self.products.insert(key, t.clone());
        t
    }

    /// Product of homogeneous coordinate vectors.
    pub fn mul_coords(&mut self, mu: &[i64], x: &[CycNumber], nu: &[i64], y: &[CycNumber]) -> Vec<CycNumber> {
        let w: Weight = mu.iter().zip(nu).map(|(p, q)| p + q).collect();
        let dim = self.dim(&w);
        let mut acc = vec![self.ctx.zero(); dim];
        if x.iter().all(|c| c.is_zero()) || y.iter().all(|c| c.is_zero()) {
            return acc;
        }
        let t = self.structure(mu, nu);
        for (ia, xa) in x.iter().enumerate() {
            for (ib, yb) in y.iter().enumerate() {
                if xa.is_zero() || yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (o, s) in acc.iter_mut().zip(&t[ia][ib]) {
                    if !s.is_zero() {
                        *o = &*o + &(&c * s);
                    }
                }
            }
        }
        acc
    }

    pub fn multiply(&mut self, x: &DiamondElement, y: &DiamondElement) -> DiamondElement {
        let mut out = DiamondElement::new();
        for (mu, a) in x {
            for (nu, b) in y {
                let w: Weight = mu.iter().zip(nu).map(|(p, q)| p + q).collect();
                let acc = self.mul_coords(mu, a, nu, b);
                add_into(&mut out, w, acc);
            }
        }
        out
    }
}

/// `out[w] += v`, pruning zero components.
pub fn add_into(out: &mut DiamondElement, w: Weight, v: Vec<CycNumber>) {
    let merged: Vec<CycNumber> = match out.get(&w) {
        Some(a) => a.iter().zip(&v).map(|(x, y)| x + y).collect(),
        None => v,
    };
    if merged.iter().all(|x| x.is_zero()) {
        out.remove(&w);
    } else {
        out.insert(w, merged);
    }
}
