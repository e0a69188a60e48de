//! The modified form `R (x) U-dot`, spanned by `x^+ 1_lambda y^-` with `x, y`
//! running over a basis of `R (x) f`.
//!
//! Elements are stored blockwise: a block is keyed by (weight of the left part,
//! `lambda`, weight of the right part) and holds the coefficient matrix in the
//! basis monomials of the two halves. Products are computed by commuting the
//! inner pair `y^- 1_kappa x'^+` into the opposite order with the two rank-one
//! straightening relations and the sign swap for distinct indices.

pub mod frob;

pub use frob::{Generator, GeneratorKind, TensorTerm, Twist, UdotFrobenius};

use crate::datum::{DiamondDatum, SuperDatum};
use crate::frobenius::FDiamond;
use crate::halfalg::words::{weight_add, DividedMonomial, Weight};
use crate::halfalg::{SpecError, SpecF};
use crate::qpicalc::qpi_binomial;
use crate::scalars::cyclo::CycNumber;
use crate::scalars::{specialize, RootContext};
use serde::Serialize;
use serde_json::json;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

#[derive(Debug, thiserror::Error)]
pub enum UdotError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("weights do not match: {0}")]
    WeightMismatch(String),
}

/// The half algebra whose basis the blocks are written in.
pub trait HalfAlgebra {
    fn ctx(&self) -> &RootContext;
    fn basis(&mut self, nu: &[i64]) -> Result<Vec<DividedMonomial>, UdotError>;
    fn monomial_coords(&mut self, m: &DividedMonomial) -> Result<Vec<CycNumber>, UdotError>;
    fn mul_coords(&mut self, mu: &[i64], x: &[CycNumber], nu: &[i64], y: &[CycNumber]) -> Result<Vec<CycNumber>, UdotError>;
}

impl HalfAlgebra for SpecF {
    fn ctx(&self) -> &RootContext {
        &self.ctx
    }
    fn basis(&mut self, nu: &[i64]) -> Result<Vec<DividedMonomial>, UdotError> {
        Ok(self.space(nu)?.basis.clone())
    }
    fn monomial_coords(&mut self, m: &DividedMonomial) -> Result<Vec<CycNumber>, UdotError> {
        Ok(SpecF::monomial_coords(self, m)?)
    }
    fn mul_coords(&mut self, mu: &[i64], x: &[CycNumber], nu: &[i64], y: &[CycNumber]) -> Result<Vec<CycNumber>, UdotError> {
        Ok(SpecF::mul_coords(self, mu, x, nu, y)?)
    }
}

impl HalfAlgebra for FDiamond {
    fn ctx(&self) -> &RootContext {
        &self.ctx
    }
    fn basis(&mut self, nu: &[i64]) -> Result<Vec<DividedMonomial>, UdotError> {
        Ok(FDiamond::basis(self, nu))
    }
    fn monomial_coords(&mut self, m: &DividedMonomial) -> Result<Vec<CycNumber>, UdotError> {
        Ok(FDiamond::monomial_coords(self, m))
    }
    fn mul_coords(&mut self, mu: &[i64], x: &[CycNumber], nu: &[i64], y: &[CycNumber]) -> Result<Vec<CycNumber>, UdotError> {
        Ok(FDiamond::mul_coords(self, mu, x, nu, y))
    }
}

/// Which half stands to the left of the idempotent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Orientation {
    PlusLeft,
    MinusLeft,
}

impl Orientation {
    /// `+1` when the left part is a plus part.
    pub fn sign(self) -> i64 {
        match self {
            Orientation::PlusLeft => 1,
            Orientation::MinusLeft => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Orientation::PlusLeft => Orientation::MinusLeft,
            Orientation::MinusLeft => Orientation::PlusLeft,
        }
    }

    fn of_sign(s: i64) -> Self {
        if s > 0 {
            Orientation::PlusLeft
        } else {
            Orientation::MinusLeft
        }
    }
}

/// Coordinates of `lambda` in X.
pub type XWeight = Vec<i64>;
pub type BlockKey = (Weight, XWeight, Weight);
type Matrix = Vec<Vec<CycNumber>>;

#[derive(Clone, Debug, PartialEq)]
pub struct UdotElement {
    pub orientation: Orientation,
    pub blocks: BTreeMap<BlockKey, Matrix>,
}

impl UdotElement {
    pub fn zero(orientation: Orientation) -> Self {
        UdotElement { orientation, blocks: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Adds a block, dropping it when it cancels to zero.
    pub fn add_block(&mut self, key: BlockKey, m: Matrix) {
        let merged = match self.blocks.remove(&key) {
            Some(old) => old.iter().zip(&m).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect(),
            None => m,
        };
        if merged.iter().any(|r: &Vec<CycNumber>| r.iter().any(|x| !x.is_zero())) {
            self.blocks.insert(key, merged);
        }
    }

    pub fn add(&self, o: &UdotElement) -> UdotElement {
        assert_eq!(self.orientation, o.orientation, "normalize before adding");
        let mut out = self.clone();
        for (k, m) in &o.blocks {
            out.add_block(k.clone(), m.clone());
        }
        out
    }

    pub fn scale(&self, c: &CycNumber) -> UdotElement {
        let mut out = UdotElement::zero(self.orientation);
        for (k, m) in &self.blocks {
            out.add_block(k.clone(), m.iter().map(|r| r.iter().map(|x| x * c).collect()).collect());
        }
        out
    }

    /// Terms `coefficient * left 1_lambda right` over the given basis names.
    pub fn to_json<H: HalfAlgebra>(&self, half: &mut H) -> Result<serde_json::Value, UdotError> {
        let mut terms = Vec::new();
        for ((mu, lambda, nu), m) in &self.blocks {
            let bl = half.basis(mu)?;
            let br = half.basis(nu)?;
            for (a, row) in m.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        terms.push(json!({ "coefficient": c.to_string(), "left": bl[a].factors, "lambda": lambda, "right": br[b].factors }));
                    }
                }
            }
        }
        Ok(json!({ "orientation": self.orientation, "terms": terms }))
    }
}

fn outer(l: &[CycNumber], r: &[CycNumber], c: &CycNumber) -> Matrix {
    l.iter().map(|x| if x.is_zero() { vec![CycNumber::zero(c.field()); r.len()] } else { let xc = x * c; r.iter().map(|y| &xc * y).collect() }).collect()
}

/// The root datum data the relations need: parities, `d_i`, pairings and simple roots,
/// all on X-coordinates (for the derived datum, on the sublattice X<>).
#[derive(Clone, Debug)]
pub struct UdotDatum {
    pub rank: usize,
    pub parity: Vec<i64>,
    pub d: Vec<i64>,
    pairing: Vec<Vec<i64>>,
    divisor: Vec<i64>,
    roots: Vec<Vec<i64>>,
}

impl UdotDatum {
    pub fn of(d: &SuperDatum) -> Self {
        UdotDatum {
            rank: d.rank(),
            parity: (0..d.rank()).map(|i| d.p(i)).collect(),
            d: (0..d.rank()).map(|i| d.d(i)).collect(),
            pairing: d.pairing.clone(),
            divisor: vec![1; d.rank()],
            roots: d.simple_roots.clone(),
        }
    }

    /// `<i<>, x> = <i, x>/l_i`, `i'<> = l_i i'`, parameters `d_i l_i^2`.
    pub fn derived(dd: &DiamondDatum) -> Self {
        let n = dd.base.rank();
        UdotDatum {
            rank: n,
            parity: dd.parity.iter().map(|p| *p as i64).collect(),
            d: (0..n).map(|i| dd.d_diamond(i)).collect(),
            pairing: dd.base.pairing.clone(),
            divisor: dd.ell_i.clone(),
            roots: (0..n).map(|i| dd.root_diamond(i)).collect(),
        }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        (0..self.rank).all(|i| self.raw_pair(i, x) % self.divisor[i] == 0)
    }

    fn raw_pair(&self, i: usize, x: &[i64]) -> i64 {
        self.pairing[i].iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn pair(&self, i: usize, x: &[i64]) -> i64 {
        let v = self.raw_pair(i, x);
        debug_assert_eq!(v % self.divisor[i], 0, "weight outside the lattice");
        v / self.divisor[i]
    }

    /// `x + k sum_i nu_i i'`.
    pub fn shift(&self, x: &[i64], nu: &[i64], k: i64) -> XWeight {
        let mut out = x.to_vec();
        for (i, n) in nu.iter().enumerate() {
            for (o, r) in out.iter_mut().zip(&self.roots[i]) {
                *o += k * n * r;
            }
        }
        out
    }

    pub fn shift_one(&self, x: &[i64], i: usize, k: i64) -> XWeight {
        x.iter().zip(&self.roots[i]).map(|(a, r)| a + k * r).collect()
    }

    /// Left and right idempotent weights of a block.
    pub fn ends(&self, o: Orientation, key: &BlockKey) -> (XWeight, XWeight) {
        let s = o.sign();
        (self.shift(&key.1, &key.0, s), self.shift(&key.1, &key.2, s))
    }
}

/// `(coefficient, left monomial, lambda, right monomial)`.
pub type Term = (CycNumber, DividedMonomial, XWeight, DividedMonomial);
type MemoKey = (i64, DividedMonomial, XWeight, DividedMonomial);

/// The straightening engine for one datum and root-of-unity context.
pub struct UdotEngine {
    pub datum: UdotDatum,
    pub ctx: RootContext,
    binoms: HashMap<(usize, i64, u32), CycNumber>,
    memo: HashMap<MemoKey, Rc<Vec<Term>>>,
}

impl UdotEngine {
    pub fn new(datum: UdotDatum, ctx: &RootContext) -> Self {
        UdotEngine { datum, ctx: ctx.clone(), binoms: HashMap::new(), memo: HashMap::new() }
    }

    /// `[a, t]` at `(q_i, pi_i)`.
    pub fn binomial(&mut self, i: usize, a: i64, t: u32) -> CycNumber {
        let d = self.datum.d[i];
        let ctx = &self.ctx;
        self.binoms.entry((i, a, t)).or_insert_with(|| specialize(&qpi_binomial(a, t).at_index(d), ctx)).clone()
    }

    /// `pi_i^e` with `pi_i = pi^{d_i}`.
    fn pi_i(&self, i: usize, e: i64) -> i64 {
        self.ctx.pi_pow_sign(self.datum.d[i] * e)
    }

    fn weight(&self, m: &DividedMonomial) -> Weight {
        m.weight(self.datum.rank)
    }

    /// `(theta_j^{(n)})^s 1_kappa (theta_i^{(m)})^{-s}` rewritten with the
    /// opposite signs on the outside.
    pub fn rank_one(&mut self, s: i64, j: usize, n: u32, kappa: &[i64], i: usize, m: u32) -> Vec<Term> {
        let gen = |k: usize, e: u32| DividedMonomial::generator(k, e);
        let (n64, m64) = (n as i64, m as i64);
        if i != j {
            let sign = self.ctx.pi_pow_sign(m64 * n64 * self.datum.parity[i] * self.datum.parity[j]);
            let rho = self.datum.shift_one(&self.datum.shift_one(kappa, i, s * m64), j, s * n64);
            return vec![(self.ctx.int(sign), gen(i, m), rho, gen(j, n))];
        }
        let a = self.datum.pair(i, kappa);
        let mut out = Vec::new();
        for t in 0..=m.min(n) {
            let t64 = t as i64;
            let (e, top) = if s > 0 {
                (m64 * n64 - t64 * (t64 + 1) / 2, m64 + n64 + a)
            } else {
                (m64 * n64 + t64 * a - t64 * (t64 - 1) / 2, m64 + n64 - a)
            };
            let c = &self.ctx.int(self.pi_i(i, e)) * &self.binomial(i, top, t);
            if c.is_zero() {
                continue;
            }
            let rho = self.datum.shift_one(kappa, i, s * (m64 + n64 - t64));
            out.push((c, gen(i, m - t), rho, gen(i, n - t)));
        }
        out
    }

    /// `y^s 1_kappa x^{-s} = sum c x'^{-s} 1_tau y'^s`.
    pub fn straighten(&mut self, s: i64, y: &DividedMonomial, kappa: &[i64], x: &DividedMonomial) -> Rc<Vec<Term>> {
        let key = (s, y.clone(), kappa.to_vec(), x.clone());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let out = if y.factors.is_empty() {
            vec![(self.ctx.one(), x.clone(), self.datum.shift(kappa, &self.weight(x), s), DividedMonomial::one())]
        } else if x.factors.is_empty() {
            vec![(self.ctx.one(), DividedMonomial::one(), self.datum.shift(kappa, &self.weight(y), s), y.clone())]
        } else {
            let (j, n) = *y.factors.last().expect("nonempty");
            let (i, m) = x.factors[0];
            let y0 = DividedMonomial::new(y.factors[..y.factors.len() - 1].to_vec());
            let x1 = DividedMonomial::new(x.factors[1..].to_vec());
            let mut acc: BTreeMap<(DividedMonomial, XWeight, DividedMonomial), CycNumber> = BTreeMap::new();
            for (c, xa, rho, yb) in self.rank_one(s, j, n, kappa, i, m) {
                let k1 = self.datum.shift(&rho, &self.weight(&xa), -s);
                let first = self.straighten(s, &y0, &k1, &xa);
                let k2 = self.datum.shift(&rho, &self.weight(&yb), -s);
                for (c1, xp, _, yp) in first.iter() {
                    let second = self.straighten(s, &yp.concat(&yb), &k2, &x1);
                    let c01 = &c * c1;
                    for (c2, xpp, tau, ypp) in second.iter() {
                        let e = acc.entry((xp.concat(xpp), tau.clone(), ypp.clone())).or_insert_with(|| self.ctx.zero());
                        *e = &*e + &(&c01 * c2);
                    }
                }
            }
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|((a, t, b), c)| (c, a, t, b)).collect()
        };
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        out
    }

    /// `c * left 1_lambda right` in the given orientation.
    pub fn term<H: HalfAlgebra>(&mut self, half: &mut H, o: Orientation, c: &CycNumber, left: &DividedMonomial, lambda: &[i64], right: &DividedMonomial) -> Result<UdotElement, UdotError> {
        let mut e = UdotElement::zero(o);
        self.add_term(half, &mut e, c, left, lambda, right)?;
        Ok(e)
    }

    fn add_term<H: HalfAlgebra>(&mut self, half: &mut H, e: &mut UdotElement, c: &CycNumber, left: &DividedMonomial, lambda: &[i64], right: &DividedMonomial) -> Result<(), UdotError> {
        let l = half.monomial_coords(left)?;
        let r = half.monomial_coords(right)?;
        e.add_block((self.weight(left), lambda.to_vec(), self.weight(right)), outer(&l, &r, c));
        Ok(())
    }

    pub fn idempotent(&self, lambda: &[i64]) -> UdotElement {
        let mut e = UdotElement::zero(Orientation::PlusLeft);
        let zero = vec![0; self.datum.rank];
        e.add_block((zero.clone(), lambda.to_vec(), zero), vec![vec![self.ctx.one()]]);
        e
    }

    /// `E_i^{(n)} 1_lambda`.
    pub fn e_gen<H: HalfAlgebra>(&mut self, half: &mut H, i: usize, n: u32, lambda: &[i64]) -> Result<UdotElement, UdotError> {
        let one = self.ctx.one();
        self.term(half, Orientation::PlusLeft, &one, &DividedMonomial::generator(i, n), lambda, &DividedMonomial::one())
    }

    /// `F_i^{(n)} 1_lambda = 1_{lambda - n i'} F_i^{(n)}`.
    pub fn f_gen<H: HalfAlgebra>(&mut self, half: &mut H, i: usize, n: u32, lambda: &[i64]) -> Result<UdotElement, UdotError> {
        let one = self.ctx.one();
        let mu = self.datum.shift_one(lambda, i, -(n as i64));
        self.term(half, Orientation::PlusLeft, &one, &DividedMonomial::one(), &mu, &DividedMonomial::generator(i, n))
    }

    /// Rewrites every block in the requested orientation.
    pub fn convert<H: HalfAlgebra>(&mut self, half: &mut H, x: &UdotElement, target: Orientation) -> Result<UdotElement, UdotError> {
        if x.orientation == target {
            return Ok(x.clone());
        }
        let s = x.orientation.sign();
        let mut out = UdotElement::zero(target);
        for ((mu, lambda, nu), m) in &x.blocks {
            let bl = half.basis(mu)?;
            let br = half.basis(nu)?;
            for (a, row) in m.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let terms = self.straighten(s, &bl[a], lambda, &br[b]);
                    for (c1, xl, tau, yr) in terms.iter() {
                        self.add_term(half, &mut out, &(c * c1), xl, tau, yr)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// The product, in plus-left form.
    pub fn multiply<H: HalfAlgebra>(&mut self, half: &mut H, a: &UdotElement, b: &UdotElement) -> Result<UdotElement, UdotError> {
        let a = self.convert(half, a, Orientation::PlusLeft)?;
        let b = self.convert(half, b, Orientation::PlusLeft)?;
        let mut out = UdotElement::zero(Orientation::PlusLeft);
        for (ka, ma) in &a.blocks {
            let (_, right) = self.datum.ends(Orientation::PlusLeft, ka);
            for (kb, mb) in &b.blocks {
                let (left, _) = self.datum.ends(Orientation::PlusLeft, kb);
                if left != right {
                    continue;
                }
                let (mu, nu) = (&ka.0, &ka.2);
                let (mu2, nu2) = (&kb.0, &kb.2);
                let bn = half.basis(nu)?;
                let bm2 = half.basis(mu2)?;
                for (bi, y) in bn.iter().enumerate() {
                    let col: Vec<CycNumber> = ma.iter().map(|r| r[bi].clone()).collect();
                    if col.iter().all(|c| c.is_zero()) {
                        continue;
                    }
                    for (ai, x) in bm2.iter().enumerate() {
                        let row = &mb[ai];
                        if row.iter().all(|c| c.is_zero()) {
                            continue;
                        }
                        let terms = self.straighten(-1, y, &right, x);
                        for (c, xp, tau, yp) in terms.iter() {
                            let wx = self.weight(xp);
                            let wy = self.weight(yp);
                            let xc = half.monomial_coords(xp)?;
                            let yc = half.monomial_coords(yp)?;
                            let l = half.mul_coords(mu, &col, &wx, &xc)?;
                            let r = half.mul_coords(&wy, &yc, nu2, row)?;
                            out.add_block((weight_add(mu, &wx), tau.clone(), weight_add(&wy, nu2)), outer(&l, &r, c));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Both displayed rank-one relations as plain rewrites of a single product:
    /// `(theta_i^{(N)})^{+-} 1_lambda (theta_i^{(M)})^{-+}` in the opposite orientation.
    pub fn straighten_rank1<H: HalfAlgebra>(&mut self, half: &mut H, i: usize, n: u32, lambda: &[i64], m: u32, plus_then_minus: bool) -> Result<UdotElement, UdotError> {
        let s = if plus_then_minus { 1 } else { -1 };
        let terms = self.rank_one(s, i, n, lambda, i, m);
        let mut out = UdotElement::zero(Orientation::of_sign(-s));
        for (c, x, tau, y) in terms {
            self.add_term(half, &mut out, &c, &x, &tau, &y)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
