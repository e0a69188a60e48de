//! `R (x) f` at a root of unity, realised inside the specialized shuffle algebra.
//!
//! For each weight we pick divided monomials whose specialized shuffle images
//! have a nonsingular minor modulo a prime above p; the number picked equals
//! the certified generic dimension, so the integral form keeps its rank and
//! those monomials are a basis of `R (x) f_nu`. An element is determined by
//! its values on the minor's pivot words.

use super::generic::{generic_dim, GenericError};
use super::ring::{CycIntRing, FpAtRoot};
use super::shuffle::{product_coeff_at, psi_monomial, Braiding, ShuffleVec};
use super::words::{monomials_of_weight, weight_add, word_space, DividedMonomial, Weight};
use crate::datum::SuperDatum;
use crate::scalars::cyclo::CycNumber;
use crate::scalars::linalg::{cyc_inverse, vec_mat};
use crate::scalars::modp::{prime_with_root, ModpEchelon};
use crate::scalars::RootContext;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SpecError {
    #[error(transparent)]
    Generic(#[from] GenericError),
    #[error("specialization loses rank at {weight:?}: generic {generic}, specialized {specialized}")]
    RankDrop { weight: Weight, generic: usize, specialized: usize },
    #[error("scalar kinds or contexts do not match")]
    Incompatible,
}

/// One weight space of `R (x) f`.
#[derive(Debug)]
pub struct SpecSpace {
    pub weight: Weight,
    pub basis: Vec<DividedMonomial>,
    /// Exact specialized shuffle images of the basis (power-basis coordinates).
    pub psi: Vec<ShuffleVec<Vec<i64>>>,
    pub pivot_words: Vec<Vec<u8>>,
    /// Inverse of the basis-by-pivot matrix.
    pub ainv: Vec<Vec<CycNumber>>,
}

impl SpecSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// A homogeneous-by-weight element of `R (x) f` in basis coordinates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GradedElement {
    pub terms: BTreeMap<Weight, Vec<CycNumber>>,
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement { terms: BTreeMap::new() }
    }

    pub fn homogeneous(weight: Weight, coords: Vec<CycNumber>) -> Self {
        let mut e = GradedElement::zero();
        if coords.iter().any(|c| !c.is_zero()) {
            e.terms.insert(weight, coords);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        for (w, c) in &o.terms {
            let merged: Vec<CycNumber> = match out.terms.get(w) {
                Some(a) => a.iter().zip(c).map(|(x, y)| x + y).collect(),
                None => c.clone(),
            };
            if merged.iter().all(|x| x.is_zero()) {
                out.terms.remove(w);
            } else {
                out.terms.insert(w.clone(), merged);
            }
        }
        out
    }

    pub fn scale(&self, k: &CycNumber) -> GradedElement {
        if k.is_zero() {
            return GradedElement::zero();
        }
        GradedElement { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.iter().map(|x| x * k).collect())).collect() }
    }
}

type Table = Vec<Vec<Vec<CycNumber>>>;

/// `R (x) f` for one datum and root-of-unity context.
pub struct SpecF {
    pub ctx: RootContext,
    pub datum: SuperDatum,
    pub braiding: Braiding,
    pub ring: CycIntRing,
    pub fp: FpAtRoot,
    spaces: HashMap<Weight, Arc<SpecSpace>>,
    products: HashMap<(Weight, Weight), Arc<Table>>,
}

impl SpecF {
    pub fn new(d: &SuperDatum, ctx: &RootContext) -> Result<Self, SpecError> {
        if ctx.pi_sign == -1 && !d.is_bar_consistent() {
            return Err(GenericError::PiNotSupported.into());
        }
        let (p, omega) = prime_with_root(ctx.conductor, 0);
        Ok(SpecF {
            ctx: ctx.clone(),
            datum: d.clone(),
            braiding: Braiding::new(d),
            ring: CycIntRing::new(ctx),
            fp: FpAtRoot::new(ctx, p, omega),
            spaces: HashMap::new(),
            products: HashMap::new(),
        })
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn space(&mut self, nu: &[i64]) -> Result<Arc<SpecSpace>, SpecError> {
        if let Some(s) = self.spaces.get(nu) {
            return Ok(s.clone());
        }
        let s = Arc::new(self.build_space(nu)?);
        self.spaces.insert(nu.to_vec(), s.clone());
        Ok(s)
    }

    fn build_space(&self, nu: &[i64]) -> Result<SpecSpace, SpecError> {
        let d = generic_dim(&self.datum, nu, self.ctx.pi_sign)?;
        let mut ech = ModpEchelon::new(self.fp.p);
        let mut basis = Vec::new();
        if d > 0 {
            for m in monomials_of_weight(nu) {
                if ech.insert(psi_monomial(&self.fp, &self.braiding, &m).coeffs) {
                    basis.push(m);
                    if basis.len() == d {
                        break;
                    }
                }
            }
        }
        if basis.len() < d {
            return Err(SpecError::RankDrop { weight: nu.to_vec(), generic: d, specialized: basis.len() });
        }
        let space = word_space(nu);
        let pivots = ech.pivots();
        let pivot_words: Vec<Vec<u8>> = pivots.iter().map(|k| space.words[*k].clone()).collect();
        let psi: Vec<ShuffleVec<Vec<i64>>> = basis.iter().map(|m| psi_monomial(&self.ring, &self.braiding, m)).collect();
        let a: Vec<Vec<CycNumber>> = psi.iter().map(|v| pivots.iter().map(|k| self.ring.to_cyc(&v.coeffs[*k])).collect()).collect();
        let ainv = cyc_inverse(&self.ctx.field, &a).expect("minor is nonsingular modulo a prime, hence invertible");
        Ok(SpecSpace { weight: nu.to_vec(), basis, psi, pivot_words, ainv })
    }

    pub fn dim(&mut self, nu: &[i64]) -> Result<usize, SpecError> {
        Ok(self.space(nu)?.dim())
    }

    /// Coordinates of an element given by its exact specialized shuffle image.
    pub fn coords_of_psi(&mut self, v: &ShuffleVec<Vec<i64>>) -> Result<Vec<CycNumber>, SpecError> {
        let s = self.space(v.weight())?;
        let y: Vec<CycNumber> = s.pivot_words.iter().map(|w| self.ring.to_cyc(v.at(w))).collect();
        Ok(vec_mat(&self.ctx.field, &y, &s.ainv))
    }

    /// Coordinates of a divided monomial.
    pub fn monomial_coords(&mut self, m: &DividedMonomial) -> Result<Vec<CycNumber>, SpecError> {
        let v = psi_monomial(&self.ring, &self.braiding, m);
        self.coords_of_psi(&v)
    }

    pub fn monomial(&mut self, m: &DividedMonomial) -> Result<GradedElement, SpecError> {
        let w = m.weight(self.rank());
        Ok(GradedElement::homogeneous(w, self.monomial_coords(m)?))
    }

    /// `table[a][b]` = coordinates of `basis_mu[a] * basis_nu[b]`.
    pub fn structure(&mut self, mu: &[i64], nu: &[i64]) -> Result<Arc<Table>, SpecError> {
        let key = (mu.to_vec(), nu.to_vec());
        if let Some(t) = self.products.get(&key) {
            return Ok(t.clone());
        }
        let sm = self.space(mu)?;
        let sn = self.space(nu)?;
        let sum = weight_add(mu, nu);
        let ss = self.space(&sum)?;
        let mut table = Vec::with_capacity(sm.dim());
        for u in &sm.psi {
            let mut row = Vec::with_capacity(sn.dim());
            for v in &sn.psi {
                let y: Vec<CycNumber> = ss.pivot_words.iter().map(|w| self.ring.to_cyc(&product_coeff_at(&self.ring, &self.braiding, u, v, w))).collect();
                row.push(vec_mat(&self.ctx.field, &y, &ss.ainv));
            }
            table.push(row);
        }
        let t = Arc::new(table);
        self.products.insert(key, t.clone());
        Ok(t)
    }

    /// Product of homogeneous coordinate vectors.
    pub fn mul_coords(&mut self, mu: &[i64], x: &[CycNumber], nu: &[i64], y: &[CycNumber]) -> Result<Vec<CycNumber>, SpecError> {
        let sum = weight_add(mu, nu);
        let dim = self.dim(&sum)?;
        let mut out = vec![self.ctx.zero(); dim];
        if x.iter().all(|c| c.is_zero()) || y.iter().all(|c| c.is_zero()) {
            return Ok(out);
        }
        let t = self.structure(mu, nu)?;
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let c = xa * yb;
                for (o, s) in out.iter_mut().zip(&t[a][b]) {
                    if !s.is_zero() {
                        *o = &*o + &(&c * s);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn multiply(&mut self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement, SpecError> {
        let mut out = GradedElement::zero();
        for (mu, x) in &a.terms {
            for (nu, y) in &b.terms {
                let c = self.mul_coords(mu, x, nu, y)?;
                out = out.add(&GradedElement::homogeneous(weight_add(mu, nu), c));
            }
        }
        Ok(out)
    }

    /// The unit element.
    pub fn one(&self) -> GradedElement {
        GradedElement::homogeneous(vec![0; self.rank()], vec![self.ctx.one()])
    }

}
