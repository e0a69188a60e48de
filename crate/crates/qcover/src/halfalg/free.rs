//! Elements of the free algebra on divided powers with generic coefficients,
//! and the Serre-type elements of f.

use super::ring::Ring;
use super::shuffle::{axpy, psi_monomial, zero_vec, Braiding, ShuffleVec};
use super::words::{DividedMonomial, Weight};
use crate::datum::SuperDatum;
use crate::scalars::PiLaurent;
use serde::Serialize;

/// A homogeneous combination of divided monomials over `Z[q, q^-1, pi]/(pi^2 - 1)`.
#[derive(Clone, Debug, Serialize)]
pub struct FreeElement {
    pub weight: Weight,
    pub terms: Vec<(PiLaurent, DividedMonomial)>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SerreError {
    #[error("Serre elements need distinct indices")]
    SameIndex,
    #[error("parameters outside the vanishing range: need m > {alpha} * n")]
    OutOfRange { alpha: i64 },
    #[error("index out of range")]
    BadIndex,
}

impl FreeElement {
    pub fn zero(weight: Weight) -> Self {
        FreeElement { weight, terms: Vec::new() }
    }

    pub fn monomial(rank: usize, m: DividedMonomial) -> Self {
        FreeElement { weight: m.weight(rank), terms: vec![(PiLaurent::one(), m)] }
    }

    /// Concatenation product.
    pub fn mul(&self, o: &FreeElement) -> FreeElement {
        let weight = self.weight.iter().zip(&o.weight).map(|(a, b)| a + b).collect();
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (a, m) in &self.terms {
            for (b, n) in &o.terms {
                terms.push((a * b, m.concat(n)));
            }
        }
        FreeElement { weight, terms }
    }

    pub fn add(&self, o: &FreeElement) -> FreeElement {
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        FreeElement { weight: self.weight.clone(), terms }
    }

    pub fn scale(&self, c: &PiLaurent) -> FreeElement {
        FreeElement { weight: self.weight.clone(), terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect() }
    }

    /// The shuffle image in a coefficient ring.
    pub fn psi<R: Ring>(&self, r: &R, b: &Braiding) -> ShuffleVec<R::E> {
        let mut out = zero_vec(r, &self.weight);
        for (c, m) in &self.terms {
            let c = r.embed(c);
            if !r.is_zero(&c) {
                axpy(r, &mut out, &c, &psi_monomial(r, b, m));
            }
        }
        out
    }
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `sum_{n+n'=1-<i,j'>} (-1)^{n'} pi_i^{n' p(j) + C(n',2)} theta_i^{(n)} theta_j theta_i^{(n')}`.
pub fn serre_element(d: &SuperDatum, i: usize, j: usize) -> Result<FreeElement, SerreError> {
    if i >= d.rank() || j >= d.rank() {
        return Err(SerreError::BadIndex);
    }
    if i == j {
        return Err(SerreError::SameIndex);
    }
    let top = 1 - d.cartan(i, j);
    let di = d.d(i);
    let mut terms = Vec::new();
    for np in 0..=top {
        let n = top - np;
        let sign = if np % 2 == 0 { 1 } else { -1 };
        let c = PiLaurent::pi_pow(di * (np * d.p(j) + binom2(np))) * PiLaurent::from_int(sign);
        terms.push((c, DividedMonomial::new(vec![(i, n as u32), (j, 1), (i, np as u32)])));
    }
    let mut weight = vec![0; d.rank()];
    weight[i] = top;
    weight[j] = 1;
    Ok(FreeElement { weight, terms })
}

/// `sum_{r+s=m} (-1)^r pi_i^{n r p(j) + C(r,2)} c_i^{r(alpha n - m + 1)} theta_i^{(r)} theta_j^{(n)} theta_i^{(s)}`
/// with `alpha = -<i,j'>`, `c_i = q_i^{-1}` for `e = -1` and `c_i = pi_i q_i` for `e = 1`.
/// It lies in the Serre ideal when `m > alpha n`.
pub fn higher_serre_element(d: &SuperDatum, i: usize, j: usize, n: u32, m: u32, e: i8) -> Result<FreeElement, SerreError> {
    if i >= d.rank() || j >= d.rank() {
        return Err(SerreError::BadIndex);
    }
    if i == j {
        return Err(SerreError::SameIndex);
    }
    let alpha = -d.cartan(i, j);
    if n == 0 || (m as i64) <= alpha * n as i64 {
        return Err(SerreError::OutOfRange { alpha });
    }
    let (n, m, e) = (n as i64, m as i64, e as i64);
    let di = d.d(i);
    let mut terms = Vec::new();
    for r in 0..=m {
        let s = m - r;
        let sign = if r % 2 == 0 { 1 } else { -1 };
        let x = r * (alpha * n - m + 1);
        let pi_extra = if e == 1 { x } else { 0 };
        let c = PiLaurent::pi_q(di * (n * r * d.p(j) + binom2(r) + pi_extra), di * e * x) * PiLaurent::from_int(sign);
        terms.push((c, DividedMonomial::new(vec![(i, r as u32), (j, n as u32), (i, s as u32)])));
    }
    let mut weight = vec![0; d.rank()];
    weight[i] = m;
    weight[j] = n;
    Ok(FreeElement { weight, terms })
}
