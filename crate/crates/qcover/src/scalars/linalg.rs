//! Exact linear algebra over a cyclotomic field.

use super::cyclo::{CycField, CycNumber};
use std::sync::Arc;

/// Reduced row echelon form built one row at a time.
#[derive(Clone, Debug)]
pub struct CycEchelon {
    field: Arc<CycField>,
    rows: Vec<(usize, Vec<CycNumber>)>,
}

impl CycEchelon {
    pub fn new(field: &Arc<CycField>) -> Self {
        CycEchelon { field: field.clone(), rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Vec<CycNumber>> {
        self.rows.iter().map(|r| &r.1)
    }

    pub fn reduce(&self, mut v: Vec<CycNumber>) -> Vec<CycNumber> {
        for (piv, row) in &self.rows {
            if !v[*piv].is_zero() {
                let c = v[*piv].clone();
                for (a, b) in v.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a = &*a - &(&c * b);
                    }
                }
            }
        }
        v
    }

    /// Inserts `v` if independent of the stored rows.
    pub fn insert(&mut self, v: Vec<CycNumber>) -> bool {
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[piv].inv().expect("nonzero field element");
        for a in v.iter_mut() {
            if !a.is_zero() {
                *a = &*a * &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if !row[piv].is_zero() {
                let c = row[piv].clone();
                for (a, b) in row.iter_mut().zip(&v) {
                    if !b.is_zero() {
                        *a = &*a - &(&c * b);
                    }
                }
            }
        }
        self.rows.push((piv, v));
        true
    }

    pub fn contains(&self, v: &[CycNumber]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }
}

/// Rank of a list of rows.
pub fn cyc_rank(field: &Arc<CycField>, rows: impl IntoIterator<Item = Vec<CycNumber>>) -> usize {
    let mut e = CycEchelon::new(field);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn cyc_inverse(field: &Arc<CycField>, m: &[Vec<CycNumber>]) -> Option<Vec<Vec<CycNumber>>> {
    let n = m.len();
    let mut a: Vec<Vec<CycNumber>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { CycNumber::one(field) } else { CycNumber::zero(field) }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|r| !a[*r][c].is_zero())?;
        a.swap(c, piv);
        let inv = a[c][c].inv()?;
        for x in a[c].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let prow = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row vector times matrix.
pub fn vec_mat(field: &Arc<CycField>, y: &[CycNumber], m: &[Vec<CycNumber>]) -> Vec<CycNumber> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![CycNumber::zero(field); cols];
    for (a, row) in y.iter().zip(m) {
        if a.is_zero() {
            continue;
        }
        for (o, b) in out.iter_mut().zip(row) {
            if !b.is_zero() {
                *o = &*o + &(a * b);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_rank() {
        let f = CycField::get(12);
        let z = CycNumber::zeta_pow(&f, 1);
        let one = CycNumber::one(&f);
        let m = vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]];
        let inv = cyc_inverse(&f, &m).unwrap();
        let prod0 = vec_mat(&f, &m[0], &inv);
        assert!(prod0[0].is_one() && prod0[1].is_zero());
        let sing = vec![vec![one.clone(), z.clone()], vec![z.clone(), &z * &z]];
        assert!(cyc_inverse(&f, &sing).is_none());
        assert_eq!(cyc_rank(&f, sing), 1);
    }
}
