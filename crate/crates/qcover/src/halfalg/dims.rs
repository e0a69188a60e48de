//! Dimension tables of subalgebras and quotient modules of `R (x) f`.

use super::special::{GradedElement, SpecError, SpecF};
use super::words::{total_degree, unit_weight, weight_sub, weights_of_degree, DividedMonomial, Weight};
use crate::scalars::linalg::CycEchelon;
use serde::Serialize;
use std::collections::BTreeMap;

/// Rows `(nu, dim)`, listing only weights that were reached.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DimTable {
    pub rows: BTreeMap<Weight, usize>,
}

impl DimTable {
    pub fn total(&self) -> usize {
        self.rows.values().sum()
    }

    pub fn get(&self, nu: &[i64]) -> usize {
        self.rows.get(nu).copied().unwrap_or(0)
    }

    /// Nonzero rows only.
    pub fn support(&self) -> BTreeMap<Weight, usize> {
        self.rows.iter().filter(|(_, d)| **d > 0).map(|(w, d)| (w.clone(), *d)).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for (w, d) in &self.rows {
            let cols: Vec<String> = w.iter().map(|x| x.to_string()).chain([d.to_string()]).collect();
            s.push_str(&cols.join(","));
            s.push('\n');
        }
        s
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DimError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("generators must be homogeneous of nonzero weight")]
    BadGenerator,
    #[error("weight is not dominant")]
    NotDominant,
    #[error("no vanishing degree found up to {0}")]
    NotFinite(i64),
}

/// Dimensions of the subalgebra generated by homogeneous elements, degree by
/// degree up to `max_degree`. Stops early once a whole degree vanishes.
pub fn specialized_span_dims(sf: &mut SpecF, generators: &[GradedElement], max_degree: i64) -> Result<DimTable, DimError> {
    let spans = specialized_spans(sf, generators, max_degree)?;
    Ok(DimTable { rows: spans.into_iter().map(|(w, e)| (w, e.rank())).collect() })
}

/// Per-weight echelon bases (in basis coordinates) of the subalgebra generated
/// by homogeneous elements.
pub fn specialized_spans(sf: &mut SpecF, generators: &[GradedElement], max_degree: i64) -> Result<BTreeMap<Weight, CycEchelon>, DimError> {
    let mut gens = Vec::new();
    for g in generators {
        if g.terms.len() != 1 {
            if g.is_zero() {
                continue;
            }
            return Err(DimError::BadGenerator);
        }
        let (w, c) = g.terms.iter().next().unwrap();
        if total_degree(w) == 0 {
            return Err(DimError::BadGenerator);
        }
        gens.push((w.clone(), c.clone()));
    }
    let rank = sf.rank();
    let zero = vec![0; rank];
    let mut spans: BTreeMap<Weight, CycEchelon> = BTreeMap::new();
    let mut one = CycEchelon::new(&sf.ctx.field);
    one.insert(vec![sf.ctx.one()]);
    spans.insert(zero.clone(), one);
    for deg in 1..=max_degree {
        let mut any = false;
        for nu in weights_of_degree(rank, deg) {
            let sources: Vec<(usize, Weight)> = gens
                .iter()
                .enumerate()
                .filter_map(|(k, (w, _))| weight_sub(&nu, w).filter(|r| spans.get(r).is_some_and(|e| e.rank() > 0)).map(|r| (k, r)))
                .collect();
            if sources.is_empty() {
                continue;
            }
            let mut ech = CycEchelon::new(&sf.ctx.field);
            for (k, rest) in sources {
                let rows: Vec<_> = spans[&rest].rows().cloned().collect();
                let (gw, gc) = &gens[k];
                for r in rows {
                    ech.insert(sf.mul_coords(gw, gc, &rest, &r)?);
                }
            }
            any |= ech.rank() > 0;
            spans.insert(nu, ech);
        }
        if !any {
            break;
        }
    }
    Ok(spans)
}

/// The generators `theta_i` with `l_i >= 2`.
pub fn small_generators(sf: &mut SpecF, ell_i: &[i64]) -> Result<Vec<GradedElement>, DimError> {
    let mut out = Vec::new();
    for (i, l) in ell_i.iter().enumerate() {
        if *l >= 2 {
            out.push(sf.monomial(&DividedMonomial::generator(i, 1))?);
        }
    }
    Ok(out)
}

/// Dimensions of `V(lambda)_{lambda - nu}` where `a[i] = <i, lambda>`, as
/// `f / sum_{i, n > a_i} f theta_i^{(n)}`. Stops once a whole degree vanishes.
pub fn v_lambda_dims(sf: &mut SpecF, a: &[i64], max_degree: i64) -> Result<DimTable, DimError> {
    if a.iter().any(|x| *x < 0) {
        return Err(DimError::NotDominant);
    }
    let rank = sf.rank();
    let mut table = DimTable::default();
    table.rows.insert(vec![0; rank], 1);
    for deg in 1..=max_degree {
        let mut any = false;
        for nu in weights_of_degree(rank, deg) {
            // V_nu is spanned by theta_i V_{nu - i}.
            let reachable = (0..rank).any(|i| weight_sub(&nu, &unit_weight(rank, i, 1)).is_some_and(|r| table.get(&r) > 0));
            if !reachable {
                continue;
            }
            let dim = sf.dim(&nu)?;
            let mut ech = CycEchelon::new(&sf.ctx.field);
            for i in 0..rank {
                for n in (a[i] + 1)..=nu[i] {
                    let top = unit_weight(rank, i, n);
                    let rest = weight_sub(&nu, &top).expect("n <= nu_i");
                    let rest_dim = sf.dim(&rest)?;
                    let t = sf.monomial_coords(&DividedMonomial::generator(i, n as u32))?;
                    for b in 0..rest_dim {
                        let mut x = vec![sf.ctx.zero(); rest_dim];
                        x[b] = sf.ctx.one();
                        ech.insert(sf.mul_coords(&rest, &x, &top, &t)?);
                        if ech.rank() == dim {
                            break;
                        }
                    }
                }
            }
            let v = dim - ech.rank();
            any |= v > 0;
            table.rows.insert(nu, v);
        }
        if !any {
            return Ok(table);
        }
    }
    Ok(table)
}
