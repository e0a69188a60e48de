//! Super Cartan data, root data, axiom validation, and the derived datum.

use crate::scalars::RootContext;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// How the weight lattice X is presented.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeSpec {
    /// `"weight"` or `"root"`.
    Named(String),
    /// Explicit pairing rows `<i, x_k>` and simple roots `i'` in the same basis.
    Explicit { pairing: Vec<Vec<i64>>, simple_roots: Vec<Vec<i64>> },
}

/// Datum file contents.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumFile {
    #[serde(rename = "I")]
    pub index_set: Vec<String>,
    pub dot: Vec<Vec<i64>>,
    pub parity: Vec<u8>,
    pub lattice: LatticeSpec,
}

/// A super Cartan datum `(I, ., p)` with a root datum on a free lattice X.
///
/// X has coordinates in a fixed basis; `pairing[i]` is the row `<i, ->`
/// and `simple_roots[i]` is `i'`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuperDatum {
    pub names: Vec<String>,
    pub dot: Vec<Vec<i64>>,
    pub parity: Vec<u8>,
    pub pairing: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    /// True when the datum is meant to be super (some odd index).
    pub is_super: bool,
    /// The simply connected presentation (X spanned by fundamental weights).
    pub weight_lattice: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: String,
    pub indices: Vec<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum DatumError {
    #[error("malformed datum: {0}")]
    Malformed(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl SuperDatum {
    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn lattice_rank(&self) -> usize {
        self.pairing.first().map_or(0, |r| r.len())
    }

    /// `d_i = (i.i)/2`.
    pub fn d(&self, i: usize) -> i64 {
        self.dot[i][i] / 2
    }

    /// `<i, j'> = 2 (i.j)/(i.i)`.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        2 * self.dot[i][j] / self.dot[i][i]
    }

    pub fn p(&self, i: usize) -> i64 {
        self.parity[i] as i64
    }

    /// `<i, x>`.
    pub fn pair(&self, i: usize, x: &[i64]) -> i64 {
        self.pairing[i].iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn zero_weight(&self) -> Vec<i64> {
        vec![0; self.lattice_rank()]
    }

    /// `x + k i'`.
    pub fn shift(&self, x: &[i64], i: usize, k: i64) -> Vec<i64> {
        x.iter().zip(&self.simple_roots[i]).map(|(a, b)| a + k * b).collect()
    }

    /// The image of `nu in N[I]` in X.
    pub fn root_weight(&self, nu: &[i64]) -> Vec<i64> {
        let mut x = self.zero_weight();
        for (i, n) in nu.iter().enumerate() {
            x = self.shift(&x, i, *n);
        }
        x
    }

    /// `d_i = p(i) mod 2` for all i; only then is the `pi = -1` component meaningful.
    pub fn is_bar_consistent(&self) -> bool {
        (0..self.rank()).all(|i| (self.d(i) - self.p(i)).rem_euclid(2) == 0)
    }

    /// The pi-components this datum supports.
    pub fn pi_signs(&self) -> Vec<i8> {
        if self.is_bar_consistent() {
            vec![1, -1]
        } else {
            vec![1]
        }
    }

    pub fn is_dominant(&self, x: &[i64]) -> bool {
        (0..self.rank()).all(|i| self.pair(i, x) >= 0)
    }

    /// The unique weight with prescribed pairings, if it lies in X.
    pub fn weight_with_pairings(&self, a: &[i64]) -> Option<Vec<i64>> {
        let n = self.rank();
        if self.lattice_rank() != n {
            return None;
        }
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = self.pairing[i].iter().map(|x| BigRational::from_integer((*x).into())).collect();
                row.push(BigRational::from_integer(a[i].into()));
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|r| !m[*r][c].is_zero())?;
            m.swap(c, piv);
            let inv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    let pivot_row = m[c].clone();
                    for (x, y) in m[r].iter_mut().zip(pivot_row) {
                        *x = &*x - &f * y;
                    }
                }
            }
        }
        m.iter().map(|row| if row[n].is_integer() { Some(row[n].to_integer().try_into().ok()?) } else { None }).collect()
    }

    pub fn from_file(f: &DatumFile) -> Result<SuperDatum, DatumError> {
        let n = f.index_set.len();
        if f.dot.len() != n || f.dot.iter().any(|r| r.len() != n) || f.parity.len() != n {
            return Err(DatumError::Malformed("dimension mismatch".into()));
        }
        if f.dot.iter().enumerate().any(|(i, r)| r[i] <= 0) {
            return Err(DatumError::Malformed("i.i must be positive".into()));
        }
        let cart = |i: usize, j: usize| 2 * f.dot[i][j] / f.dot[i][i];
        let is_super = f.parity.iter().any(|p| *p == 1);
        let (pairing, simple_roots, weight_lattice) = match &f.lattice {
            LatticeSpec::Named(s) if s == "weight" => {
                let pairing = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
                let roots = (0..n).map(|i| (0..n).map(|j| cart(j, i)).collect()).collect();
                (pairing, roots, true)
            }
            LatticeSpec::Named(s) if s == "root" => {
                let pairing = (0..n).map(|i| (0..n).map(|j| cart(i, j)).collect()).collect();
                let roots = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
                (pairing, roots, false)
            }
            LatticeSpec::Named(s) => return Err(DatumError::Malformed(format!("unknown lattice `{}`", s))),
            LatticeSpec::Explicit { pairing, simple_roots } => {
                if pairing.len() != n || simple_roots.len() != n {
                    return Err(DatumError::Malformed("pairing/simple_roots size".into()));
                }
                let r = pairing[0].len();
                if pairing.iter().chain(simple_roots.iter()).any(|row| row.len() != r) {
                    return Err(DatumError::Malformed("ragged lattice data".into()));
                }
                (pairing.clone(), simple_roots.clone(), false)
            }
        };
        Ok(SuperDatum {
            names: f.index_set.clone(),
            dot: f.dot.clone(),
            parity: f.parity.clone(),
            pairing,
            simple_roots,
            is_super,
            weight_lattice,
        })
    }

    pub fn from_json(s: &str) -> Result<SuperDatum, DatumError> {
        Self::from_file(&serde_json::from_str(s)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeChoice {
    Weight,
    Root,
}

/// The osp(1|2n) datum: a chain whose last node is odd with `n.n = 2`, the
/// others even with `i.i = 4`, and `i.(i+1) = -2`.
pub fn osp_datum(n: usize, lattice: LatticeChoice) -> SuperDatum {
    assert!(n >= 1);
    let mut dot = vec![vec![0i64; n]; n];
    for i in 0..n {
        dot[i][i] = if i == n - 1 { 2 } else { 4 };
        if i + 1 < n {
            dot[i][i + 1] = -2;
            dot[i + 1][i] = -2;
        }
    }
    let mut parity = vec![0u8; n];
    parity[n - 1] = 1;
    let f = DatumFile {
        index_set: (1..=n).map(|k| k.to_string()).collect(),
        dot,
        parity,
        lattice: LatticeSpec::Named(match lattice {
            LatticeChoice::Weight => "weight".into(),
            LatticeChoice::Root => "root".into(),
        }),
    };
    SuperDatum::from_file(&f).expect("osp datum is well formed")
}

/// A rank-two datum with all parities even and the given Cartan-type dot matrix.
pub fn even_rank_two(dot: [[i64; 2]; 2], lattice: LatticeChoice) -> SuperDatum {
    let f = DatumFile {
        index_set: vec!["1".into(), "2".into()],
        dot: dot.iter().map(|r| r.to_vec()).collect(),
        parity: vec![0, 0],
        lattice: LatticeSpec::Named(match lattice {
            LatticeChoice::Weight => "weight".into(),
            LatticeChoice::Root => "root".into(),
        }),
    };
    SuperDatum::from_file(&f).expect("rank-two datum is well formed")
}

fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|x| BigRational::from_integer((*x).into())).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|r| !m[*r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                let prow = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(prow) {
                    *x = &*x - &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Checks every axiom of a super Cartan datum with its root datum.
pub fn validate_super_datum(d: &SuperDatum) -> Vec<Violation> {
    let n = d.rank();
    let mut out = Vec::new();
    let mut push = |c: &str, idx: Vec<usize>| out.push(Violation { condition: c.into(), indices: idx });
    for i in 0..n {
        for j in 0..n {
            if d.dot[i][j] != d.dot[j][i] {
                push("symmetric", vec![i, j]);
            }
        }
    }
    for i in 0..n {
        let ii = d.dot[i][i];
        if ii <= 0 || ii % 2 != 0 {
            push("(a) d_i positive integer", vec![i]);
            continue;
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let num = 2 * d.dot[i][j];
            if num % ii != 0 || num / ii > 0 {
                push("(b) 2(i.j)/(i.i) in -N", vec![i, j]);
            } else if d.parity[i] == 1 && (num / ii) % 2 != 0 {
                push("(d) 2(i.j)/(i.i) even for odd i", vec![i, j]);
            }
        }
        if (ii / 2 - d.p(i)).rem_euclid(2) != 0 {
            push("(e) bar-consistency", vec![i]);
        }
    }
    if d.is_super && !d.parity.iter().any(|p| *p == 1) {
        push("(c) odd part nonempty", vec![]);
    }
    for i in 0..n {
        for j in 0..n {
            if d.dot[i][i] > 0 && d.pair(i, &d.simple_roots[j]) != 2 * d.dot[i][j] / d.dot[i][i] {
                push("pairing <i, j'> = 2(i.j)/(i.i)", vec![i, j]);
            }
        }
    }
    if integer_rank(&d.simple_roots) < n {
        push("X-regularity: simple roots independent", (0..n).collect());
    }
    out
}

/// The derived datum at a root of unity.
#[derive(Clone, Debug, Serialize)]
pub struct DiamondDatum {
    pub base: SuperDatum,
    pub ell: u64,
    pub ell_i: Vec<i64>,
    /// `i <> j = (i.j) l_i l_j`.
    pub diamond: Vec<Vec<i64>>,
    /// Parity of the derived datum (unchanged for odd l, all even for even l).
    pub parity: Vec<u8>,
    pub is_super: bool,
    /// A basis of X<> in X-coordinates (rows).
    pub x_diamond_basis: Vec<Vec<i64>>,
    /// The derived datum as a datum on X<>, in coordinates of `x_diamond_basis`.
    pub derived: SuperDatum,
}

/// `l_i = min { r > 0 : r d_i in l Z }`.
pub fn ell_i(d_i: i64, ell: u64) -> i64 {
    let l = ell as i64;
    l / l.gcd(&d_i)
}

/// Row-style Hermite basis of the lattice spanned by `gens`.
pub fn lattice_basis(gens: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = gens.iter().filter(|r| r.iter().any(|x| *x != 0)).cloned().collect();
    let cols = gens.first().map_or(0, |r| r.len());
    let mut basis = Vec::new();
    for c in 0..cols {
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|r| rows[*r][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|r| rows[**r][c].abs()).unwrap();
            for &r in &nz {
                if r != p {
                    let f = rows[r][c] / rows[p][c];
                    let prow = rows[p].clone();
                    for (x, y) in rows[r].iter_mut().zip(prow) {
                        *x -= f * y;
                    }
                }
            }
        }
        if let Some(p) = (0..rows.len()).find(|r| rows[*r][c] != 0) {
            let mut row = rows.remove(p);
            if row[c] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
            basis.push(row);
        }
        rows.retain(|r| r.iter().any(|x| *x != 0));
    }
    basis
}

/// Coordinates of `x` in a Hermite basis returned by [`lattice_basis`], if `x` lies in the lattice.
pub fn coords_in_basis(basis: &[Vec<i64>], x: &[i64]) -> Option<Vec<i64>> {
    let mut rem = x.to_vec();
    let mut out = Vec::with_capacity(basis.len());
    for b in basis {
        let c = b.iter().position(|v| *v != 0).unwrap();
        if rem[c] % b[c] != 0 {
            return None;
        }
        let k = rem[c] / b[c];
        for (r, v) in rem.iter_mut().zip(b) {
            *r -= k * v;
        }
        out.push(k);
    }
    if rem.iter().all(|v| *v == 0) {
        Some(out)
    } else {
        None
    }
}

impl DiamondDatum {
    /// Membership in `X<> = { x : <i, x> in l_i Z for all i }`.
    pub fn in_x_diamond(&self, x: &[i64]) -> bool {
        (0..self.base.rank()).all(|i| self.base.pair(i, x) % self.ell_i[i] == 0)
    }

    /// `<i<>, x> = <i, x>/l_i` for `x` in X<>.
    pub fn pair_diamond(&self, i: usize, x: &[i64]) -> Option<i64> {
        let v = self.base.pair(i, x);
        if v % self.ell_i[i] == 0 {
            Some(v / self.ell_i[i])
        } else {
            None
        }
    }

    /// `i'<> = l_i i'` in X-coordinates.
    pub fn root_diamond(&self, i: usize) -> Vec<i64> {
        self.base.simple_roots[i].iter().map(|v| v * self.ell_i[i]).collect()
    }

    pub fn d_diamond(&self, i: usize) -> i64 {
        self.diamond[i][i] / 2
    }

    /// `q_i<>` exponent of q and `pi_i<>` exponent of pi: both `d_i l_i^2`.
    pub fn diamond_exponent(&self, i: usize) -> i64 {
        self.base.d(i) * self.ell_i[i] * self.ell_i[i]
    }
}

/// Builds the derived datum `(I, <>)` with its lattice `X<>`.
pub fn derive_diamond(d: &SuperDatum, ctx: &RootContext) -> DiamondDatum {
    let n = d.rank();
    let ell_i: Vec<i64> = (0..n).map(|i| ell_i(d.d(i), ctx.ell)).collect();
    let diamond: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| d.dot[i][j] * ell_i[i] * ell_i[j]).collect()).collect();
    let odd_ell = ctx.ell % 2 == 1;
    let parity: Vec<u8> = d.parity.iter().map(|p| if odd_ell { *p } else { 0 }).collect();
    let is_super = parity.iter().any(|p| *p == 1);
    // X<> contains L X for L = lcm(l_i); add the residue solutions modulo L.
    let big_l = ell_i.iter().fold(1i64, |a, b| a.lcm(b));
    let r = d.lattice_rank();
    let mut gens: Vec<Vec<i64>> = (0..r).map(|k| (0..r).map(|j| if j == k { big_l } else { 0 }).collect()).collect();
    let mut x = vec![0i64; r];
    loop {
        if (0..n).all(|i| d.pair(i, &x) % ell_i[i] == 0) {
            gens.push(x.clone());
        }
        let mut k = 0;
        while k < r {
            x[k] += 1;
            if x[k] < big_l {
                break;
            }
            x[k] = 0;
            k += 1;
        }
        if k == r {
            break;
        }
    }
    let basis = lattice_basis(&gens);
    let pairing: Vec<Vec<i64>> = (0..n).map(|i| basis.iter().map(|b| d.pair(i, b) / ell_i[i]).collect()).collect();
    let simple_roots: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let root: Vec<i64> = d.simple_roots[i].iter().map(|v| v * ell_i[i]).collect();
            coords_in_basis(&basis, &root).expect("l_i i' lies in X<>")
        })
        .collect();
    let derived = SuperDatum {
        names: d.names.clone(),
        dot: diamond.clone(),
        parity: parity.clone(),
        pairing,
        simple_roots,
        is_super,
        weight_lattice: d.weight_lattice,
    };
    DiamondDatum { base: d.clone(), ell: ctx.ell, ell_i, diamond, parity, is_super, x_diamond_basis: basis, derived }
}

/// The standing assumptions for the Frobenius maps: for `i != j` with
/// `l_j >= 2`, `l_i >= -<i, j'> + 1`; and no odd cycle in the graph of `(I, .)`.
pub fn check_frobenius_assumptions(d: &SuperDatum, ctx: &RootContext) -> Vec<Violation> {
    let n = d.rank();
    let li: Vec<i64> = (0..n).map(|i| ell_i(d.d(i), ctx.ell)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && li[j] >= 2 && li[i] < -d.cartan(i, j) + 1 {
                out.push(Violation {
                    condition: format!("(a) l_{} = {} < -<i,j'> + 1 = {}", i + 1, li[i], -d.cartan(i, j) + 1),
                    indices: vec![i, j],
                });
            }
        }
    }
    // Two-colour the graph; a conflict means an odd cycle.
    let mut colour = vec![-1i32; n];
    for s in 0..n {
        if colour[s] >= 0 {
            continue;
        }
        colour[s] = 0;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for w in 0..n {
                if w != u && d.dot[u][w] != 0 {
                    if colour[w] < 0 {
                        colour[w] = 1 - colour[u];
                        stack.push(w);
                    } else if colour[w] == colour[u] {
                        out.push(Violation { condition: "(b) odd cycle".into(), indices: vec![u, w] });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{make_root_context, EllPrimeChoice};

    fn ctx(l: u64) -> RootContext {
        make_root_context(l, EllPrimeChoice::Default, 1).unwrap()
    }

    #[test]
    fn osp_data_are_valid() {
        let d1 = osp_datum(1, LatticeChoice::Weight);
        assert_eq!(d1.dot, vec![vec![2]]);
        assert_eq!(d1.parity, vec![1]);
        assert!(validate_super_datum(&d1).is_empty());
        for lat in [LatticeChoice::Weight, LatticeChoice::Root] {
            let d2 = osp_datum(2, lat);
            assert!(validate_super_datum(&d2).is_empty());
            assert_eq!(d2.cartan(0, 1), -1);
            assert_eq!(d2.cartan(1, 0), -2);
        }
    }

    #[test]
    fn bar_consistency_violation() {
        let f = DatumFile { index_set: vec!["1".into()], dot: vec![vec![4]], parity: vec![1], lattice: LatticeSpec::Named("weight".into()) };
        let v = validate_super_datum(&SuperDatum::from_file(&f).unwrap());
        assert!(v.iter().any(|x| x.condition.starts_with("(e)")));
    }

    #[test]
    fn diamond_examples() {
        let d = osp_datum(2, LatticeChoice::Weight);
        let dd = derive_diamond(&d, &ctx(3));
        assert_eq!(dd.ell_i, vec![3, 3]);
        assert_eq!(dd.diamond, vec![vec![36, -18], vec![-18, 18]]);
        assert!(validate_super_datum(&dd.derived).is_empty());
        let dd4 = derive_diamond(&d, &ctx(4));
        assert_eq!(dd4.ell_i, vec![2, 4]);
        assert!(!dd4.is_super);
        let r1 = derive_diamond(&osp_datum(1, LatticeChoice::Weight), &ctx(3));
        assert_eq!(r1.diamond, vec![vec![18]]);
        // l = 1 returns the datum unchanged.
        let id = derive_diamond(&d, &ctx(1));
        assert_eq!(id.diamond, d.dot);
        assert_eq!(id.ell_i, vec![1, 1]);
    }

    #[test]
    fn x_diamond_membership_matches_basis() {
        for lat in [LatticeChoice::Weight, LatticeChoice::Root] {
            let d = osp_datum(2, lat);
            for l in 2..=6 {
                let dd = derive_diamond(&d, &ctx(l));
                for a in -8..=8i64 {
                    for b in -8..=8i64 {
                        let x = vec![a, b];
                        assert_eq!(dd.in_x_diamond(&x), coords_in_basis(&dd.x_diamond_basis, &x).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_assumptions() {
        let d = osp_datum(2, LatticeChoice::Weight);
        assert!(check_frobenius_assumptions(&d, &ctx(3)).is_empty());
        let v = check_frobenius_assumptions(&d, &ctx(2));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].indices, vec![0, 1]);
        let tri = SuperDatum::from_file(&DatumFile {
            index_set: vec!["a".into(), "b".into(), "c".into()],
            dot: vec![vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]],
            parity: vec![0, 0, 0],
            lattice: LatticeSpec::Named("root".into()),
        })
        .unwrap();
        assert!(check_frobenius_assumptions(&tri, &ctx(5)).iter().any(|v| v.condition.contains("odd cycle")));
    }

    #[test]
    fn weights_with_pairings() {
        let d = osp_datum(2, LatticeChoice::Weight);
        assert_eq!(d.weight_with_pairings(&[2, 2]), Some(vec![2, 2]));
        let r = osp_datum(2, LatticeChoice::Root);
        // the fundamental weight dual to the even node is not in the root lattice
        assert_eq!(r.weight_with_pairings(&[0, 1]), None);
        assert_eq!(r.weight_with_pairings(&[2, -2]), Some(vec![1, 0]));
    }
}
