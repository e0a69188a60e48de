//! The Frobenius homomorphisms `Fr': f<> -> f` and `Fr: f -> f<>` at a root of
//! unity, their defining certificates, the tensor decomposition
//! `f<> (x) kf -> f`, and the comparison of `kf` with a Steinberg-type module.

pub mod diamond;

pub use diamond::{add_into, DiamondElement, FDiamond};

use crate::datum::{check_frobenius_assumptions, derive_diamond, DiamondDatum, SuperDatum, Violation};
use crate::halfalg::words::{total_degree, weight_sub, weights_below, weights_of_degree, DividedMonomial, Weight};
use crate::halfalg::{small_generators, specialized_span_dims, specialized_spans, v_lambda_dims, DimError, GradedElement, SpecError, SpecF};
use crate::qpicalc::{qpi_binomial, qpi_factorial, IdentityReport};
use crate::scalars::cyclo::CycNumber;
use crate::scalars::linalg::CycEchelon;
use crate::scalars::{specialize, RootContext};
use serde::Serialize;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, thiserror::Error)]
pub enum FrobError {
    #[error("Frobenius assumptions fail: {0:?}")]
    Assumptions(Vec<Violation>),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Dim(#[from] DimError),
    #[error("the root datum is not simply connected, so the weight with <i, lambda> = l_i - 1 may not exist")]
    NotSimplyConnected,
}

/// `R (x) f` and `R (x) f<>` at one root-of-unity context, with both Frobenius maps.
pub struct Frobenius {
    pub dd: DiamondDatum,
    pub sf: SpecF,
    pub fd: FDiamond,
    kf: Option<(i64, BTreeMap<Weight, CycEchelon>)>,
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

impl Frobenius {
    /// Refuses to build anything when the assumptions on `(d, l)` fail.
    pub fn new(d: &SuperDatum, ctx: &RootContext) -> Result<Self, FrobError> {
        let v = check_frobenius_assumptions(d, ctx);
        if !v.is_empty() {
            return Err(FrobError::Assumptions(v));
        }
        let dd = derive_diamond(d, ctx);
        let sf = SpecF::new(d, ctx)?;
        let fd = FDiamond::new(&dd, ctx);
        Ok(Frobenius { dd, sf, fd, kf: None })
    }

    pub fn ctx(&self) -> &RootContext {
        &self.sf.ctx
    }

    pub fn rank(&self) -> usize {
        self.sf.rank()
    }

    /// The `f`-weight of an `f<>`-weight: `mu_i l_i`.
    pub fn inflate_weight(&self, mu: &[i64]) -> Weight {
        mu.iter().zip(&self.dd.ell_i).map(|(m, l)| m * l).collect()
    }

    /// `theta_i^{(n)} -> theta_i^{(n l_i)}`, factorwise.
    pub fn inflate(&self, m: &DividedMonomial) -> DividedMonomial {
        DividedMonomial::new(m.factors.iter().map(|(i, n)| (*i, n * self.dd.ell_i[*i] as u32)).collect())
    }

    /// `theta_i^{(n)} -> theta_i^{(n / l_i)}`, or `None` if some `l_i` does not divide `n`.
    pub fn deflate(&self, m: &DividedMonomial) -> Option<DividedMonomial> {
        let mut out = Vec::new();
        for (i, n) in &m.factors {
            let l = self.dd.ell_i[*i] as u32;
            if n % l != 0 {
                return None;
            }
            out.push((*i, n / l));
        }
        Some(DividedMonomial::new(out))
    }

    pub fn fr_prime_monomial(&mut self, m: &DividedMonomial) -> Result<GradedElement, FrobError> {
        let big = self.inflate(m);
        Ok(self.sf.monomial(&big)?)
    }

    /// `Fr'` on an element of `f<>`, through its basis monomials.
    pub fn fr_prime(&mut self, x: &DiamondElement) -> Result<GradedElement, FrobError> {
        let mut out = GradedElement::zero();
        for (mu, c) in x {
            let basis = self.fd.basis(mu);
            for (b, k) in basis.iter().zip(c) {
                if !k.is_zero() {
                    out = out.add(&self.fr_prime_monomial(b)?.scale(k));
                }
            }
        }
        Ok(out)
    }

    pub fn fr_monomial(&mut self, m: &DividedMonomial) -> DiamondElement {
        match self.deflate(m) {
            Some(small) => self.fd.monomial(&small),
            None => DiamondElement::new(),
        }
    }

    /// `Fr` on an element of `f`, through its basis monomials.
    pub fn fr(&mut self, x: &GradedElement) -> Result<DiamondElement, FrobError> {
        let mut out = DiamondElement::new();
        for (nu, c) in &x.terms {
            let space = self.sf.space(nu)?;
            for (b, k) in space.basis.iter().zip(c) {
                if k.is_zero() {
                    continue;
                }
                for (w, v) in self.fr_monomial(b) {
                    add_into(&mut out, w, v.iter().map(|y| y * k).collect());
                }
            }
        }
        Ok(out)
    }

    /// The Serre-type sums whose vanishing in `R (x) f` makes `Fr'` well defined:
    /// `sum_{n+n'=1-<i,j'>l_j/l_i} (-1)^{n'} pi_i^{l_i^2(n p(j) + C(n,2))}
    /// theta_i^{(l_i n)} theta_j^{(l_j)} theta_i^{(l_i n')}`, one per ordered pair.
    pub fn verify_fr_prime_serre(&mut self) -> Result<IdentityReport, FrobError> {
        let ctx = self.ctx().clone();
        let mut rep = IdentityReport::new("fr_prime_serre", json!({ "ell": ctx.ell, "pi": ctx.pi_sign }));
        let base = self.dd.base.clone();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                if i == j {
                    continue;
                }
                let (li, lj) = (self.dd.ell_i[i], self.dd.ell_i[j]);
                let top = 1 - self.dd.derived.cartan(i, j);
                let mut sum = GradedElement::zero();
                for n in 0..=top {
                    let np = top - n;
                    let e = li * li * (n * base.p(j) + binom2(n));
                    let sign = if np % 2 == 0 { 1 } else { -1 } * ctx.pi_pow_sign(base.p(i) * e);
                    let m = DividedMonomial::new(vec![(i, (li * n) as u32), (j, lj as u32), (i, (li * np) as u32)]);
                    sum = sum.add(&self.sf.monomial(&m)?.scale(&ctx.int(sign)));
                }
                rep.record(sum.is_zero(), vec![i as i64, j as i64]);
            }
        }
        Ok(rep)
    }

    /// Echelon bases of `kf`, the subalgebra generated by the `theta_i` with `l_i >= 2`.
    pub fn kf_spans(&mut self, max_degree: i64) -> Result<BTreeMap<Weight, CycEchelon>, FrobError> {
        if !matches!(&self.kf, Some((deg, _)) if *deg >= max_degree) {
            let gens = small_generators(&mut self.sf, &self.dd.ell_i)?;
            let spans = specialized_spans(&mut self.sf, &gens, max_degree)?;
            self.kf = Some((max_degree, spans));
        }
        Ok(self.kf.as_ref().expect("just filled").1.clone())
    }

    /// Whether `x (x) y -> Fr'(x) y` is bijective onto `R (x) f_nu`, with the
    /// matrix of images in basis coordinates.
    pub fn chi_weight_check(&mut self, nu: &[i64]) -> Result<ChiVerdict, FrobError> {
        let kf = self.kf_spans(total_degree(nu))?;
        let dim = self.sf.dim(nu)?;
        let mut rows = Vec::new();
        for mu in weights_below(nu) {
            if mu.iter().zip(&self.dd.ell_i).any(|(m, l)| m % l != 0) {
                continue;
            }
            let small: Weight = mu.iter().zip(&self.dd.ell_i).map(|(m, l)| m / l).collect();
            let kappa = weight_sub(nu, &mu).expect("mu <= nu");
            let Some(span) = kf.get(&kappa) else { continue };
            if span.rank() == 0 {
                continue;
            }
            let ys: Vec<Vec<CycNumber>> = span.rows().cloned().collect();
            for b in self.fd.basis(&small) {
                let x = self.fr_prime_monomial(&b)?;
                let xc = x.terms.get(&mu).cloned().unwrap_or_else(|| vec![self.ctx().zero(); self.sf.dim(&mu).unwrap_or(0)]);
                for y in &ys {
                    rows.push(self.sf.mul_coords(&mu, &xc, &kappa, y)?);
                }
            }
        }
        let mut ech = CycEchelon::new(&self.ctx().field);
        for r in &rows {
            ech.insert(r.clone());
        }
        Ok(ChiVerdict { weight: nu.to_vec(), rows: rows.len(), dim, rank: ech.rank(), matrix: rows })
    }

    /// Compares `dim kf_nu` with `dim V(lambda)_{lambda - nu}` where `<i, lambda> = l_i - 1`.
    pub fn verify_steinberg_dims(&mut self, max_degree: i64) -> Result<(IdentityReport, usize, usize), FrobError> {
        let a: Vec<i64> = self.dd.ell_i.iter().map(|l| l - 1).collect();
        if !self.dd.base.weight_lattice || self.dd.base.weight_with_pairings(&a).is_none() {
            return Err(FrobError::NotSimplyConnected);
        }
        let gens = small_generators(&mut self.sf, &self.dd.ell_i)?;
        let kf = specialized_span_dims(&mut self.sf, &gens, max_degree)?;
        let v = v_lambda_dims(&mut self.sf, &a, max_degree)?;
        let mut rep = IdentityReport::new("steinberg_dims", json!({ "ell": self.ctx().ell, "pi": self.ctx().pi_sign }));
        let weights: BTreeSet<Weight> = kf.rows.keys().chain(v.rows.keys()).cloned().collect();
        for w in weights {
            rep.record(kf.get(&w) == v.get(&w), w.clone());
        }
        Ok((rep, kf.total(), v.total()))
    }

    /// Every weight space of degree `<= max_degree` is spanned by products of
    /// `theta_i^{(l_i)}` and the `theta_i` with `l_i >= 2`.
    pub fn verify_generation(&mut self, max_degree: i64) -> Result<IdentityReport, FrobError> {
        let mut gens = small_generators(&mut self.sf, &self.dd.ell_i)?;
        for i in 0..self.rank() {
            gens.push(self.sf.monomial(&DividedMonomial::generator(i, self.dd.ell_i[i] as u32))?);
        }
        let spans = specialized_span_dims(&mut self.sf, &gens, max_degree)?;
        let mut rep = IdentityReport::new("generation", json!({ "ell": self.ctx().ell, "pi": self.ctx().pi_sign }));
        for deg in 1..=max_degree {
            for nu in weights_of_degree(self.rank(), deg) {
                rep.record(spans.get(&nu) == self.sf.dim(&nu)?, nu);
            }
        }
        Ok(rep)
    }

    /// The rank-one identities relating `theta_i^{(a + l_i b)}`, `theta_i^{(a)}`,
    /// and powers of `theta_i^{(l_i)}`, for `a < l_i` and `b <= b_max`.
    pub fn verify_divided_power_identities(&mut self, b_max: i64) -> Result<IdentityReport, FrobError> {
        let ctx = self.ctx().clone();
        let mut rep = IdentityReport::new("divided_powers", json!({ "ell": ctx.ell, "pi": ctx.pi_sign }));
        for i in 0..self.rank() {
            let l = self.dd.ell_i[i];
            let d = self.dd.base.d(i);
            let p = self.dd.base.p(i);
            let gen = |n: i64| DividedMonomial::generator(i, n as u32);
            let theta_l = self.sf.monomial(&gen(l))?;
            let mut power = self.sf.one();
            for b in 0..=b_max {
                let lhs_c = self.sf.monomial(&gen(l * b))?;
                // theta^{(l b)} = (b!)^{-1} (pi_i q_i)^{-l^2 C(b,2)} (theta^{(l)})^b
                let fact: i64 = (1..=b).product();
                let k = &ctx.pi_q(-p * l * l * binom2(b), -d * l * l * binom2(b)) * &ctx.int(fact).inv().expect("nonzero");
                rep.record(lhs_c == power.scale(&k), vec![i as i64, 0, b]);
                for a in 0..l {
                    // theta^{(a + l b)} = q_i^{l a b} theta^{(a)} theta^{(l b)}
                    let lhs = self.sf.monomial(&gen(a + l * b))?;
                    let prod = self.sf.monomial(&DividedMonomial::new(vec![(i, a as u32), (i, (l * b) as u32)]))?;
                    rep.record(lhs == prod.scale(&ctx.q_tilde_pow(d * l * a * b)), vec![i as i64, a, b]);
                    // theta^{(a)} = ([a]_i!)^{-1} theta^a
                    let word = self.sf.monomial(&DividedMonomial::new(vec![(i, 1); a as usize]))?;
                    let fa = specialize(&qpi_factorial(a as u32).at_index(d), &ctx).inv().expect("a < l_i");
                    rep.record(self.sf.monomial(&gen(a))? == word.scale(&fa), vec![i as i64, a, -1]);
                }
                power = self.sf.multiply(&power, &theta_l)?;
            }
        }
        Ok(rep)
    }
}

impl Frobenius {
    /// `Fr(x y) = Fr(x) Fr(y)` for all pairs of basis monomials of `f` with
    /// total degree at most `max_degree`.
    pub fn verify_fr_homomorphism(&mut self, max_degree: i64) -> Result<IdentityReport, FrobError> {
        let mut rep = IdentityReport::new("fr_homomorphism", json!({ "ell": self.ctx().ell, "pi": self.ctx().pi_sign, "max_degree": max_degree }));
        let weights: Vec<Weight> = (0..=max_degree).flat_map(|k| weights_of_degree(self.rank(), k)).collect();
        let images: BTreeMap<Weight, Vec<DiamondElement>> = weights
            .iter()
            .map(|w| {
                let basis = self.sf.space(w)?.basis.clone();
                Ok((w.clone(), basis.iter().map(|b| self.fr_monomial(b)).collect()))
            })
            .collect::<Result<_, FrobError>>()?;
        for mu in &weights {
            for nu in &weights {
                if total_degree(mu) + total_degree(nu) > max_degree {
                    continue;
                }
                let (dm, dn) = (images[mu].len(), images[nu].len());
                for a in 0..dm {
                    for b in 0..dn {
                        let x = unit(&self.sf.ctx, mu, dm, a);
                        let y = unit(&self.sf.ctx, nu, dn, b);
                        let xy = self.sf.multiply(&x, &y)?;
                        let lhs = self.fr(&xy)?;
                        let rhs = self.fd.multiply(&images[mu][a], &images[nu][b]);
                        let mut inst = mu.clone();
                        inst.extend(nu.iter().copied());
                        inst.extend([a as i64, b as i64]);
                        rep.record(lhs == rhs, inst);
                    }
                }
            }
        }
        Ok(rep)
    }

    /// `Fr'(x y) = Fr'(x) Fr'(y)` for pairs of basis monomials of `f<>` of total
    /// degree at most `max_degree`, and `Fr(Fr'(x)) = x` on each basis monomial.
    pub fn verify_fr_prime_homomorphism(&mut self, max_degree: i64) -> Result<IdentityReport, FrobError> {
        let mut rep = IdentityReport::new("fr_prime_homomorphism", json!({ "ell": self.ctx().ell, "pi": self.ctx().pi_sign, "max_degree": max_degree }));
        let weights: Vec<Weight> = (0..=max_degree).flat_map(|k| weights_of_degree(self.rank(), k)).collect();
        for mu in &weights {
            let bm = self.fd.basis(mu);
            for (a, x) in bm.iter().enumerate() {
                let xe = self.fd.monomial(x);
                let fx = self.fr_prime(&xe)?;
                let mut inst = mu.clone();
                inst.extend([a as i64, -1]);
                rep.record(self.fr(&fx)? == xe, inst);
                for nu in &weights {
                    if total_degree(mu) + total_degree(nu) > max_degree {
                        continue;
                    }
                    for (b, y) in self.fd.basis(nu).iter().enumerate() {
                        let ye = self.fd.monomial(y);
                        let xy = self.fd.multiply(&xe, &ye);
                        let lhs = self.fr_prime(&xy)?;
                        let fy = self.fr_prime(&ye)?;
                        let rhs = self.sf.multiply(&fx, &fy)?;
                        let mut inst = mu.clone();
                        inst.extend(nu.iter().copied());
                        inst.extend([a as i64, b as i64]);
                        rep.record(lhs == rhs, inst);
                    }
                }
            }
        }
        Ok(rep)
    }
}

fn unit(ctx: &RootContext, w: &[i64], dim: usize, k: usize) -> GradedElement {
    let mut c = vec![ctx.zero(); dim];
    c[k] = ctx.one();
    GradedElement::homogeneous(w.to_vec(), c)
}

/// Scalar identities on the derived parameters, per index `i`:
/// `[n]^!` at `(q_i<>, pi_i<>)` equals `(pi_i q_i)^{l_i^2 C(n,2)} n!` for `n <= n_max`,
/// and `sum_t (-1)^t pi_i^{C(t,2)} q_i^{t(a-1)} [a, t]_i = delta_{a,0}` for `a < l_i`.
pub fn verify_scalar_identities(d: &SuperDatum, ctx: &RootContext, n_max: i64) -> IdentityReport {
    let mut rep = IdentityReport::new("derived_scalars", json!({ "ell": ctx.ell, "pi": ctx.pi_sign }));
    let dd = derive_diamond(d, ctx);
    for i in 0..d.rank() {
        let l = dd.ell_i[i];
        let (di, p) = (d.d(i), d.p(i));
        for n in 0..=n_max {
            let lhs = specialize(&qpi_factorial(n as u32).at_index(dd.d_diamond(i)), ctx);
            let fact: i64 = (1..=n).product();
            let rhs = &ctx.pi_q(p * l * l * binom2(n), di * l * l * binom2(n)) * &ctx.int(fact);
            rep.record(lhs == rhs, vec![0, i as i64, n]);
        }
        for a in 0..l {
            let mut s = ctx.zero();
            for t in 0..=a {
                let b = specialize(&qpi_binomial(a, t as u32).at_index(di), ctx);
                let term = &ctx.pi_q(p * binom2(t), di * t * (a - 1)) * &b;
                s = if t % 2 == 0 { &s + &term } else { &s - &term };
            }
            rep.record(s == ctx.int(i64::from(a == 0)), vec![1, i as i64, a]);
        }
    }
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiVerdict {
    pub weight: Weight,
    pub rows: usize,
    pub dim: usize,
    pub rank: usize,
    pub matrix: Vec<Vec<CycNumber>>,
}

impl ChiVerdict {
    pub fn bijective(&self) -> bool {
        self.rows == self.dim && self.rank == self.dim
    }
}

#[cfg(test)]
mod tests;
