//! Frobenius on the modified form, coproduct components, and the sweeps that
//! check both against the relations.

use super::{HalfAlgebra, Orientation, UdotDatum, UdotElement, UdotEngine, UdotError, XWeight};
use crate::datum::SuperDatum;
use crate::frobenius::{FrobError, Frobenius};
use crate::halfalg::words::{DividedMonomial, Weight};
use crate::qpicalc::IdentityReport;
use crate::scalars::cyclo::CycNumber;
use crate::scalars::RootContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GeneratorKind {
    E,
    F,
}

/// `E_i^{(n)} 1_lambda` or `F_i^{(n)} 1_lambda`; `n = 0` is the idempotent `1_lambda`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub kind: GeneratorKind,
    pub i: usize,
    pub n: u32,
    pub lambda: XWeight,
}

impl Generator {
    pub fn e(i: usize, n: u32, lambda: &[i64]) -> Self {
        Generator { kind: GeneratorKind::E, i, n, lambda: lambda.to_vec() }
    }

    pub fn f(i: usize, n: u32, lambda: &[i64]) -> Self {
        Generator { kind: GeneratorKind::F, i, n, lambda: lambda.to_vec() }
    }

    pub fn sign(&self) -> i64 {
        match self.kind {
            GeneratorKind::E => 1,
            GeneratorKind::F => -1,
        }
    }

    /// The weight `lambda +- n i'` on the left.
    pub fn target(&self, d: &UdotDatum) -> XWeight {
        d.shift_one(&self.lambda, self.i, self.sign() * self.n as i64)
    }

    pub fn element<H: HalfAlgebra>(&self, eng: &mut UdotEngine, half: &mut H) -> Result<UdotElement, UdotError> {
        if self.n == 0 {
            return Ok(eng.idempotent(&self.lambda));
        }
        match self.kind {
            GeneratorKind::E => eng.e_gen(half, self.i, self.n, &self.lambda),
            GeneratorKind::F => eng.f_gen(half, self.i, self.n, &self.lambda),
        }
    }

    fn code(&self) -> Vec<i64> {
        let k = match self.kind {
            GeneratorKind::E => 0,
            GeneratorKind::F => 1,
        };
        [vec![k, self.i as i64, self.n as i64], self.lambda.clone()].concat()
    }
}

/// The sign attached to the plus side of `Fr`, per block of `l_i` letters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Twist {
    /// `E_i^{(m l_i)} 1_lambda -> pi_i^{C(l_i,2) m} E_i^{(m)} 1_lambda`.
    Binomial,
    /// `E_i^{(m l_i)} 1_lambda -> pi_i^{m} E_i^{(m)} 1_lambda`.
    Psi,
}

impl Twist {
    fn exponent(self, ell_i: i64) -> i64 {
        match self {
            Twist::Binomial => ell_i * (ell_i - 1) / 2,
            Twist::Psi => 1,
        }
    }
}

/// `coefficient * left (x) right`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorTerm {
    pub coefficient: CycNumber,
    pub left: Generator,
    pub right: Generator,
}

/// Both modified forms at one context with the Frobenius map between them.
pub struct UdotFrobenius {
    pub fr: Frobenius,
    pub up: UdotEngine,
    pub down: UdotEngine,
    pub twist: Twist,
}

impl UdotFrobenius {
    pub fn new(d: &SuperDatum, ctx: &RootContext, twist: Twist) -> Result<Self, FrobError> {
        let fr = Frobenius::new(d, ctx)?;
        let up = UdotEngine::new(UdotDatum::of(d), ctx);
        let down = UdotEngine::new(UdotDatum::derived(&fr.dd), ctx);
        Ok(UdotFrobenius { fr, up, down, twist })
    }

    pub fn ctx(&self) -> &RootContext {
        &self.up.ctx
    }

    pub fn rank(&self) -> usize {
        self.up.datum.rank
    }

    pub fn element(&mut self, g: &Generator) -> Result<UdotElement, UdotError> {
        g.element(&mut self.up, &mut self.fr.sf)
    }

    pub fn multiply(&mut self, a: &UdotElement, b: &UdotElement) -> Result<UdotElement, UdotError> {
        self.up.multiply(&mut self.fr.sf, a, b)
    }

    pub fn multiply_down(&mut self, a: &UdotElement, b: &UdotElement) -> Result<UdotElement, UdotError> {
        self.down.multiply(&mut self.fr.fd, a, b)
    }

    /// `pi_i^{t m}` with `t` the twist exponent, for `E_i^{(m l_i)}`.
    fn twist_sign(&self, kappa: &[i64]) -> i64 {
        let e: i64 = kappa.iter().enumerate().map(|(i, k)| self.up.datum.d[i] * self.twist.exponent(self.fr.dd.ell_i[i]) * k).sum();
        self.ctx().pi_pow_sign(e)
    }

    /// The generator rule: zero unless `l_i | n` and `lambda` lies in X<>.
    pub fn fr_generator(&mut self, g: &Generator) -> Result<UdotElement, UdotError> {
        let l = self.fr.dd.ell_i[g.i] as u32;
        if g.n % l != 0 || !self.down.datum.contains(&g.lambda) {
            return Ok(UdotElement::zero(Orientation::PlusLeft));
        }
        let small = Generator { n: g.n / l, ..g.clone() };
        let x = small.element(&mut self.down, &mut self.fr.fd)?;
        Ok(match g.kind {
            GeneratorKind::E => {
                let mut kappa = vec![0; self.rank()];
                kappa[g.i] = small.n as i64;
                x.scale(&self.ctx().int(self.twist_sign(&kappa)))
            }
            GeneratorKind::F => x,
        })
    }

    fn fr_side(&mut self, w: &Weight) -> Result<Option<(Weight, Vec<Vec<CycNumber>>)>, UdotError> {
        let ell = &self.fr.dd.ell_i;
        if w.iter().zip(ell).any(|(a, l)| a % l != 0) {
            return Ok(None);
        }
        let kappa: Weight = w.iter().zip(ell).map(|(a, l)| a / l).collect();
        let dim = self.fr.fd.dim(&kappa);
        let basis = HalfAlgebra::basis(&mut self.fr.sf, w)?;
        let mut rows = Vec::with_capacity(basis.len());
        for b in &basis {
            let img = self.fr.fr_monomial(b);
            rows.push(img.get(&kappa).cloned().unwrap_or_else(|| vec![self.ctx().zero(); dim]));
        }
        Ok(Some((kappa, rows)))
    }

    /// `x^+ 1_lambda y^- -> twist * Fr(x)^+ 1_lambda Fr(y)^-`, zero off X<>.
    pub fn fr_udot(&mut self, x: &UdotElement) -> Result<UdotElement, UdotError> {
        let x = self.up.convert(&mut self.fr.sf, x, Orientation::PlusLeft)?;
        let mut out = UdotElement::zero(Orientation::PlusLeft);
        for ((mu, lambda, nu), m) in &x.blocks {
            if !self.down.datum.contains(lambda) {
                continue;
            }
            let (Some((km, lm)), Some((kn, rn))) = (self.fr_side(mu)?, self.fr_side(nu)?) else {
                continue;
            };
            let sign = self.ctx().int(self.twist_sign(&km));
            let dl = lm.first().map_or(0, |r| r.len());
            let dr = rn.first().map_or(0, |r| r.len());
            let mut acc = vec![vec![self.ctx().zero(); dr]; dl];
            for (a, row) in m.iter().enumerate() {
                for (b, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let c = c * &sign;
                    for (p, lp) in lm[a].iter().enumerate() {
                        if lp.is_zero() {
                            continue;
                        }
                        let k = &c * lp;
                        for (r, rr) in rn[b].iter().enumerate() {
                            if !rr.is_zero() {
                                acc[p][r] = &acc[p][r] + &(&k * rr);
                            }
                        }
                    }
                }
            }
            out.add_block((km, lambda.clone(), kn), acc);
        }
        Ok(out)
    }

    /// Every generator `X_i^{(n)} 1_lambda` with `1 <= n <= n_max[i]`, plus `1_lambda`.
    pub fn generators_at(&self, lambda: &[i64], n_max: &[u32]) -> Vec<Generator> {
        let mut out = vec![Generator::e(0, 0, lambda)];
        for i in 0..self.rank() {
            for n in 1..=n_max[i] {
                out.push(Generator::e(i, n, lambda));
                out.push(Generator::f(i, n, lambda));
            }
        }
        out
    }

    /// `n <= 2 l_i` for every index.
    pub fn default_n_max(&self) -> Vec<u32> {
        self.fr.dd.ell_i.iter().map(|l| 2 * *l as u32).collect()
    }

    /// `Fr(a b) = Fr(a) Fr(b)` for all composable generator pairs with `b`
    /// starting at each `lambda` of the sweep, and agreement of `fr_udot` with
    /// the generator rule.
    pub fn verify_homomorphism(&mut self, lambdas: &[XWeight], n_max: &[u32]) -> Result<IdentityReport, UdotError> {
        let mut rep = IdentityReport::new("fr_udot_homomorphism", json!({ "twist": self.twist, "lambdas": lambdas.len(), "n_max": n_max }));
        for mu in lambdas {
            for g2 in self.generators_at(mu, n_max) {
                let b = self.element(&g2)?;
                let fb = self.fr_generator(&g2)?;
                let fb_blocks = self.fr_udot(&b)?;
                rep.record(fb == fb_blocks, [vec![-1], g2.code()].concat());
                let top = g2.target(&self.up.datum);
                for g1 in self.generators_at(&top, n_max) {
                    let a = self.element(&g1)?;
                    let ab = self.multiply(&a, &b)?;
                    let lhs = self.fr_udot(&ab)?;
                    let fa = self.fr_generator(&g1)?;
                    let rhs = self.multiply_down(&fa, &fb)?;
                    rep.record(lhs == rhs, [g1.code(), g2.code()].concat());
                }
            }
        }
        Ok(rep)
    }

    /// The plus-side rule against `psi o Fr` with `psi: theta_i^{(m)} -> pi_i^m theta_i^{(m)}`,
    /// on the generators `E_i^{(m l_i)} 1_lambda`.
    pub fn verify_psi_consistency(&mut self, lambdas: &[XWeight], m_max: u32) -> Result<IdentityReport, UdotError> {
        let mut rep = IdentityReport::new("psi_twist_consistency", json!({ "twist": self.twist, "m_max": m_max }));
        for lambda in lambdas {
            if !self.down.datum.contains(lambda) {
                continue;
            }
            for i in 0..self.rank() {
                for m in 1..=m_max {
                    let l = self.fr.dd.ell_i[i] as u32;
                    let g = Generator::e(i, m * l, lambda);
                    let rule = self.fr_generator(&g)?;
                    let plain = Generator::e(i, m, lambda).element(&mut self.down, &mut self.fr.fd)?;
                    let psi = plain.scale(&self.ctx().int(self.ctx().pi_pow_sign(self.up.datum.d[i] * m as i64)));
                    rep.record(rule == psi, g.code());
                }
            }
        }
        Ok(rep)
    }

    /// Fr-images of a tensor term, or `None` when either factor dies.
    fn fr_tensor(&mut self, t: &TensorTerm) -> Option<TensorTerm> {
        let mut parts = Vec::new();
        for g in [&t.left, &t.right] {
            let l = self.fr.dd.ell_i[g.i] as u32;
            if g.n % l != 0 || !self.down.datum.contains(&g.lambda) {
                return None;
            }
            let s = match g.kind {
                GeneratorKind::E => {
                    let mut kappa = vec![0; self.rank()];
                    kappa[g.i] = (g.n / l) as i64;
                    self.twist_sign(&kappa)
                }
                GeneratorKind::F => 1,
            };
            parts.push((Generator { n: g.n / l, ..g.clone() }, s));
        }
        let (right, sr) = parts.pop().expect("two factors");
        let (left, sl) = parts.pop().expect("two factors");
        Some(TensorTerm { coefficient: &t.coefficient * &self.ctx().int(sl * sr), left, right })
    }

    /// `Delta<> o Fr = (Fr (x) Fr) o Delta` on the components `(lambda1, mu1, lambda2, mu2)`
    /// of `X_i^{(n)} 1_lambda` with `mu1` in the sweep and `mu2 = lambda - mu1`.
    pub fn verify_fr_coproduct(&mut self, lambdas: &[XWeight], n_max: &[u32]) -> Result<IdentityReport, UdotError> {
        let mut rep = IdentityReport::new("fr_coproduct", json!({ "lambdas": lambdas.len(), "n_max": n_max }));
        for lambda in lambdas {
            for g in self.generators_at(lambda, n_max) {
                let fg = self.fr_generator_scalar(&g);
                for mu1 in lambdas {
                    let mu2: XWeight = lambda.iter().zip(mu1).map(|(a, b)| a - b).collect();
                    for p in 0..=g.n {
                        let s = g.sign();
                        let l1 = self.up.datum.shift_one(mu1, g.i, s * p as i64);
                        let l2 = self.up.datum.shift_one(&mu2, g.i, s * (g.n - p) as i64);
                        let comp = coproduct_component(&self.up, &g, &l1, mu1, &l2, &mu2)?;
                        let lhs = comp.and_then(|t| self.fr_tensor(&t));
                        let rhs = match &fg {
                            Some((small, c)) => {
                                let l = self.fr.dd.ell_i[g.i] as u32;
                                if p % l != 0 || !self.down.datum.contains(mu1) {
                                    None
                                } else {
                                    let dl1 = self.down.datum.shift_one(mu1, g.i, s * (p / l) as i64);
                                    let dl2 = self.down.datum.shift_one(&mu2, g.i, s * (small.n - p / l) as i64);
                                    coproduct_component(&self.down, small, &dl1, mu1, &dl2, &mu2)?.map(|t| TensorTerm { coefficient: &t.coefficient * c, ..t })
                                }
                            }
                            None => None,
                        };
                        let lhs = lhs.filter(|t| !t.coefficient.is_zero());
                        let rhs = rhs.filter(|t| !t.coefficient.is_zero());
                        rep.record(lhs == rhs, [g.code(), mu1.clone(), vec![p as i64]].concat());
                    }
                }
            }
        }
        Ok(rep)
    }

    /// `Fr(g) = c g<>` as a pair, or `None` when it vanishes.
    fn fr_generator_scalar(&self, g: &Generator) -> Option<(Generator, CycNumber)> {
        let l = self.fr.dd.ell_i[g.i] as u32;
        if g.n % l != 0 || !self.down.datum.contains(&g.lambda) {
            return None;
        }
        let small = Generator { n: g.n / l, ..g.clone() };
        let s = match g.kind {
            GeneratorKind::E => {
                let mut kappa = vec![0; self.rank()];
                kappa[g.i] = small.n as i64;
                self.twist_sign(&kappa)
            }
            GeneratorKind::F => 1,
        };
        Some((small, self.ctx().int(s)))
    }
}

/// The `(lambda1, mu1, lambda2, mu2)` component of the coproduct of a generator:
///
/// `Delta(E_i^{(m)}) = sum_{p+r=m} q_i^{pr} E_i^{(p)} (J_i K_i)^r (x) E_i^{(r)}` and
/// `Delta(F_i^{(m)}) = sum_{p+r=m} (pi_i q_i^{-1})^{pr} F_i^{(p)} (x) K_{-i}^p F_i^{(r)}`,
/// with `J_i K_i` and `K_{-i}` replaced by their scalars on the adjacent idempotent.
pub fn coproduct_component(eng: &UdotEngine, g: &Generator, l1: &[i64], m1: &[i64], l2: &[i64], m2: &[i64]) -> Result<Option<TensorTerm>, UdotError> {
    let d = &eng.datum;
    let ctx = &eng.ctx;
    let s = g.sign();
    let target = g.target(d);
    let src: XWeight = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
    let tgt: XWeight = l1.iter().zip(l2).map(|(a, b)| a + b).collect();
    if src != g.lambda || tgt != target {
        return Err(UdotError::WeightMismatch(format!("components {l1:?},{m1:?},{l2:?},{m2:?} of {g:?}")));
    }
    let Some(p) = (0..=g.n).find(|p| d.shift_one(m1, g.i, s * *p as i64) == l1) else {
        return Ok(None);
    };
    let r = g.n - p;
    if d.shift_one(m2, g.i, s * r as i64) != l2 {
        return Ok(None);
    }
    let (pi, ri) = (p as i64, r as i64);
    let di = d.d[g.i];
    let coefficient = match g.kind {
        GeneratorKind::E => {
            let a = d.pair(g.i, m1);
            ctx.pi_q(di * ri * a, di * (pi * ri + ri * a))
        }
        GeneratorKind::F => {
            let a = d.pair(g.i, m2);
            ctx.pi_q(di * pi * ri, di * (-pi * ri - pi * (a - 2 * ri)))
        }
    };
    let mk = |n: u32, lambda: &[i64]| Generator { n, lambda: lambda.to_vec(), ..g.clone() };
    Ok(Some(TensorTerm { coefficient, left: mk(p, m1), right: mk(r, m2) }))
}

/// `lambda` with every X-coordinate in `0..period`.
pub fn lambda_box(rank: usize, period: i64) -> Vec<XWeight> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..period).map(move |a| [v.clone(), vec![a]].concat())).collect();
    }
    out
}

/// `(a b) c = a (b c)` on random composable generator triples.
pub fn verify_associativity<H: HalfAlgebra>(eng: &mut UdotEngine, half: &mut H, n_max: &[u32], lambda_range: i64, seed: u64, count: usize) -> Result<IdentityReport, UdotError> {
    let mut rep = IdentityReport::new("udot_associativity", json!({ "seed": seed, "count": count, "n_max": n_max, "lambda_range": lambda_range }));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rank = eng.datum.rank;
    let pick = |rng: &mut ChaCha8Rng, lambda: &[i64]| {
        let i = rng.gen_range(0..rank);
        let n = rng.gen_range(0..=n_max[i]);
        if rng.gen_bool(0.5) {
            Generator::e(i, n, lambda)
        } else {
            Generator::f(i, n, lambda)
        }
    };
    for _ in 0..count {
        let lambda: XWeight = (0..rank).map(|_| rng.gen_range(-lambda_range..=lambda_range)).collect();
        let gc = pick(&mut rng, &lambda);
        let gb = pick(&mut rng, &gc.target(&eng.datum));
        let ga = pick(&mut rng, &gb.target(&eng.datum));
        let a = ga.element(eng, half)?;
        let b = gb.element(eng, half)?;
        let c = gc.element(eng, half)?;
        let ab = eng.multiply(half, &a, &b)?;
        let bc = eng.multiply(half, &b, &c)?;
        let left = eng.multiply(half, &ab, &c)?;
        let right = eng.multiply(half, &a, &bc)?;
        rep.record(left == right, [ga.code(), gb.code(), gc.code()].concat());
    }
    Ok(rep)
}

/// `E^{(N)} 1_lambda F^{(M)}` rewritten by the first relation and back by the
/// second (and the mirror case) returns the starting element.
pub fn verify_relation_roundtrip<H: HalfAlgebra>(eng: &mut UdotEngine, half: &mut H, n_max: u32, lambdas: &[XWeight]) -> Result<IdentityReport, UdotError> {
    let mut rep = IdentityReport::new("straightening_roundtrip", json!({ "n_max": n_max, "lambdas": lambdas.len() }));
    for lambda in lambdas {
        for i in 0..eng.datum.rank {
            for n in 0..=n_max {
                for m in 0..=n_max {
                    for o in [Orientation::PlusLeft, Orientation::MinusLeft] {
                        let one = eng.ctx.one();
                        let x = eng.term(half, o, &one, &DividedMonomial::generator(i, n), lambda, &DividedMonomial::generator(i, m))?;
                        let y = eng.convert(half, &x, o.flip())?;
                        let z = eng.convert(half, &y, o)?;
                        let code = vec![o.sign(), i as i64, n as i64, m as i64];
                        rep.record(z == x, [code, lambda.clone()].concat());
                    }
                }
            }
        }
    }
    Ok(rep)
}
