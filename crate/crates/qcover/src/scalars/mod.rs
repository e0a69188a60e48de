//! Exact scalars: the generic ring Z[q, q^-1, pi]/(pi^2 - 1), cyclotomic
//! fields, and the root-of-unity context used for specialization.

pub mod cyclo;
pub mod laurent;
pub mod linalg;
pub mod modp;
pub mod zeta;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

pub use cyclo::{cyclotomic_polynomial, totient, CycField, CycNumber};
pub use laurent::Laurent;
pub use zeta::ZetaInt;

/// Integer Laurent polynomial in `q`.
pub type IntLaurent = Laurent<BigInt>;

/// An element of Z[q, q^-1][pi]/(pi^2 - 1), stored as its two evaluations
/// at pi = 1 and pi = -1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PiLaurent {
    pub plus: IntLaurent,
    pub minus: IntLaurent,
}

impl PiLaurent {
    pub fn zero() -> Self {
        PiLaurent { plus: Laurent::zero(), minus: Laurent::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(a: i64) -> Self {
        let l = Laurent::constant(BigInt::from(a));
        PiLaurent { plus: l.clone(), minus: l }
    }

    /// The same Laurent polynomial in both components (an element of the image of Z[q, q^-1]).
    pub fn from_laurent(l: IntLaurent) -> Self {
        PiLaurent { plus: l.clone(), minus: l }
    }

    pub fn from_components(plus: IntLaurent, minus: IntLaurent) -> Self {
        PiLaurent { plus, minus }
    }

    pub fn q() -> Self {
        Self::q_pow(1)
    }

    pub fn q_pow(e: i64) -> Self {
        Self::from_laurent(Laurent::monomial(BigInt::one(), e))
    }

    pub fn pi() -> Self {
        Self::pi_pow(1)
    }

    pub fn pi_pow(e: i64) -> Self {
        let s = if e.rem_euclid(2) == 0 { 1 } else { -1 };
        PiLaurent { plus: Laurent::one(), minus: Laurent::constant(BigInt::from(s)) }
    }

    /// `pi^a q^b`.
    pub fn pi_q(a: i64, b: i64) -> Self {
        &Self::pi_pow(a) * &Self::q_pow(b)
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_zero() && self.minus.is_zero()
    }

    /// The component at `pi = sign`.
    pub fn component(&self, sign: i8) -> &IntLaurent {
        if sign >= 0 {
            &self.plus
        } else {
            &self.minus
        }
    }

    /// Coordinates `(a, b)` with `self = a + b*pi`; `None` if they are not integral.
    pub fn pi_basis(&self) -> Option<(IntLaurent, IntLaurent)> {
        let s = &self.plus + &self.minus;
        let d = &self.plus - &self.minus;
        let two = BigInt::from(2);
        let half = |x: &IntLaurent| -> Option<IntLaurent> {
            let mut terms = Vec::new();
            for (e, a) in x.terms() {
                let (qq, r) = a.div_rem(&two);
                if !r.is_zero() {
                    return None;
                }
                terms.push((e, qq));
            }
            Some(Laurent::from_terms(terms))
        };
        Some((half(&s)?, half(&d)?))
    }

    /// Exact division in each component; `None` if either quotient is not a Laurent polynomial.
    pub fn exact_div(&self, o: &Self) -> Option<Self> {
        Some(PiLaurent { plus: self.plus.exact_div(&o.plus)?, minus: self.minus.exact_div(&o.minus)? })
    }

    /// Substitutes `q -> q^k` (used for `q_i = q^{d_i}`), keeping pi.
    pub fn dilate_q(&self, k: i64) -> Self {
        PiLaurent { plus: self.plus.dilate(k), minus: self.minus.dilate(k) }
    }

    /// Substitutes `pi -> pi^k`.
    pub fn dilate_pi(&self, k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            PiLaurent { plus: self.plus.clone(), minus: self.plus.clone() }
        } else {
            self.clone()
        }
    }

    /// Substitutes `q -> q^k` and `pi -> pi^k`, the map sending `(q, pi)` to `(q_i, pi_i)`.
    pub fn at_index(&self, d: i64) -> Self {
        self.dilate_q(d).dilate_pi(d)
    }

    pub fn pow(&self, n: u32) -> Self {
        PiLaurent { plus: self.plus.pow(n), minus: self.minus.pow(n) }
    }
}

impl Add for &PiLaurent {
    type Output = PiLaurent;
    fn add(self, o: &PiLaurent) -> PiLaurent {
        PiLaurent { plus: &self.plus + &o.plus, minus: &self.minus + &o.minus }
    }
}
impl Sub for &PiLaurent {
    type Output = PiLaurent;
    fn sub(self, o: &PiLaurent) -> PiLaurent {
        PiLaurent { plus: &self.plus - &o.plus, minus: &self.minus - &o.minus }
    }
}
impl Mul for &PiLaurent {
    type Output = PiLaurent;
    fn mul(self, o: &PiLaurent) -> PiLaurent {
        PiLaurent { plus: &self.plus * &o.plus, minus: &self.minus * &o.minus }
    }
}
impl Neg for &PiLaurent {
    type Output = PiLaurent;
    fn neg(self) -> PiLaurent {
        PiLaurent { plus: -&self.plus, minus: -&self.minus }
    }
}
macro_rules! owned_pi {
    ($tr:ident, $m:ident) => {
        impl $tr for PiLaurent {
            type Output = PiLaurent;
            fn $m(self, o: PiLaurent) -> PiLaurent {
                (&self).$m(&o)
            }
        }
    };
}
owned_pi!(Add, add);
owned_pi!(Sub, sub);
owned_pi!(Mul, mul);

impl serde::Serialize for PiLaurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for PiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[pi=+1: {} | pi=-1: {}]", self.plus, self.minus)
    }
}

/// Which `l'` to use for odd `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum EllPrimeChoice {
    Default,
    Ell,
    TwoEll,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ContextError {
    #[error("ell must be positive")]
    NonPositiveEll,
    #[error("l' = l is only allowed for odd l (got l = {0})")]
    EllPrimeEven(u64),
    #[error("pi sign must be +1 or -1")]
    BadPiSign,
}

/// Everything derived from a choice of root of unity.
///
/// All distinguished elements are powers of `zeta = exp(2 pi i / N)`; the
/// exponents are kept alongside the field elements so that products of
/// them can be formed by integer arithmetic.
#[derive(Clone, Debug)]
pub struct RootContext {
    pub ell: u64,
    pub ell_prime: u64,
    pub pi_sign: i8,
    pub conductor: u64,
    pub field: Arc<CycField>,
    /// epsilon = zeta^eps_exp.
    pub eps_exp: i64,
    /// sqrt_pi = zeta^sqrt_pi_exp.
    pub sqrt_pi_exp: i64,
    /// q_tilde = zeta^q_exp.
    pub q_exp: i64,
    pub epsilon: CycNumber,
    pub sqrt_pi: CycNumber,
    pub q_tilde: CycNumber,
    pub v: CycNumber,
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / a.gcd(&b) * b
}

/// Builds the specialization context for `l`, the choice of `l'`, and a pi-component.
pub fn make_root_context(ell: u64, choice: EllPrimeChoice, pi_sign: i8) -> Result<RootContext, ContextError> {
    if ell == 0 {
        return Err(ContextError::NonPositiveEll);
    }
    if pi_sign != 1 && pi_sign != -1 {
        return Err(ContextError::BadPiSign);
    }
    let ell_prime = match (choice, ell % 2) {
        (EllPrimeChoice::Ell, 0) => return Err(ContextError::EllPrimeEven(ell)),
        (EllPrimeChoice::Ell, _) => ell,
        _ => 2 * ell,
    };
    let n = lcm(ell_prime, 4);
    let field = CycField::get(n);
    let eps_exp = (n / ell_prime) as i64;
    let sqrt_pi_exp = if pi_sign == 1 { 0 } else { (n / 4) as i64 };
    let q_exp = (eps_exp + sqrt_pi_exp).rem_euclid(n as i64);
    let epsilon = CycNumber::zeta_pow(&field, eps_exp);
    let sqrt_pi = CycNumber::zeta_pow(&field, sqrt_pi_exp);
    let q_tilde = CycNumber::zeta_pow(&field, q_exp);
    let v = &sqrt_pi * &q_tilde;
    Ok(RootContext {
        ell,
        ell_prime,
        pi_sign,
        conductor: n,
        field,
        eps_exp,
        sqrt_pi_exp,
        q_exp,
        epsilon,
        sqrt_pi,
        q_tilde,
        v,
    })
}

impl RootContext {
    pub fn n(&self) -> i64 {
        self.conductor as i64
    }

    pub fn pi_sign_i64(&self) -> i64 {
        self.pi_sign as i64
    }

    /// The specialized value of `pi^a`.
    pub fn pi_pow_sign(&self, a: i64) -> i64 {
        if self.pi_sign == -1 && a.rem_euclid(2) == 1 {
            -1
        } else {
            1
        }
    }

    /// `pi^a q_tilde^b` as a signed power of zeta.
    pub fn pi_q_mono(&self, a: i64, b: i64) -> zeta::ZetaMono {
        zeta::ZetaMono::new(self.pi_pow_sign(a) < 0, self.q_exp * b, self.conductor)
    }

    pub fn pi_q(&self, a: i64, b: i64) -> CycNumber {
        self.pi_q_mono(a, b).to_cyc(&self.field)
    }

    pub fn q_tilde_pow(&self, b: i64) -> CycNumber {
        self.pi_q(0, b)
    }

    pub fn int(&self, a: i64) -> CycNumber {
        CycNumber::from_int(&self.field, a)
    }

    pub fn zero(&self) -> CycNumber {
        CycNumber::zero(&self.field)
    }

    pub fn one(&self) -> CycNumber {
        CycNumber::one(&self.field)
    }

    /// `l~` with `2 l~` the period of weight residues used for cosets:
    /// `2l` for odd `l` and `l` for even `l`.
    pub fn ell_tilde(&self) -> u64 {
        if self.ell % 2 == 1 {
            2 * self.ell
        } else {
            self.ell
        }
    }

    /// Multiplicative order of q_tilde.
    pub fn q_tilde_order(&self) -> u64 {
        self.conductor / (self.q_exp as u64).gcd(&self.conductor)
    }
}

/// Evaluates a Laurent polynomial at `zeta^step` exactly.
pub fn eval_laurent_at_zeta(l: &IntLaurent, field: &Arc<CycField>, step: i64) -> CycNumber {
    CycNumber::from_zeta_terms(field, l.terms().map(|(e, a)| (e * step, a.clone())))
}

/// The specialization homomorphism: take the chosen pi-component and set `q = q_tilde`.
pub fn specialize(x: &PiLaurent, ctx: &RootContext) -> CycNumber {
    eval_laurent_at_zeta(x.component(ctx.pi_sign), &ctx.field, ctx.q_exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_context_orders() {
        for ell in 1..=8u64 {
            for choice in [EllPrimeChoice::Default, EllPrimeChoice::Ell] {
                if choice == EllPrimeChoice::Ell && ell % 2 == 0 {
                    assert!(make_root_context(ell, choice, 1).is_err());
                    continue;
                }
                for pi in [1i8, -1] {
                    let c = make_root_context(ell, choice, pi).unwrap();
                    assert!(c.v.pow(2 * ell as i64).is_one());
                    for t in 1..ell as i64 {
                        assert!(!c.v.pow(2 * t).is_one());
                    }
                    assert!((&c.sqrt_pi * &c.sqrt_pi) == c.int(pi as i64));
                    assert_eq!(c.q_tilde, &c.sqrt_pi * &c.epsilon);
                    assert_eq!(c.v, c.epsilon.scale_int(pi as i64));
                }
            }
        }
    }

    #[test]
    fn specialization_examples() {
        let c = make_root_context(2, EllPrimeChoice::Default, 1).unwrap();
        let x = &PiLaurent::q() + &(&PiLaurent::pi() * &PiLaurent::q_pow(-1));
        assert!(specialize(&x, &c).is_zero());
        let c = make_root_context(5, EllPrimeChoice::Default, -1).unwrap();
        assert_eq!(specialize(&PiLaurent::pi(), &c), c.int(-1));
        assert!(specialize(&PiLaurent::one(), &c).is_one());
    }

    #[test]
    fn pi_basis_roundtrip() {
        let x = &PiLaurent::pi_q(1, 2) + &PiLaurent::q_pow(-1);
        let (a, b) = x.pi_basis().unwrap();
        assert_eq!(a, Laurent::monomial(BigInt::one(), -1));
        assert_eq!(b, Laurent::monomial(BigInt::one(), 2));
    }
}
