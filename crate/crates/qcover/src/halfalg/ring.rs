//! Coefficient rings for shuffle images.
//!
//! Every ring knows how to realise the monomial `pi^a q^b`; the shuffle
//! engine never needs anything else from the parameters.

use crate::scalars::cyclo::{CycField, CycNumber};
use crate::scalars::modp::{root_powers, Fp};
use crate::scalars::{Laurent, RootContext};
use num_bigint::BigInt;
use std::sync::Arc;

pub trait Ring {
    type E: Clone + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// `pi^a q^b`.
    fn mono(&self, a: i64, b: i64) -> Self::E;
    fn from_int(&self, k: i64) -> Self::E;
    fn pi_sign(&self) -> i8;

    fn one(&self) -> Self::E {
        self.mono(0, 0)
    }
    fn add_assign(&self, a: &mut Self::E, b: &Self::E) {
        *a = self.add(a, b);
    }
    fn neg(&self, a: &Self::E) -> Self::E {
        self.mul(a, &self.from_int(-1))
    }
    /// Image of a two-component Laurent polynomial (its component at this ring's pi).
    fn embed(&self, x: &crate::scalars::PiLaurent) -> Self::E {
        let mut acc = self.zero();
        for (e, a) in x.component(self.pi_sign()).terms() {
            let k: i64 = a.try_into().expect("coefficient exceeds i64");
            let t = self.mul(&self.from_int(k), &self.mono(0, e));
            self.add_assign(&mut acc, &t);
        }
        acc
    }
    /// `a * pi^x q^y`.
    fn scale_mono(&self, a: &Self::E, x: i64, y: i64) -> Self::E {
        self.mul(a, &self.mono(x, y))
    }
}

fn pi_sign_pow(pi_sign: i8, a: i64) -> bool {
    pi_sign < 0 && a.rem_euclid(2) == 1
}

/// `F_p` with `q` sent to a fixed unit `q0`: a generic point when `q0` is random.
#[derive(Clone, Debug)]
pub struct FpAtPoint {
    pub p: u64,
    pub q0: Fp,
    pub pi_sign: i8,
    pows: Vec<Fp>,
    span: i64,
}

impl FpAtPoint {
    pub fn new(p: u64, q0: u64, pi_sign: i8) -> Self {
        let q0 = Fp::new(q0, p);
        let span = 64i64;
        let qi = q0.inv();
        let pows = (-span..=span).map(|e| if e >= 0 { q0.pow(e as u64) } else { qi.pow((-e) as u64) }).collect();
        FpAtPoint { p, q0, pi_sign, pows, span }
    }

    fn qpow(&self, b: i64) -> Fp {
        if b.abs() <= self.span {
            self.pows[(b + self.span) as usize]
        } else {
            self.q0.powi(b)
        }
    }
}

impl Ring for FpAtPoint {
    type E = Fp;
    fn zero(&self) -> Fp {
        Fp::zero(self.p)
    }
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        *a + *b
    }
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        *a * *b
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.is_zero()
    }
    fn mono(&self, a: i64, b: i64) -> Fp {
        let x = self.qpow(b);
        if pi_sign_pow(self.pi_sign, a) {
            -x
        } else {
            x
        }
    }
    fn from_int(&self, k: i64) -> Fp {
        Fp::from_i64(k, self.p)
    }
    fn pi_sign(&self) -> i8 {
        self.pi_sign
    }
}

/// `F_p` with `zeta_N` sent to a primitive N-th root `omega`: the reduction
/// of `Z[zeta_N]` at a prime above p.
#[derive(Clone, Debug)]
pub struct FpAtRoot {
    pub p: u64,
    pub n: i64,
    pub q_exp: i64,
    pub pi_sign: i8,
    pub omega_pows: Vec<Fp>,
}

impl FpAtRoot {
    pub fn new(ctx: &RootContext, p: u64, omega: Fp) -> Self {
        let n = ctx.n();
        FpAtRoot { p, n, q_exp: ctx.q_exp, pi_sign: ctx.pi_sign, omega_pows: root_powers(omega, n as u64) }
    }

    /// Image of an exact cyclotomic integer (power-basis coordinates).
    pub fn reduce_cyc_int(&self, c: &[i64]) -> Fp {
        let mut acc = Fp::zero(self.p);
        for (k, a) in c.iter().enumerate() {
            if *a != 0 {
                acc = acc + self.omega_pows[k] * Fp::from_i64(*a, self.p);
            }
        }
        acc
    }
}

impl Ring for FpAtRoot {
    type E = Fp;
    fn zero(&self) -> Fp {
        Fp::zero(self.p)
    }
    fn add(&self, a: &Fp, b: &Fp) -> Fp {
        *a + *b
    }
    fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        *a * *b
    }
    fn is_zero(&self, a: &Fp) -> bool {
        a.is_zero()
    }
    fn mono(&self, a: i64, b: i64) -> Fp {
        let x = self.omega_pows[(self.q_exp * b).rem_euclid(self.n) as usize];
        if pi_sign_pow(self.pi_sign, a) {
            -x
        } else {
            x
        }
    }
    fn from_int(&self, k: i64) -> Fp {
        Fp::from_i64(k, self.p)
    }
    fn pi_sign(&self) -> i8 {
        self.pi_sign
    }
}

/// Exact cyclotomic integers in power-basis coordinates, `q -> q~`, `pi -> pi_sign`.
#[derive(Clone, Debug)]
pub struct CycIntRing {
    pub field: Arc<CycField>,
    pub q_exp: i64,
    pub pi_sign: i8,
}

impl CycIntRing {
    pub fn new(ctx: &RootContext) -> Self {
        CycIntRing { field: ctx.field.clone(), q_exp: ctx.q_exp, pi_sign: ctx.pi_sign }
    }

    pub fn to_cyc(&self, a: &[i64]) -> CycNumber {
        CycNumber::from_zeta_terms(&self.field, a.iter().enumerate().map(|(k, x)| (k as i64, BigInt::from(*x))))
    }
}

fn checked(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

impl Ring for CycIntRing {
    type E = Vec<i64>;
    fn zero(&self) -> Vec<i64> {
        vec![0; self.field.deg]
    }
    fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| checked(*x, *y)).collect()
    }
    fn add_assign(&self, a: &mut Vec<i64>, b: &Vec<i64>) {
        for (x, y) in a.iter_mut().zip(b) {
            *x = checked(*x, *y);
        }
    }
    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        let deg = self.field.deg;
        let mut raw = vec![0i64; 2 * deg];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if *y != 0 {
                    raw[i + j] = checked(raw[i + j], x.checked_mul(*y).expect("cyclotomic coefficient overflow"));
                }
            }
        }
        let mut out = raw[..deg].to_vec();
        for (k, x) in raw.iter().enumerate().skip(deg) {
            if *x != 0 {
                for (o, p) in out.iter_mut().zip(self.field.power(k as i64)) {
                    *o = checked(*o, x.checked_mul(*p).expect("cyclotomic coefficient overflow"));
                }
            }
        }
        out
    }
    fn is_zero(&self, a: &Vec<i64>) -> bool {
        a.iter().all(|x| *x == 0)
    }
    fn mono(&self, a: i64, b: i64) -> Vec<i64> {
        let s = if pi_sign_pow(self.pi_sign, a) { -1 } else { 1 };
        self.field.power(self.q_exp * b).iter().map(|x| s * x).collect()
    }
    fn from_int(&self, k: i64) -> Vec<i64> {
        let mut v = self.zero();
        v[0] = k;
        v
    }
    fn pi_sign(&self) -> i8 {
        self.pi_sign
    }
}

/// Exact Laurent polynomials in q for one fixed value of pi.
#[derive(Clone, Debug)]
pub struct LaurentRing {
    pub pi_sign: i8,
}

impl Ring for LaurentRing {
    type E = Laurent<i64>;
    fn zero(&self) -> Laurent<i64> {
        Laurent::zero()
    }
    fn add(&self, a: &Laurent<i64>, b: &Laurent<i64>) -> Laurent<i64> {
        a + b
    }
    fn mul(&self, a: &Laurent<i64>, b: &Laurent<i64>) -> Laurent<i64> {
        a * b
    }
    fn is_zero(&self, a: &Laurent<i64>) -> bool {
        a.is_zero()
    }
    fn mono(&self, a: i64, b: i64) -> Laurent<i64> {
        Laurent::monomial(if pi_sign_pow(self.pi_sign, a) { -1 } else { 1 }, b)
    }
    fn from_int(&self, k: i64) -> Laurent<i64> {
        Laurent::constant(k)
    }
    fn pi_sign(&self) -> i8 {
        self.pi_sign
    }
    fn scale_mono(&self, a: &Laurent<i64>, x: i64, y: i64) -> Laurent<i64> {
        let s = a.shift(y);
        if pi_sign_pow(self.pi_sign, x) {
            -&s
        } else {
            s
        }
    }
}
