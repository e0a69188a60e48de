//! Cyclotomic polynomials and exact arithmetic in the cyclotomic field Q(zeta_N).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

/// The m-th cyclotomic polynomial, coefficients from the constant term up.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    assert!(m >= 1, "cyclotomic polynomial index must be positive");
    // x^m - 1 divided by every Phi_d with d | m, d < m.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let lb = *b.last().unwrap();
    assert!(lb == 1 || lb == -1);
    let qlen = a.len() - b.len() + 1;
    let mut q = vec![0i64; qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + b.len() - 1] * lb;
        q[k] = c;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    assert!(rem.iter().all(|x| *x == 0), "inexact cyclotomic division");
    q
}

/// Euler totient.
pub fn totient(mut n: u64) -> u64 {
    let mut r = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if n > 1 {
        r -= r / n;
    }
    r
}

/// Shared data for Q(zeta_N): the modulus Phi_N and the reduction of every
/// power zeta^k, 0 <= k < N, onto the power basis 1, zeta, ..., zeta^(phi-1).
#[derive(Debug)]
pub struct CycField {
    pub n: u64,
    pub phi: Vec<i64>,
    pub deg: usize,
    powers: Vec<Vec<i64>>,
}

impl CycField {
    fn build(n: u64) -> CycField {
        let phi = cyclotomic_polynomial(n);
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg.max(1)];
        if deg == 0 {
            unreachable!()
        }
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by zeta: shift up and reduce the overflow with Phi (monic).
            let top = cur[deg - 1];
            for k in (1..deg).rev() {
                cur[k] = cur[k - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for k in 0..deg {
                    cur[k] -= top * phi[k];
                }
            }
        }
        CycField { n, phi, deg, powers }
    }

    /// The field Q(zeta_n), shared across the process.
    pub fn get(n: u64) -> Arc<CycField> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycField>>>> = OnceLock::new();
        let m = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut g = m.lock().unwrap();
        g.entry(n).or_insert_with(|| Arc::new(CycField::build(n))).clone()
    }

    /// Power-basis coordinates of zeta^k.
    pub fn power(&self, k: i64) -> &[i64] {
        &self.powers[k.rem_euclid(self.n as i64) as usize]
    }
}

/// An element of Q(zeta_N) in the power basis modulo Phi_N.
#[derive(Clone)]
pub struct CycNumber {
    field: Arc<CycField>,
    c: Vec<BigRational>,
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl CycNumber {
    pub fn zero(field: &Arc<CycField>) -> Self {
        CycNumber { field: field.clone(), c: vec![BigRational::zero(); field.deg] }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<CycField>, a: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(a.into()))
    }

    pub fn from_bigint(field: &Arc<CycField>, a: &BigInt) -> Self {
        Self::from_rational(field, BigRational::from_integer(a.clone()))
    }

    pub fn from_rational(field: &Arc<CycField>, a: BigRational) -> Self {
        let mut z = Self::zero(field);
        z.c[0] = a;
        z
    }

    /// zeta_N^k.
    pub fn zeta_pow(field: &Arc<CycField>, k: i64) -> Self {
        let mut z = Self::zero(field);
        for (slot, v) in z.c.iter_mut().zip(field.power(k)) {
            *slot = BigRational::from_integer((*v).into());
        }
        z
    }

    /// Sum of `a_k zeta^k` over integer pairs `(k, a_k)`, reduced exactly.
    pub fn from_zeta_terms<I: IntoIterator<Item = (i64, BigInt)>>(field: &Arc<CycField>, terms: I) -> Self {
        let mut acc = vec![BigInt::zero(); field.deg];
        for (k, a) in terms {
            if a.is_zero() {
                continue;
            }
            for (slot, v) in acc.iter_mut().zip(field.power(k)) {
                if *v != 0 {
                    *slot += &a * *v;
                }
            }
        }
        CycNumber { field: field.clone(), c: acc.into_iter().map(BigRational::from_integer).collect() }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|x| x.is_zero())
    }

    /// The rational value if this element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn check(&self, o: &Self) {
        debug_assert!(Arc::ptr_eq(&self.field, &o.field) || self.field.n == o.field.n, "mixed cyclotomic fields");
    }

    pub fn scale_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        CycNumber { field: self.field.clone(), c: self.c.iter().map(|x| x * &k).collect() }
    }

    pub fn scale_rational(&self, k: &BigRational) -> Self {
        CycNumber { field: self.field.clone(), c: self.c.iter().map(|x| x * k).collect() }
    }

    /// Multiplies by zeta^k (cheap: one reduction per coordinate).
    pub fn mul_zeta_pow(&self, k: i64) -> Self {
        self * &Self::zeta_pow(&self.field, k)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv().expect("inverse of zero") } else { self.clone() };
        let mut r = Self::one(&self.field);
        let mut b = base;
        let mut e = e.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        r
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(&self.field, r.recip()));
        }
        // Extended Euclid over Q[x] with the modulus Phi_N.
        let modulus: Vec<BigRational> =
            self.field.phi.iter().map(|v| BigRational::from_integer((*v).into())).collect();
        let a = trim(self.c.clone());
        let (g, s) = ext_gcd(a, modulus);
        debug_assert!(g.len() == 1);
        let ginv = g[0].recip();
        let mut out = Self::zero(&self.field);
        for (k, v) in s.into_iter().enumerate() {
            out.c[k] = v * &ginv;
        }
        Some(out)
    }

    /// Exact division, `None` when dividing by zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self * &i)
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn poly_sub_mul(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let need = q.len() + b.len() - 1;
    if r.len() < need {
        r.resize(need, BigRational::zero());
    }
    for (i, qi) in q.iter().enumerate() {
        if qi.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= qi * bj;
        }
    }
    trim(r)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    if r.len() < b.len() {
        return (vec![BigRational::zero()], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.is_empty() {
            r.push(BigRational::zero());
        }
    }
    (q, r)
}

/// Returns (g, s) with s*a = g mod m, g a nonzero constant when gcd(a, m) = 1.
fn ext_gcd(a: Vec<BigRational>, m: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    let (mut r0, mut r1) = (m, a);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub_mul(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    (r0, s0)
}

impl PartialEq for CycNumber {
    fn eq(&self, o: &Self) -> bool {
        self.check(o);
        self.c == o.c
    }
}
impl Eq for CycNumber {}

impl Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, o: &CycNumber) -> CycNumber {
        self.check(o);
        CycNumber { field: self.field.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, o: &CycNumber) -> CycNumber {
        self.check(o);
        CycNumber { field: self.field.clone(), c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber { field: self.field.clone(), c: self.c.iter().map(|a| -a).collect() }
    }
}

impl Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, o: &CycNumber) -> CycNumber {
        self.check(o);
        let f = &self.field;
        let deg = f.deg;
        if let Some(r) = o.as_rational() {
            return self.scale_rational(&r);
        }
        if let Some(r) = self.as_rational() {
            return o.scale_rational(&r);
        }
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigRational> = prod[..deg].to_vec();
        for (k, v) in prod.into_iter().enumerate().skip(deg) {
            if v.is_zero() {
                continue;
            }
            for (slot, p) in out.iter_mut().zip(f.power(k as i64)) {
                if *p != 0 {
                    *slot += &v * BigRational::from_integer((*p).into());
                }
            }
        }
        CycNumber { field: f.clone(), c: out }
    }
}

macro_rules! owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycNumber {
            type Output = CycNumber;
            fn $m(self, o: CycNumber) -> CycNumber {
                (&self).$m(&o)
            }
        }
    };
}
owned!(Add, add);
owned!(Sub, sub);
owned!(Mul, mul);

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => format!("{}", a),
                1 => format!("{}*z", a),
                _ => format!("{}*z^{}", a, k),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl serde::Serialize for CycNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Integer gcd helper used by callers that clear denominators.
pub fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.abs().gcd(&b.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn product_over_divisors_is_x_m_minus_one() {
        for m in 1..=30u64 {
            let mut prod = vec![1i64];
            for d in 1..=m {
                if m % d == 0 {
                    let p = cyclotomic_polynomial(d);
                    let mut r = vec![0i64; prod.len() + p.len() - 1];
                    for (i, a) in prod.iter().enumerate() {
                        for (j, b) in p.iter().enumerate() {
                            r[i + j] += a * b;
                        }
                    }
                    prod = r;
                }
            }
            let mut expect = vec![0i64; m as usize + 1];
            expect[0] = -1;
            expect[m as usize] = 1;
            assert_eq!(prod, expect, "m = {}", m);
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, totient(m));
        }
    }

    #[test]
    fn zeta_has_exact_order() {
        for n in [1u64, 2, 3, 4, 5, 6, 8, 12, 16, 20, 24, 28] {
            let f = CycField::get(n);
            let z = CycNumber::zeta_pow(&f, 1);
            assert!(z.pow(n as i64).is_one());
            for k in 1..n as i64 {
                assert!(!z.pow(k).is_one(), "n={} k={}", n, k);
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        let f = CycField::get(12);
        let x = &(&CycNumber::zeta_pow(&f, 1) + &CycNumber::from_int(&f, 3)) * &CycNumber::zeta_pow(&f, 5);
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(CycNumber::zero(&f).inv().is_none());
    }
}
