//! Integer combinations of N-th roots of unity kept unreduced in Z[x]/(x^N - 1).
//!
//! Shuffle images at a root of unity only ever need signed powers of zeta and
//! integer sums, so this representation makes multiplication by a root of
//! unity a rotation. Reduction modulo the cyclotomic polynomial happens only
//! when comparing with zero or converting to [`CycNumber`].

use super::cyclo::{CycField, CycNumber};
use super::modp::Fp;
use num_bigint::BigInt;
use std::sync::Arc;

/// `(-1)^neg * zeta^exp` with `exp` taken modulo `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZetaMono {
    pub neg: bool,
    pub exp: u32,
    pub n: u32,
}

impl ZetaMono {
    pub fn new(neg: bool, exp: i64, n: u64) -> Self {
        // -1 = zeta^(n/2) when n is even; keep the sign separately so odd n works too.
        ZetaMono { neg, exp: exp.rem_euclid(n as i64) as u32, n: n as u32 }
    }

    pub fn one(n: u64) -> Self {
        Self::new(false, 0, n)
    }

    pub fn mul(self, o: ZetaMono) -> ZetaMono {
        debug_assert_eq!(self.n, o.n);
        ZetaMono { neg: self.neg ^ o.neg, exp: (self.exp + o.exp) % self.n, n: self.n }
    }

    pub fn inv(self) -> ZetaMono {
        ZetaMono { neg: self.neg, exp: (self.n - self.exp) % self.n, n: self.n }
    }

    pub fn pow(self, e: i64) -> ZetaMono {
        let neg = self.neg && e.rem_euclid(2) == 1;
        ZetaMono::new(neg, self.exp as i64 * e, self.n as u64)
    }

    pub fn to_cyc(self, field: &Arc<CycField>) -> CycNumber {
        let z = CycNumber::zeta_pow(field, self.exp as i64);
        if self.neg {
            -&z
        } else {
            z
        }
    }
}

/// An element of Z[x]/(x^N - 1), mapped to Z[zeta_N] on demand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZetaInt {
    pub c: Vec<i64>,
}

impl ZetaInt {
    pub fn zero(n: u64) -> Self {
        ZetaInt { c: vec![0; n as usize] }
    }

    pub fn from_mono(m: ZetaMono) -> Self {
        let mut z = Self::zero(m.n as u64);
        z.c[m.exp as usize] = if m.neg { -1 } else { 1 };
        z
    }

    pub fn n(&self) -> usize {
        self.c.len()
    }

    /// Syntactically zero (all stored coefficients vanish).
    pub fn is_trivially_zero(&self) -> bool {
        self.c.iter().all(|x| *x == 0)
    }

    /// `self += k * m`.
    pub fn add_mono(&mut self, m: ZetaMono, k: i64) {
        let slot = &mut self.c[m.exp as usize];
        let k = if m.neg { -k } else { k };
        *slot = slot.checked_add(k).expect("coefficient overflow");
    }

    pub fn add_assign(&mut self, o: &ZetaInt) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a = a.checked_add(*b).expect("coefficient overflow");
        }
    }

    /// `self += o * m`.
    pub fn add_scaled(&mut self, o: &ZetaInt, m: ZetaMono) {
        let n = self.c.len();
        let s: i64 = if m.neg { -1 } else { 1 };
        for (k, b) in o.c.iter().enumerate() {
            if *b != 0 {
                let j = (k + m.exp as usize) % n;
                self.c[j] = self.c[j].checked_add(s * b).expect("coefficient overflow");
            }
        }
    }

    pub fn mul_mono(&self, m: ZetaMono) -> ZetaInt {
        let mut z = Self::zero(self.c.len() as u64);
        z.add_scaled(self, m);
        z
    }

    pub fn mul(&self, o: &ZetaInt) -> ZetaInt {
        let n = self.c.len();
        let mut z = vec![0i64; n];
        for (i, a) in self.c.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if *b != 0 {
                    let k = (i + j) % n;
                    z[k] = z[k].checked_add(a.checked_mul(*b).expect("coefficient overflow")).expect("coefficient overflow");
                }
            }
        }
        ZetaInt { c: z }
    }

    pub fn neg(&self) -> ZetaInt {
        ZetaInt { c: self.c.iter().map(|x| -x).collect() }
    }

    /// Power-basis coordinates in Z[zeta_N].
    pub fn reduce(&self, field: &CycField) -> Vec<i64> {
        let mut out = vec![0i64; field.deg];
        for (k, a) in self.c.iter().enumerate() {
            if *a != 0 {
                for (slot, p) in out.iter_mut().zip(field.power(k as i64)) {
                    *slot = slot.checked_add(a.checked_mul(*p).expect("coefficient overflow")).expect("coefficient overflow");
                }
            }
        }
        out
    }

    /// Canonical representative: power-basis coordinates in the first `deg` slots.
    pub fn reduced(&self, field: &CycField) -> ZetaInt {
        let mut c = self.reduce(field);
        c.resize(self.c.len(), 0);
        ZetaInt { c }
    }

    /// `self * m`, reduced.
    pub fn mul_mono_reduced(&self, m: ZetaMono, field: &CycField) -> ZetaInt {
        self.mul_mono(m).reduced(field)
    }

    /// True iff this is zero as an element of Z[zeta_N].
    pub fn is_zero_in(&self, field: &CycField) -> bool {
        self.reduce(field).iter().all(|x| *x == 0)
    }

    pub fn to_cyc(&self, field: &Arc<CycField>) -> CycNumber {
        CycNumber::from_zeta_terms(field, self.c.iter().enumerate().map(|(k, a)| (k as i64, BigInt::from(*a))))
    }

    /// Image under zeta -> omega in F_p, where `omega_pows[k] = omega^k`.
    pub fn to_fp(&self, omega_pows: &[Fp]) -> Fp {
        let mut acc = Fp::zero(omega_pows[0].p);
        for (k, a) in self.c.iter().enumerate() {
            if *a != 0 {
                acc = acc + omega_pows[k] * Fp::from_i64(*a, acc.p);
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_and_reduction() {
        let f = CycField::get(12);
        let m = ZetaMono::new(false, 5, 12);
        let z = ZetaInt::from_mono(m).mul_mono(m.inv());
        assert_eq!(z.reduce(&f), vec![1, 0, 0, 0]);
        // 1 + zeta^4 + zeta^8 = 0 for a primitive 12th root.
        let mut s = ZetaInt::zero(12);
        for k in [0, 4, 8] {
            s.add_mono(ZetaMono::new(false, k, 12), 1);
        }
        assert!(s.is_zero_in(&f));
        assert!(!s.is_trivially_zero());
    }
}
