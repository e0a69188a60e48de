//! Prime-field arithmetic used for rank lower bounds and pivot selection.
//!
//! A nonzero minor modulo a prime is a proof that the same minor is nonzero
//! over the integers (or over Z[zeta] via a prime above p), so modular ranks
//! only ever certify lower bounds. Callers pair them with an upper bound.

use std::ops::{Add, Mul, Neg, Sub};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }
    pub fn zero(p: u64) -> Self {
        Fp { v: 0, p }
    }
    pub fn one(p: u64) -> Self {
        Fp { v: 1 % p, p }
    }
    pub fn from_i64(a: i64, p: u64) -> Self {
        Fp { v: a.rem_euclid(p as i64) as u64, p }
    }
    pub fn is_zero(self) -> bool {
        self.v == 0
    }
    pub fn pow(self, mut e: u64) -> Self {
        let mut r = Fp::one(self.p);
        let mut b = self;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b;
            }
            b = b * b;
            e >>= 1;
        }
        r
    }
    pub fn inv(self) -> Self {
        assert!(!self.is_zero(), "inverse of zero mod p");
        self.pow(self.p - 2)
    }
    /// `self^e` for any integer `e`.
    pub fn powi(self, e: i64) -> Self {
        if e >= 0 {
            self.pow(e as u64)
        } else {
            self.inv().pow(e.unsigned_abs())
        }
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
}
impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        Fp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }
}
impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
}
impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        Fp { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    // Deterministic Miller-Rabin for 64-bit integers.
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = Fp::new(a, n).pow(d);
        if x.v == 1 || x.v == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x;
            if x.v == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A prime `p = 1 mod n` below 2^62 together with a primitive n-th root of unity.
///
/// `index` selects among successive such primes so callers can retry with a
/// different reduction.
pub fn prime_with_root(n: u64, index: usize) -> (u64, Fp) {
    let n = n.max(1);
    let mut k = (1u64 << 61) / n;
    let mut found = 0;
    loop {
        let p = k * n + 1;
        if is_prime(p) {
            if found == index {
                let facs = prime_factors(n);
                for g in 2..p {
                    let w = Fp::new(g, p).pow((p - 1) / n);
                    if facs.iter().all(|r| w.pow(n / r).v != 1) {
                        return (p, w);
                    }
                }
            }
            found += 1;
        }
        k -= 1;
    }
}

/// Powers `omega^0 .. omega^{n-1}`.
pub fn root_powers(omega: Fp, n: u64) -> Vec<Fp> {
    let mut out = Vec::with_capacity(n as usize);
    let mut x = Fp::one(omega.p);
    for _ in 0..n {
        out.push(x);
        x = x * omega;
    }
    out
}

/// Incremental row echelon form over F_p; used to pick independent rows and pivot columns.
#[derive(Clone, Debug)]
pub struct ModpEchelon {
    pub p: u64,
    rows: Vec<(usize, Vec<Fp>)>,
}

impl ModpEchelon {
    pub fn new(p: u64) -> Self {
        ModpEchelon { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.0).collect()
    }

    /// Reduces `v` against the stored rows; returns the remainder.
    pub fn reduce(&self, mut v: Vec<Fp>) -> Vec<Fp> {
        for (piv, row) in &self.rows {
            let c = v[*piv];
            if !c.is_zero() {
                for (a, b) in v.iter_mut().zip(row) {
                    if !b.is_zero() {
                        *a = *a - c * *b;
                    }
                }
            }
        }
        v
    }

    /// Inserts `v` if it is independent; returns whether it was.
    pub fn insert(&mut self, v: Vec<Fp>) -> bool {
        let mut v = self.reduce(v);
        let Some(piv) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[piv].inv();
        for a in v.iter_mut() {
            *a = *a * inv;
        }
        // Keep rows fully reduced with respect to each other's pivots.
        for (_, row) in self.rows.iter_mut() {
            let c = row[piv];
            if !c.is_zero() {
                for (a, b) in row.iter_mut().zip(&v) {
                    if !b.is_zero() {
                        *a = *a - c * *b;
                    }
                }
            }
        }
        self.rows.push((piv, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_have_exact_order() {
        for n in [1u64, 4, 12, 20, 24, 28] {
            let (p, w) = prime_with_root(n, 0);
            assert_eq!((p - 1) % n, 0);
            assert_eq!(w.pow(n).v, 1);
            for k in 1..n {
                assert_ne!(w.pow(k).v, 1);
            }
        }
    }

    #[test]
    fn echelon_rank() {
        let p = 101;
        let f = |v: &[i64]| v.iter().map(|x| Fp::from_i64(*x, p)).collect::<Vec<_>>();
        let mut e = ModpEchelon::new(p);
        assert!(e.insert(f(&[1, 2, 3])));
        assert!(e.insert(f(&[2, 4, 7])));
        assert!(!e.insert(f(&[3, 6, 10])));
        assert_eq!(e.rank(), 2);
    }
}
