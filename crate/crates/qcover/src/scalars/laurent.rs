//! Laurent polynomials in one variable over an integer-like coefficient ring.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficient ring requirements for [`Laurent`].
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + fmt::Display
{
}

impl Coeff for BigInt {}
impl Coeff for i64 {}

/// A Laurent polynomial `sum c[k] x^(lo + k)`.
///
/// Canonical form: no leading or trailing zero coefficients; zero has `lo == 0`
/// and an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<T> {
    lo: i64,
    c: Vec<T>,
}

impl<T: Coeff> Laurent<T> {
    pub fn zero() -> Self {
        Laurent { lo: 0, c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0)
    }

    pub fn constant(a: T) -> Self {
        Self::monomial(a, 0)
    }

    pub fn monomial(a: T, e: i64) -> Self {
        Self::from_parts(e, vec![a])
    }

    /// Builds from a lowest exponent and dense coefficients, normalising.
    pub fn from_parts(lo: i64, c: Vec<T>) -> Self {
        let mut l = Laurent { lo, c };
        l.normalize();
        l
    }

    /// Builds from sparse `(exponent, coefficient)` pairs.
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let terms: Vec<(i64, T)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero();
        }
        let lo = terms.iter().map(|t| t.0).min().unwrap();
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut c = vec![T::zero(); (hi - lo + 1) as usize];
        for (e, a) in terms {
            let slot = &mut c[(e - lo) as usize];
            *slot = slot.clone() + a;
        }
        Self::from_parts(lo, c)
    }

    fn normalize(&mut self) {
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|x| x.is_zero()).count();
        if lead > 0 {
            self.c.drain(..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low_degree(&self) -> i64 {
        self.lo
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn high_degree(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }

    pub fn coeff(&self, e: i64) -> T {
        let k = e - self.lo;
        if k < 0 || k as usize >= self.c.len() {
            T::zero()
        } else {
            self.c[k as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &T)> + '_ {
        self.c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(move |(k, a)| (self.lo + k as i64, a))
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Laurent { lo: self.lo + e, c: self.c.clone() }
    }

    pub fn scale(&self, a: &T) -> Self {
        Self::from_parts(self.lo, self.c.iter().map(|x| x.clone() * a.clone()).collect())
    }

    /// Substitutes `x -> x^k` for a nonzero integer `k`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k != 0, "dilation by zero");
        Self::from_terms(self.terms().map(|(e, a)| (e * k, a.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// Exact division; returns `None` if `other` does not divide `self`.
    pub fn exact_div(&self, other: &Self) -> Option<Self>
    where
        T: num_integer::Integer,
    {
        assert!(!other.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Long division on the polynomial parts from the top coefficient down.
        let mut rem = self.c.clone();
        let d = &other.c;
        if rem.len() < d.len() {
            return None;
        }
        let lead = d.last().unwrap().clone();
        let qlen = rem.len() - d.len() + 1;
        let mut q = vec![T::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + d.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (quo, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - quo.clone() * dj.clone();
            }
            q[k] = quo;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::from_parts(self.lo - other.lo, q))
    }

    /// Evaluates through a ring homomorphism given by images of the
    /// coefficients and of `x` and `x^{-1}`.
    pub fn eval_with<R, F>(&self, x: &R, xinv: &R, one: R, coeff: F) -> R
    where
        R: Clone + Add<Output = R> + Mul<Output = R>,
        F: Fn(&T) -> R,
    {
        let mut acc: Option<R> = None;
        let base = if self.lo >= 0 { x } else { xinv };
        let mut p = one.clone();
        for _ in 0..self.lo.unsigned_abs() {
            p = p * base.clone();
        }
        for a in self.c.iter() {
            if !a.is_zero() {
                let term = coeff(a) * p.clone();
                acc = Some(match acc {
                    None => term,
                    Some(s) => s + term,
                });
            }
            p = p * x.clone();
        }
        acc.unwrap_or_else(|| coeff(&T::zero()))
    }
}

impl<T: Coeff> Add for &Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, o: &Laurent<T>) -> Laurent<T> {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(o.lo);
        let hi = self.high_degree().max(o.high_degree());
        let mut c = vec![T::zero(); (hi - lo + 1) as usize];
        for (k, a) in self.c.iter().enumerate() {
            let s = (self.lo - lo) as usize + k;
            c[s] = c[s].clone() + a.clone();
        }
        for (k, a) in o.c.iter().enumerate() {
            let s = (o.lo - lo) as usize + k;
            c[s] = c[s].clone() + a.clone();
        }
        Laurent::from_parts(lo, c)
    }
}

impl<T: Coeff> Neg for &Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        Laurent { lo: self.lo, c: self.c.iter().map(|a| -a.clone()).collect() }
    }
}

impl<T: Coeff> Sub for &Laurent<T> {
    type Output = Laurent<T>;
    fn sub(self, o: &Laurent<T>) -> Laurent<T> {
        self + &(-o)
    }
}

impl<T: Coeff> Mul for &Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, o: &Laurent<T>) -> Laurent<T> {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![T::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Laurent::from_parts(self.lo + o.lo, c)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for Laurent<T> {
            type Output = Laurent<T>;
            fn $m(self, o: Laurent<T>) -> Laurent<T> {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<T: Coeff> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, a) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{}", a)?,
                1 => write!(f, "({})q", a)?,
                _ => write!(f, "({})q^{}", a, e)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(lo: i64, c: &[i64]) -> Laurent<i64> {
        Laurent::from_parts(lo, c.to_vec())
    }

    #[test]
    fn canonical_form_strips_zeros() {
        let a = lp(-2, &[0, 0, 3, 0]);
        assert_eq!(a, Laurent::monomial(3, 0));
        assert_eq!(lp(5, &[0, 0]), Laurent::zero());
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = lp(-1, &[1, 0, 1]); // q^-1 + q
        let b = lp(0, &[1, -1, 1]);
        let p = &a * &b;
        assert_eq!(p.exact_div(&a), Some(b.clone()));
        assert_eq!(lp(0, &[1, 1]).exact_div(&lp(0, &[2])), None);
    }

    #[test]
    fn evaluation_at_integer() {
        let b = lp(0, &[1, 2, 1]);
        assert_eq!(b.eval_with(&3i64, &0, 1, |c| *c), 16);
    }
}
