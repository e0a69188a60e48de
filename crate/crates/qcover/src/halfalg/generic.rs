//! Generic weight spaces of f with certified dimensions.
//!
//! `f_nu` is computed as `(sum_i i * f_{nu-i}) / span{s * w}` with `s` a Serre
//! element, working modulo a large prime at a random point `q0`. That gives
//! an upper bound for the dimension over Q(q). The shuffle images of the
//! surviving normal words, evaluated at the same point, give a lower bound.
//! When both agree the dimension is exact, and the normal words form a basis.

use super::free::{serre_element, FreeElement};
use super::ring::{FpAtPoint, LaurentRing, Ring};
use super::shuffle::{is_zero, psi_monomial, Braiding};
use super::words::{weight_sub, word_space, DividedMonomial, Weight};
use crate::datum::SuperDatum;
use crate::qpicalc::qpi_factorial;
use crate::scalars::modp::{Fp, ModpEchelon};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

const MERSENNE_61: u64 = (1 << 61) - 1;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GenericError {
    #[error("pi = -1 needs a bar-consistent datum")]
    PiNotSupported,
    #[error("dimension certificate failed at weight {0:?} (upper {1}, lower {2})")]
    Certificate(Weight, usize, usize),
}

struct Level {
    dim: usize,
    /// Quotient coordinates of every word of this weight.
    q: Vec<Vec<Fp>>,
    /// Words whose classes form a basis.
    normal: Vec<usize>,
}

/// The Serre quotient of one pi-component, evaluated at a random point.
pub struct GenericF {
    pub datum: SuperDatum,
    pub pi_sign: i8,
    ring: FpAtPoint,
    braiding: Braiding,
    serre: Vec<(Weight, Vec<(Fp, Vec<u8>)>)>,
    levels: HashMap<Weight, Level>,
    certified: HashMap<Weight, bool>,
}

/// Basis data of `f_nu` in one pi-component.
#[derive(Clone, Debug, Serialize)]
pub struct WeightBasis {
    pub weight: Weight,
    pub pi_sign: i8,
    /// Divided monomials read off the normal words, one factor per run.
    pub basis_monomials: Vec<DividedMonomial>,
    pub normal_words: Vec<Vec<u8>>,
    /// Prime and point at which `expansion` is exact.
    pub modulus: u64,
    pub point: u64,
    /// Row k: coordinates of word k (in word order) in the monomial basis, reduced mod `modulus` at `q = point`.
    pub expansion: Vec<Vec<u64>>,
}

impl GenericF {
    pub fn new(d: &SuperDatum, pi_sign: i8, seed: u64) -> Result<Self, GenericError> {
        if pi_sign == -1 && !d.is_bar_consistent() {
            return Err(GenericError::PiNotSupported);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q0 = rng.gen_range(2..MERSENNE_61 - 1);
        let ring = FpAtPoint::new(MERSENNE_61, q0, pi_sign);
        let braiding = Braiding::new(d);
        let mut serre = Vec::new();
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                if i == j {
                    continue;
                }
                let s = serre_element(d, i, j).expect("distinct indices");
                let mut words = Vec::new();
                for (c, m) in &s.terms {
                    // theta_i^{(n)} = i^n / [n]_i!
                    let mut coeff = ring.embed(c);
                    for (k, n) in &m.factors {
                        let f = ring.embed(&qpi_factorial(*n).at_index(d.d(*k)));
                        coeff = coeff * f.inv();
                    }
                    words.push((coeff, m.word()));
                }
                serre.push((s.weight, words));
            }
        }
        Ok(GenericF { datum: d.clone(), pi_sign, ring, braiding, serre, levels: HashMap::new(), certified: HashMap::new() })
    }

    fn level(&mut self, nu: &[i64]) -> &Level {
        if !self.levels.contains_key(nu) {
            let lv = self.build_level(nu);
            self.levels.insert(nu.to_vec(), lv);
        }
        &self.levels[nu]
    }

    fn build_level(&mut self, nu: &[i64]) -> Level {
        let rank = self.datum.rank();
        let space = word_space(nu);
        if nu.iter().all(|x| *x == 0) {
            return Level { dim: 1, q: vec![vec![Fp::one(MERSENNE_61)]], normal: vec![0] };
        }
        // Block layout of sum_i i * f_{nu - i}.
        let mut offsets = vec![0usize; rank];
        let mut total = 0;
        for (i, off) in offsets.iter_mut().enumerate() {
            *off = total;
            if nu[i] > 0 {
                let mut sub = nu.to_vec();
                sub[i] -= 1;
                total += self.level(&sub).dim;
            }
        }
        let embed = |this: &Self, w: &[u8]| -> Vec<Fp> {
            let i = w[0] as usize;
            let mut sub = nu.to_vec();
            sub[i] -= 1;
            let lv = &this.levels[&sub];
            let pos = word_space(&sub).position(&w[1..]);
            let mut v = vec![Fp::zero(MERSENNE_61); total];
            v[offsets[i]..offsets[i] + lv.dim].copy_from_slice(&lv.q[pos]);
            v
        };
        let mut ech = ModpEchelon::new(MERSENNE_61);
        let serre = self.serre.clone();
        for (sw, terms) in &serre {
            let Some(rest) = weight_sub(nu, sw) else { continue };
            for u in &word_space(&rest).words {
                let mut rel = vec![Fp::zero(MERSENNE_61); total];
                for (c, s) in terms {
                    let w: Vec<u8> = s.iter().chain(u.iter()).copied().collect();
                    for (a, b) in rel.iter_mut().zip(embed(self, &w)) {
                        *a = *a + *c * b;
                    }
                }
                ech.insert(rel);
                if ech.rank() == total {
                    break;
                }
            }
        }
        let pivots = ech.pivots();
        let free: Vec<usize> = (0..total).filter(|c| !pivots.contains(c)).collect();
        let q: Vec<Vec<Fp>> = space
            .words
            .iter()
            .map(|w| {
                let r = ech.reduce(embed(self, w));
                free.iter().map(|c| r[*c]).collect()
            })
            .collect();
        let mut normal = Vec::new();
        let mut sel = ModpEchelon::new(MERSENNE_61);
        for (k, v) in q.iter().enumerate() {
            if sel.rank() == free.len() {
                break;
            }
            if sel.insert(v.clone()) {
                normal.push(k);
            }
        }
        Level { dim: free.len(), q, normal }
    }

    /// Upper bound for `dim f_nu` (the Serre quotient at the chosen point).
    pub fn quotient_dim(&mut self, nu: &[i64]) -> usize {
        self.level(nu).dim
    }

    /// Rank of the shuffle images of the normal words at the chosen point.
    pub fn shuffle_rank(&mut self, nu: &[i64]) -> usize {
        let words: Vec<Vec<u8>> = {
            let lv = self.level(nu);
            let space = word_space(nu);
            lv.normal.iter().map(|k| space.words[*k].clone()).collect()
        };
        let mut ech = ModpEchelon::new(MERSENNE_61);
        for w in &words {
            let m = DividedMonomial::new(w.iter().map(|c| (*c as usize, 1)).collect());
            ech.insert(psi_monomial(&self.ring, &self.braiding, &m).coeffs);
        }
        ech.rank()
    }

    /// Certified `dim f_nu`.
    pub fn dim(&mut self, nu: &[i64]) -> Result<usize, GenericError> {
        let upper = self.quotient_dim(nu);
        if self.certified.get(nu) == Some(&true) {
            return Ok(upper);
        }
        let lower = self.shuffle_rank(nu);
        if lower != upper {
            return Err(GenericError::Certificate(nu.to_vec(), upper, lower));
        }
        self.certified.insert(nu.to_vec(), true);
        Ok(upper)
    }

    pub fn weight_basis(&mut self, nu: &[i64]) -> Result<WeightBasis, GenericError> {
        let dim = self.dim(nu)?;
        let space = word_space(nu);
        let lv = self.level(nu);
        let normal_words: Vec<Vec<u8>> = lv.normal.iter().map(|k| space.words[*k].clone()).collect();
        // Coordinates in the normal-word basis: solve against the normal words' classes.
        let m: Vec<Vec<Fp>> = lv.normal.iter().map(|k| lv.q[*k].clone()).collect();
        let minv = invert_mod_p(&m);
        let q = lv.q.clone();
        let basis_monomials: Vec<DividedMonomial> = normal_words.iter().map(|w| DividedMonomial::from_word(w)).collect();
        // word = prod [a]_i! * monomial, so a word coordinate scales by that product.
        let scales: Vec<Fp> = basis_monomials
            .iter()
            .map(|mono| {
                mono.factors.iter().fold(Fp::one(MERSENNE_61), |acc, (k, n)| acc * self.ring.embed(&qpi_factorial(*n).at_index(self.datum.d(*k))))
            })
            .collect();
        let expansion = q
            .iter()
            .map(|row| {
                (0..dim)
                    .map(|b| {
                        let c = (0..dim).fold(Fp::zero(MERSENNE_61), |acc, a| acc + row[a] * minv[a][b]);
                        (c * scales[b]).v
                    })
                    .collect()
            })
            .collect();
        Ok(WeightBasis { weight: nu.to_vec(), pi_sign: self.pi_sign, basis_monomials, normal_words, modulus: MERSENNE_61, point: self.ring.q0.v, expansion })
    }
}

fn invert_mod_p(m: &[Vec<Fp>]) -> Vec<Vec<Fp>> {
    let n = m.len();
    let p = MERSENNE_61;
    let mut a: Vec<Vec<Fp>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Fp::one(p) } else { Fp::zero(p) }));
            row
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|r| !a[*r][c].is_zero()).expect("singular matrix mod p");
        a.swap(c, piv);
        let inv = a[c][c].inv();
        for x in a[c].iter_mut() {
            *x = *x * inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c];
                let prow = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(prow) {
                    *x = *x - f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

type CacheKey = (Vec<Vec<i64>>, Vec<u8>, i8);

/// Shared generic quotient for a datum and pi-component.
pub fn generic_f(d: &SuperDatum, pi_sign: i8) -> Result<Arc<Mutex<GenericF>>, GenericError> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Mutex<GenericF>>>>> = OnceLock::new();
    let key = (d.dot.clone(), d.parity.clone(), pi_sign);
    let cache = CACHE.get_or_init(Default::default);
    if let Some(g) = cache.lock().unwrap().get(&key) {
        return Ok(g.clone());
    }
    let g = Arc::new(Mutex::new(GenericF::new(d, pi_sign, 0x5eed)?));
    Ok(cache.lock().unwrap().entry(key).or_insert(g).clone())
}

/// Certified `dim f_nu` in one pi-component.
pub fn generic_dim(d: &SuperDatum, nu: &[i64], pi_sign: i8) -> Result<usize, GenericError> {
    generic_f(d, pi_sign)?.lock().unwrap().dim(nu)
}

/// Normal-word basis of `f_nu` with a modular expansion of every word.
pub fn weight_basis(d: &SuperDatum, nu: &[i64], pi_sign: i8) -> Result<WeightBasis, GenericError> {
    generic_f(d, pi_sign)?.lock().unwrap().weight_basis(nu)
}

/// Whether `x` is zero in f, in every pi-component the datum supports.
///
/// The shuffle image is computed exactly over `Z[q, q^-1]`; it detects zero
/// because the dimension certificate at this weight shows the embedding is
/// injective there.
pub fn reduces_to_zero(d: &SuperDatum, x: &FreeElement) -> Result<bool, GenericError> {
    let b = Braiding::new(d);
    for pi in d.pi_signs() {
        generic_dim(d, &x.weight, pi)?;
        if !is_zero(&LaurentRing { pi_sign: pi }, &x.psi(&LaurentRing { pi_sign: pi }, &b)) {
            return Ok(false);
        }
    }
    Ok(true)
}
