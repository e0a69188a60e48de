//! Weights in N[I], divided monomials, and word spaces.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// An element of N[I], one coordinate per index.
pub type Weight = Vec<i64>;

pub fn weight_add(a: &[i64], b: &[i64]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn weight_sub(a: &[i64], b: &[i64]) -> Option<Weight> {
    let r: Weight = a.iter().zip(b).map(|(x, y)| x - y).collect();
    r.iter().all(|x| *x >= 0).then_some(r)
}

pub fn weight_le(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn unit_weight(rank: usize, i: usize, n: i64) -> Weight {
    let mut w = vec![0; rank];
    w[i] = n;
    w
}

pub fn total_degree(a: &[i64]) -> i64 {
    a.iter().sum()
}

/// All weights `0 <= nu <= max`, ordered by total degree then lexicographically.
pub fn weights_below(max: &[i64]) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for m in max {
        out = out.into_iter().flat_map(|w: Weight| (0..=*m).map(move |k| [w.clone(), vec![k]].concat())).collect();
    }
    out.sort_by_key(|w| (total_degree(w), w.clone()));
    out
}

/// All weights of a given total degree.
pub fn weights_of_degree(rank: usize, deg: i64) -> Vec<Weight> {
    weights_below(&vec![deg; rank]).into_iter().filter(|w| total_degree(w) == deg).collect()
}

/// `theta_{i_1}^{(n_1)} ... theta_{i_k}^{(n_k)}`; adjacent equal indices are kept apart.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DividedMonomial {
    pub factors: Vec<(usize, u32)>,
}

impl DividedMonomial {
    pub fn one() -> Self {
        DividedMonomial { factors: Vec::new() }
    }

    pub fn new(factors: Vec<(usize, u32)>) -> Self {
        DividedMonomial { factors: factors.into_iter().filter(|f| f.1 > 0).collect() }
    }

    pub fn generator(i: usize, n: u32) -> Self {
        Self::new(vec![(i, n)])
    }

    /// The monomial spelled by a word, one factor per maximal run of equal letters.
    pub fn from_word(w: &[u8]) -> Self {
        let mut f: Vec<(usize, u32)> = Vec::new();
        for &c in w {
            match f.last_mut() {
                Some(last) if last.0 == c as usize => last.1 += 1,
                _ => f.push((c as usize, 1)),
            }
        }
        DividedMonomial { factors: f }
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let mut w = vec![0; rank];
        for (i, n) in &self.factors {
            w[*i] += *n as i64;
        }
        w
    }

    pub fn concat(&self, o: &DividedMonomial) -> DividedMonomial {
        DividedMonomial { factors: [self.factors.clone(), o.factors.clone()].concat() }
    }

    /// The underlying word (without the divided-power scalars).
    pub fn word(&self) -> Vec<u8> {
        self.factors.iter().flat_map(|(i, n)| std::iter::repeat(*i as u8).take(*n as usize)).collect()
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(i, n)| if *n == 1 { format!("θ{}", names[*i]) } else { format!("θ{}^({})", names[*i], n) })
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// All words of a fixed weight, with a lookup table.
#[derive(Debug)]
pub struct WordSpace {
    pub weight: Weight,
    pub words: Vec<Vec<u8>>,
    pub index: HashMap<Vec<u8>, u32>,
}

impl WordSpace {
    fn build(weight: &[i64]) -> WordSpace {
        let mut words = Vec::new();
        let mut counts: Vec<i64> = weight.to_vec();
        let len = total_degree(weight) as usize;
        let mut cur = Vec::with_capacity(len);
        fn rec(counts: &mut Vec<i64>, cur: &mut Vec<u8>, len: usize, out: &mut Vec<Vec<u8>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for c in 0..counts.len() {
                if counts[c] > 0 {
                    counts[c] -= 1;
                    cur.push(c as u8);
                    rec(counts, cur, len, out);
                    cur.pop();
                    counts[c] += 1;
                }
            }
        }
        rec(&mut counts, &mut cur, len, &mut words);
        let index = words.iter().enumerate().map(|(k, w)| (w.clone(), k as u32)).collect();
        WordSpace { weight: weight.to_vec(), words, index }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &[u8]) -> usize {
        self.index[w] as usize
    }
}

/// Shared word space of a weight (computed once).
pub fn word_space(weight: &[i64]) -> Arc<WordSpace> {
    static CACHE: OnceLock<Mutex<HashMap<Weight, Arc<WordSpace>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(ws) = cache.lock().unwrap().get(weight) {
        return ws.clone();
    }
    let ws = Arc::new(WordSpace::build(weight));
    cache.lock().unwrap().entry(weight.to_vec()).or_insert(ws).clone()
}

/// Divided monomials of weight `nu`, fewest factors first.
pub fn monomials_of_weight(nu: &[i64]) -> Vec<DividedMonomial> {
    let mut out = Vec::new();
    let mut rem = nu.to_vec();
    let mut cur: Vec<(usize, u32)> = Vec::new();
    fn rec(rem: &mut Vec<i64>, cur: &mut Vec<(usize, u32)>, out: &mut Vec<DividedMonomial>) {
        if rem.iter().all(|x| *x == 0) {
            out.push(DividedMonomial { factors: cur.clone() });
            return;
        }
        for i in 0..rem.len() {
            if cur.last().is_some_and(|f| f.0 == i) {
                continue;
            }
            for n in (1..=rem[i]).rev() {
                rem[i] -= n;
                cur.push((i, n as u32));
                rec(rem, cur, out);
                cur.pop();
                rem[i] += n;
            }
        }
    }
    rec(&mut rem, &mut cur, &mut out);
    out.sort_by_key(|m| m.factors.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_counts_are_multinomial() {
        assert_eq!(word_space(&[2, 3]).len(), 10);
        assert_eq!(word_space(&[0, 0]).len(), 1);
        let ws = word_space(&[1, 1, 2]);
        assert_eq!(ws.len(), 12);
        for (k, w) in ws.words.iter().enumerate() {
            assert_eq!(ws.position(w), k);
        }
    }

    #[test]
    fn monomials_are_maximal_runs() {
        assert_eq!(monomials_of_weight(&[3]).len(), 1);
        let m = monomials_of_weight(&[1, 1]);
        assert_eq!(m.len(), 2);
        assert_eq!(DividedMonomial::from_word(&[0, 0, 1, 0]).factors, vec![(0, 2), (1, 1), (0, 1)]);
        assert_eq!(weights_below(&[1, 2]).len(), 6);
        assert_eq!(weights_of_degree(2, 3).len(), 4);
    }
}
