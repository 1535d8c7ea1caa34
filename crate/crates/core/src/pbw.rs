//! Ordered monomials in noncommuting letters `h_1, ..., h_n` and a generic
//! reordering engine for algebras spanned by `c * h^I` with the commutation
//! rules `h_i c = c h_i + ad_i(c)` and `h_j h_i = h_i h_j + sum_k c_k h_k`.
//!
//! The same engine drives the enveloping algebra (coefficients in B) and the
//! enveloping algebra of the finite-dimensional Lie algebra (scalar
//! coefficients).

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::sync::Mutex;

/// Exponent vector of an ordered `h`-monomial, ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HMonomial(pub Vec<u32>);

impl HMonomial {
    pub fn one(n: usize) -> Self {
        HMonomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        HMonomial(v)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }

    pub fn with(&self, i: usize, delta: i32) -> Self {
        let mut v = self.0.clone();
        v[i] = (v[i] as i32 + delta) as u32;
        HMonomial(v)
    }

    /// Letters in product order, e.g. `[0, 0, 2]` for `h_0^2 h_2`.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            out.extend(std::iter::repeat_n(i, e as usize));
        }
        out
    }

    pub fn from_letters(n: usize, letters: &[usize]) -> Self {
        let mut v = vec![0; n];
        for &i in letters {
            v[i] += 1;
        }
        HMonomial(v)
    }

    pub fn fmt_with(&self, name: impl Fn(usize) -> String) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { name(i) } else { format!("{}^{}", name(i), e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for HMonomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for HMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient ring and commutation data of a PBW-type algebra.
pub trait PbwRules: Send + Sync {
    type C: Clone + Debug + Send + Sync;

    fn letters(&self) -> usize;
    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn add(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    /// `h_i c - c h_i`.
    fn ad(&self, i: usize, c: &Self::C) -> Self::C;
    /// `h_j h_i - h_i h_j` for `j > i`, as `sum_k c_k h_k`.
    fn commutator(&self, j: usize, i: usize) -> Vec<(usize, Self::C)>;
}

pub type PbwMap<C> = BTreeMap<HMonomial, C>;

/// Reordering engine with a memo of `h_a * h^J` normal forms.
pub struct PbwEngine<R: PbwRules> {
    rules: R,
    memo: Mutex<HashMap<(usize, HMonomial), PbwMap<R::C>>>,
}

impl<R: PbwRules> PbwEngine<R> {
    pub fn new(rules: R) -> Self {
        PbwEngine { rules, memo: Mutex::new(HashMap::new()) }
    }

    pub fn rules(&self) -> &R {
        &self.rules
    }

    pub fn add_into(&self, acc: &mut PbwMap<R::C>, k: HMonomial, c: R::C) {
        if self.rules.is_zero(&c) {
            return;
        }
        match acc.remove(&k) {
            Some(old) => {
                let s = self.rules.add(&old, &c);
                if !self.rules.is_zero(&s) {
                    acc.insert(k, s);
                }
            }
            None => {
                acc.insert(k, c);
            }
        }
    }

    fn scaled_into(&self, acc: &mut PbwMap<R::C>, c: &R::C, v: &PbwMap<R::C>) {
        for (k, d) in v {
            self.add_into(acc, k.clone(), self.rules.mul(c, d));
        }
    }

    /// Normal form of `h_a h^J`.
    pub fn letter_times_monomial(&self, a: usize, j: &HMonomial) -> PbwMap<R::C> {
        match j.first() {
            Some(j1) if j1 < a => {}
            _ => {
                let mut out = PbwMap::new();
                out.insert(j.with(a, 1), self.one());
                return out;
            }
        }
        let key = (a, j.clone());
        if let Some(hit) = self.memo.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let j1 = j.first().unwrap();
        let rest = j.with(j1, -1);
        // h_a h_{j1} h^rest = h_{j1} (h_a h^rest) + [h_a, h_{j1}] h^rest
        let inner = self.letter_times_monomial(a, &rest);
        let mut out = self.letter_times(j1, &inner);
        for (k, c) in self.rules.commutator(a, j1) {
            let tail = self.letter_times_monomial(k, &rest);
            self.scaled_into(&mut out, &c, &tail);
        }
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    /// Normal form of `h_a * v`.
    pub fn letter_times(&self, a: usize, v: &PbwMap<R::C>) -> PbwMap<R::C> {
        let mut out = PbwMap::new();
        for (j, c) in v {
            let moved = self.letter_times_monomial(a, j);
            self.scaled_into(&mut out, c, &moved);
            let d = self.rules.ad(a, c);
            self.add_into(&mut out, j.clone(), d);
        }
        out
    }

    /// Normal form of `u * v`.
    pub fn mul(&self, u: &PbwMap<R::C>, v: &PbwMap<R::C>) -> PbwMap<R::C> {
        let mut out = PbwMap::new();
        for (i, c) in u {
            let mut w = v.clone();
            for &a in i.letters().iter().rev() {
                w = self.letter_times(a, &w);
            }
            self.scaled_into(&mut out, c, &w);
        }
        out
    }

    fn one(&self) -> R::C {
        self.rules.one()
    }
}
