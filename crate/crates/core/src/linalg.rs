//! Sparse linear algebra: incremental row echelon form over Q and
//! elimination with unit pivots over a Laurent polynomial ring.

use std::collections::BTreeMap;

use num::{One, Zero};
use rayon::prelude::*;

use crate::ring::{LaurentPoly, Rational};

pub type SparseVec<K> = BTreeMap<K, Rational>;

/// Rows in echelon form, keyed by their leading (smallest) key. Every row
/// is normalized to leading coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating against the current rows.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v: SparseVec<K> = v.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k.clone(), c.clone())).collect();
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.rows.contains_key(*k)).cloned(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.rows.contains_key(*k))
                    .cloned(),
            };
            let Some(k) = next else { return v };
            let c = v[&k].clone();
            for (j, d) in &self.rows[&k] {
                let e = v.entry(j.clone()).or_insert_with(Rational::zero);
                *e -= &c * d;
                if e.is_zero() {
                    v.remove(j);
                }
            }
            cursor = Some(k);
        }
    }

    /// Adds `v`; returns whether it was independent of the existing rows.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = Rational::one() / c;
        let row: SparseVec<K> = r.into_iter().map(|(k, x)| (k, x * &inv)).collect();
        self.rows.insert(lead, row);
        true
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Rank of a family of sparse vectors. The family is split into chunks whose
/// echelon forms are built in parallel and then merged.
pub fn rank<K: Ord + Clone + Send + Sync>(vs: &[SparseVec<K>]) -> usize {
    span(vs).rank()
}

pub fn span<K: Ord + Clone + Send + Sync>(vs: &[SparseVec<K>]) -> Echelon<K> {
    const CHUNK: usize = 64;
    if vs.len() <= CHUNK {
        let mut e = Echelon::new();
        for v in vs {
            e.insert(v);
        }
        return e;
    }
    let parts: Vec<Echelon<K>> = vs
        .par_chunks(CHUNK)
        .map(|c| {
            let mut e = Echelon::new();
            for v in c {
                e.insert(v);
            }
            e
        })
        .collect();
    let mut iter = parts.into_iter();
    let mut acc = iter.next().unwrap_or_default();
    for p in iter {
        for row in p.rows.values() {
            acc.insert(row);
        }
    }
    acc
}

/// Decides whether a square matrix over a Laurent polynomial ring is
/// invertible by Gaussian elimination that only ever pivots on units.
/// Returns `false` when the matrix is not square or no unit pivot is left,
/// which is a sufficient but not necessary witness of non-invertibility.
pub fn invertible_by_unit_pivots<K: Ord + Clone>(rows: Vec<BTreeMap<K, LaurentPoly>>, cols: &[K]) -> bool {
    if rows.len() != cols.len() {
        return false;
    }
    let mut rows: Vec<BTreeMap<K, LaurentPoly>> =
        rows.into_iter().map(|r| r.into_iter().filter(|(_, p)| !p.is_zero()).collect()).collect();
    let mut used = vec![false; rows.len()];
    let mut left: Vec<K> = cols.to_vec();
    while !left.is_empty() {
        let mut found = None;
        'search: for (ci, col) in left.iter().enumerate() {
            for (ri, row) in rows.iter().enumerate() {
                if used[ri] {
                    continue;
                }
                if let Some(inv) = row.get(col).and_then(LaurentPoly::unit_inverse) {
                    found = Some((ci, ri, inv));
                    break 'search;
                }
            }
        }
        let Some((ci, ri, inv)) = found else { return false };
        let col = left.remove(ci);
        used[ri] = true;
        let pivot: BTreeMap<K, LaurentPoly> = rows[ri].iter().map(|(k, p)| (k.clone(), p * &inv)).collect();
        for (rj, row) in rows.iter_mut().enumerate() {
            if rj == ri {
                continue;
            }
            let Some(f) = row.get(&col).cloned() else { continue };
            for (k, p) in &pivot {
                let e = row.entry(k.clone()).or_insert_with(|| LaurentPoly::zero(p.ring()));
                *e = &*e - &(&f * p);
                if e.is_zero() {
                    row.remove(k);
                }
            }
        }
        rows[ri] = pivot;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{int, GeneratorSet};

    fn v(entries: &[(u32, i64)]) -> SparseVec<u32> {
        entries.iter().map(|&(k, c)| (k, int(c))).collect()
    }

    #[test]
    fn dependent_rows() {
        let vs = vec![v(&[(0, 1), (1, 2)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (1, 4), (2, 2)])];
        assert_eq!(rank(&vs), 2);
        let e = span(&vs);
        assert!(e.contains(&v(&[(0, 2), (1, 6), (2, 2)])));
        assert!(!e.contains(&v(&[(2, 1)])));
    }

    #[test]
    fn parallel_merge_matches_sequential() {
        let vs: Vec<_> = (0..300u32).map(|i| v(&[(i % 50, 1), ((i * 7) % 53, 2), (60, i as i64)])).collect();
        let mut e = Echelon::new();
        for x in &vs {
            e.insert(x);
        }
        assert_eq!(rank(&vs), e.rank());
    }

    #[test]
    fn unit_pivots() {
        let r = GeneratorSet::parse_list("g* x").unwrap();
        let g = LaurentPoly::var(&r, "g");
        let x = LaurentPoly::var(&r, "x");
        let m = |a: &LaurentPoly, b: &LaurentPoly, c: &LaurentPoly, d: &LaurentPoly| {
            vec![
                BTreeMap::from([(0, a.clone()), (1, b.clone())]),
                BTreeMap::from([(0, c.clone()), (1, d.clone())]),
            ]
        };
        let one = LaurentPoly::one(&r);
        let zero = LaurentPoly::zero(&r);
        assert!(invertible_by_unit_pivots(m(&g, &x, &zero, &g), &[0, 1]));
        assert!(!invertible_by_unit_pivots(m(&x, &one, &zero, &x), &[0, 1]));
    }
}
