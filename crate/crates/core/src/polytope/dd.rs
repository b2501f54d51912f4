//! Double description: extreme rays of the cone `{y : a_i · y <= 0}`.
//!
//! Used on the homogenized polar of a full-dimensional point set, where the
//! extreme rays `(a, b)` are exactly the facet inequalities `a · x <= b`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{self, QVector, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        Self { words: vec![0; n.div_ceil(64)] }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn and(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct Ray {
    v: QVector,
    zero: BitSet,
}

/// Extreme rays of `{y in R^n : rows[i] · y <= 0}` for a pointed cone whose
/// first `n` rows (after `init` reordering) are linearly independent.
pub(crate) fn extreme_rays(rows: &[QVector], n: usize) -> Result<Vec<QVector>> {
    let m = rows.len();
    let init = scalar::independent_subset(rows);
    if init.len() != n {
        return Err(Error::Internal("constraint system is not full rank".into()));
    }
    // Initial simplicial cone: rays are the columns of -A0^{-1}.
    let a0: Vec<QVector> = init.iter().map(|&i| rows[i].clone()).collect();
    let mut rays: Vec<Ray> = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![Rational::zero(); n];
        e[k] = -Rational::from_integer(1.into());
        let v = scalar::solve(&a0, &e).ok_or(Error::Internal("singular initial basis".into()))?;
        let mut zero = BitSet::new(m);
        for (j, &i) in init.iter().enumerate() {
            if j != k {
                zero.insert(i);
            }
        }
        rays.push(Ray { v: scalar::primitive(&v), zero });
    }

    let rest: Vec<usize> = (0..m).filter(|i| !init.contains(i)).collect();
    let mut processed: Vec<usize> = init.clone();
    for &i in &rest {
        let row = &rows[i];
        let vals: Vec<Rational> = rays.iter().map(|r| scalar::dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_positive()).collect();
        if pos.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_zero() {
                    r.zero.insert(i);
                }
            }
            processed.push(i);
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_negative()).collect();
        let mut fresh: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zero.and(&rays[q].zero);
                if common.count() + 2 < n {
                    continue;
                }
                let adjacent = rays.iter().enumerate().all(|(k, r)| k == p || k == q || !common.is_subset_of(&r.zero));
                if !adjacent {
                    continue;
                }
                let v: QVector = rays[q].v.iter().zip(&rays[p].v).map(|(a, b)| &vals[p] * a - &vals[q] * b).collect();
                let mut zero = common;
                zero.insert(i);
                fresh.push(Ray { v: scalar::primitive(&v), zero });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_positive() {
                continue;
            }
            if vals[k].is_zero() {
                r.zero.insert(i);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
        processed.push(i);
    }
    let mut out: Vec<QVector> = rays.into_iter().map(|r| r.v).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::qvec;

    #[test]
    fn square_facets_from_homogenized_points() {
        // rows (p, -1): facets (a, b) with a·p <= b.
        let pts = [[1, 1], [1, -1], [-1, 1], [-1, -1], [0, 0]];
        let rows: Vec<QVector> = pts.iter().map(|p| qvec(&[p[0], p[1], -1])).collect();
        let rays = extreme_rays(&rows, 3).unwrap();
        assert_eq!(rays, vec![qvec(&[-1, 0, 1]), qvec(&[0, -1, 1]), qvec(&[0, 1, 1]), qvec(&[1, 0, 1])]);
    }
}
