//! Exact rational linear algebra on sparse vectors: ranks, span membership,
//! coordinates in a spanning set, kernels, and dense system solving.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// A sparse vector with exact rational entries; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec(BTreeMap<usize, BigRational>);

impl SparseVec {
    pub fn new() -> Self {
        SparseVec(BTreeMap::new())
    }

    pub fn unit(index: usize) -> Self {
        let mut v = SparseVec::new();
        v.0.insert(index, BigRational::one());
        v
    }

    pub fn from_entries(entries: impl IntoIterator<Item = (usize, BigRational)>) -> Self {
        let mut v = SparseVec::new();
        for (k, c) in entries {
            v.add_at(k, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: usize) -> BigRational {
        self.0.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.0.iter().map(|(&k, v)| (k, v))
    }

    pub fn add_at(&mut self, k: usize, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(k).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.0.remove(&k);
        }
    }

    /// `self += c * other`.
    pub fn axpy(&mut self, c: &BigRational, other: &SparseVec) {
        if c.is_zero() {
            return;
        }
        for (&k, v) in &other.0 {
            self.add_at(k, &(c * v));
        }
    }

    pub fn scale(&mut self, c: &BigRational) {
        if c.is_zero() {
            self.0.clear();
            return;
        }
        for v in self.0.values_mut() {
            *v *= c;
        }
    }

    pub fn leading(&self) -> Option<(usize, &BigRational)> {
        self.0.iter().next().map(|(&k, v)| (k, v))
    }

    fn next_from(&self, k: usize) -> Option<(usize, BigRational)> {
        self.0.range(k..).next().map(|(&k, v)| (k, v.clone()))
    }
}

#[derive(Clone, Debug)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Row-echelon form over the rationals, grown one vector at a time.
///
/// Each stored row has leading entry 1 at its pivot. Rows are not back-substituted;
/// reduction walks pivots in increasing index order, which suffices because every row
/// only has entries at or after its pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: HashMap<usize, Row>,
    track: bool,
    inserted: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    /// Tracks, for each row, its expression in terms of the inserted vectors.
    pub fn with_tracking() -> Self {
        Echelon {
            track: true,
            ..Echelon::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place; returns the combination of rows subtracted (if tracking).
    fn reduce_tracked(&self, v: &mut SparseVec) -> SparseVec {
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        while let Some((k, c)) = v.next_from(cursor) {
            if let Some(row) = self.rows.get(&k) {
                let neg = -c.clone();
                v.axpy(&neg, &row.vec);
                if self.track {
                    combo.axpy(&c, &row.combo);
                }
            }
            cursor = k + 1;
        }
        combo
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut w = v.clone();
        self.reduce_tracked(&mut w);
        w
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Inserts `v`; returns `Ok(())` if it was independent, otherwise `Err(relation)`
    /// where `relation` expresses a dependency among inserted vectors (only meaningful
    /// when tracking).
    pub fn insert(&mut self, v: SparseVec) -> std::result::Result<(), SparseVec> {
        let id = self.inserted;
        self.inserted += 1;
        let mut w = v;
        let sub = self.reduce_tracked(&mut w);
        let mut combo = SparseVec::new();
        if self.track {
            combo = SparseVec::unit(id);
            combo.axpy(&-BigRational::one(), &sub);
        }
        match w.leading() {
            None => Err(combo),
            Some((pivot, lead)) => {
                let inv = lead.recip();
                w.scale(&inv);
                combo.scale(&inv);
                self.rows.insert(pivot, Row { vec: w, combo });
                Ok(())
            }
        }
    }

    /// Inserts and reports whether the vector was new to the span.
    pub fn add(&mut self, v: SparseVec) -> bool {
        self.insert(v).is_ok()
    }

    /// Coefficients over the inserted vectors, if `v` lies in the span (requires tracking).
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut w = v.clone();
        let combo = self.reduce_tracked(&mut w);
        if w.is_zero() {
            Some(combo)
        } else {
            None
        }
    }
}

/// Rank of a set of vectors.
pub fn rank(vectors: impl IntoIterator<Item = SparseVec>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.add(v);
    }
    e.rank()
}

/// Basis of the kernel of the linear map sending the `k`-th unit vector to `images[k]`.
pub fn kernel(images: impl IntoIterator<Item = SparseVec>) -> Vec<SparseVec> {
    let mut e = Echelon::with_tracking();
    let mut out = Vec::new();
    for img in images {
        if let Err(rel) = e.insert(img) {
            out.push(rel);
        }
    }
    out
}

/// Coordinates of vectors in a fixed independent spanning set.
#[derive(Clone, Debug)]
pub struct SpanCoordinates {
    echelon: Echelon,
    dim: usize,
}

impl SpanCoordinates {
    /// Fails if the given vectors are linearly dependent.
    pub fn new(basis: impl IntoIterator<Item = SparseVec>) -> Option<Self> {
        let mut echelon = Echelon::with_tracking();
        let mut dim = 0;
        for b in basis {
            echelon.insert(b).ok()?;
            dim += 1;
        }
        Some(SpanCoordinates { echelon, dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        self.echelon.coordinates(v)
    }
}

/// Outcome of solving `A x = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<BigRational>),
    /// Index of an equation that cannot be satisfied.
    Inconsistent { row: usize },
    /// Columns left without a pivot.
    Underdetermined { rank: usize, free: Vec<usize> },
}

/// Gauss–Jordan elimination on a dense system.
pub fn solve_dense(a: &[Vec<BigRational>], b: &[BigRational], cols: usize) -> Solution {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.resize(cols, BigRational::zero());
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut origin: Vec<usize> = (0..m.len()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        origin.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if let Some(i) = (r..m.len()).find(|&i| !m[i][cols].is_zero()) {
        return Solution::Inconsistent { row: origin[i] };
    }
    if pivots.len() < cols {
        let free = (0..cols).filter(|c| !pivots.contains(c)).collect();
        return Solution::Underdetermined {
            rank: pivots.len(),
            free,
        };
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Solution::Unique(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn v(entries: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_entries(entries.iter().map(|&(k, c)| (k, q(c))))
    }

    #[test]
    fn rank_of_dependent_set() {
        let vs = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)]), v(&[(0, 1), (2, -1)])];
        assert_eq!(rank(vs), 2);
    }

    #[test]
    fn kernel_of_difference_map() {
        // e0 -> x, e1 -> x, e2 -> y
        let imgs = vec![v(&[(0, 1)]), v(&[(0, 1)]), v(&[(1, 1)])];
        let k = kernel(imgs);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], v(&[(0, -1), (1, 1)]));
    }

    #[test]
    fn coordinates_in_span() {
        let basis = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1), (2, 1)])];
        let sc = SpanCoordinates::new(basis).unwrap();
        let c = sc.coordinates(&v(&[(0, 2), (1, 5), (2, 3)])).unwrap();
        assert_eq!(c, v(&[(0, 2), (1, 3)]));
        assert!(sc.coordinates(&v(&[(0, 1)])).is_none());
        assert!(SpanCoordinates::new(vec![v(&[(0, 1)]), v(&[(0, 2)])]).is_none());
    }

    #[test]
    fn dense_outcomes() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert_eq!(solve_dense(&a, &[q(3), q(1)], 2), Solution::Unique(vec![q(2), q(1)]));
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert_eq!(
            solve_dense(&a, &[q(1), q(3)], 2),
            Solution::Inconsistent { row: 1 }
        );
        assert_eq!(
            solve_dense(&a, &[q(1), q(2)], 2),
            Solution::Underdetermined { rank: 1, free: vec![1] }
        );
    }
}
