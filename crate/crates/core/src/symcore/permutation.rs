use std::fmt;

use super::partition::{CycleType, Partition};

/// A permutation of `{0, .., n-1}` stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds from an image vector; `None` unless it is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Permutation(images))
    }

    /// Builds from disjoint cycles (0-based points).
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Self {
        let mut p: Vec<usize> = (0..n).collect();
        for c in cycles {
            for k in 0..c.len() {
                p[c[k]] = c[(k + 1) % c.len()];
            }
        }
        Permutation(p)
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(a, b);
        Permutation(p)
    }

    /// The standard representative of a cycle type: consecutive blocks, longest first.
    pub fn representative(ct: &CycleType) -> Self {
        let n = ct.n();
        let mut p: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &len in ct.partition().parts() {
            let len = len as usize;
            for k in 0..len {
                p[start + k] = start + (k + 1) % len;
            }
            start += len;
        }
        Permutation(p)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `(self * other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x];
                len += 1;
            }
            lens.push(len as u32);
        }
        CycleType::new(Partition::from_unsorted(lens))
    }

    /// All permutations of `n` points in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
