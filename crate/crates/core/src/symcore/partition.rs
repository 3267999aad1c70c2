use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// The derived `Ord` is lexicographic on the parts, so `(1) < (1,1) < (2) < (2,1)`.
/// That is the order in which decompositions are listed. The canonical
/// enumeration order returned by [`partitions_of`] is the reverse of it.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Argument(format!("partition {parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Argument(format!("partition {parts:?} is not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row partition `(n)`, empty for `n = 0`.
    pub fn row(n: usize) -> Self {
        if n == 0 {
            Partition::empty()
        } else {
            Partition(vec![n as u32])
        }
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest part, zero for the empty partition.
    pub fn first(&self) -> u32 {
        self.0.first().copied().unwrap_or(0)
    }

    /// `m[i]` is the number of parts equal to `i`; `m[0]` is unused and zero.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut m = vec![0u32; self.first() as usize + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first() as usize;
        let parts = (0..cols)
            .map(|c| self.0.iter().filter(|&&p| p as usize > c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// `z_mu = prod_i i^{m_i} m_i!`, the order of the centralizer of a permutation of this cycle type.
    pub fn centralizer_order(&self) -> BigInt {
        let mut z = BigInt::one();
        for (i, &m) in self.multiplicities().iter().enumerate().skip(1) {
            for k in 1..=m {
                z *= BigInt::from(i) * BigInt::from(k);
            }
        }
        z
    }

    /// Product of all hook lengths.
    pub fn hook_product(&self) -> BigInt {
        let conj = self.conjugate();
        let mut h = BigInt::one();
        for (r, &len) in self.0.iter().enumerate() {
            for c in 0..len as usize {
                let arm = len as usize - c - 1;
                let leg = conj.0[c] as usize - r - 1;
                h *= BigInt::from(arm + leg + 1);
            }
        }
        h
    }

    /// Sign of any permutation of this cycle type: `(-1)^{n - #parts}`.
    pub fn sign(&self) -> i32 {
        if (self.size() - self.len()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Removes the first part, the inverse of padding.
    pub fn tail(&self) -> Partition {
        Partition(self.0.iter().skip(1).copied().collect())
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Accepts `3,1`, `(3,1)`, `()`, the empty string, and `0` for the empty partition.
impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "0" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|e| Error::Parse(format!("bad part {x:?} in {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order: `(n)` first, `(1^n)` last.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition::empty());
        return out;
    }
    let mut cur: Vec<u32> = vec![n as u32];
    loop {
        out.push(Partition(cur.clone()));
        // rightmost part greater than one
        let Some(k) = cur.iter().rposition(|&p| p > 1) else {
            break;
        };
        let ones = (cur.len() - k - 1) as u32;
        let v = cur[k] - 1;
        cur.truncate(k);
        let mut rem = ones + v + 1;
        while rem > 0 {
            let take = v.min(rem);
            cur.push(take);
            rem -= take;
        }
    }
    out
}

/// Number of partitions of `n`.
pub fn partition_count(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for m in part..=n {
            p[m] += p[m - part];
        }
    }
    p[n]
}

/// The conjugacy class of a permutation, as a partition plus cached part multiplicities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    partition: Partition,
    mult: Vec<u32>,
}

impl CycleType {
    pub fn new(partition: Partition) -> Self {
        let mult = partition.multiplicities();
        CycleType { partition, mult }
    }

    pub fn identity(n: usize) -> Self {
        CycleType::new(Partition::column(n))
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn n(&self) -> usize {
        self.partition.size()
    }

    /// `X_i`: the number of `i`-cycles.
    pub fn count(&self, i: usize) -> u32 {
        self.mult.get(i).copied().unwrap_or(0)
    }

    /// Multiplicities indexed by cycle length; index 0 is unused.
    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    pub fn sign(&self) -> i32 {
        self.partition.sign()
    }

    pub fn centralizer_order(&self) -> BigInt {
        self.partition.centralizer_order()
    }
}

impl From<Partition> for CycleType {
    fn from(p: Partition) -> Self {
        CycleType::new(p)
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.partition)
    }
}
