use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use super::partition::{partitions_of, CycleType, Partition};
use crate::error::{Error, Result};

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Number of permutations with cycle type `mu`: `n! / z_mu`.
pub fn class_size(mu: &CycleType) -> BigInt {
    factorial(mu.n()) / mu.centralizer_order()
}

/// Pads `lambda` to the partition `(n - |lambda|, lambda_1, ..., lambda_r)` of `n`.
pub fn pad(lambda: &Partition, n: usize) -> Result<Partition> {
    let min = lambda.size() + lambda.first() as usize;
    if n < min {
        return Err(Error::Padding {
            lambda: lambda.to_string(),
            n,
            min,
        });
    }
    let mut parts = Vec::with_capacity(lambda.len() + 1);
    if n > lambda.size() {
        parts.push((n - lambda.size()) as u32);
    }
    parts.extend_from_slice(lambda.parts());
    Partition::new(parts)
}

/// The irreducible `V(lambda)_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PaddedLabel {
    lambda: Partition,
    n: usize,
}

impl PaddedLabel {
    pub fn new(lambda: Partition, n: usize) -> Result<Self> {
        pad(&lambda, n)?;
        Ok(PaddedLabel { lambda, n })
    }

    /// Label of the irreducible indexed by a partition `nu` of `n`.
    pub fn of_partition(nu: &Partition) -> Self {
        PaddedLabel {
            lambda: nu.tail(),
            n: nu.size(),
        }
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The padded partition of `n`.
    pub fn partition(&self) -> Partition {
        pad(&self.lambda, self.n).expect("label validated at construction")
    }
}

impl fmt::Display for PaddedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", unpadded_name(&self.lambda))
    }
}

impl fmt::Debug for PaddedLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", unpadded_name(&self.lambda), self.n)
    }
}

/// `V(2,1)`, with `V(0)` for the trivial representation.
pub fn unpadded_name(lambda: &Partition) -> String {
    if lambda.is_empty() {
        "V(0)".to_string()
    } else {
        format!("V{lambda}")
    }
}

/// Dimension of `V(lambda)_n` by the hook-length formula.
pub fn dim_irrep(label: &PaddedLabel) -> BigInt {
    let nu = label.partition();
    factorial(nu.size()) / nu.hook_product()
}

/// Dimension of the irreducible indexed by the (unpadded) partition `nu`.
pub fn dim_of_partition(nu: &Partition) -> BigInt {
    factorial(nu.size()) / nu.hook_product()
}

/// Beta-set of a partition with `len` beads: `lambda_i + len - i`.
fn beta_set(lambda: &[u32], len: usize) -> Vec<u32> {
    (0..len)
        .map(|i| lambda.get(i).copied().unwrap_or(0) + (len - 1 - i) as u32)
        .collect()
}

fn from_beta(beta: &mut [u32]) -> Vec<u32> {
    beta.sort_unstable_by(|a, b| b.cmp(a));
    let len = beta.len();
    beta.iter()
        .enumerate()
        .map(|(i, &b)| b - (len - 1 - i) as u32)
        .filter(|&p| p > 0)
        .collect()
}

type MnMemo = HashMap<(Vec<u32>, Vec<u32>), BigInt>;

/// Murnaghan–Nakayama recursion: strips border strips of length `mu[0]` via bead moves.
fn mn_rec(lambda: &[u32], mu: &[u32], memo: &mut MnMemo) -> BigInt {
    if mu.is_empty() {
        return if lambda.is_empty() {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let k = mu[0];
    let rest = &mu[1..];
    let len = lambda.len();
    let beta = beta_set(lambda, len);
    let mut total = BigInt::zero();
    for (idx, &b) in beta.iter().enumerate() {
        if b < k {
            continue;
        }
        let target = b - k;
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb = beta.clone();
        nb[idx] = target;
        let smaller = from_beta(&mut nb);
        let v = mn_rec(&smaller, rest, memo);
        if between % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    memo.insert(key, total.clone());
    total
}

/// Irreducible characters of `S_n`, rows indexed by irreducibles and columns by classes,
/// both in the canonical reverse-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    n: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<Vec<BigInt>>,
    class_sizes: Vec<BigInt>,
}

impl CharacterTable {
    pub fn compute(n: usize) -> Self {
        let partitions = partitions_of(n);
        let mut memo = MnMemo::new();
        let values = partitions
            .iter()
            .map(|lam| {
                partitions
                    .iter()
                    .map(|mu| mn_rec(lam.parts(), mu.parts(), &mut memo))
                    .collect()
            })
            .collect();
        Self::from_values(n, values).expect("computed table has the right shape")
    }

    /// Rebuilds a table from stored values (rows and columns in canonical order).
    pub fn from_values(n: usize, values: Vec<Vec<BigInt>>) -> Result<Self> {
        let partitions = partitions_of(n);
        let p = partitions.len();
        if values.len() != p || values.iter().any(|r| r.len() != p) {
            return Err(Error::Argument(format!(
                "character table of S_{n} must be {p} x {p}"
            )));
        }
        let index = partitions
            .iter()
            .enumerate()
            .map(|(k, q)| (q.clone(), k))
            .collect();
        let class_sizes = partitions
            .iter()
            .map(|mu| class_size(&CycleType::new(mu.clone())))
            .collect();
        Ok(CharacterTable {
            n,
            partitions,
            index,
            values,
            class_sizes,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn class_sizes(&self) -> &[BigInt] {
        &self.class_sizes
    }

    pub fn row(&self, lambda: usize) -> &[BigInt] {
        &self.values[lambda]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.values
    }

    pub fn value(&self, lambda: &Partition, mu: &Partition) -> Option<&BigInt> {
        Some(&self.values[self.index_of(lambda)?][self.index_of(mu)?])
    }
}

static TABLES: Lazy<RwLock<HashMap<usize, Arc<CharacterTable>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Memoized character table of `S_n`.
pub fn character_table(n: usize) -> Arc<CharacterTable> {
    if let Some(t) = TABLES.read().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let table = Arc::new(CharacterTable::compute(n));
    let mut w = TABLES.write().unwrap();
    Arc::clone(w.entry(n).or_insert(table))
}

/// Seeds the memo with a table loaded from elsewhere (a cache file, say).
pub fn install_character_table(table: CharacterTable) {
    TABLES
        .write()
        .unwrap()
        .entry(table.n())
        .or_insert_with(|| Arc::new(table));
}

/// `chi^lambda(mu)`.
pub fn mn_character(lambda: &Partition, mu: &CycleType) -> Result<BigInt> {
    if lambda.size() != mu.n() {
        return Err(Error::Argument(format!(
            "size mismatch: lambda {lambda} has size {}, class {mu} has size {}",
            lambda.size(),
            mu.n()
        )));
    }
    let table = character_table(mu.n());
    Ok(table
        .value(lambda, mu.partition())
        .expect("both partitions of n")
        .clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn padding() {
        assert_eq!(pad(&p(&[1]), 5).unwrap(), p(&[4, 1]));
        assert_eq!(pad(&Partition::empty(), 6).unwrap(), p(&[6]));
        assert_eq!(pad(&p(&[2, 1]), 7).unwrap(), p(&[4, 2, 1]));
        assert_eq!(pad(&Partition::empty(), 0).unwrap(), Partition::empty());
        assert!(matches!(pad(&p(&[2, 1]), 4), Err(Error::Padding { min: 5, .. })));
        assert!(PaddedLabel::new(p(&[1]), 1).is_err());
    }

    #[test]
    fn s3_table() {
        let t = character_table(3);
        // rows (3), (2,1), (1,1,1); columns (3), (2,1), (1,1,1)
        let expect = [[1, 1, 1], [-1, 0, 2], [1, -1, 1]];
        for (r, row) in expect.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                assert_eq!(t.row(r)[c], BigInt::from(*v));
            }
        }
    }

    #[test]
    fn trivial_sign_and_standard() {
        for n in 1..=8 {
            for mu in partitions_of(n) {
                let ct = CycleType::new(mu.clone());
                assert_eq!(mn_character(&Partition::row(n), &ct).unwrap(), BigInt::one());
                assert_eq!(
                    mn_character(&Partition::column(n), &ct).unwrap(),
                    BigInt::from(mu.sign())
                );
            }
            if n >= 2 {
                let std = pad(&p(&[1]), n).unwrap();
                assert_eq!(
                    mn_character(&std, &CycleType::identity(n)).unwrap(),
                    BigInt::from(n - 1)
                );
            }
        }
    }

    #[test]
    fn size_mismatch_is_an_error() {
        assert!(mn_character(&p(&[2]), &CycleType::identity(3)).is_err());
    }

    #[test]
    fn class_sizes() {
        assert_eq!(class_size(&CycleType::identity(6)), BigInt::one());
        assert_eq!(class_size(&CycleType::new(p(&[6]))), factorial(5));
        assert_eq!(class_size(&CycleType::new(p(&[2, 1]))), BigInt::from(3));
    }

    #[test]
    fn dimensions() {
        for n in 2..12 {
            let v1 = PaddedLabel::new(p(&[1]), n).unwrap();
            assert_eq!(dim_irrep(&v1), BigInt::from(n - 1));
            assert_eq!(
                dim_irrep(&PaddedLabel::new(Partition::empty(), n).unwrap()),
                BigInt::one()
            );
        }
        for n in 4..14usize {
            let v111 = PaddedLabel::new(p(&[1, 1, 1]), n).unwrap();
            let m = n - 1;
            assert_eq!(dim_irrep(&v111), BigInt::from(m * (m - 1) * (m - 2) / 6));
        }
    }

    #[test]
    fn identity_column_is_dimension() {
        for n in 0..=10 {
            let t = character_table(n);
            let id = t.index_of(&Partition::column(n)).unwrap();
            for (r, lam) in t.partitions().iter().enumerate() {
                assert_eq!(t.row(r)[id], dim_of_partition(lam));
            }
        }
    }

    #[test]
    fn sum_of_squared_dimensions() {
        for n in 0..=10 {
            let s: BigInt = partitions_of(n)
                .iter()
                .map(|l| {
                    let d = dim_of_partition(l);
                    &d * &d
                })
                .sum();
            assert_eq!(s, factorial(n));
        }
    }
}
