//! Fixed workloads shared by the benchmarks.

use repstab_core::fqstats::{enumerate_monic, is_squarefree, FqPoly};
use repstab_core::symcore::{CycleType, Partition, Permutation};

/// Square-free monic polynomials of degree `n` over `F_q`.
pub fn squarefree_polys(n: usize, q: u64) -> Vec<FqPoly> {
    enumerate_monic(n, q).expect("prime q").filter(is_squarefree).collect()
}

/// One permutation of each cycle type of `S_n`.
pub fn class_representatives(n: usize) -> Vec<Permutation> {
    repstab_core::symcore::partitions_of(n)
        .into_iter()
        .map(|mu: Partition| Permutation::representative(&CycleType::new(mu)))
        .collect()
}
