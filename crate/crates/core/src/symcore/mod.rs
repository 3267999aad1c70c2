//! Partitions, conjugacy classes and exact irreducible characters of the symmetric groups.
//!
//! Partitions of `n` are enumerated in reverse-lexicographic order, `(n)` first. Character
//! tables are memoized per `n`; reads are concurrent, the first request for a given `n`
//! computes and inserts it.

mod character;
mod class_function;
mod partition;
mod permutation;

pub use character::{
    character_table, class_size, dim_irrep, dim_of_partition, factorial, install_character_table,
    mn_character, pad, unpadded_name, CharacterTable, PaddedLabel,
};
pub use class_function::{decompose, inner_product, ClassFunction, Decomposition};
pub use partition::{partition_count, partitions_of, CycleType, Partition};
pub use permutation::Permutation;
