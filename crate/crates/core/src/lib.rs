//! Exact computations around representation stability for sequences of
//! symmetric-group representations.
//!
//! * [`symcore`]: partitions, characters of `S_n`, class functions and decompositions.
//! * [`charpoly`]: character polynomials in the cycle-count variables `X_i`.
//! * [`osconf`]: the Orlik–Solomon model of the cohomology of ordered configuration
//!   spaces of the plane, its `S_n` action and characters.
//! * [`fimod`]: truncated FI-modules, generation profiles and stability checks.
//! * [`fqstats`]: square-free polynomials over prime fields and their factor statistics.
//! * [`tori`]: weighted counts of maximal tori in `GL_n(F_q)`.
//!
//! All arithmetic is exact.

pub mod charpoly;
pub mod error;
pub mod fimod;
pub mod fqstats;
pub mod linalg;
pub mod osconf;
pub mod stabilization;
pub mod symcore;
pub mod tori;

pub use charpoly::CharacterPolynomial;
pub use error::{Error, Result};
pub use symcore::{ClassFunction, CycleType, Decomposition, PaddedLabel, Partition, Permutation};
