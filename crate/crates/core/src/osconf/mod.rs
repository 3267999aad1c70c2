//! The Orlik–Solomon algebra of the braid arrangement, which computes the rational
//! cohomology of the space of `n` ordered distinct points in the plane.
//!
//! Generators `omega_ij` (`1 <= i < j <= n`) anticommute, square to zero and satisfy
//! `w_ij w_jk = w_ik w_jk - w_ik w_ij`. The basis used throughout consists of monomials
//! whose upper indices are strictly increasing; straightening rewrites any product into
//! it. `S_n` acts by relabeling points. Characters are traces of that action, computed
//! one diagonal coefficient at a time without materializing matrices.

mod algebra;
mod traces;

pub use algebra::{
    nbc_basis, nbc_dimension, sn_action, straighten, straighten_in_order, OSElement, OSGenerator,
    OSMonomial,
};
pub use traces::{
    character_conf, conf_traces_filtered, decompose_conf, set_trace_cache, trace,
    verify_stability, LabelHistory, StabilityReport, TraceCache,
};
