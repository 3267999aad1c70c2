use thiserror::Error;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("cannot pad {lambda} to n = {n}: need n >= {min}")]
    Padding { lambda: String, n: usize, min: usize },

    #[error("not a character: multiplicity of {label} is {value}")]
    NotACharacter { label: String, value: String },

    #[error("no character polynomial fits the data: constraint at n = {n}, class {class} fails")]
    NoSolution { n: usize, class: String },

    #[error("fit is underdetermined (rank {rank} < {unknowns}); free directions: {free:?}")]
    Underdetermined {
        rank: usize,
        unknowns: usize,
        free: Vec<String>,
    },

    #[error("values did not stabilize within the window: {trace:?}")]
    Stabilization { trace: Vec<String> },

    #[error("multiplicity of {label} changes at n = {n}, inside the claimed stable range n >= {bound}")]
    StabilityViolation {
        label: String,
        n: usize,
        bound: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("identity violated: {0}")]
    IdentityViolation(String),

    #[error("counting formula violated: {0}")]
    FormulaViolation(String),

    #[error("cross-check failed for {context}: lhs = {lhs}, rhs = {rhs}")]
    CrossCheck {
        context: String,
        lhs: String,
        rhs: String,
    },

    #[error("refusing {0}")]
    CostGuard(String),

    #[error("FI-module data error: {0}")]
    Data(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
