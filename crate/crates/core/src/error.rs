use alloc::string::String;

/// Everything that can go wrong in the core library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator {denominator} vanishes at the point")]
    Pole { denominator: String },
    #[error("symbols left unassigned in {expr}")]
    UnassignedSymbol { expr: String },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("block for source degree {degree} is not materialized")]
    Unmaterialized { degree: String },
    #[error("weight is not regular: pairing with root {root} vanishes")]
    NonRegular { root: String },
    #[error("no quantum parameters (Picard rank n-2 = 0)")]
    NoQuantumParameters,
    #[error("linear system is {0}")]
    Solver(String),
    #[error("specialized spectrum collapses: {0}; try a different point")]
    SpectrumCollapse(String),
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
