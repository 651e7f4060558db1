//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("moduli list must contain at least one factor")]
    EmptyModuli,

    #[error("modulus at position {index} is zero; every factor must be >= 1")]
    ZeroModulus { index: usize },

    #[error("group order overflows a 64-bit integer")]
    OrderOverflow,

    #[error("expected {expected} residues, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("residue {residue} at position {index} is out of range for modulus {modulus}")]
    ResidueOutOfRange {
        index: usize,
        residue: u64,
        modulus: u64,
    },

    #[error("{op}(0) is undefined")]
    ZeroArgument { op: &'static str },

    #[error("subset size {k} exceeds group order {n}")]
    SubsetSizeTooLarge { k: u64, n: u64 },

    #[error("group order {n} exceeds the enumeration limit {limit}; use the DP oracle instead")]
    EnumerationTooLarge { n: u64, limit: u64 },

    #[error("uniformity ratio is degenerate for k = {k}; need 1 <= k <= n - 1 with n = {n}")]
    DegenerateRatio { k: u64, n: u64 },

    #[error("n and k must both be even here (got n = {n}, k = {k})")]
    ParityRequired { n: u64, k: u64 },

    #[error("k = {k} exceeds n = {n}")]
    KAboveN { k: u64, n: u64 },

    #[error("{op} requires k >= 1 (got {k})")]
    KBelowOne { op: &'static str, k: f64 },

    #[error("{op} requires k >= {min} (got {k})")]
    KBelowMin { op: &'static str, min: u64, k: u64 },

    #[error("endpoint scan requires n >= 8 (got {n})")]
    EndpointRangeTooSmall { n: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
