use thiserror::Error;

use crate::coxeter::GroupFamily;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("group family mismatch: {0} vs {1}")]
    FamilyMismatch(GroupFamily, GroupFamily),

    #[error("invalid group family: {0}")]
    InvalidFamily(String),

    #[error("invalid group element for {family}: {reason}")]
    InvalidElement { family: GroupFamily, reason: String },

    #[error("generator index {index} out of range 1..={rank}")]
    InvalidGenerator { index: usize, rank: usize },

    #[error("parabolic subset {0:?} is not contained in the generator set")]
    InvalidParabolic(Vec<usize>),

    #[error("{0} is not the minimal-length representative of its coset")]
    NotMinimalRepresentative(String),

    #[error("group order {order} exceeds enumeration cap {cap}")]
    CapExceeded { order: u128, cap: usize },

    #[error("theta must satisfy 0 < theta <= 1, got {0}")]
    ThetaOutOfRange(f64),

    #[error("Hecke operands disagree on {0}")]
    HeckeMismatch(&'static str),

    #[error("stationary distribution has a zero entry at index {0}")]
    ZeroStationaryEntry(usize),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("closed form requires start = identity")]
    StartNotIdentity,

    #[error("parameter out of regime: {0}")]
    Regime(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
