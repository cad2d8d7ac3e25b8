//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not coprime: ({0},{1})")]
    NotCoprime(i64, i64),
    #[error("(0,0) is not a slope")]
    ZeroPair,
    #[error("not a theta-graph: {0}")]
    InvalidTheta(String),
    #[error("determinant must be +1 or -1, got {0}")]
    Determinant(i64),
    #[error("not a monodromy: determinant -1")]
    NotMonodromy,
    #[error("unsupported base surface: {0}")]
    UnsupportedBase(String),
    #[error("exceptional fibre needs |p| >= 2, got ({0},{1})")]
    FibreTooSmall(i64, i64),
    #[error("reducible manifold: {0}")]
    Reducible(String),
    #[error("use coincidence first: {0}")]
    NotGenuine(String),
    #[error("use c_star path: member of M*")]
    MStarMember,
    #[error("not a member of M*")]
    NotMStar,
    #[error("not hyperbolic: {0}")]
    NotHyperbolic(String),
    #[error("exceptional slope for M2_2^1: {0}")]
    ExceptionalSlope(String),
    #[error("infinite coefficient not allowed: {0}")]
    InfiniteCoefficient(String),
    #[error("not a recognized pattern: {0}")]
    NoPattern(String),
    #[error("orbit exceeds height cap {cap}; partial orbit has {} triples", partial.len())]
    OrbitCapped { cap: i64, partial: Vec<String> },
    #[error("c undefined by this formula: {0}")]
    B1Class(String),
    #[error("unsupported descriptor: {0}")]
    Unsupported(String),
    #[error("census identification gap: {0}")]
    IdentificationGap(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
