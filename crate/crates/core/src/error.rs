use thiserror::Error;

/// Errors produced by the arithmetic, group and catalog layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quotient {0} is not an element of Z[1/2]")]
    DivisionNotDyadic(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a unit of Z[1/2, sqrt(-1)]")]
    NotAUnit(String),
    #[error("matrix is not monomial: {0}")]
    NotMonomial(String),
    #[error("dimension mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("rank {0} exceeds the supported maximum of {max}", max = crate::weyl::MAX_RANK)]
    RankTooLarge(usize),
    #[error("element {0} does not lie in the group")]
    NotInGroup(String),
    #[error("generator {0} does not lie in the ambient group")]
    NotASubgroup(String),
    #[error("group of order {0} exceeds the enumeration cap {1}")]
    GroupTooLarge(u128, u128),
    #[error("torus index {0} out of range (family has {1} torus classes)")]
    TorusIndexOutOfRange(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("family {0} has no W_K tables; use the twisted-involution interface")]
    MissingWkData(String),
    #[error("torus {0} carries no Galois data")]
    MissingGaloisData(usize),
    #[error("Galois rule is not an involution on {0}")]
    NotAnInvolution(String),
    #[error("Galois rule maps {0} outside its domain")]
    RuleEscapesDomain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
