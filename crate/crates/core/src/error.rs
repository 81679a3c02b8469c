use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("duplicate basis name `{0}`")]
    DuplicateBasisName(String),
    #[error("unknown basis name `{0}`")]
    UnknownBasisName(String),
    #[error("operands belong to different algebras")]
    MixedAlgebras,
    #[error("variable x{0} has no assigned value")]
    UnboundVariable(u32),
    #[error("subspace is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("left tensor factor is not commutative and associative: {0}")]
    LeftFactorNotCommutativeAssociative(String),
    #[error("invalid parameter n = {0}")]
    InvalidN(usize),
    #[error("term degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("algebra does not satisfy the defining identities of the variety")]
    AlgebraNotInVariety,
    #[error("not an identity of the algebra: {0}")]
    NotAnIdentity(String),
    #[error("closure did not stabilise")]
    ClosureDiverged,
    #[error("operator element is not a V-identity of P2")]
    GNotInT,
    #[error("subset of {size} generators exceeds the allowed {max}")]
    SubsetTooLarge { size: usize, max: usize },
    #[error("invalid normal word: {0}")]
    InvalidWord(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("algebra spec: {0}")]
    Spec(String),
}
