use thiserror::Error;

use crate::construct::FailureCertificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: u64, n: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field or extension of order {0} exceeds the supported size")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("group order {0} is not odd")]
    NotOddOrder(usize),
    #[error("minimal normal subgroup is not elementary abelian")]
    NotElementaryAbelian,
    #[error("subgroup does not normalize")]
    NotNormal,
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("G-set action is not a homomorphism: {0}")]
    InvalidAction(String),
    #[error("vector lies outside the module carrier")]
    VectorOutsideCarrier,
    #[error("subspace is not a submodule")]
    NotSubmodule,
    #[error("module is not irreducible")]
    NotIrreducible,
    #[error("decomposition stalled after {0} attempts")]
    DecompositionStalled(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no self-dual code: {0}")]
    Obstruction(Box<FailureCertificate>),
    #[error("rationality failure: idempotent is not fixed by the Frobenius")]
    RationalityFailure,
    #[error("internal case error: {0}")]
    InternalCaseError(String),
    #[error("no square root of {0} in the field")]
    NoSquareRoot(u32),
    #[error("hull mismatch: {0}")]
    HullMismatch(String),
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
