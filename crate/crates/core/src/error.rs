use thiserror::Error;

/// Errors raised by the algebra routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MismatchedFields,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is not irreducible over the base field")]
    NotIrreducible,
    #[error("modulus must have degree at least 1")]
    DegenerateModulus,
    #[error("N does not divide q-1: no primitive {n}-th root of unity in a field of order {q}")]
    NoRootOfUnity { n: u64, q: u64 },
    #[error("p divides N: no primitive {n}-th root of unity exists in characteristic {p}")]
    CharacteristicDividesLength { n: u64, p: u64 },
    #[error("alpha has multiplicative order {found}, expected exactly {expected}")]
    WrongRootOrder { expected: u64, found: u64 },
    #[error("N = {n} is not invertible in characteristic {p}: the inverse transform requires p not dividing N")]
    LengthNotInvertible { n: u64, p: u64 },
    #[error("matrix is singular (rank {rank} of {size})")]
    Singular { rank: usize, size: usize },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("malformed spectrum: {0}")]
    MalformedSpectrum(String),
    #[error("n = {n} exceeds the supported maximum {max}")]
    TooLarge { n: usize, max: usize },
    #[error("n must be at least 1")]
    EmptyGroup,
    #[error("invalid partition {0:?}")]
    InvalidPartition(Vec<usize>),
    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),
    #[error("characteristic {p} divides |S_{n}| = {order}: the group order must be invertible")]
    CharacteristicDividesGroupOrder { p: u64, n: usize, order: u64 },
    #[error("eigenvalue iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("matrix is not positive definite (eigenvalue {0:e})")]
    NotPositiveDefinite(f64),
    #[error("matrix is not unitary (defect {0:e})")]
    NotUnitary(f64),
    #[error("fixture: {0}")]
    Fixture(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
