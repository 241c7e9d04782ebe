use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be positive, got 0")]
    Zero,
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall { what: &'static str, min: u64, got: u64 },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial has degree 0")]
    ConstantPolynomial,
    #[error("degree {m} exceeds dimension {d}")]
    DegreeOutOfRange { m: usize, d: usize },
    #[error("matrix has no finite order up to {bound}")]
    NotFinite { bound: u64 },
    #[error("coefficient matrix is not skew-symmetric")]
    NotSkew,
    #[error("symbol {0} used more than once")]
    DuplicateSymbol(usize),
    #[error("compound-matrix oracle is limited to d <= {max}, got d = {d}")]
    OracleTooLarge { d: usize, max: usize },
    #[error("theta is not invariant under the given matrix")]
    NotInvariant,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("group has trivial torsion")]
    TrivialGroup,
    #[error("group has free rank {0}; use classify_fg")]
    FreeRank(usize),
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
