use thiserror::Error;

/// Which part of a candidate doubly stochastic matrix broke the tolerance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    Row { index: usize, sum: f64 },
    Column { index: usize, sum: f64 },
    Entry { row: usize, col: usize, value: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Row { index, sum } => write!(f, "row {index} sums to {sum}"),
            Violation::Column { index, sum } => write!(f, "column {index} sums to {sum}"),
            Violation::Entry { row, col, value } => {
                write!(f, "entry ({row}, {col}) is negative: {value}")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix dimension must be at least {min}, got {n}")]
    DimensionTooSmall { n: usize, min: usize },

    #[error("dimension {n} exceeds the enumeration limit {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("expected {expected} entries for an {n}x{n} matrix, got {got}")]
    BadEntryCount {
        n: usize,
        expected: usize,
        got: usize,
    },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("not doubly stochastic within tolerance {tol}: {violation}")]
    NotDoublyStochastic { violation: Violation, tol: f64 },

    #[error("tolerance must be a nonnegative finite number, got {0}")]
    InvalidTolerance(f64),

    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("matrix is not of the form aI + bJ: {0}")]
    NotCentralForm(String),

    #[error("matrix does not commute with the {0} permutation")]
    CommutationFailure(&'static str),

    #[error("Schatten exponent must satisfy 1 <= p < inf, got {0}")]
    InvalidExponent(f64),

    #[error("singular value iteration did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error(
        "Sinkhorn balancing did not converge in {iters} iterations (worst deviation {deviation})"
    )]
    SinkhornNonConvergence { iters: usize, deviation: f64 },

    #[error("no perfect matching on the support (residual Frobenius norm {residual})")]
    MatchingNotFound { residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
