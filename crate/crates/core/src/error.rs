use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which algebraic curvature symmetry a defect refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryKind {
    FirstPair,
    SecondPair,
    PairExchange,
    Bianchi,
}

impl fmt::Display for SymmetryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SymmetryKind::FirstPair => "first-pair antisymmetry",
            SymmetryKind::SecondPair => "second-pair antisymmetry",
            SymmetryKind::PairExchange => "pair exchange",
            SymmetryKind::Bianchi => "bianchi",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension n = {n} not supported: {reason}")]
    UnsupportedDimension { n: usize, reason: &'static str },

    #[error("{kind} defect {defect:.3e} exceeds tolerance {tol:.1e}")]
    Symmetry {
        kind: SymmetryKind,
        defect: f64,
        tol: f64,
    },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("tensor is not Einstein: defect {0:.3e}")]
    NotEinstein(f64),

    #[error("tensor is not trace-free: defect {0:.3e}")]
    NotTraceFree(f64),

    #[error("infeasible critical family: {0}")]
    InfeasibleFamily(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed tensor file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
