use thiserror::Error;

/// Errors produced anywhere in the toolkit.
///
/// Variants split into two families: input validation problems (bad
/// parameters, dimension mismatches, unnormalized states, configuration) and
/// numerical failures (exceptional points, loss of unitarity, non-convergence).
/// The CLI maps the first family to exit code 1 and the second to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix or vector contains NaN or infinite entries")]
    NonFinite,
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is singular")]
    Singular,
    #[error("QR iteration did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("matrix is not diagonalizable (eigenvector condition estimate {condition:.3e})")]
    NotDiagonalizable { condition: f64 },
    #[error("matrix is not Hermitian (asymmetry {0:.3e})")]
    NotHermitian(f64),
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:.3e})")]
    NotPsd(f64),
    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),
    #[error("Hamiltonian is at an exceptional point")]
    ExceptionalPoint,
    #[error("Hamiltonian is in the broken PT phase (complex spectrum)")]
    BrokenPhase,
    #[error("state vector is not normalized")]
    NotNormalized,
    #[error("omega must be positive, got {0}")]
    NonPositiveOmega(f64),
    #[error("target state not reached within the search window")]
    NotReached,
    #[error("operator is not a contraction (largest singular value {0:.15})")]
    NotContraction(f64),
    #[error("post-selection branch has zero norm")]
    ZeroBranch,
    #[error("{what} residual {residual:.3e} exceeds tolerance")]
    Residual { what: &'static str, residual: f64 },
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures of the numerics rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonFinite
                | Error::Singular
                | Error::NoConvergence(_)
                | Error::NotDiagonalizable { .. }
                | Error::NotHermitian(_)
                | Error::NotPsd(_)
                | Error::NotUnitary(_)
                | Error::ExceptionalPoint
                | Error::BrokenPhase
                | Error::NotReached
                | Error::NotContraction(_)
                | Error::ZeroBranch
                | Error::Residual { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
