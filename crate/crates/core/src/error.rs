use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("level N must be even and at least 2, got {0}")]
    InvalidLevel(i64),

    #[error("operands live in different cyclotomic rings (N = {0} vs N = {1})")]
    RingMismatch(u32, u32),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not symplectic: {0}")]
    NotSymplectic(String),

    #[error("not an integral Lagrangian subspace: {0}")]
    NotLagrangian(String),

    #[error("division by zero in the cyclotomic field")]
    DivisionByZero,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("odd number of signed crossings between components {0} and {1} (linking number would be half-integral)")]
    Parity(usize, usize),

    #[error("invalid Kirby move: {0}")]
    InvalidMove(String),

    #[error("imaginary part of the period matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("quadrature did not converge: Richardson estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    Quadrature { estimate: f64, tolerance: f64 },

    #[error("averaging construction degenerated: {0}")]
    DegenerateTransversal(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit status: `1` for a failed numerical property, `3` for a
    /// bad configuration, `2` for any other input error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Quadrature { .. } => 1,
            Error::InvalidLevel(_) | Error::Config(_) | Error::NotPositiveDefinite => 3,
            _ => 2,
        }
    }
}
