use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("iterative kernel failed to converge: {0}")]
    ConvergenceFailure(String),
    #[error("matrix is not Hermitian within tolerance {tol} (max asymmetry {observed})")]
    NotHermitian { tol: f64, observed: f64 },
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid span: {0}")]
    InvalidSpan(String),
    #[error("tabulated potential does not cover the grid point {0}")]
    OutOfDomain(f64),
    #[error("spectral range is degenerate; cannot rescale")]
    DegenerateRange,
    #[error("instance too large for statevector simulation: {qubits} qubits (limit {limit})")]
    TooLarge { qubits: u32, limit: u32 },
    #[error("round budget of {budget} exhausted before all {target} values were found")]
    BudgetExceeded { budget: u64, target: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
