use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: need N >= 2")]
    InvalidDimension(usize),

    #[error("only N = 2 and N = 4 bases are supported, got N = {0}")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian (deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("negative rate {0}; decay and dephasing rates must be nonnegative")]
    NegativeRate(f64),

    #[error("parameter {name} would become negative ({value})")]
    NegativeParameter { name: &'static str, value: f64 },

    #[error("delta {delta} outside admissible range [{lo}, {hi}] for {id}")]
    RangeViolation {
        id: String,
        delta: f64,
        lo: f64,
        hi: f64,
    },

    #[error("generator last row is nonzero (max |entry| = {0:.3e}); trace is not preserved")]
    TraceNotPreserved(f64),

    #[error("no unique steady state: A11 is singular (condition number {condition:.3e})")]
    NonUniqueSteadyState { condition: f64 },

    #[error("pole at s = {s}: nearest eigenvalue of the resolvent block is {eigenvalue}")]
    Pole {
        s: num_complex::Complex64,
        eigenvalue: num_complex::Complex64,
    },

    #[error("reference state is not pure (purity {0}); a general mixed-state fidelity is required")]
    ImpureReference(f64),

    #[error("eigenvalue solver failed to converge")]
    EigenSolver,

    #[error("sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    ///
    /// 1 for configuration and input problems, 2 for numerical failures,
    /// 3 for perturbation range violations.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::RangeViolation { .. } => 3,
            Error::NonUniqueSteadyState { .. }
            | Error::Pole { .. }
            | Error::EigenSolver
            | Error::TraceNotPreserved(_)
            | Error::InvalidState(_)
            | Error::ImpureReference(_) => 2,
            _ => 1,
        }
    }
}
