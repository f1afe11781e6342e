use thiserror::Error;

/// Errors produced by the solvers and the CLI harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("stability violation at t={t}: {detail}")]
    StabilityViolation { t: f64, detail: String },

    #[error("front collapse at t={t}: h'={hprime} < 0 signals a discretization fault")]
    FrontCollapse { t: f64, hprime: f64 },

    #[error("unsupported boundary condition: {0}")]
    UnsupportedBc(String),

    #[error("no convergence after {iterations} iterations (last estimate {last}, residual {residual})")]
    NoConvergence {
        iterations: usize,
        last: f64,
        residual: f64,
    },

    #[error("no sign change: lambda1 > 0 over the whole probed range ({0})")]
    NoSignChange(String),

    #[error("monotonicity violation: {0}")]
    MonotonicityViolation(String),

    #[error("degenerate periodic problem: iteration converged to the zero state")]
    Degenerate,

    #[error("no positive periodic solution: mean growth rate is non-positive")]
    NoPositivePeriodic,

    #[error("half-line tail outside the asymptotic band: {0}")]
    TailOutOfBand(String),

    #[error("bracket failure: {0}")]
    BracketFailure(String),

    #[error("simulated-time budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("semi-wave drift persistently violates the mean bound: {0}")]
    SupercriticalDrift(String),

    #[error("trajectory too short: {0}")]
    TooShort(String),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}
