use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} = {value} is outside the supported domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    /// `sinh` of the given argument would overflow double precision.
    #[error("sinh overflow guard: argument {0} exceeds 350")]
    SinhOverflow(f64),

    #[error("shape has no closed-form second derivative")]
    NoDerivative,

    /// The steady-state boundary value problem has a nonzero solution for zero input.
    #[error("kernel admits a nonzero equilibrium (denominator {0:e})")]
    NonzeroEquilibrium(f64),

    #[error("eigenvalue routes disagree: dense {dense} vs secular {secular}")]
    EigenMismatch { dense: f64, secular: f64 },

    #[error("modal resolution too coarse: tail estimate {tail:e} exceeds {tol:e}")]
    Resolution { tail: f64, tol: f64 },

    /// The state norm exceeded the blow-up threshold or became non-finite.
    #[error("state diverged at t = {}", .0.time)]
    BlowUp(Box<crate::sim::BlowUp>),

    #[error("invalid scenario at `{path}`: {message}")]
    Scenario { path: String, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
