use alloc::boxed::Box;
use alloc::string::String;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{what}: argument {value} is outside the domain ({expected})")]
    Domain {
        what: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("energy-dependent potential evaluated without an energy")]
    MissingEnergy,
    #[error("{operation} does not support this potential kind")]
    UnsupportedKind { operation: &'static str },
    #[error("dimension n={0} is not supported here")]
    UnsupportedDimension(u32),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(&'static str),
    #[error("quadrature missed tolerance {tol:e} after {intervals} subintervals (error estimate {estimate:e})")]
    Quadrature {
        tol: f64,
        intervals: usize,
        estimate: f64,
    },
    #[error("inverse iteration for eigenvalue {eigenvalue} did not converge after {iterations} iterations")]
    Convergence { eigenvalue: f64, iterations: usize },
    #[error("no discrete eigenvalue below the continuum threshold at E = {energy}")]
    NoEigenvalue { energy: f64 },
    #[error("grid spacings differ: {0} vs {1}")]
    MismatchedSpacing(f64, f64),
    #[error("domain R_max = {r_max} does not extend beyond R0 = {r0}")]
    InsufficientDomain { r_max: f64, r0: f64 },
    #[error("comparison eigenvector for eigenvalue {0} was not retained")]
    MissingEigenvector(f64),
    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Tag an error with the audit stage that produced it.
    pub fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
