use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} = {value} is outside the domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("invalid precision configuration: {0}")]
    Precision(String),

    #[error("target {target} is not attained by b -> f_b(1) for b > 0 (range is ({lo}, {hi}))")]
    NoSolution { target: f64, lo: f64, hi: f64 },

    #[error("critical points are complex for b = {b} (radicand {radicand})")]
    ComplexRoots { b: f64, radicand: f64 },

    #[error("rational part of w(u) is singular at u = {u} for b = {b}")]
    SingularDenominator { u: f64, b: f64 },

    #[error("finite-difference stencil for order {order} at x0 = {x0} does not fit in [0, 1]")]
    StepCollapse { x0: f64, order: usize },

    #[error("no sign change of the difference on ({lo}, {hi})")]
    NoCrossover { lo: f64, hi: f64 },

    #[error("certification failure: {0}")]
    Certification(String),

    #[error("arithmetic failure: {0}")]
    Arithmetic(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    /// True when the error stems from caller input rather than a failed computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. } | Error::Parameter(_) | Error::Precision(_)
        )
    }
}
