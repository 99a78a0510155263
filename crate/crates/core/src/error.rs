use thiserror::Error;

/// Errors raised by evaluation, quadrature and class checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("{routine} did not converge (achieved error estimate {estimate:e})")]
    NonConvergence { routine: &'static str, estimate: f64 },

    #[error("function `{0}` has no analytic derivative attached")]
    MissingDerivative(String),

    #[error("identity {identity} requires {requirement}")]
    IdentityDomain {
        identity: &'static str,
        requirement: &'static str,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Error {
    Error::Domain {
        function,
        detail: detail.into(),
    }
}

/// Rejects non-finite arguments and anything at or below `min` (strict).
pub(crate) fn require_above(function: &'static str, name: &str, x: f64, min: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(domain(function, format!("{name} = {x} is not finite")));
    }
    if x <= min {
        return Err(domain(function, format!("{name} = {x} must exceed {min}")));
    }
    Ok(())
}

pub(crate) fn require_at_least(function: &'static str, name: &str, x: f64, min: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(domain(function, format!("{name} = {x} is not finite")));
    }
    if x < min {
        return Err(domain(function, format!("{name} = {x} must be at least {min}")));
    }
    Ok(())
}
