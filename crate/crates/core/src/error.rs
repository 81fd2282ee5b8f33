use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by a quaternion of modulus {modulus:e}")]
    ZeroDivisor { modulus: f64 },

    #[error("point outside the domain: {0}")]
    Domain(String),

    #[error("kernel is singular: factor modulus {modulus:e} below threshold")]
    SingularKernel { modulus: f64 },

    #[error("boundary limit is not real at x = {x}: imaginary part {imag:e}")]
    BoundaryLimitNotReal { x: f64, imag: f64 },

    #[error("bad parameter `{name}`: {reason}")]
    BadParameter { name: &'static str, reason: String },

    #[error("non-finite integrand sample at ({x}, {y})")]
    NonFiniteSample { x: f64, y: f64 },

    #[error("refinement changed the integral from {coarse:e} to {fine:e}; integral suspected divergent")]
    DivergenceSuspected { coarse: f64, fine: f64 },

    #[error("contour radius {rho} is within {gap:e} of |q|")]
    ContourTooClose { rho: f64, gap: f64 },
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDivisor { .. } => "ZeroDivisor",
            Error::Domain(_) => "DomainError",
            Error::SingularKernel { .. } => "SingularKernel",
            Error::BoundaryLimitNotReal { .. } => "BoundaryLimitNotReal",
            Error::BadParameter { .. } => "BadParameter",
            Error::NonFiniteSample { .. } => "NonFiniteSample",
            Error::DivergenceSuspected { .. } => "DivergenceSuspected",
            Error::ContourTooClose { .. } => "ContourTooClose",
        }
    }

    pub(crate) fn bad(name: &'static str, reason: impl Into<String>) -> Self {
        Error::BadParameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
