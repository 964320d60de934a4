use thiserror::Error;

/// Errors raised by the force kernels, registries and sweep drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where a formula is defined
    /// (non-positive separation or temperature, `eps0 <= 1` for the
    /// nonequilibrium dielectric term, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A user-supplied value violates a model invariant.
    #[error("validation error: {0}")]
    Validation(String),

    #[error("{kind} `{name}` not found")]
    NotFound { kind: &'static str, name: String },

    #[error("{kind} `{name}` already exists")]
    Conflict { kind: &'static str, name: String },

    /// Request is well-formed but not meaningful for the given inputs,
    /// e.g. a jump report for a material without a phase transition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Root search target is not bracketed by the search interval.
    #[error("target {target:e} outside the range [{at_lo:e}, {at_hi:e}] spanned by the search interval")]
    OutOfRange { target: f64, at_lo: f64, at_hi: f64 },
}

impl Error {
    /// True for errors caused by mathematically invalid arguments, as opposed
    /// to configuration or lookup problems.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::OutOfRange { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive and finite, got {value}")))
    }
}
