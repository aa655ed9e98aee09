use thiserror::Error;

/// Errors produced by the force evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The material model does not carry the parameter the operation needs.
    #[error("unsupported material model: {0}")]
    UnsupportedModel(String),

    /// A permittivity was requested at a pole (zero frequency for plasma/Drude).
    #[error("permittivity pole: {0}")]
    Pole(String),

    /// The zero-frequency perpendicular scattering coefficient of a dissipative
    /// (Drude) metal is not fixed by the scattering problem.
    #[error(
        "indeterminate zero-frequency term: {0}; the perpendicular scattering coefficient \
         of the Drude model at xi = 0 is not defined (q0 = k0 and unitarity does not apply)"
    )]
    Indeterminate(String),

    /// The evaluation point or run configuration is inconsistent.
    #[error("configuration error: {0}")]
    Config(String),

    /// Quadrature or series summation failed to reach the requested tolerance.
    #[error("numerical non-convergence: {what} (estimated error {error_estimate:e})")]
    NonConvergence { what: String, error_estimate: f64 },
}

pub type Result<T> = std::result::Result<T, CasimirError>;

pub(crate) fn domain(msg: impl Into<String>) -> CasimirError {
    CasimirError::Domain(msg.into())
}
