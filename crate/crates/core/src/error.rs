use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the library.
///
/// `Dimension` is structural (malformed input); every other variant is a
/// statement about the physics of otherwise well-formed input.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {what}: expected {expected}, found {found}")]
    Dimension {
        what: String,
        expected: String,
        found: String,
    },

    #[error("oscillator {oscillator} is unstable: omega = {omega} <= |mu_tilde| = {mu_tilde}")]
    Unstable {
        oscillator: usize,
        omega: f64,
        mu_tilde: f64,
    },

    #[error("mode {mode} is unstable: K = {k_diag} <= |Re Delta| = {re_delta}")]
    UnstableMode {
        mode: usize,
        k_diag: f64,
        re_delta: f64,
    },

    #[error("no stable steady state: drift eigenvalue {eigenvalue} has non-negative real part")]
    NotHurwitz { eigenvalue: Complex64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical domain error: {0}")]
    NumericalDomain(String),
}

impl Error {
    pub(crate) fn dim(
        what: impl Into<String>,
        expected: impl ToString,
        found: impl ToString,
    ) -> Self {
        Error::Dimension {
            what: what.into(),
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    /// True for malformed-input errors, false for physics errors.
    pub fn is_structural(&self) -> bool {
        matches!(self, Error::Dimension { .. } | Error::InvalidArgument(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
