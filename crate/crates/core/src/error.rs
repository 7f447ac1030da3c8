use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid rates: {0}")]
    InvalidRates(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Two eigenvalues compete for the same label.
    #[error("degenerate spectrum: candidates {first} and {second} are indistinguishable")]
    Degenerate { first: Complex64, second: Complex64 },

    #[error("expected a one-dimensional null space, found {count} zero eigenvalues")]
    NullSpace { count: usize },

    #[error("eigenbasis is defective (condition number {condition:.3e})")]
    Defective { condition: f64 },

    #[error("integration failed at t = {t}: {reason}")]
    Integration { t: f64, reason: String },

    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
