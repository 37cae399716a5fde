use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A surface or ODE parameter outside its legal range.
    #[error("{name} must lie in {range} (got {value})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// Evaluation requested outside the integrated interval.
    #[error("v = {v} is outside the integrated domain [{lo}, {hi}]")]
    OutOfDomain { v: f64, lo: f64, hi: f64 },

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),

    /// The Gauss map is real or pure imaginary, where g² = ḡ².
    #[error("Gauss map value {re} + {im}i lies on the singular locus g² = ḡ²")]
    SingularLocus { re: f64, im: f64 },

    /// The unit normal is the south pole, whose stereographic image is ∞.
    #[error("normal is the south pole; the Gauss map is infinite")]
    SouthPole,

    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e})")]
    QuadratureNonConvergence { tol: f64, estimate: f64 },

    #[error("target {target} is not bracketed by [{lo}, {hi}]")]
    NotBracketed { target: f64, lo: f64, hi: f64 },

    #[error("{0}")]
    Precondition(String),
}
