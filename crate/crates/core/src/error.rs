use thiserror::Error;

/// Errors raised by the numerical core.
///
/// Payloads are carried as `f64` regardless of the working precision so the
/// enum stays non-generic.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("poles {first} and {second} coincide")]
    DuplicatePole { first: usize, second: usize },

    #[error("evaluation at pole #{index} ({re}{im:+}i)")]
    PoleEvaluation { index: usize, re: f64, im: f64 },

    #[error("degenerate series: the coefficients sum to zero")]
    DegenerateSeries,

    #[error("f vanishes at ({re}{im:+}i); the point lies in the pole hull")]
    ZeroOfSeries { re: f64, im: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("target lies outside the convex hull of the poles (distance {distance:e})")]
    OutsideHull { distance: f64 },

    #[error("target coincides with pole #{index}")]
    TargetIsPole { index: usize },

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial part has degree {degree}; only affine parts are supported")]
    UnsupportedShape { degree: usize },

    #[error("ill-conditioned partial-fraction system (cond {cond:e}, relative residual {residual:e})")]
    IllConditioned { cond: f64, residual: f64 },

    #[error("root finder did not converge")]
    NoConvergence,

    #[error("characteristic polynomial has a repeated root near ({re}{im:+}i)")]
    RepeatedRoot { re: f64, im: f64 },

    #[error("malformed filter: {0}")]
    MalformedFilter(String),

    #[error("singular resolvent at ({re}{im:+}i): distance to spectrum {distance:e}")]
    SingularResolvent { re: f64, im: f64, distance: f64 },

    #[error("transfer function has a pole on the frequency grid (bin {bin})")]
    SingularTransfer { bin: usize },

    #[error("pole hull meets the spectrum (separation {distance:e})")]
    IllPosedConfiguration { distance: f64 },

    #[error("unsupported kernel: {0}")]
    UnsupportedKernel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("self-check failed: {what} (error {error:e})")]
    ValidationFailed { what: &'static str, error: f64 },

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
