use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("log-gamma pole at z = {re} + {im}i")]
    GammaPole { re: f64, im: f64 },

    #[error("Barnes G vanishes at z = {re} + {im}i")]
    BarnesZero { re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid exponent indexing: {0}")]
    Index(String),

    #[error("quadrature order {got} outside [{min}, {max}]")]
    QuadratureOrder { got: usize, min: usize, max: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("exactly zero pivot at elimination step {step} (order too small or degenerate input)")]
    SingularPivot { step: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("torus grid of {got} points per dimension is too small, need at least {needed}")]
    GridTooSmall { needed: usize, got: usize },

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("coefficient inversion failed: {0}")]
    Inversion(String),
}

impl Error {
    /// True for failures of the numerics themselves rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularPivot { .. } | Error::Precondition(_) | Error::Inversion(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
