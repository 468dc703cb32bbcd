use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid missing set: {0}")]
    InvalidMissingSet(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("length mismatch: truth has {truth} entries, computed has {computed}")]
    LengthMismatch { truth: usize, computed: usize },

    #[error("matrix is singular to working precision (pivot {pivot:e} below {threshold:e})")]
    SingularMatrix { pivot: f64, threshold: f64 },

    #[error("matrix is not symmetric (asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("noise level {delta:e} is not below the data norm {rhs_norm:e}")]
    DeltaTooLarge { delta: f64, rhs_norm: f64 },

    #[error("m*r = {product} is an integer; use the structural prediction instead")]
    IntegerCase { m: u32, r: f64, product: f64 },

    #[error("known sample at index {index} is not available")]
    MissingKnownSample { index: i64 },
}

impl Error {
    /// True for failures of the numerics (as opposed to rejected input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::SingularMatrix { .. }
                | Error::NotSymmetric { .. }
                | Error::NoConvergence { .. }
                | Error::DeltaTooLarge { .. }
        )
    }
}
