use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Out-of-range index, shape mismatch or malformed input.
    #[error("argument error: {0}")]
    Argument(String),

    /// The evaluation point hits a pole, a coincidence or a singular factor.
    #[error("non-generic point: {0}")]
    Genericity(String),

    /// Exact elimination found a rank deficiency.
    #[error("singular matrix: rank {rank} < {dim}")]
    Singular { rank: usize, dim: usize },

    /// The claimed spectrum does not annihilate the operator.
    #[error("spectrum does not annihilate operator: {0}")]
    Spectrum(String),

    /// A linear system expected to have a one-dimensional solution space did not.
    #[error("solution space has dimension {0}, expected 1")]
    Uniqueness(usize),

    /// Internal consistency violation (e.g. a basis that is not invariant).
    #[error("integrity error: {0}")]
    Integrity(String),
}
