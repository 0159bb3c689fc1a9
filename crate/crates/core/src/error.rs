use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("index error: {0}")]
    Index(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("points {first} and {second} are closer than {tolerance:e} (distance {distance:e})")]
    NotSeparated {
        first: usize,
        second: usize,
        distance: f64,
        tolerance: f64,
    },

    #[error("kernel Gram matrix is numerically singular: rank {rank} < {size}")]
    SingularGram { rank: usize, size: usize },

    #[error("degree {degree} leaves tail bound {bound:e} above tolerance {tolerance:e}")]
    Tail {
        degree: usize,
        bound: f64,
        tolerance: f64,
    },

    #[error("family is numerically rank deficient: rank {rank} < {columns}")]
    Rank { rank: usize, columns: usize },

    #[error("unknown example family `{0}`")]
    UnknownExample(String),

    #[error("{0} would overflow double precision")]
    OverflowRisk(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::Index(_) => "IndexError",
            Error::Dimension { .. } => "DimensionError",
            Error::NotSeparated { .. } => "SeparationError",
            Error::SingularGram { .. } => "SingularGram",
            Error::Tail { .. } => "TailError",
            Error::Rank { .. } => "RankError",
            Error::UnknownExample(_) => "UnknownExample",
            Error::OverflowRisk(_) => "OverflowRisk",
        }
    }
}
