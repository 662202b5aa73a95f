use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },

    #[error("cannot parse root system type {0:?}")]
    ParseType(String),

    #[error("not a closed subsystem: {0}")]
    NotClosed(String),

    #[error("Cartan matrix is not of finite type: {0}")]
    UnknownCartan(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("element is not nilpotent")]
    NotNilpotent,

    #[error("no sl(2)-triple with semisimple part in the Cartan subalgebra: {0}")]
    NoTriple(String),

    #[error("weighted Dynkin diagram {0:?} has an entry outside {{0,1,2}}")]
    BadDiagram(Vec<i64>),

    #[error("no catalog orbit has diagram {0:?}")]
    UnknownOrbit(Vec<i64>),

    #[error("generic representative not found: {0}")]
    Genericity(String),

    #[error("reductive rank did not stabilize: {0}")]
    RankUnstable(String),

    #[error("not a diagram automorphism: {0}")]
    NotAutomorphism(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("unknown embedding {0:?}")]
    UnknownEmbedding(String),

    #[error("unknown orbit label {0:?}")]
    UnknownLabel(String),

    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
