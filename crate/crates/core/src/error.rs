use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("characteristic {0} is not a supported prime")]
    InvalidField(u32),

    #[error("malformed quiver: {0}")]
    InvalidQuiver(String),

    #[error("relation {index} is not a valid path combination: {reason}")]
    InvalidRelation { index: usize, reason: String },

    #[error("relation {index} mixes path lengths {lengths:?}")]
    NonHomogeneousRelation { index: usize, lengths: Vec<usize> },

    #[error("relation {index} mixes paths with different endpoints")]
    NonParallelRelation { index: usize },

    #[error("paths of length {cap} survive the relations; the ideal is not admissible")]
    NotFiniteDimensional { cap: usize },

    #[error("representations over different algebras")]
    AlgebraMismatch,

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("{what}: {needed} exceeds budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("unknown corpus id {0:?}")]
    UnknownCorpusId(String),

    #[error("contradictory facts for {subject}: lower {lower} > upper {upper}\n  lower: {lower_chain}\n  upper: {upper_chain}")]
    ContradictoryFacts {
        subject: String,
        lower: u32,
        upper: u32,
        lower_chain: String,
        upper_chain: String,
    },

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

impl Error {
    pub fn budget(what: &'static str, needed: u128, budget: u128) -> Self {
        Error::BudgetExceeded { what, needed, budget }
    }
}
