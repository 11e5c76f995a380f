use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    #[error(
        "ideal is not admissible within bound: paths of length {0} survive on a cyclic quiver"
    )]
    NotAdmissible(usize),

    #[error("relation {index} is violated; residual matrix {residual}")]
    RelationViolated { index: usize, residual: String },

    #[error("modules live over different algebras")]
    AlgebraMismatch,

    #[error("not multiplicity free: summands {0} and {1} are isomorphic")]
    NotMultiplicityFree(usize, usize),

    #[error("Hall condition fails on index set {0:?}")]
    HallViolation(Vec<usize>),

    #[error("no extension in this direction: Ext^1 vanishes")]
    NoExtension,

    #[error("not a homomorphism between the expected modules: {0}")]
    BadMorphism(String),

    #[error(
        "endomorphism ring has a semisimple quotient that could not be split over the rationals"
    )]
    UndecidableOverQ,

    #[error("family of size {0} exceeds the enumeration limit {1}")]
    TooLarge(usize, usize),

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("zero module")]
    ZeroModule,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("corpus: {0}")]
    Corpus(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
