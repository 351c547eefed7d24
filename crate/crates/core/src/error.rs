use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown datum key `{0}`")]
    UnknownKey(String),
    #[error("lattice choice incompatible with type: {0}")]
    IncompatibleLattice(String),
    #[error("invalid root datum: {0}")]
    InvalidDatum(String),
    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("objects belong to different data")]
    DatumMismatch,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("index {index} out of range at position {pos}")]
    IndexOutOfRange { pos: usize, index: usize },
    #[error("translation arity mismatch at position {pos}: expected {expected}, found {found}")]
    Arity {
        pos: usize,
        expected: usize,
        found: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("root subset is not of Levi type")]
    NotLevi,
    #[error("cocharacter {0} is not minuscule")]
    NotMinuscule(String),
    #[error("datum `{0}` is not of rank 2")]
    NotRank2(String),
    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),
    #[error("cost guard exceeded: {0}")]
    CostGuard(String),
    #[error("factorization and Levi criteria disagree on {0}")]
    CriteriaDisagree(String),
    #[error("no reduction certificate found for {0}")]
    CertificateExhausted(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
