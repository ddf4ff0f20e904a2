use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group order {0}")]
    InvalidOrder(usize),
    #[error("group axiom violated: {0}")]
    GroupAxiom(String),
    #[error("{0} is not prime")]
    InvalidPrime(u64),
    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("invalid modulus {0} (need n >= 2)")]
    InvalidModulus(u64),
    #[error("arity error: {0}")]
    Arity(String),
    #[error("ring axiom violated: {0}")]
    RingAxiom(String),
    #[error("invalid grading: {axiom} (witness {witness})")]
    GradingInvalid { axiom: String, witness: String },
    #[error("grading group mismatch: {0}")]
    GroupMismatch(String),
    #[error("element {0} is not homogeneous")]
    NotHomogeneous(u32),
    #[error("ideal generated is the whole ring")]
    ImproperIdeal,
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),
    #[error("invalid bimodule: {0}")]
    InvalidBimodule(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: unresolved name `{name}`")]
    Unresolved { line: usize, col: usize, name: String },
    #[error("{line}:{col}: {msg}")]
    TypeMismatch { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: {source}")]
    Located { line: usize, col: usize, source: Box<Error> },
}
