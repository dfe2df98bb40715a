use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("window has wrong arity or period < 2 (n = {n}, got {got} entries)")]
    BadArity { n: usize, got: usize },

    #[error("window entries collide mod {n}: {a} and {b}")]
    DistinctResidueViolation { n: usize, a: i64, b: i64 },

    #[error("window sum is {got}, expected {expected}")]
    WindowSumViolation { expected: i64, got: i64 },

    #[error("operands have different periods: {0} vs {1}")]
    PeriodMismatch(usize, usize),

    #[error("element budget exceeded (cap = {0})")]
    CapacityExceeded(usize),

    #[error("elements are not comparable in Bruhat order")]
    NotComparable,

    #[error("indices do not form an occurrence of the pattern")]
    NotAnOccurrence,

    #[error("operation undefined on the identity")]
    IdentityInput,

    #[error("no factoring subword on this permutation")]
    NoFactoringSubword,

    #[error("permutation contains a forbidden pattern: {0}")]
    PatternPresent(&'static str),

    #[error("element is not a minimal-length coset representative")]
    NotMinimalRep,

    #[error("invalid arguments: {0}")]
    InvalidArgs(String),

    #[error("position {0} is not a strict prefix maximum")]
    BadBeta(i64),

    #[error("chain precondition violated for pair ({0}, {1})")]
    PreconditionViolated(i64, i64),

    #[error("input is a twisted spiral permutation")]
    SpiralInput,

    #[error("witness search exhausted without a verified certificate")]
    WitnessNotFound,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
