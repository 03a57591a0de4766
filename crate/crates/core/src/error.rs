use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {0} is not a prime in [2, 65536)")]
    NotPrime(u32),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),

    #[error("qudit count mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("qudit index {index} out of range for {n} qudits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("dense oracle needs a {size}x{size} matrix, above the bound {bound}")]
    OracleBound { size: usize, bound: usize },

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("{0} is not an observable: its D-th power is not the identity")]
    NotObservable(String),

    #[error("forced outcome {forced} contradicts deterministic outcome {deterministic}")]
    OutcomeContradiction { forced: u32, deterministic: u32 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid check assignment: {0}")]
    InvalidChecks(String),

    #[error("check conditions violated: {0}")]
    ConditionsViolated(String),

    #[error("round {0} is still inside the initialization rounds")]
    Initialization(usize),

    #[error("loop {0} is homologically trivial")]
    TrivialLoop(String),

    #[error("exponent recursion on loop {loop_name} does not close (wrap-around ratio {ratio})")]
    WrapAround { loop_name: String, ratio: u32 },

    #[error("operators commute, cannot form a conjugate pair")]
    CommutingPair,

    #[error("plaquette {0} is not formed in the tracked group")]
    UnformedPlaquette(usize),

    #[error("{0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
