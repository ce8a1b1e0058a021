use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid sign pattern `{0}`")]
    InvalidPattern(String),

    #[error("invalid order of moduli `{0}`")]
    InvalidOrder(String),

    #[error("invalid uvector `{0}`")]
    InvalidUVector(String),

    #[error("length mismatch: pattern has degree {pattern}, order has length {order}")]
    LengthMismatch { pattern: usize, order: usize },

    #[error("order of moduli {0} is not rigid")]
    NotRigid(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),

    #[error("invalid root configuration: {0}")]
    InvalidRoots(String),

    #[error("vanishing coefficient at x^{index}")]
    VanishingCoefficient { index: usize },

    #[error("tie between root moduli: {}", .pairs.join(", "))]
    TiedModuli { pairs: Vec<String> },

    #[error("epsilon must satisfy 0 < eps < 1, got {0}")]
    InvalidEpsilon(String),

    #[error("couple ({pattern}, {order}) is not compatible")]
    Incompatible { pattern: String, order: String },

    #[error("epsilon underflow after {0} halvings")]
    EpsilonUnderflow(u32),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),

    #[error("witness does not validate: {0}")]
    InvalidWitness(String),

    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),

    #[error("malformed record at line {line}: {reason}")]
    MalformedRecord { line: usize, reason: String },

    #[error("certificate rejected: {0}")]
    InvalidCertificate(String),

    #[error("contradiction: {0} has both a witness and a non-realizability certificate")]
    Contradiction(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
