use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid p-adic context: {0}")]
    InvalidContext(String),

    #[error("p-adic precision exhausted at {cap} digits; raise the precision cap")]
    PrecisionExhausted { cap: u32 },

    #[error("root is not simple modulo p (derivative vanishes at residue {residue})")]
    NonSimpleRoot { residue: String },

    #[error("seed {residue} is not a root of the polynomial modulo p")]
    NotARoot { residue: String },

    #[error("polynomial does not have p-integral coefficients")]
    NonIntegralPolynomial,

    #[error("scalars live in different quadratic extensions")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("group mismatch: expected {expected}, found {found}")]
    GroupMismatch { expected: String, found: String },

    #[error("unsupported generator: {0}")]
    UnsupportedGenerator(String),

    #[error("element is not Weyl-invariant")]
    NotInvariant,

    #[error("bad branch index {0} (expected 1..={1})")]
    BadBranch(u8, u8),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("missing data: {0}")]
    MissingData(String),

    #[error("difference {difference} has no divisor in the bad-prime set")]
    NoBadDivisor { difference: String },

    #[error("ambiguous branch: binomials of branches {0:?} vanish simultaneously")]
    AmbiguousBranch(Vec<u8>),

    #[error("not in the symmetric cube locus: quartic test fails at prime {prime}")]
    NotSym3 { prime: u64 },

    #[error("entry {entry} has a value that is not p-integral")]
    NonIntegralValue { entry: String },

    #[error("character values not representable exactly: {0}")]
    CharacterMode(String),

    #[error("schema violation at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

impl Error {
    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    /// Input-shape failures (as opposed to failures of a computation on valid input).
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Schema { .. } | Error::InvalidInput(_))
    }
}
