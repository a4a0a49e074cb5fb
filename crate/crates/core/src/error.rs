use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} is outside [1, 12]")]
    DegreeOutOfRange(u32),
    #[error("field of size {size} exceeds the cap {cap}")]
    FieldTooLarge { size: u64, cap: u64 },
    #[error("element encoding {value} is not below the field size {q}")]
    ElementOutOfRange { value: u64, q: u32 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("cannot embed F_{from} into F_{target}: degree does not divide")]
    NotSubfield { from: u32, target: u32 },
    #[error("internal error: {0}")]
    Internal(String),
    #[error("lcm range must start at 1 or more, got {0}")]
    LcmRange(u64),
    #[error("lcm(2..={0}) overflows")]
    LcmOverflow(u64),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("need at least 2 points and matching lengths, got {xs} and {ys}")]
    DeltaArity { xs: usize, ys: usize },
    #[error("{value} is not a power of the characteristic {p}")]
    NotCharPower { value: u64, p: u32 },
    #[error("{0} is not univariate in a single variable")]
    NotUnivariate(String),
    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),
    #[error("size condition fails: q = {q} must exceed max{{{b1}, {b2}, {b3}}} = {max}")]
    SizeCondition {
        q: u64,
        b1: u64,
        b2: u64,
        b3: u64,
        max: u64,
    },
    #[error("{what} needs |F| <= {cap}, got {q}")]
    CapExceeded { what: &'static str, q: u32, cap: u32 },
    #[error("girth engines disagree: bfs says {bfs:?}, delta says {delta:?}")]
    EngineDisagreement { bfs: Option<u32>, delta: Option<u32> },
    #[error("invalid isomorphism parameter: {0}")]
    InvalidIsoParam(String),
    #[error("chain step does not compose: {0}")]
    ChainMismatch(String),
    #[error("witness does not match instance: {0}")]
    WitnessMismatch(String),
    #[error("walk is not closed")]
    NotClosed,
    #[error("pulled-back walk is not a cycle of the source graph: {0}")]
    PullbackInvalid(String),
    #[error("chain failed verification")]
    Unverified,
    #[error("i/o error: {0}")]
    Io(String),
    #[error("job file: {0}")]
    Job(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
