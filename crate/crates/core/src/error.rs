use alloc::string::String;

/// Errors reported by the trifferent toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("block length must be positive")]
    EmptyBlockLength,
    #[error("invalid symbol {0:?}, expected one of '0', '1', '2'")]
    InvalidSymbol(char),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("arguments {0} and {1} are the same codeword")]
    EqualInputs(usize, usize),
    #[error("duplicate codeword {0}")]
    DuplicateCodeword(String),
    #[error("r = {r} is out of range for block length {n}")]
    RangeR { n: usize, r: usize },
    #[error("coordinate {index} is out of range for block length {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("code is not r-bounded for any r")]
    NotBounded,
    #[error("code is not {expected}-bounded")]
    WrongBound { expected: usize },
    #[error("code is not trifferent: codewords {0:?} have no separating coordinate")]
    NotTrifferent([usize; 3]),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("line {0} is not in the plane")]
    LineNotInPlane(usize),
    #[error("base code too small: need {needed} codewords, have {have}")]
    BaseTooSmall { needed: usize, have: usize },
    #[error("number of trials must be positive")]
    ZeroTrials,
    #[error("target size must be positive")]
    ZeroTarget,
    #[error("unsupported value r = {0}")]
    UnsupportedR(usize),
    #[error("universe of {size} candidates exceeds the cap of {cap}")]
    UniverseTooLarge { size: u128, cap: usize },
    #[error("arithmetic overflow")]
    Overflow,
    #[error("invalid parameter: {0}")]
    InvalidParameter(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
