use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("element does not lie in the group")]
    ElementNotInGroup,

    #[error("not a subgroup of the given group")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("coset index {index} exceeds the cap {cap}")]
    IndexCapExceeded { index: String, cap: u64 },

    #[error("{what} ({actual}) exceeds the cap {cap}")]
    CapExceeded { what: &'static str, actual: String, cap: String },

    #[error("group is not uniserial")]
    NotUniserial,

    #[error("chief factor of order {0} could not be matched to a simple group")]
    UnrecognizedSimpleType(String),

    #[error("the subgroup is not the unique minimal normal subgroup")]
    NotUniqueMinimalNormal,

    #[error("quotient by N is not generated by the given number of elements")]
    QuotientNotGenerated,

    #[error("projections fall into different cases")]
    CaseInconsistency,

    #[error("top group does not act transitively")]
    NotTransitive,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("no admissible prime: {0}")]
    NoSuchPrime(String),

    #[error("search failed: {0}")]
    SearchFailed(String),

    #[error("center is not cyclic of prime order")]
    BadCenter,

    #[error("module is not uniserial")]
    NotUniserialModule,

    #[error("descriptor is not in normal form: {0}")]
    UnnormalizedDescriptor(String),

    #[error("unknown sporadic group: {0}")]
    UnknownSporadic(String),

    #[error("not a finite simple group: {0}")]
    NotSimple(String),

    #[error("order {0} lies outside the lookup table")]
    OutsideTable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("corpus file {0} failed its checksum")]
    Checksum(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn cap_exceeded(what: &'static str, actual: impl ToString, cap: impl ToString) -> Error {
    Error::CapExceeded { what, actual: actual.to_string(), cap: cap.to_string() }
}
