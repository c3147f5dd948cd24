use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("defining polynomial is reducible: divisible by a degree-{factor_degree} factor")]
    ReduciblePolynomial { factor_degree: usize },
    #[error("defining polynomial is not monic of degree >= 1")]
    NonMonicPolynomial,
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("product degree {got} exceeds the polynomial-mode cap {cap}")]
    DegreeCapExceeded { got: usize, cap: usize },
    #[error("element or subspace does not belong to this tower")]
    TowerMismatch,
    #[error("operation requires a finite extension, not polynomial mode")]
    UnsupportedInTranscendentalMode,
    #[error("operands live in different ambient spaces")]
    AmbientMismatch,
    #[error("subspace is not invariant under the given subfield")]
    NotKInvariant,
    #[error("truncation degree {0} is too small (need at least 3)")]
    TruncationTooSmall(usize),
    #[error("first centraliser line must be the line spanned by y")]
    BadFirstLine,
    #[error("expected {expected} centraliser lines, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("centraliser line coordinates are both zero")]
    ZeroLine,
    #[error("bracket of degrees {u} and {v} exceeds the truncation {n}")]
    DegreeOverflow { u: usize, v: usize, n: usize },
    #[error("degree {got} out of range [{lo}, {hi}]")]
    DegreeOutOfRange { got: usize, lo: usize, hi: usize },
    #[error("adjoint constants vanish in degree {0}; the algebra is not of maximal class")]
    DegenerateAdjoint(usize),
    #[error("generating space does not span the degree-1 component over the extension field")]
    GeneratingSpaceTooSmall,
    #[error("algebra must be validated before analysis")]
    NotValidated,
    #[error("element is zero")]
    ZeroElement,
    #[error("trace of degree {0} would exceed the truncation {1}")]
    TruncationExceeded(usize, usize),
    #[error("degree {0} is too small (need at least 2)")]
    DegreeTooSmall(usize),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("malformed input at `{field}`: {message}")]
    MalformedInput { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
