//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by field construction, the algebraic operations and the
/// analysis engines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field degree {n} outside the supported range 2..=24")]
    DegreeOutOfRange { n: u32 },
    #[error("modulus {modulus:#x} has degree {got}, expected exactly {expected}")]
    ModulusDegreeMismatch { modulus: u64, expected: u32, got: u32 },
    #[error("polynomial {modulus:#x} is not irreducible over GF(2)")]
    NotIrreducible { modulus: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires an even field degree, got n = {n}")]
    OddDegreeField { n: u32 },
    #[error("zero input where a nonzero field element is required")]
    ZeroInput,
    #[error("k = {k} is not a subfield degree of n = {n}")]
    NotASubfieldDegree { k: u32, n: u32 },
    #[error("input is not an e-th power for e = {e}")]
    NotAnEthPower { e: u64 },
    #[error("expected a non-cube, got a cube")]
    CubeInput,
    #[error("element encoding {raw:#x} does not fit in a degree-{n} field")]
    ElementOutOfRange { raw: u64, n: u32 },
    #[error("not a valid element hex encoding: {input:?}")]
    InvalidElementHex { input: String },
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
    #[error("shifted polynomial has no linear term; cannot normalize")]
    DegenerateLinearPart,
    #[error("coefficient search exhausted without finding a valid pair")]
    SearchExhausted,
    #[error("coefficient identity is not satisfied")]
    IdentityViolated,
    #[error("norm condition (gamma and beta must differ in their (2^k-1)-th powers) violated")]
    NormConditionViolated,
    #[error("delta lies in the half-degree subfield and must not")]
    DeltaInSubfield,
    #[error("element does not have multiplicative order 3")]
    NotOrderThree,
    #[error("function is not quadratic: derivative map failed the additivity check")]
    NotQuadratic,
    #[error("input size n = {n} exceeds the supported limit {max} for this operation")]
    TooLarge { n: u32, max: u32 },
    #[error("table length {len} is not a power of two in the supported range")]
    LengthNotPowerOfTwo { len: usize },
    #[error("malformed hex entry at line {line}: {detail}")]
    MalformedHex { line: usize, detail: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable machine-readable tag for one error variant, used in CLI error
    /// reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            Error::ModulusDegreeMismatch { .. } => "ModulusDegreeMismatch",
            Error::NotIrreducible { .. } => "NotIrreducible",
            Error::DivisionByZero => "DivisionByZero",
            Error::OddDegreeField { .. } => "OddDegreeField",
            Error::ZeroInput => "ZeroInput",
            Error::NotASubfieldDegree { .. } => "NotASubfieldDegree",
            Error::NotAnEthPower { .. } => "NotAnEthPower",
            Error::CubeInput => "CubeInput",
            Error::ElementOutOfRange { .. } => "ElementOutOfRange",
            Error::InvalidElementHex { .. } => "InvalidElementHex",
            Error::InvariantViolation(_) => "InvariantViolation",
            Error::DegenerateLinearPart => "DegenerateLinearPart",
            Error::SearchExhausted => "SearchExhausted",
            Error::IdentityViolated => "IdentityViolated",
            Error::NormConditionViolated => "NormConditionViolated",
            Error::DeltaInSubfield => "DeltaInSubfield",
            Error::NotOrderThree => "NotOrderThree",
            Error::NotQuadratic => "NotQuadratic",
            Error::TooLarge { .. } => "TooLarge",
            Error::LengthNotPowerOfTwo { .. } => "LengthNotPowerOfTwo",
            Error::MalformedHex { .. } => "MalformedHex",
            Error::Precondition(_) => "Precondition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
