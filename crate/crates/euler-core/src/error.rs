//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by ring construction, ideal computations, and the
/// geometric constructions built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("coefficient fields of characteristic two are not supported")]
    CharacteristicTwo,
    #[error("modulus {0} is not an odd prime below 2^31")]
    NonPrimeModulus(u64),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands belong to different rings or coefficient fields")]
    RingMismatch,
    #[error("expected {expected} entries, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("denominator is zero or has no inverse in the coefficient field")]
    NonInvertible,
    #[error("quadric equation violated; residual {residual}")]
    EquationViolated { residual: String },
    #[error("element is not a member of the ideal")]
    NotMember,
    #[error("ideals are not comaximal")]
    NotComaximal,
    #[error("representatives do not generate the ideal modulo its square")]
    NotOriented,
    #[error("representatives do not generate the ideal exactly")]
    NotCompleteIntersection,
    #[error("ideal height {found} is below the required {required}")]
    HeightViolation { required: usize, found: usize },
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("moving search failed after {attempts} attempts: {last}")]
    MoveFailed { attempts: usize, last: String },
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("ring dimension {dimension} exceeds the bound {bound} for this operation")]
    RangeViolation { dimension: usize, bound: usize },
    #[error("unsupported dimension parameter {0}")]
    UnsupportedN(usize),
    #[error("row is not unimodular")]
    NotUnimodular,
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
