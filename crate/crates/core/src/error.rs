//! Error type shared across the library.

use crate::step::Side;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field size q = {q} exceeds the table limit {limit}")]
    TableLimit { q: u64, limit: u64 },

    #[error("polynomial is not monic of degree {degree} with coefficients below {p}")]
    BadPolynomial { degree: u32, p: u64 },

    #[error("polynomial is reducible over GF({p})")]
    Reducible { p: u64 },

    #[error("field axiom check failed: {0}")]
    AxiomFailure(&'static str),

    #[error("digit exponent {exp} outside the precision window [{lo}, {hi}]")]
    PrecisionOverflow { exp: i64, lo: i32, hi: i32 },

    #[error("digit value {digit} does not lie in 0..{q}")]
    BadDigit { digit: u64, q: u64 },

    #[error("grid of {size} cells exceeds the configured limit {limit}")]
    GridLimit { size: u128, limit: u64 },

    #[error("resolution {resolution} with support bound {support} leaves no valid grid")]
    InvalidWindow { resolution: i32, support: i32 },

    #[error("term at level {level} is finer than the declared resolution {resolution}")]
    TermTooFine { level: i32, resolution: i32 },

    #[error("term escapes the declared support bound {support}")]
    TermOutsideSupport { support: i32 },

    #[error("operands belong to different field configurations")]
    ParamsMismatch,

    #[error("expected a {expected:?}-side function, found {found:?}")]
    SideMismatch { expected: Side, found: Side },

    #[error("operation requires a nonzero function")]
    ZeroFunction,

    #[error("exponent must be positive, got {0}")]
    NonpositiveExponent(f64),

    #[error("function support is not contained in the ball of level {level}")]
    SupportViolation { level: i32 },

    #[error("centers and coefficients differ in length ({centers} vs {coeffs})")]
    LengthMismatch { centers: usize, coeffs: usize },

    #[error("centers at index {a} and {b} share a level-{level} coset")]
    CentersCollide { a: usize, b: usize, level: i32 },

    #[error("translated pieces overlap; localization requires disjoint supports")]
    OverlappingPieces,

    #[error("block {index} carries frequency mass outside its band")]
    BandViolation { index: usize },

    #[error("dilation step must be at least 1, got {0}")]
    BadDilationStep(i32),

    #[error("parse error at byte {offset}: {msg}")]
    Parse { offset: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
