use alloc::string::String;

/// Errors raised by the arithmetic kernels and the constructions built on them.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("insufficient valuation: needed {needed}, found {found}")]
    InsufficientValuation { needed: u32, found: u32 },

    #[error("insufficient valuation at step (m={m}, i={i}): needed {needed}, found {found}")]
    InsufficientValuationAt { m: usize, i: usize, needed: u32, found: u32 },

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("polynomial is not Eisenstein: {0}")]
    NotEisenstein(String),

    #[error("length {length} exceeds the cap {cap} of the universal-polynomial backend")]
    LengthCap { length: usize, cap: usize },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("inexact division by p: {0}")]
    InexactDivision(String),

    #[error("saturation did not stabilise within {0} rounds")]
    Unbounded(usize),

    #[error("incompatible operands: {0}")]
    Mismatch(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
