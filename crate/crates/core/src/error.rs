use thiserror::Error;

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("invalid float tolerance {0}")]
    InvalidTolerance(f64),

    #[error("cannot parse {input:?} as an element of {field}: {reason}")]
    ParseElement {
        input: String,
        field: Field,
        reason: String,
    },

    #[error("total mass is zero, no center of mass exists")]
    NoCenter,

    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u64),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("bilinear form is not symmetric")]
    NotSymmetric,

    #[error("quadratic polynomial has zero leading mass, no critical point")]
    NoCriticalPoint,

    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
