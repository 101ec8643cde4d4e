//! Shared error type for the algebra kernel.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AlgebraError {
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("characteristic mismatch: expected {expected}, found {found}")]
    CharacteristicMismatch { expected: u64, found: u64 },

    #[error("operation requires positive characteristic, ring has characteristic 0")]
    RequiresPositiveCharacteristic,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("division by zero in the coefficient field")]
    DivisionByZero,

    #[error("resource budget exhausted: {0}")]
    Budget(String),

    #[error("relations are not a proper ideal: 1 lies in the relation ideal")]
    ImproperRelations,

    #[error("homomorphism images incomplete: expected {expected}, found {found}")]
    HomImageCount { expected: usize, found: usize },

    #[error("relation `{relation}` maps to nonzero normal form `{normal_form}`")]
    HomRelationNotPreserved { relation: String, normal_form: String },

    #[error("change of variables is not mutually inverse: {0}")]
    InvalidChangeOfVars(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl AlgebraError {
    /// True for failures that mean "ran out of configured budget" rather than
    /// a mathematical or input error.
    pub fn is_resource(&self) -> bool {
        matches!(self, AlgebraError::Budget(_))
    }
}
