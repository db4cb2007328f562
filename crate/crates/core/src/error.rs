use alloc::string::String;

use crate::algebra::VarId;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("variable {0} bound to zero but occurs with a negative exponent")]
    ZeroSubstitutionIntoNegativePower(VarId),
    #[error("denominator evaluates to zero")]
    ZeroDenominator,
    #[error("expansion point is a pole in {0}")]
    NonUnitDenominator(VarId),
    #[error("term count {terms} exceeds the configured limit of {limit}")]
    ResourceLimit { terms: usize, limit: usize },
    #[error("ramified place: (E/v) = 0 is not supported")]
    RamifiedPlace,
    #[error("operation requires the {expected} case")]
    WrongCase { expected: &'static str },
    #[error("degenerate split parameter: nu(Pi_1)^2 = omega")]
    DegenerateSplitParameter,
    #[error("split place requires a value for nu(Pi_1)")]
    MissingSplitParameter,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("{0} is not the square of a rational number")]
    NotASquare(String),
    #[error("omega has no recorded square root for this parameter set")]
    MissingSquareRoot,
    #[error("expected a unit (a single nonzero term), got {0}")]
    NotAUnit(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}
