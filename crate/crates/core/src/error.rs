use thiserror::Error;

use crate::sign::SignVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("not a category O datum: {0}")]
    NotACategoryODatum(String),
    #[error("chamber {0} is infeasible")]
    InfeasibleChamber(SignVector),
    #[error("optimum of the mass parameter over chamber {0} is not a unique vertex")]
    DegenerateOptimum(SignVector),
    #[error("quotient did not vanish by degree cap {cap}")]
    NonTerminating { cap: usize },
    #[error("local quotient dimension did not stabilize by truncation order {cap}")]
    NoStabilization { cap: usize },
    #[error("unknown simple label {0}")]
    UnknownLabel(SignVector),
    #[error("resolution did not terminate within {bound} steps")]
    LengthExceeded { bound: usize },
    #[error("algebra is not generated in degrees 0 and 1 (degree-2 defect {defect})")]
    NotQuadraticallyGenerated { defect: usize },
    #[error("direction is not generic: tie along an edge")]
    NonGenericDirection,
    #[error("arrangement has dimension {0}; plotting supports at most 2")]
    DimensionTooHigh(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
