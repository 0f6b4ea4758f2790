use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}")]
    Pole(String),
    #[error("derivative order cap exceeded")]
    OrderCap,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("p=1 excluded")]
    PEqualsOne,
    #[error("invalid parameter point: {0}")]
    InvalidPoint(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    #[error("peel factor {0} is not a factor of the seed")]
    PeelNotFactor(String),
    #[error("elimination pivot vanishes")]
    PivotVanishes,
    #[error("expression contains sqrt(17); evaluate it in the quadratic field instead")]
    IrrationalExpression,
    #[error("c1 must be nonpositive, got {0}")]
    PositiveC1(String),
    #[error("reduction failed: {0}")]
    Reduction(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
