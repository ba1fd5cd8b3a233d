use thiserror::Error;

use crate::exact::Rat;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot add quantities of different pi grades ({left} vs {right})")]
    PiGradeMismatch { left: i32, right: i32 },

    #[error("target degree {target} is below polynomial degree {degree}")]
    HomogenizeDegree { target: u32, degree: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error("class is outside the Kähler cone: {0}")]
    ConeViolation(String),

    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("second-moment form is degenerate (AB - C^2 = 0)")]
    DegenerateMoments,

    #[error("class square or c1-degree is not positive")]
    NonPositiveSquare,

    #[error("lattice dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("parameter {name} = {value} is out of range")]
    OutOfRange { name: &'static str, value: Rat },

    #[error("certificate `{statement}` not verified: {reason}")]
    NotVerified { statement: String, reason: String },

    #[error("spot check failed for {statement} at {point}")]
    AssertionFailure { statement: String, point: String },

    #[error("no sign change on [{lo}, {hi}]")]
    SameSign { lo: Rat, hi: Rat },

    #[error("denominator vanishes or changes sign at {0}")]
    DenominatorVanishes(Rat),

    #[error("bracketing failed: {0}")]
    BracketFailure(String),

    #[error("bisection did not reach tolerance within {0} iterations")]
    ToleranceTooSmall(usize),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Fixture(e.to_string())
    }
}
