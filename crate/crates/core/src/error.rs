use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("evaluation point does not assign every occurring variable")]
    UnassignedVariable,
    #[error("function mentions variables outside the cone parameters: {0}")]
    WrongParameterSet(String),
    #[error("partitions have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("box ({row},{col}) lies outside the shape")]
    BoxOutsideShape { row: usize, col: usize },
    #[error("shape has {rows} rows but only {n} values are allowed")]
    TooManyRows { rows: usize, n: usize },
    #[error("skew shape is not a horizontal strip")]
    NotHorizontalStrip,
    #[error("size {size} outside the range 0..={max}")]
    SizeOutOfRange { size: usize, max: usize },
    #[error("{0} does not cover {1}")]
    NotACover(String, String),
    #[error("interpolation system is singular")]
    SingularSystem,
    #[error("independent routes disagree: {0}")]
    RouteMismatch(String),
    #[error("part {part} exceeds n = {n}")]
    PartTooLarge { part: u32, n: usize },
    #[error("equal norms along a chain at {0}")]
    DegenerateNorm(String),
    #[error("cannot parse {what}: {input}")]
    Parse { what: &'static str, input: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
