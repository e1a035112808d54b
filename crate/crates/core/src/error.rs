use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point {0} lies outside the convergence region ({1})")]
    Domain(String, &'static str),
    #[error("{nterms} terms are not enough at this point (need at least {required})")]
    InsufficientTerms { nterms: usize, required: usize },
    #[error("precision must be at least {min} bits, got {got}")]
    Precision { min: u32, got: u32 },
    #[error("series constant term must be {expected}")]
    ConstantTerm { expected: &'static str },
    #[error("series has a vanishing linear coefficient")]
    NotInvertible,
    #[error("division by a vanishing value: {0}")]
    Vanishing(&'static str),
    #[error("invalid continuation path: {0}")]
    Path(String),
    #[error("step size underflow at {0}")]
    StepUnderflow(String),
    #[error("precision exhausted: error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    PrecisionExhausted { estimate: f64, tolerance: f64 },
    #[error("invalid quiver: {0}")]
    Quiver(String),
    #[error("invalid representation: {0}")]
    Representation(String),
    #[error("unsupported representation shape: {0}")]
    Unsupported(String),
    #[error("zero central charge on {0}")]
    ZeroCharge(String),
    #[error("phase lift infeasible: {0}")]
    LiftInfeasible(String),
    #[error("condition (2) violated on {0} arrow pair(s)")]
    Condition2(usize),
    #[error("tilting hypothesis fails: {0}")]
    TiltHypothesis(String),
    #[error("stability data live on different quivers")]
    QuiverMismatch,
    #[error("levels must be distinct modulo 5: {0:?}")]
    RepeatedResidues([i64; 4]),
    #[error("non-integral instanton number at degree {degree} (residual {residual:e})")]
    NonIntegral { degree: usize, residual: f64 },
    #[error("requested order {requested} exceeds supported maximum {max}")]
    OrderTooLarge { requested: usize, max: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("parse error: {0}")]
    Parse(String),
}
