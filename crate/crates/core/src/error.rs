use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expression has Grassmann support and cannot be evaluated numerically: {0}")]
    GrassmannSupport(String),
    #[error("missing numeric value for variable `{0}`")]
    MissingValue(String),
    #[error("denominator is not even with a nonzero body: {0}")]
    NonInvertible(String),
    #[error("division by a zero fraction")]
    DivisionByZero,
    #[error("logarithmic derivative of order zero is not representable")]
    ZeroOrderLog,
    #[error("time derivatives not covered by any flow rule: {0}")]
    IrreducibleTimeJets(String),
    #[error("invalid flow rule: {0}")]
    InvalidRule(String),
    #[error("on-shell reduction did not terminate after {0} substitutions")]
    ReductionLimit(usize),
    #[error("polynomial system has no solution")]
    NoSolution,
    #[error("polynomial system is not zero-dimensional (free unknowns: {0})")]
    NotUnique(String),
    #[error("polynomial system has roots outside the Gaussian rationals: {0}")]
    NonRationalRoots(String),
    #[error("2-soliton wave numbers sum to zero")]
    DegenerateWaveNumbers,
    #[error("imaginary residue {value:e} at x={x}, t={t}")]
    ImaginaryResidue { x: f64, t: f64, value: f64 },
    #[error("denominator magnitude {value:e} below floor at x={x}, t={t}")]
    Singularity { x: f64, t: f64, value: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
