use std::fmt;

use thiserror::Error;

/// Which side of the admissibility inequality failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateViolation {
    /// `(1/n) sum 1/s_i <= 1/alpha` is false.
    Lower { mean_inv_s: f64, inv_alpha: f64 },
    /// `1/alpha <= (1/n) sum 1/p_i` is false.
    Upper { inv_alpha: f64, mean_inv_p: f64 },
}

impl fmt::Display for GateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateViolation::Lower { mean_inv_s, inv_alpha } => {
                write!(f, "(1/n)sum 1/s_i <= 1/alpha fails: {mean_inv_s} > {inv_alpha}")
            }
            GateViolation::Upper { inv_alpha, mean_inv_p } => {
                write!(f, "1/alpha <= (1/n)sum 1/p_i fails: {inv_alpha} > {mean_inv_p}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid dimension {0} outside 1..=3")]
    Dimension(usize),
    #[error("degenerate axis {0}")]
    DegenerateAxis(usize),
    #[error("cell budget exceeded: {cells} > {budget}")]
    Budget { cells: usize, budget: usize },
    #[error("sample count {got} does not match grid size {expected}")]
    Length { expected: usize, got: usize },
    #[error("non-finite sample at cell {0}")]
    NonFinite(usize),
    #[error("grid mismatch")]
    GridMismatch,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("singular midpoint at cell {0}")]
    SingularMidpoint(usize),
    #[error("field `{0}` is complex-valued")]
    ComplexField(&'static str),
    #[error("exponent {0} outside [1, inf]")]
    Exponent(f64),
    #[error("expected {expected} exponents, got {got}")]
    ExponentArity { expected: usize, got: usize },
    #[error("lattice entry {0} is negative or non-finite")]
    NegativeEntry(f64),
    #[error("radius {r} does not tile axis {axis} (spacing {h})")]
    NonTiling { r: f64, axis: usize, h: f64 },
    #[error("index gate violated: {0}")]
    IndexGate(GateViolation),
    #[error("box too small: support within {margin} of the boundary, window radius {radius}")]
    BoxTooSmall { margin: f64, radius: f64 },
    #[error("invalid radius sweep: {0}")]
    Sweep(String),
    #[error("gamma {gamma} outside (0, {n})")]
    Gamma { gamma: f64, n: usize },
    #[error("non-dyadic scale {0}")]
    NonDyadic(f64),
    #[error("empty window")]
    EmptyWindow,
    #[error("empty family")]
    EmptyFamily,
    #[error("zero function")]
    ZeroFunction,
    #[error("block {index} has norm {norm} > 1")]
    BlockNormExceeded { index: usize, norm: f64 },
    #[error("empty decomposition")]
    EmptyDecomposition,
    #[error("incompatible scale: {0}")]
    IncompatibleScale(String),
    #[error("quadrature failed: {0}")]
    Quadrature(String),
    #[error("chain exits the box")]
    ChainOutside,
    #[error("tail allowance {0:.4} exceeds 20%")]
    TailTooLarge(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Config(e.to_string())
    }
}

impl From<toml::de::Error> for Error {
    fn from(e: toml::de::Error) -> Self {
        Error::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
