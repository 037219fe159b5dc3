use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("bad characteristic: {0}")]
    BadCharacteristic(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid root system type {0}{1}")]
    InvalidType(String, usize),
    #[error("invalid simple-root subset: {0}")]
    InvalidSubset(String),
    #[error("grading too wide (level {0})")]
    TooWideGrading(i64),
    #[error("element is not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFails(usize, usize, usize),
    #[error("bracket is not antisymmetric on ({0}, {1})")]
    NotAntisymmetric(usize, usize),
    #[error("grading is not compatible with the bracket on ({0}, {1})")]
    GradingMismatch(usize, usize),
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("not unital: {0}")]
    NotUnital(String),
    #[error("structurable identity fails on basis tuple {0:?}")]
    StructIdFails(Vec<usize>),
    #[error("[T_z, V_(x,y)] identity fails on basis tuple {0:?}")]
    EqDefFails(Vec<usize>),
    #[error("Kantor pair is empty (degree +-1 components vanish)")]
    EmptyPair,
    #[error("grading derivation is not an element of the algebra")]
    OuterZeta,
    #[error("vector is not in the expected subspace: {0}")]
    NotInSubspace(String),
    #[error("ideal check failed: {0}")]
    NotAnIdeal(String),
    #[error("bad partition: {0}")]
    BadMultiplicity(String),
    #[error("unsupported weighted diagram: {0}")]
    UnsupportedWeights(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
