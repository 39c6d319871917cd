use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series order caps differ: {0}/2 vs {1}/2")]
    CapMismatch(i64, i64),

    #[error("series is not invertible: constant term is zero")]
    NonUnitSeries,

    #[error("series has terms below q^0 and cannot be inverted")]
    NegativeOrderSeries,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid Frobenius coordinates: {0}")]
    InvalidFrobenius(String),

    #[error("not a plane partition at row {row}, column {col}")]
    InvalidPlanePartition { row: usize, col: usize },

    #[error("parse error at row {row}, column {col}: {msg}")]
    PlanePartitionParse { row: usize, col: usize, msg: String },

    #[error("slice chain fails interlacing at offset {0}")]
    NotInterlacing(usize),

    #[error("plane partition is not diagonally strict")]
    NotDiagonallyStrict,

    #[error("enumeration weight {0} exceeds configured cap {1}")]
    OracleCapExceeded(u32, u32),

    #[error("H_0 is the charge operator and is rejected on the charge-0 sector")]
    ChargeOperator,

    #[error("lambda index must be odd, got {0}")]
    EvenLambdaIndex(i64),

    #[error("grading pair a={0}/2, b={1}/2 does not expand convergently (need b > a and b > 0)")]
    NonConvergentGradings(i64, i64),
}

pub type Result<T> = std::result::Result<T, Error>;
