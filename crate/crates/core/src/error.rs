use thiserror::Error;

use crate::partition::Cell;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid surface parameters: {0}")]
    InvalidParams(String),
    #[error("invalid Chern data: {0}")]
    InvalidChern(String),
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),
    #[error("cell (column {}, row {}) is not in the diagram", .0.column, .0.row)]
    CellOutside(Cell),
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("fixed-point datum rejected: {0}")]
    InvalidDatum(String),
    #[error("q-binomial [{r} {k}] requires 0 <= k <= r")]
    QBinomialRange { r: i64, k: i64 },
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("series error: {0}")]
    Series(String),
}

pub type Result<T> = std::result::Result<T, Error>;
