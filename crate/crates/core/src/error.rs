use thiserror::Error;

use crate::qlaurent::LaurentPoly;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("unsupported root system {series}{rank}")]
    UnsupportedSeries { series: char, rank: usize },

    #[error("coweight {coords:?} is not positive (all coordinates must be >= 0)")]
    NotPositive { coords: Vec<i64> },

    #[error("coweight {coords:?} has length {got}, expected rank {expected}")]
    RankMismatch {
        coords: Vec<i64>,
        got: usize,
        expected: usize,
    },

    #[error("quotient coweights live over different index sets: {left:?} vs {right:?}")]
    IndexMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("Levi vertex {vertex} is out of range for rank {rank}")]
    LeviOutOfRange { vertex: usize, rank: usize },

    #[error("Levi subsystem requires a nonempty vertex set")]
    EmptyLevi,

    #[error("coweight {coords:?} has height {height} above the series bound {bound}; rebuild the series with a larger bound")]
    HeightExceeded {
        coords: Vec<i64>,
        height: i64,
        bound: u32,
    },

    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),

    #[error("identity check failed at theta {theta:?}: kostant = {kostant}, series = {series}, oracle = {oracle}")]
    VerificationMismatch {
        theta: Vec<i64>,
        kostant: LaurentPoly,
        series: LaurentPoly,
        oracle: LaurentPoly,
    },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
