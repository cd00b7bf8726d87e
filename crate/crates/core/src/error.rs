use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("hyperplane {0} has a zero normal")]
    ZeroNormal(usize),

    #[error("hyperplanes {0} and {1} have proportional normals")]
    ProportionalNormals(usize, usize),

    #[error("normals must all have the same length (hyperplane {0})")]
    DimensionMismatch(usize),

    #[error("pair ({0}, {1}) is covered by more than one flat")]
    PairCoveredTwice(usize, usize),

    #[error("pair ({0}, {1}) is not covered by any flat")]
    PairUncovered(usize, usize),

    #[error("flat {members:?} declares mu = {mu}, expected {expected}")]
    MuMismatch {
        members: Vec<usize>,
        mu: usize,
        expected: usize,
    },

    #[error("declared flats disagree with the flats of the normals")]
    NormalsInconsistent,

    #[error("{0:?} is not a flat of the arrangement")]
    NotAFlat(Vec<usize>),

    #[error("index {index} out of range (size {size})")]
    OutOfRange { index: usize, size: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree {degree} needs dimension {dim}, above the resource guard {limit}")]
    DegreeCap {
        degree: usize,
        dim: u128,
        limit: u128,
    },

    #[error("degree {requested} was not computed (maximum {available})")]
    DegreeNotComputed { requested: usize, available: usize },

    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(usize, usize),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("map certificate failed in degree {degree}: {reason}")]
    Certificate { degree: usize, reason: String },

    #[error("negative dimension {value} extracted in degree {degree}")]
    NegativeExtraction { degree: usize, value: i128 },

    #[error("series has a non-unit constant term")]
    NonUnitSeries,
}
