use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised while validating inputs or evaluating statistics.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("sample needs at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("point {index} has {got} coordinates, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },

    /// Two input points coincide, so their mutual distance is zero.
    #[error("zero distance: points {first} and {second} are identical")]
    DuplicatePoints { first: usize, second: usize },

    /// Positions are 1-based spacing indices.
    #[error("tied spacings at {}", join_indices(.positions))]
    TiedSpacings { positions: Vec<usize> },

    #[error("not a permutation of 1..={len}")]
    NotAPermutation { len: usize },

    #[error("sequence entries must be pairwise distinct")]
    RepeatedValues,

    #[error("{what}: {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        range: &'static str,
    },

    #[error("{0}")]
    Unsupported(String),
}

fn join_indices(indices: &[usize]) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    for (i, idx) in indices.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{idx}");
    }
    out
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn out_of_range(what: &'static str, value: usize, range: &'static str) -> Error {
    Error::OutOfRange {
        what,
        value: value as i64,
        range,
    }
}
