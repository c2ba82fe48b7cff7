use thiserror::Error;

use crate::measure::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("cannot combine a {left} region with a {right} region")]
    FamilyMismatch { left: Family, right: Family },

    #[error("malformed interval ]{lo}, {hi}]: lower endpoint exceeds upper")]
    MalformedInterval { lo: f64, hi: f64 },

    #[error("NaN is not an extended real")]
    NotANumber,

    #[error("radial ring ]{lo}, {hi}] has a negative radius")]
    NegativeRadius { lo: f64, hi: f64 },

    #[error("nodes {first} and {second} coincide; the divided-difference recursion is undefined there")]
    RepeatedNode { first: usize, second: usize },

    #[error("node tuple is empty")]
    EmptyTuple,

    #[error("exponent p = {0} lies outside ]1/2, 1[")]
    InvalidExponent(f64),

    #[error("invalid shrink schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid experiment configuration: {0}")]
    InvalidConfig(String),
}
