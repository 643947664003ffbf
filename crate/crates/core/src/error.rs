use alloc::string::String;

use num_bigint::BigUint;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("variable x_{0} is not covered by the assignment")]
    MissingVariable(u32),

    #[error("requested {digits} digits, supported range is 1..={max}")]
    DigitsOutOfRange { digits: u32, max: u32 },

    /// The literal nested-loop oracle would visit too many index tuples.
    #[error(
        "naive enumeration at depth {depth}, N = {upto} visits C({upto}, {depth}) = {tuples} tuples, \
         above the ceiling of {ceiling}"
    )]
    NaiveCeiling {
        depth: usize,
        upto: u64,
        tuples: BigUint,
        ceiling: u64,
    },

    /// The tail bound decays like 1/N, so high precision needs a huge N.
    #[error(
        "{digits} digits at depth {depth} need N = {required}, above the work ceiling of {ceiling}"
    )]
    WorkCeiling {
        depth: usize,
        digits: u32,
        required: BigUint,
        ceiling: u64,
    },
}
