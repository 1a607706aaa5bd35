use crate::partitions::Partition;

/// Error type shared by every module. The CLI maps these onto exit codes:
/// user errors -> 1, missing data -> 2, invariant failures -> 3.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("partitions have different sizes: {left} partitions {lsize}, {right} partitions {rsize}")]
    SizeMismatch {
        left: Partition,
        right: Partition,
        lsize: u32,
        rsize: u32,
    },

    #[error("cannot parse partition {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("data unavailable: no decomposition matrix for p={p}, d={d} under {dir:?}")]
    DataUnavailable { p: u64, d: u32, dir: String },

    #[error("invalid data: {0}")]
    DataInvalid(String),

    #[error("not a valid Cartan matrix: {0}")]
    NotCartan(String),

    #[error("cohomology of Y^{0} vanishes identically; stripping is undefined")]
    StripUndefined(Partition),

    #[error("oracle out of range: {0}")]
    OracleOutOfRange(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("internal invariant failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
