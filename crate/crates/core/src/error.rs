use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{what}: n = {n} is outside the supported range {min}..={max}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("ground sets differ: {0}")]
    GroundSetMismatch(String),

    #[error("partition is crossing: {0}")]
    Crossing(String),

    #[error("not symmetric under negation / half-turn: {0}")]
    Asymmetric(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("annular diagram is not realizable: {0}")]
    Unrealizable(String),

    #[error("exponent cap {cap} exceeded (needed {needed})")]
    ExponentCap { cap: u64, needed: u64 },

    #[error("inexact division: {0}")]
    InexactDivision(String),
}

impl Error {
    pub(crate) fn size_limit(what: &'static str, n: usize, min: usize, max: usize) -> Self {
        Error::SizeLimit { what, n, min, max }
    }

    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn check_range(what: &'static str, n: usize, min: usize, max: usize) -> Result<()> {
        if (min..=max).contains(&n) {
            Ok(())
        } else {
            Err(Error::size_limit(what, n, min, max))
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
