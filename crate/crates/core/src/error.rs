use thiserror::Error;

/// Errors raised by field arithmetic, constructions and analyses.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no modulus table entry for extension degree {0}")]
    NoModulus(u32),

    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields (modulus {left:#b} vs {right:#b})")]
    SpecMismatch { left: u32, right: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("resource limit: {what} needs {needed}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: usize,
        cap: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
