//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range input supplied by the caller.
    #[error("invalid input: {0}")]
    Input(String),
    /// A computation would exceed the configured size budget.
    #[error("budget exceeded: need {needed}, budget {budget}")]
    Budget { needed: usize, budget: usize },
    /// The ω table was precomputed to too small an order.
    #[error("omega order exhausted: requested omega_{requested}, table holds up to omega_{available}")]
    OmegaExhausted { requested: usize, available: usize },
    /// A degree-truncated module vector would need a monomial above the bound.
    #[error("truncation overflow: degree {degree} exceeds bound {bound}")]
    Truncation { degree: usize, bound: usize },
    /// A self-check failed; carries a witness description.
    #[error("verification failed: {0}")]
    Verification(String),
    /// The input is legal but outside what the implemented theory covers.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
