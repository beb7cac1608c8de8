//! Exact computations in cyclotomic Brauer algebras and degenerate cyclotomic
//! Hecke algebras, with Lie-theoretic cross-checks on truncated tensor modules.

pub mod brauer;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod hecke;
pub mod lincomb;
pub mod linalg;
pub mod rational;
pub mod repanalysis;
pub mod tensoro;
pub mod weights;

pub use error::{Error, Result};
