//! Exact Chern characters and Chern classes of the moduli stack of stable
//! `n`-pointed genus-`g` curves, written in kappa, psi, lambda and boundary
//! pushforward classes.

pub mod arith;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod formulas;
pub mod grr;
pub mod series;
pub mod taut;
pub mod verify;

pub use arith::Rational;
pub use error::{Error, Result};
