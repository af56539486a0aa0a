//! Numerical laboratory for fractional integrals, their commutators,
//! maximal operators, Muckenhoupt weights and weighted Morrey norms.

pub mod cli;
pub mod error;
pub mod grid;
pub mod operators;
mod quad;
pub mod spaces;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
