//! Exact construction, verification, and evaluation of discrete statistical
//! models whose maximum likelihood estimator is a rational function.

pub mod error;
pub mod exactalg;
pub mod families;
pub mod disctriple;
pub mod horn;
pub mod stagedtree;
pub mod verify;

pub use error::{Error, Result};
