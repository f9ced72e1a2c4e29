//! Exact verification of identities relating configurations of points over
//! truncated polynomial rings to tangential dilogarithm and trilogarithm
//! complexes.

pub mod chains;
pub mod configs;
pub mod epsring;
pub mod error;
pub mod fixture;
pub mod maps;
pub mod verify;
pub mod random;
pub mod ratios;
pub mod scalars;

pub use error::{Error, Result};
pub use scalars::{RatFunc, Rational, Scalar};
