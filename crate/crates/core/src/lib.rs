//! Rotated `Z^n` and `D_n` lattices built from cyclotomic fields.

pub mod cli;
pub mod constructions;
pub mod cyclo;
pub mod error;
pub mod format;
pub mod lattice;
pub mod metrics;
pub mod real;

pub use cyclo::{CyclotomicElement, GaloisMap};
pub use error::{Error, Result};
pub use real::{Complex, Precision, Real};
