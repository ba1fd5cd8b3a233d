//! Exact invariants of extremal toric Kähler metrics on the two- and
//! three-point blow-ups of ℂP².

pub mod certify;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod exact;
pub mod invariants;
pub mod optimize;
pub mod polytope;
pub mod regression;

pub use error::{Error, Result};
