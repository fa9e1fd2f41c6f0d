//! Command-line front end, file formats and parallel sweeps for `quartic-core`.

pub mod cli;
pub mod emit;
pub mod sweep;

pub use quartic_core as core;
