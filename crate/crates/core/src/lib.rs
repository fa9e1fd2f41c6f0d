#![no_std]
extern crate alloc;

pub mod alpha_beta;
pub mod coeffs;
pub mod concavity;
pub mod error;
pub mod identities;
pub mod kernel;
pub mod paths;
pub mod poly;
pub mod qanalog;
pub mod quadrature;
pub mod report;
pub mod tree;
pub mod valuation;

pub use error::{Error, Result};
