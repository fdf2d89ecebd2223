//! Symbolic kernel for parity- and weight-graded homotopy brackets.
//!
//! The crate builds higher derived brackets from homological vector fields and from master
//! (anti)Hamiltonians on shifted (anti)cotangent bundles, checks the identities they satisfy,
//! and computes nonlinear pullbacks along thick morphisms. Everything is exact over the rationals.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod graded;
pub mod homotopy;
pub mod microformal;
pub mod oracle;
pub mod report;

pub use error::{Error, Result};
