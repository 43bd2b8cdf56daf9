//! Arithmetic invariants of ℬ-free and Toeplitz subshifts: holes, essential holes,
//! minimal periods, centralizer conditions, the automorphisms F_ℓ and complexity
//! certificates, each backed by exact integer arithmetic.

pub mod analysis;
pub mod arith;
pub mod automorphism;
pub mod bset;
pub mod complexity;
pub mod conditions;
pub mod error;
pub mod essential;
pub mod filtration;
pub mod holes;
pub mod numfmt;
pub mod oracle;
pub mod specfile;
pub mod suite;
pub mod toeplitz;

pub use error::{Error, Result};
