//! Exact arithmetic for two-step nilpotent Lie algebras over the rationals:
//! structure tensors, free algebras and their duals, hypergraph invariants,
//! decomposability tests and a catalog of indecomposable algebras.
//!
//! The Rust API indexes generators and centers from 0; text formats and
//! reports count from 1.

pub mod algebra;
pub mod catalog;
pub mod decompose;
pub mod duality;
pub mod error;
pub mod invariants;
pub mod io;
pub mod linalg;

pub use error::{Error, Result};
