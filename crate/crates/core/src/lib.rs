//! Polynomial identities of finite-dimensional algebras with involution.
//!
//! The crate builds the classical `*`-algebras (matrices with transpose or
//! symplectic involution, the exchange algebra, direct sums and the block
//! triangular algebras `UT*`), generates `*`-Capelli polynomials, decides
//! `*`-identities, and computes `*`-codimensions and degree-`n` consequence
//! spaces of T-`*`-ideals by exact linear algebra.

#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod error;
pub mod eval;
pub mod freealg;
pub mod linalg;
pub mod staralg;
pub mod tideal;

pub use error::{Error, Result};
