//! Exact finite-field linear algebra and matroid tools for studying
//! GF(q)-regular matroids: matroids representable over every proper
//! extension of GF(q) but not necessarily over GF(q) itself.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod field;
pub mod format;
pub mod geometry;
pub mod limits;
pub mod linalg;
pub mod matroid;
pub mod regularity;
pub mod representability;
pub mod suite;
pub mod tangle;

pub use error::{Error, Result};
