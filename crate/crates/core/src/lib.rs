//! Symmetric cube transfer from GL₂ to GSp₄ on Hecke eigensystems, in exact arithmetic.

pub mod arith;
pub mod congruence;
pub mod eigensys;
pub mod error;
pub mod hecke;
pub mod json;
pub mod levels;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod suite;
pub mod weights;

pub use error::{Error, Result};
