//! Approximated Matveev complexity `c0..c9` of geometric 3-manifolds and a
//! census of all geometric manifolds up to complexity 9.
//!
//! Arithmetic is exact throughout. Modules, bottom-up:
//! [`farey`], [`gl2`], [`seifert`], [`chainlink`], [`complexity`], [`census`].

pub mod chainlink;
pub mod census;
pub mod complexity;
pub mod error;
pub mod farey;
pub mod gl2;
mod parse;
pub mod seifert;

pub use error::{Error, Result};
