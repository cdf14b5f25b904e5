//! Zero-free regions for 2-spin systems and weighted set covers.
//!
//! The crate computes closed-form activity thresholds, checks the complex
//! contraction conditions numerically on grids, and cross-checks the result
//! against exact partition functions, their roots and truncated Taylor
//! expansions of ln Z.

pub mod certifier;
pub mod cli;
pub mod error;
pub mod model;
pub mod numeric;
pub mod potential;
pub mod regions;
pub mod spectra;
pub mod thresholds;

pub use error::{Error, Result};
