//! Frames of operator orbits `{T^n f_j}`.
//!
//! Unilateral orbits are analysed through model spaces `K_Theta` and their
//! compressed shifts, bilateral orbits through piecewise-constant symbols on
//! the circle.

pub mod bilateral;
pub mod cli;
pub mod corona;
pub mod error;
pub mod hardy;
pub mod linalg;
pub mod model_space;
pub mod orbit;
pub mod serde_util;
pub mod similarity;
pub mod toeplitz;

pub use error::{Error, Result};
