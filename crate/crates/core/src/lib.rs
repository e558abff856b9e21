//! Growth-model toolkit for AI-accelerated research.
//!
//! - [`growth`]: idea production function, trajectories, required-growth solver
//! - [`drivers`]: AI research effort from compute and efficiency drivers
//! - [`industry`]: learning curves, replicators, robot economics
//! - [`limits`]: thermal, energy, resource and volume back-of-envelopes
//! - [`scenario`]: scenario files, reports and sweeps
//! - [`verify`]: recomputation of every headline figure

pub mod drivers;
pub mod error;
pub mod growth;
pub mod industry;
pub mod limits;
pub mod scenario;
pub mod verify;

pub use error::{ModelError, Result};
