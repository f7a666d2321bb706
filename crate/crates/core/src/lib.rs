//! Modeling and analysis of the performance bound of parallelized sequential
//! computing.
//!
//! The crate turns measured speedups and efficiencies into effective
//! parallelization figures, composes the serial fraction of a modeled machine
//! from its physical and architectural time contributions, sweeps payload
//! against nominal performance to locate the performance wall, and analyzes
//! supercomputer benchmark datasets (trends, regressions, gain rooflines).
//!
//! Modules:
//!
//! - [`amdahl`] — the core algebra: speedup, efficiency, gain, and their
//!   numerically stable inversions around `alpha = 1`.
//! - [`contrib`] — machine descriptions, per-source serial-fraction
//!   contributions, payload sweeps, and the closed-form wall location.
//! - [`sim`] — a deterministic fork/join timeline simulator that serves as a
//!   brute-force cross-check on the closed forms.
//! - [`dataset`] — TOP500-style CSV ingestion, derived metrics, and
//!   regression fits.
//! - [`analysis`] — frozen-alpha prediction curves, gain rooflines, and the
//!   consolidated wall report.
//! - [`config`] — the flat key/value file format shared by machine and
//!   scenario descriptions.

pub mod amdahl;
pub mod analysis;
pub mod config;
pub mod contrib;
pub mod dataset;
mod error;
pub mod sim;

pub use error::{Error, Result};
