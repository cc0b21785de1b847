//! Simulation and verification laboratory for Cramér-type moderate deviations
//! of martingales.
//!
//! Two model instantiations are provided: the elephant random walk with random
//! step sizes ([`erw`]) and least-squares inference for bounded-noise AR(1)
//! processes ([`ar1`]). The [`mc`] engine runs reproducible, parallel Monte
//! Carlo experiments over either model: tail-ratio sweeps against the normal
//! tail, Berry–Esseen sup-distances, and confidence-interval coverage.
//!
//! The `examples/` directory is the primary tour of the crate; the `mdlab`
//! binary exposes the same experiments as subcommands with CSV/JSON output.

pub mod ar1;
pub mod cli;
pub mod erw;
pub mod error;
pub mod mc;
pub mod normal;
pub mod report;
pub mod special;

pub use error::{Error, Result};
