//! Simulation harness, file formats and command-line front end for the
//! nearest-neighbor digraph statistics in `nnstat-core`.

pub mod cli;
pub mod format;
pub mod io;
pub mod monte_carlo;

pub use nnstat_core as core;
