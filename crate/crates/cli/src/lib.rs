//! Command-line driver: teleportation reports, gain sweeps, the classical
//! bound, and a full reproduction run with a pass/fail manifest.

pub mod commands;
pub mod config;
pub mod criteria;
pub mod error;
pub mod output;

pub use error::CliError;
