mod classical;
mod reproduce;
mod sweep;
mod teleport;

pub use classical::{classical_bound, run_classical_bound, ClassicalRow};
pub use reproduce::{run_reproduce, Manifest, MANIFEST_FILE};
pub use sweep::{run_sweep_gain, sweep_csv, sweep_rows};
pub use teleport::{run_teleport, teleport_report, TeleportReport};
