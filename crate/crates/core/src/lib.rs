//! Truncated Fock-space simulation of continuous-variable teleportation of
//! dual-rail photonic qubits.
//!
//! The crate is organized bottom-up:
//!
//! * [`space`], [`state`], [`linalg`], [`displacement`]: states and operators
//!   on one or two truncated bosonic modes.
//! * [`qubit`]: dual-rail qubits, the mixed input model, and the passive
//!   basis-change unitary.
//! * [`channel`]: the teleportation channel (Gaussian composition, transfer
//!   operators, closed-form photon transfer, conditional teleportation).
//! * [`metrics`]: fidelities, the classical bound, and gain sweeps.
//! * [`tomography`]: homodyne sampling and maximum-likelihood reconstruction.

pub mod channel;
pub mod classical;
pub mod displacement;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod quadrature;
pub mod qubit;
pub mod space;
pub mod state;
pub mod tomography;

pub use error::{FockError, Result};
pub use space::FockSpace;
pub use state::{DensityMatrix, FockOperator, PureState};
