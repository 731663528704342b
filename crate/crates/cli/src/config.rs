//! JSON run configurations. Every field has a default, so `{}` is a valid
//! config for each command.

use std::path::Path;

use fockport::channel::TeleportParams;
use fockport::qubit::{DualRailQubit, InputMixture};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const DEFAULT_CUTOFF: usize = fockport::space::DEFAULT_CUTOFF;
pub const DEFAULT_SEED: u64 = 20_151_204;

fn default_input() -> InputMixture {
    InputMixture::new(0.69, DualRailQubit::psi1()).expect("valid default input")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TeleportConfig {
    pub channel: TeleportParams,
    pub input: InputMixture,
    pub cutoff: usize,
    pub seed: u64,
}

impl Default for TeleportConfig {
    fn default() -> Self {
        Self {
            channel: TeleportParams { g: 0.79, r: 1.01, l: 0.25 },
            input: default_input(),
            cutoff: DEFAULT_CUTOFF,
            seed: DEFAULT_SEED,
        }
    }
}

/// Evenly spaced gains `start, start + step, ..., <= stop`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GainRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GainRange {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        if !(self.step > 0.0) || !(self.stop >= self.start) {
            return Err(CliError::Usage(format!("invalid gain range {self:?}")));
        }
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        Ok((0..=n).map(|k| round_grid(self.start + self.step * k as f64)).collect())
    }
}

// Snaps accumulated grid values such as 0.63000000000000001 to 12 decimals.
pub fn round_grid(v: f64) -> f64 {
    (v * 1e12).round() / 1e12
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub squeezing: Vec<f64>,
    pub loss: f64,
    pub gains: Vec<f64>,
    /// Replaces `gains` when present.
    pub fine: Option<GainRange>,
    pub input: InputMixture,
    pub cutoff: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            squeezing: vec![0.71, 1.01, 1.56],
            loss: 0.0,
            gains: vec![0.5, 0.63, 0.79, 1.0],
            fine: None,
            input: default_input(),
            cutoff: DEFAULT_CUTOFF,
            seed: DEFAULT_SEED,
        }
    }
}

impl SweepConfig {
    pub fn gain_grid(&self) -> Result<Vec<f64>, CliError> {
        let gains = match &self.fine {
            Some(range) => range.values()?,
            None => self.gains.clone(),
        };
        if gains.is_empty() {
            return Err(CliError::Usage("gain grid is empty".into()));
        }
        if self.squeezing.is_empty() {
            return Err(CliError::Usage("squeezing list is empty".into()));
        }
        Ok(gains)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassicalConfig {
    pub etas: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
}

impl Default for ClassicalConfig {
    fn default() -> Self {
        let mut etas: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        etas.push(0.693);
        Self { etas, trials: 100_000, seed: DEFAULT_SEED }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReproduceConfig {
    pub seed: u64,
    /// Evaluates the loss envelope without loss, as an informational check.
    pub force_lossless: bool,
    pub cutoff: usize,
    pub mc_trials: u64,
    pub tomography_states: usize,
    pub samples_per_phase: usize,
}

impl Default for ReproduceConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            force_lossless: false,
            cutoff: DEFAULT_CUTOFF,
            mc_trials: 1_000_000,
            tomography_states: 10,
            samples_per_phase: 8_334,
        }
    }
}

pub trait Seeded {
    fn set_seed(&mut self, seed: u64);
}

macro_rules! seeded {
    ($($t:ty),*) => {$(
        impl Seeded for $t {
            fn set_seed(&mut self, seed: u64) {
                self.seed = seed;
            }
        }
    )*};
}
seeded!(TeleportConfig, SweepConfig, ClassicalConfig, ReproduceConfig);

/// Reads a config file (or the defaults) and applies a seed override.
pub fn load<T>(path: Option<&Path>, seed: Option<u64>) -> Result<T, CliError>
where
    T: DeserializeOwned + Default + Seeded,
{
    let mut config = match path {
        None => T::default(),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::io(&format!("cannot read {}", p.display()), e))?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", p.display())))?
        }
    };
    if let Some(s) = seed {
        config.set_seed(s);
    }
    Ok(config)
}

/// SHA-256 of the resolved config's JSON encoding.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    let bytes = serde_json::to_vec(config).expect("config serializes");
    hex::encode(Sha256::digest(&bytes))
}
