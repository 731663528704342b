use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{config_hash, ReproduceConfig};
use crate::criteria::{self, Outcome};
use crate::error::CliError;
use crate::output::{csv_bytes, json_bytes, Sink};

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub config_hash: String,
    pub seed: u64,
    pub config: ReproduceConfig,
    pub criteria: Vec<Outcome>,
    pub failures: Vec<u8>,
    /// SHA-256 of every table written next to the manifest.
    pub files: BTreeMap<String, String>,
}

/// Runs every acceptance check, writes one CSV per table plus the manifest,
/// and fails if any non-informational check failed.
pub fn run_reproduce(config: &ReproduceConfig, sink: &Sink) -> Result<Manifest, CliError> {
    if sink.dir().is_none() {
        return Err(CliError::Usage("reproduce needs --out <dir>".into()));
    }
    sink.prepare()?;
    let hash = config_hash(config);
    let outcomes = criteria::run_all(config)?;
    let mut files = BTreeMap::new();
    for outcome in &outcomes {
        for table in &outcome.tables {
            let bytes = csv_bytes(&hash, &table.header, &table.rows);
            sink.write(table.file, &bytes)?;
            files.insert(table.file.to_string(), hex::encode(Sha256::digest(&bytes)));
        }
    }
    let failures: Vec<u8> =
        outcomes.iter().filter(|o| !o.passed && !o.informational).map(|o| o.id).collect();
    let manifest = Manifest {
        config_hash: hash,
        seed: config.seed,
        config: config.clone(),
        criteria: outcomes,
        failures,
        files,
    };
    sink.write(MANIFEST_FILE, &json_bytes(&manifest))?;
    Ok(manifest)
}
