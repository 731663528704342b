use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Writes named artifacts into a directory, or to stdout when none is given.
#[derive(Debug, Clone)]
pub struct Sink {
    dir: Option<PathBuf>,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Self { dir }
    }

    pub fn dir(&self) -> Option<&PathBuf> {
        self.dir.as_ref()
    }

    pub fn prepare(&self) -> Result<(), CliError> {
        if let Some(dir) = &self.dir {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::io(&format!("cannot create {}", dir.display()), e))?;
        }
        Ok(())
    }

    pub fn write(&self, name: &str, contents: &[u8]) -> Result<(), CliError> {
        match &self.dir {
            Some(dir) => {
                self.prepare()?;
                let path = dir.join(name);
                std::fs::write(&path, contents)
                    .map_err(|e| CliError::io(&format!("cannot write {}", path.display()), e))
            }
            None => std::io::stdout()
                .lock()
                .write_all(contents)
                .map_err(|e| CliError::io("cannot write to stdout", e)),
        }
    }
}

pub fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("output serializes");
    bytes.push(b'\n');
    bytes
}

/// CSV text whose first line is `# config_hash: <hash>`.
pub fn csv_bytes(hash: &str, header: &[&str], rows: &[Vec<String>]) -> Vec<u8> {
    let mut out = format!("# config_hash: {hash}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(header).expect("in-memory write");
        for row in rows {
            w.write_record(row).expect("in-memory write");
        }
        w.flush().expect("in-memory write");
    }
    out
}

pub fn num(v: f64) -> String {
    v.to_string()
}

pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}
