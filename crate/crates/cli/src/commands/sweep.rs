use fockport::metrics::{sweep_gain, GainSweep};
use fockport::FockSpace;
use serde::Serialize;

use crate::config::{config_hash, SweepConfig};
use crate::error::CliError;
use crate::output::{csv_bytes, json_bytes, num, opt_num, Format, Sink};

pub const SWEEP_HEADER: [&str; 9] =
    ["r", "g", "f_state", "f_qubit", "f_thr", "vacuum", "qubit", "multiphoton", "success_prob"];

#[derive(Debug, Serialize)]
struct SweepJson<'a> {
    config_hash: String,
    seed: u64,
    config: &'a SweepConfig,
    sweeps: Vec<GainSweep>,
}

pub fn sweep_rows(sweeps: &[GainSweep]) -> Vec<Vec<String>> {
    sweeps
        .iter()
        .flat_map(|s| {
            s.points.iter().map(move |p| {
                let r = &p.report;
                vec![
                    num(s.r),
                    num(p.g),
                    num(r.f_state),
                    opt_num(r.f_qubit),
                    num(r.f_thr),
                    num(r.fractions_out.vacuum),
                    num(r.fractions_out.qubit),
                    num(r.fractions_out.multiphoton),
                    opt_num(r.success_prob),
                ]
            })
        })
        .collect()
}

pub fn sweep_csv(hash: &str, sweeps: &[GainSweep]) -> Vec<u8> {
    csv_bytes(hash, &SWEEP_HEADER, &sweep_rows(sweeps))
}

pub fn run_sweep_gain(config: &SweepConfig, format: Format, sink: &Sink) -> Result<(), CliError> {
    let gains = config.gain_grid()?;
    let space = FockSpace::two_mode(config.cutoff)?;
    let sweeps = config
        .squeezing
        .iter()
        .map(|&r| sweep_gain(&config.input, r, config.loss, &gains, space))
        .collect::<Result<Vec<_>, _>>()?;
    let hash = config_hash(config);
    match format {
        Format::Csv => sink.write("sweep_gain.csv", &sweep_csv(&hash, &sweeps)),
        Format::Json => sink.write(
            "sweep_gain.json",
            &json_bytes(&SweepJson { config_hash: hash, seed: config.seed, config, sweeps }),
        ),
    }
}
