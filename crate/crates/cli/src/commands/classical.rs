use fockport::metrics::{
    classical_fidelity_estimate, classical_threshold, optimize_classical_strategy, MonteCarloFidelity,
};
use fockport::qubit::DualRailQubit;
use serde::Serialize;

use crate::config::{config_hash, ClassicalConfig};
use crate::error::CliError;
use crate::output::{csv_bytes, json_bytes, num, Format, Sink};

/// Standard errors allowed between the Monte Carlo and closed-form fidelities.
pub const MC_SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalRow {
    pub eta: f64,
    pub x: f64,
    pub y: f64,
    pub f: f64,
    pub f_thr: f64,
    pub monte_carlo: MonteCarloFidelity,
    pub mc_consistent: bool,
}

#[derive(Debug, Serialize)]
struct ClassicalJson<'a> {
    config_hash: String,
    seed: u64,
    config: &'a ClassicalConfig,
    results: Vec<ClassicalRow>,
}

/// Optimal strategy per `eta`, checked by simulation. Each `eta` draws from
/// its own seed `seed + index`.
pub fn classical_bound(config: &ClassicalConfig) -> Result<Vec<ClassicalRow>, CliError> {
    if config.etas.is_empty() {
        return Err(CliError::Usage("eta list is empty".into()));
    }
    config
        .etas
        .iter()
        .enumerate()
        .map(|(i, &eta)| {
            let opt = optimize_classical_strategy(eta)?;
            let mc = classical_fidelity_estimate(
                eta,
                &opt.strategy,
                &DualRailQubit::psi1(),
                config.trials,
                config.seed.wrapping_add(i as u64),
            )?;
            Ok(ClassicalRow {
                eta,
                x: opt.strategy.x,
                y: opt.strategy.y,
                f: opt.fidelity,
                f_thr: classical_threshold(eta),
                mc_consistent: (mc.fidelity - opt.fidelity).abs() <= MC_SIGMAS * mc.std_error,
                monte_carlo: mc,
            })
        })
        .collect()
}

pub fn run_classical_bound(config: &ClassicalConfig, format: Format, sink: &Sink) -> Result<(), CliError> {
    let results = classical_bound(config)?;
    let hash = config_hash(config);
    match format {
        Format::Json => sink.write(
            "classical_bound.json",
            &json_bytes(&ClassicalJson { config_hash: hash, seed: config.seed, config, results }),
        ),
        Format::Csv => {
            let header = ["eta", "x", "y", "f", "f_thr", "f_mc", "f_mc_std_error"];
            let rows: Vec<Vec<String>> = results
                .iter()
                .map(|r| {
                    vec![
                        num(r.eta),
                        num(r.x),
                        num(r.y),
                        num(r.f),
                        num(r.f_thr),
                        num(r.monte_carlo.fidelity),
                        num(r.monte_carlo.std_error),
                    ]
                })
                .collect();
            sink.write("classical_bound.csv", &csv_bytes(&hash, &header, &rows))
        }
    }
}
