use fockport::channel::{teleport_dual_rail, ChannelDiagnostics};
use fockport::metrics::{fidelity_report, FidelityReport, PhotonFractions};
use fockport::qubit::{decompose_fractions, input_density};
use fockport::{DensityMatrix, FockSpace};
use serde::Serialize;

use crate::config::{config_hash, TeleportConfig};
use crate::error::CliError;
use crate::output::{csv_bytes, json_bytes, num, opt_num, Format, Sink};

#[derive(Debug, Serialize)]
pub struct TeleportReport {
    pub config_hash: String,
    pub seed: u64,
    pub config: TeleportConfig,
    pub input: DensityMatrix,
    pub output: DensityMatrix,
    pub fractions_in: PhotonFractions,
    pub report: FidelityReport,
    pub diagnostics: ChannelDiagnostics,
}

pub fn teleport_report(config: &TeleportConfig) -> Result<TeleportReport, CliError> {
    config.channel.validate()?;
    let space = FockSpace::two_mode(config.cutoff)?;
    let input = input_density(&config.input, space)?;
    let out = teleport_dual_rail(&input, &config.channel)?;
    let report = fidelity_report(&input, &out.state, &config.input.qubit, config.input.eta)?;
    let f = decompose_fractions(&input)?;
    Ok(TeleportReport {
        config_hash: config_hash(config),
        seed: config.seed,
        config: config.clone(),
        fractions_in: PhotonFractions { vacuum: f.vacuum, qubit: f.qubit, multiphoton: f.multiphoton },
        input,
        output: out.state,
        report,
        diagnostics: out.diagnostics,
    })
}

pub fn run_teleport(config: &TeleportConfig, format: Format, sink: &Sink) -> Result<(), CliError> {
    let t = teleport_report(config)?;
    match format {
        Format::Json => sink.write("teleport.json", &json_bytes(&t)),
        Format::Csv => {
            let r = &t.report;
            let header = [
                "f_state", "f_qubit", "f_thr", "eta_in", "vacuum", "qubit", "multiphoton",
                "success_prob", "tail_mass",
            ];
            let row = vec![
                num(r.f_state),
                opt_num(r.f_qubit),
                num(r.f_thr),
                num(r.eta_in),
                num(r.fractions_out.vacuum),
                num(r.fractions_out.qubit),
                num(r.fractions_out.multiphoton),
                opt_num(r.success_prob),
                num(t.diagnostics.tail_mass),
            ];
            sink.write("teleport.csv", &csv_bytes(&t.config_hash, &header, &[row]))
        }
    }
}
