//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every function returns a JSON string; errors become JS exceptions.

use fockport::channel::{
    conditional_teleport_dual_rail, optimal_gain, teleport_dual_rail, AcceptanceWindow, TeleportParams,
};
use fockport::metrics::{fidelity_report, qubit_fidelity, sweep_gain, theory_fidelities, FidelityReport};
use fockport::qubit::{encode_qubit, input_density, DualRailQubit, InputMixture};
use fockport::FockSpace;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest cutoff the page may request; the two-mode dimension grows as
/// `(N+1)^2`.
pub const MAX_CUTOFF: usize = 10;

fn space(cutoff: usize) -> Result<FockSpace, JsError> {
    if cutoff == 0 || cutoff > MAX_CUTOFF {
        return Err(JsError::new(&format!("cutoff must lie in 1..={MAX_CUTOFF}")));
    }
    FockSpace::two_mode(cutoff).map_err(err)
}

fn err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn json(v: &impl Serialize) -> Result<String, JsError> {
    serde_json::to_string(v).map_err(err)
}

fn mixture(eta: f64, theta: f64, phi: f64) -> Result<InputMixture, JsError> {
    InputMixture::new(eta, DualRailQubit::from_bloch(theta, phi)).map_err(err)
}

#[derive(Serialize)]
struct TeleportView {
    report: FidelityReport,
    theory_f_state: Option<f64>,
    optimal_gain: f64,
    /// Photon-number distribution of the first rail after teleportation.
    rail_distribution: Vec<f64>,
    tail_mass: f64,
}

/// Teleports `eta |psi><psi| + (1 - eta)|0,0><0,0|` with `psi` at Bloch
/// angles `(theta, phi)`.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn teleport(eta: f64, theta: f64, phi: f64, g: f64, r: f64, l: f64, cutoff: usize) -> Result<String, JsError> {
    let mix = mixture(eta, theta, phi)?;
    let rho = input_density(&mix, space(cutoff)?).map_err(err)?;
    let p = TeleportParams::new(g, r, l).map_err(err)?;
    let out = teleport_dual_rail(&rho, &p).map_err(err)?;
    json(&TeleportView {
        report: fidelity_report(&rho, &out.state, &mix.qubit, eta).map_err(err)?,
        theory_f_state: (l == 0.0).then(|| theory_fidelities(eta, g, p.q()).f_state),
        optimal_gain: optimal_gain(r),
        rail_distribution: out.state.photon_distribution(0).map_err(err)?,
        tail_mass: out.diagnostics.tail_mass,
    })
}

/// Fidelities on `steps` evenly spaced gains in `[g_min, g_max]`.
#[wasm_bindgen]
pub fn gain_sweep(eta: f64, r: f64, l: f64, g_min: f64, g_max: f64, steps: usize, cutoff: usize) -> Result<String, JsError> {
    if !(2..=201).contains(&steps) {
        return Err(JsError::new("steps must lie in 2..=201"));
    }
    let gains: Vec<f64> =
        (0..steps).map(|k| g_min + (g_max - g_min) * k as f64 / (steps - 1) as f64).collect();
    let mix = mixture(eta, std::f64::consts::FRAC_PI_2, -std::f64::consts::FRAC_PI_2)?;
    json(&sweep_gain(&mix, r, l, &gains, space(cutoff)?).map_err(err)?)
}

#[derive(Serialize)]
struct ConditionalPoint {
    window: f64,
    acceptance: f64,
    f_qubit: f64,
}

/// Acceptance probability and qubit fidelity when only Bell outcomes with
/// `|beta| <= window` are kept, for each window in `windows`.
#[wasm_bindgen]
pub fn conditional_scan(g: f64, r: f64, windows: Vec<f64>, cutoff: usize) -> Result<String, JsError> {
    let s = space(cutoff)?;
    let q = DualRailQubit::psi1();
    let psi = encode_qubit(&q, s).map_err(err)?.projector();
    let points = windows
        .iter()
        .map(|&w| {
            let (out, acceptance) =
                conditional_teleport_dual_rail(&psi, g, r.tanh(), AcceptanceWindow { radius: w }).map_err(err)?;
            let f_qubit = qubit_fidelity(&q, &out.renormalized().map_err(err)?).map_err(err)?;
            Ok(ConditionalPoint { window: w, acceptance, f_qubit })
        })
        .collect::<Result<Vec<_>, JsError>>()?;
    json(&points)
}
