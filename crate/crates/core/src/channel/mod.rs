//! The continuous-variable teleportation channel on Fock states.
//!
//! Three routes are provided: the Gaussian loss-then-noise composition
//! (any loss on the squeezed beams), the numerically integrated
//! transfer-operator Kraus family (pure squeezing only), and closed-form
//! photon-number transfer probabilities for vacuum and single-photon inputs.

mod gaussian;
mod superop;
mod transfer;

use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::state::DensityMatrix;

pub use gaussian::{
    amplifier_superop, classical_noise_channel, classical_noise_superop, loss_channel,
    loss_superop,
};
pub use superop::ModeChannel;
pub use transfer::{
    conditional_teleport, conditional_teleport_dual_rail, transfer_operator_channel,
    AcceptanceWindow, TransferChannel, TransferGrid,
};

/// Truncation tail above which a channel application is flagged.
pub const TAIL_WARNING: f64 = 1e-6;

const CLAMP_TOLERANCE: f64 = 1e-12;
const UNPHYSICAL_TOLERANCE: f64 = 1e-9;

/// Feedforward gain `g`, pure squeezing `r`, and loss `l` on each squeezed beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TeleportParams {
    pub g: f64,
    pub r: f64,
    #[serde(default)]
    pub l: f64,
}

impl TeleportParams {
    pub fn new(g: f64, r: f64, l: f64) -> Result<Self> {
        let p = Self { g, r, l };
        p.validate()?;
        Ok(p)
    }

    /// Gain-tuned lossless teleporter, `g = tanh r`.
    pub fn optimal(r: f64) -> Result<Self> {
        Self::new(optimal_gain(r), r, 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.g >= 0.0 && self.g <= 1.0) {
            return Err(FockError::InvalidParameter(format!(
                "gain must lie in [0, 1], got {}",
                self.g
            )));
        }
        if !(self.r >= 0.0) || !self.r.is_finite() {
            return Err(FockError::InvalidParameter(format!(
                "squeezing must be finite and non-negative, got {}",
                self.r
            )));
        }
        if !(0.0..1.0).contains(&self.l) {
            return Err(FockError::InvalidParameter(format!(
                "loss must lie in [0, 1), got {}",
                self.l
            )));
        }
        Ok(())
    }

    /// `q = tanh r`.
    pub fn q(&self) -> f64 {
        self.r.tanh()
    }

    pub fn optimal_gain(&self) -> f64 {
        optimal_gain(self.r)
    }
}

pub fn optimal_gain(r: f64) -> f64 {
    r.tanh()
}

/// Closed-form photon-number distribution of a teleported `|i>` (`i` = 0 or 1):
/// `P_i^n(g, q)` for lossless squeezing `q = tanh r`.
pub fn photon_transfer_prob(i: u8, n: usize, g: f64, q: f64) -> f64 {
    assert!((0.0..1.0).contains(&q), "q must lie in [0, 1)");
    let denom = 1.0 + g * g - 2.0 * g * q;
    assert!(denom > 0.0, "1 + g^2 - 2gq must be positive");
    let nf = n as f64;
    let d = g - q;
    match i {
        0 => (1.0 - q * q) * (d * d).powi(n as i32) / denom.powi(n as i32 + 1),
        1 => {
            let bracket =
                (1.0 - g * q).powi(2) * d * d + nf * g * g * (1.0 - q * q).powi(2);
            let lead = if n == 0 {
                // (g - q)^{-2} cancels against the (g - q)^2 inside the bracket.
                (1.0 - g * q).powi(2) / denom.powi(2)
            } else {
                (d * d).powi(n as i32 - 1) * bracket / denom.powi(n as i32 + 2)
            };
            (1.0 - q * q) * lead
        }
        _ => panic!("photon_transfer_prob is defined for i = 0 or 1"),
    }
}

/// Added noise per quadrature, `V_tel = [(1+g)^2 s_- + (1-g)^2 s_+] / 4` with
/// `s_{-/+} = (1-l) e^{-/+ 2r} + l`, in units where the vacuum variance is 1/2.
pub fn added_noise_variance(p: &TeleportParams) -> f64 {
    let s_minus = (1.0 - p.l) * (-2.0 * p.r).exp() + p.l;
    let s_plus = (1.0 - p.l) * (2.0 * p.r).exp() + p.l;
    ((1.0 + p.g).powi(2) * s_minus + (1.0 - p.g).powi(2) * s_plus) / 4.0
}

/// The teleporter written as pure loss `tau = g^2` followed by classical noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianChannelForm {
    pub amp_gain: f64,
    pub added_var: f64,
    pub loss_transmissivity: f64,
    pub classical_var: f64,
}

pub fn gaussian_form(p: &TeleportParams) -> Result<GaussianChannelForm> {
    p.validate()?;
    let added_var = added_noise_variance(p);
    let mut classical_var = added_var - (1.0 - p.g * p.g) / 2.0;
    if classical_var < -UNPHYSICAL_TOLERANCE {
        return Err(FockError::UnphysicalParameters { classical_var });
    }
    if (-CLAMP_TOLERANCE..0.0).contains(&classical_var) {
        classical_var = 0.0;
    }
    Ok(GaussianChannelForm {
        amp_gain: p.g,
        added_var,
        loss_transmissivity: p.g * p.g,
        classical_var: classical_var.max(0.0),
    })
}

/// Single-mode teleporter superoperator for a given number of levels.
pub fn teleport_superop(levels: usize, p: &TeleportParams) -> Result<ModeChannel> {
    let form = gaussian_form(p)?;
    let loss = loss_superop(levels, form.loss_transmissivity)?;
    Ok(loss.then(&classical_noise_superop(levels, form.classical_var)?))
}

pub fn teleport_mode(rho: &DensityMatrix, mode: usize, p: &TeleportParams) -> Result<DensityMatrix> {
    teleport_superop(rho.space().levels(), p)?.apply(rho, mode)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridDiagnostics {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    pub radius: f64,
    pub completeness_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelDiagnostics {
    /// Probability lost above the cutoff plus mass above `cutoff - 2` photons.
    pub tail_mass: f64,
    /// `|Tr(in) - Tr(out)|`.
    pub trace_error: f64,
    pub tail_warning: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDiagnostics>,
}

impl ChannelDiagnostics {
    pub(crate) fn measure(input: &DensityMatrix, output: &DensityMatrix) -> Self {
        let trace_error = (input.trace() - output.trace()).abs();
        let cutoff = output.space().cutoff();
        let tail_mass = trace_error + output.mass_above(cutoff.saturating_sub(2));
        Self { tail_mass, trace_error, tail_warning: tail_mass > TAIL_WARNING, grid: None }
    }
}

#[derive(Debug, Clone)]
pub struct TeleportOutput {
    pub state: DensityMatrix,
    pub diagnostics: ChannelDiagnostics,
}

/// Teleports both rails of a dual-rail state with independent uses of the
/// same single-mode teleporter.
pub fn teleport_dual_rail(rho: &DensityMatrix, p: &TeleportParams) -> Result<TeleportOutput> {
    if rho.space().modes() != 2 {
        return Err(FockError::InvalidParameter("dual-rail teleportation needs two modes".into()));
    }
    let ch = teleport_superop(rho.space().levels(), p)?;
    let state = ch.apply(&ch.apply(rho, 0)?, 1)?;
    let diagnostics = ChannelDiagnostics::measure(rho, &state);
    Ok(TeleportOutput { state, diagnostics })
}
