//! Phase-covariant Gaussian channels on one mode in the number basis.
//!
//! Additive classical noise of variance `s2` is realized exactly as a pure
//! loss of transmissivity `1/(1+s2)` followed by a quantum-limited amplifier
//! of gain `1+s2`. Loss only lowers photon numbers and the amplifier only
//! raises them, so every output element up to the cutoff is exact; the
//! probability pushed above the cutoff shows up as a trace deficit.

use crate::displacement::ln_factorials;
use crate::error::{FockError, Result};
use crate::state::DensityMatrix;

use super::superop::ModeChannel;

fn ln_binomial(ln_fact: &[f64], n: usize, k: usize) -> f64 {
    ln_fact[n] - ln_fact[k] - ln_fact[n - k]
}

/// Pure-loss superoperator with Kraus operators
/// `A_k|n> = sqrt(C(n,k)) tau^((n-k)/2) (1-tau)^(k/2) |n-k>`.
pub fn loss_superop(levels: usize, tau: f64) -> Result<ModeChannel> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(FockError::InvalidParameter(format!(
            "transmissivity must lie in [0, 1], got {tau}"
        )));
    }
    let ln_fact = ln_factorials(levels);
    let mut ch = ModeChannel::zeros(levels);
    for n in 0..levels {
        for np in 0..levels {
            for k in 0..=n.min(np) {
                let kept = (n + np - 2 * k) as i32;
                let coef = (0.5 * (ln_binomial(&ln_fact, n, k) + ln_binomial(&ln_fact, np, k))).exp()
                    * tau.sqrt().powi(kept)
                    * (1.0 - tau).powi(k as i32);
                if coef != 0.0 {
                    ch.set((n - k, np - k), (n, np), coef);
                }
            }
        }
    }
    Ok(ch)
}

/// Quantum-limited amplifier of gain `gain >= 1`, truncated to the cutoff.
pub fn amplifier_superop(levels: usize, gain: f64) -> Result<ModeChannel> {
    if !(gain >= 1.0) || !gain.is_finite() {
        return Err(FockError::InvalidParameter(format!("amplifier gain must be >= 1, got {gain}")));
    }
    let ln_fact = ln_factorials(2 * levels);
    let ratio = (gain - 1.0) / gain;
    let mut ch = ModeChannel::zeros(levels);
    for n in 0..levels {
        for np in 0..levels {
            for k in 0..levels - n.max(np) {
                let ln_coef = 0.5
                    * (ln_binomial(&ln_fact, n + k, k) + ln_binomial(&ln_fact, np + k, k))
                    - 0.5 * (n + np + 2) as f64 * gain.ln();
                let coef = ln_coef.exp() * ratio.powi(k as i32);
                if coef != 0.0 {
                    ch.set((n + k, np + k), (n, np), coef);
                }
            }
        }
    }
    Ok(ch)
}

/// Additive Gaussian noise adding `variance` to each quadrature
/// (vacuum variance 1/2).
pub fn classical_noise_superop(levels: usize, variance: f64) -> Result<ModeChannel> {
    if !(variance >= 0.0) {
        return Err(FockError::InvalidParameter(format!(
            "noise variance must be non-negative, got {variance}"
        )));
    }
    if variance == 0.0 {
        return Ok(ModeChannel::identity(levels));
    }
    let gain = 1.0 + variance;
    Ok(loss_superop(levels, 1.0 / gain)?.then(&amplifier_superop(levels, gain)?))
}

pub fn loss_channel(rho: &DensityMatrix, mode: usize, tau: f64) -> Result<DensityMatrix> {
    loss_superop(rho.space().levels(), tau)?.apply(rho, mode)
}

pub fn classical_noise_channel(
    rho: &DensityMatrix,
    mode: usize,
    variance: f64,
) -> Result<DensityMatrix> {
    classical_noise_superop(rho.space().levels(), variance)?.apply(rho, mode)
}
