//! Teleportation as an integral over Bell-measurement outcomes `beta` of the
//! transfer operators
//! `T(beta) = sqrt((1-q^2)/pi) D(g beta) q^n D(-beta)`.
//!
//! The integral runs on a polar grid: Gauss-Legendre in radius and a uniform
//! trapezoid in angle. `T(r e^{i phi}) = R T(r) R^H` with `R = e^{i phi n}`, so
//! each ring needs a single radial evaluation and the angular sum reduces to
//! phase factors on the elements.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::displacement::displacement_block;
use crate::error::{FockError, Result};
use crate::linalg::{CMatrix, ZERO};
use crate::quadrature::gauss_legendre_on;
use crate::state::DensityMatrix;

use super::superop::ModeChannel;
use super::GridDiagnostics;

/// Largest tolerated `|Tr(rho) - Tr(rho * completeness)|` on the full grid.
pub const GRID_TOLERANCE: f64 = 1e-6;
pub const MIN_ACCEPTANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferGrid {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// Outer radius of the grid; `None` picks `6 max(1, sqrt(1/(1-q^2)))`.
    pub radius: Option<f64>,
}

impl Default for TransferGrid {
    fn default() -> Self {
        Self { radial_nodes: 64, angular_nodes: 64, radius: None }
    }
}

impl TransferGrid {
    /// `1/(1-q^2)` is the mean `|beta|^2` of the outcome distribution for a
    /// vacuum input.
    pub fn radius_for(&self, q: f64) -> f64 {
        self.radius.unwrap_or_else(|| 6.0 * (1.0 / (1.0 - q * q)).sqrt().max(1.0))
    }
}

/// Post-selection on Bell-measurement outcomes with `|beta| <= radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcceptanceWindow {
    pub radius: f64,
}

/// The integrated transfer-operator channel on one mode.
#[derive(Debug, Clone)]
pub struct TransferChannel {
    superop: ModeChannel,
    /// `int T^H T` over the integration region, restricted to the input levels.
    completeness: CMatrix,
    grid: GridDiagnostics,
    windowed: bool,
}

/// Number of internal photon levels kept in `q^n` so that `q^n < 1e-15`.
fn internal_levels(levels: usize, q: f64) -> usize {
    if q <= 0.0 {
        return levels;
    }
    let k = ((1e-15f64).ln() / q.ln()).ceil() as usize + 1;
    k.clamp(levels, 800)
}

struct Ring {
    superop: CMatrix,
    completeness: CMatrix,
}

fn validate(g: f64, q: f64) -> Result<()> {
    if !(g >= 0.0) || !g.is_finite() {
        return Err(FockError::InvalidParameter(format!("gain must be non-negative, got {g}")));
    }
    if !(0.0..1.0).contains(&q) {
        return Err(FockError::InvalidParameter(format!("q must lie in [0, 1), got {q}")));
    }
    Ok(())
}

impl TransferChannel {
    pub fn new(levels: usize, g: f64, q: f64, grid: &TransferGrid) -> Result<Self> {
        validate(g, q)?;
        Ok(Self::integrate(levels, g, q, grid, grid.radius_for(q), false))
    }

    pub fn windowed(
        levels: usize,
        g: f64,
        q: f64,
        grid: &TransferGrid,
        window: AcceptanceWindow,
    ) -> Result<Self> {
        validate(g, q)?;
        if !(window.radius > 0.0) || !window.radius.is_finite() {
            return Err(FockError::InvalidParameter(format!(
                "window radius must be positive and finite, got {}",
                window.radius
            )));
        }
        let radius = window.radius.min(grid.radius_for(q));
        Ok(Self::integrate(levels, g, q, grid, radius, true))
    }

    fn integrate(levels: usize, g: f64, q: f64, grid: &TransferGrid, radius: f64, windowed: bool) -> Self {
        let (radii, weights) = gauss_legendre_on(grid.radial_nodes, 0.0, radius);
        let angles = grid.angular_nodes;
        let internal = internal_levels(levels, q);
        let q_pow: Vec<f64> = (0..internal).map(|n| q.powi(n as i32)).collect();
        let norm = (1.0 - q * q) / PI;

        // Trapezoid sum of e^{i k phi_j} for every harmonic k that can occur.
        let max_harmonic = 2 * (levels - 1);
        let ring_phase: Vec<f64> = (0..=2 * max_harmonic)
            .map(|idx| {
                let k = idx as f64 - max_harmonic as f64;
                (0..angles)
                    .map(|j| (k * 2.0 * PI * j as f64 / angles as f64).cos())
                    .sum::<f64>()
                    * (2.0 * PI / angles as f64)
            })
            .collect();
        let phase = |k: isize| ring_phase[(k + max_harmonic as isize) as usize];

        let ring = |i: usize| -> Ring {
            let r = radii[i];
            let w = weights[i] * r;
            let shift_out = displacement_block(Complex64::new(g * r, 0.0), levels, internal);
            let shift_in = displacement_block(Complex64::new(-r, 0.0), internal, levels);
            let mut damped = shift_in.clone();
            for n in 0..internal {
                for k in 0..levels {
                    damped[(n, k)] *= q_pow[n];
                }
            }
            let t = (&shift_out * &damped).scale(norm.sqrt());
            let c_ring = damped.adjoint() * &damped;

            let d = levels;
            let mut superop = CMatrix::zeros(d * d, d * d);
            for m in 0..d {
                for mp in 0..d {
                    for k in 0..d {
                        let tmk = t[(m, k)];
                        if tmk == ZERO {
                            continue;
                        }
                        for kp in 0..d {
                            let harmonic = (m as isize - k as isize) - (mp as isize - kp as isize);
                            let f = phase(harmonic);
                            if f != 0.0 {
                                superop[(m * d + mp, k * d + kp)] = tmk * t[(mp, kp)].conj() * (w * f);
                            }
                        }
                    }
                }
            }
            let completeness = CMatrix::from_fn(d, d, |k, kp| {
                c_ring[(k, kp)] * (norm * w * phase(k as isize - kp as isize))
            });
            Ring { superop, completeness }
        };

        #[cfg(feature = "parallel")]
        let rings: Vec<Ring> = {
            use rayon::prelude::*;
            (0..radii.len()).into_par_iter().map(ring).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rings: Vec<Ring> = (0..radii.len()).map(ring).collect();

        // Fixed-order reduction keeps results independent of the thread count.
        let mut superop = ModeChannel::zeros(levels);
        let mut completeness = CMatrix::zeros(levels, levels);
        for ring in &rings {
            superop.accumulate_matrix(&ring.superop);
            completeness += &ring.completeness;
        }
        let completeness_error = if windowed {
            f64::NAN
        } else {
            (0..levels)
                .flat_map(|k| (0..levels).map(move |kp| (k, kp)))
                .map(|(k, kp)| {
                    let target = if k == kp { 1.0 } else { 0.0 };
                    (completeness[(k, kp)] - target).norm()
                })
                .fold(0.0, f64::max)
        };
        Self {
            superop,
            completeness,
            grid: GridDiagnostics {
                radial_nodes: grid.radial_nodes,
                angular_nodes: angles,
                radius,
                completeness_error,
            },
            windowed,
        }
    }

    pub fn superop(&self) -> &ModeChannel {
        &self.superop
    }

    pub fn completeness(&self) -> &CMatrix {
        &self.completeness
    }

    pub fn grid(&self) -> &GridDiagnostics {
        &self.grid
    }

    /// `Tr(rho (C ⊗ 1))` with `C` the integrated `T^H T` on `mode`.
    pub fn acceptance(&self, rho: &DensityMatrix, mode: usize) -> Result<f64> {
        let reduced = reduce_to_mode(rho, mode)?;
        Ok((reduced.elements() * &self.completeness).trace().re)
    }

    pub fn apply(&self, rho: &DensityMatrix, mode: usize) -> Result<DensityMatrix> {
        if !self.windowed {
            let error = (rho.trace() - self.acceptance(rho, mode)?).abs();
            if error > GRID_TOLERANCE {
                return Err(FockError::GridTooCoarse { error });
            }
        }
        self.superop.apply_flagged(rho, mode, self.windowed || rho.is_subnormalized())
    }
}

fn reduce_to_mode(rho: &DensityMatrix, mode: usize) -> Result<DensityMatrix> {
    rho.space().check_mode(mode)?;
    match rho.space().modes() {
        1 => Ok(rho.clone()),
        _ => crate::state::partial_trace(rho, 1 - mode),
    }
}

/// Unconditional teleportation of one mode through the integrated transfer
/// operators (lossless squeezing only).
pub fn transfer_operator_channel(
    rho: &DensityMatrix,
    mode: usize,
    g: f64,
    q: f64,
    grid: &TransferGrid,
) -> Result<DensityMatrix> {
    TransferChannel::new(rho.space().levels(), g, q, grid)?.apply(rho, mode)
}

/// Teleportation of one mode keeping only Bell outcomes inside `window`.
///
/// The returned state is subnormalized; the acceptance probability is
/// computed from the integrated `T^H T` and so does not include the
/// truncation tail.
pub fn conditional_teleport(
    rho: &DensityMatrix,
    mode: usize,
    g: f64,
    q: f64,
    window: AcceptanceWindow,
) -> Result<(DensityMatrix, f64)> {
    let ch = TransferChannel::windowed(rho.space().levels(), g, q, &TransferGrid::default(), window)?;
    let acceptance = ch.acceptance(rho, mode)?;
    if acceptance < MIN_ACCEPTANCE {
        return Err(FockError::AcceptanceTooSmall { probability: acceptance });
    }
    Ok((ch.apply(rho, mode)?, acceptance))
}

/// Conditional teleportation of both rails, each with its own Bell
/// measurement and the same window. Returns the subnormalized output and
/// the joint acceptance probability.
pub fn conditional_teleport_dual_rail(
    rho: &DensityMatrix,
    g: f64,
    q: f64,
    window: AcceptanceWindow,
) -> Result<(DensityMatrix, f64)> {
    if rho.space().modes() != 2 {
        return Err(FockError::InvalidParameter("dual-rail teleportation needs two modes".into()));
    }
    let ch = TransferChannel::windowed(rho.space().levels(), g, q, &TransferGrid::default(), window)?;
    let joint = ch.completeness().kronecker(ch.completeness());
    let acceptance = (rho.elements() * joint).trace().re;
    if acceptance < MIN_ACCEPTANCE {
        return Err(FockError::AcceptanceTooSmall { probability: acceptance });
    }
    let out = ch.apply(&ch.apply(rho, 0)?, 1)?;
    Ok((out, acceptance))
}
