//! Fidelities, the classical bound, and gain sweeps.

use serde::{Deserialize, Serialize};

use crate::channel::{photon_transfer_prob, teleport_dual_rail, TeleportParams};
use crate::error::{FockError, Result};
use crate::linalg;
use crate::qubit::{decompose_fractions, input_density, qubit_basis, DualRailQubit, InputMixture};
use crate::space::FockSpace;
use crate::state::{subspace_block, DensityMatrix, EMPTY_SUBSPACE_WEIGHT};

pub use crate::classical::{classical_fidelity_estimate, simulate_classical_teleporter, MonteCarloFidelity};

/// Largest trace deviation accepted by [`uhlmann_fidelity`]. Truncated
/// channel outputs lose a little probability above the cutoff.
pub const FIDELITY_TRACE_TOLERANCE: f64 = 1e-3;

/// Qubit fidelity of the best measure-and-prepare strategy on a pure qubit.
pub const QUBIT_CLASSICAL_LIMIT: f64 = 2.0 / 3.0;

/// Gains closer than this are treated as equal when picking an argmax.
const TIE_TOLERANCE: f64 = 1e-12;

fn check_trace(rho: &DensityMatrix) -> Result<()> {
    let trace = rho.trace();
    if (trace - 1.0).abs() > FIDELITY_TRACE_TOLERANCE {
        return Err(FockError::InvalidTrace { trace });
    }
    Ok(())
}

/// `[Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2`.
pub fn uhlmann_fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.space() != sigma.space() {
        return Err(FockError::DimensionMismatch {
            expected: rho.space().dim(),
            actual: sigma.space().dim(),
        });
    }
    check_trace(rho)?;
    check_trace(sigma)?;
    let root = linalg::psd_sqrt(rho.elements())?;
    let inner = &root * sigma.elements() * &root;
    let (values, _) = linalg::clamped_spectrum(&linalg::hermitian_part(&inner))?;
    let f: f64 = values.iter().map(|v| v.max(0.0).sqrt()).sum();
    Ok((f * f).clamp(0.0, 1.0))
}

/// Overlap of `psi` with the renormalized qubit block of a two-mode state.
pub fn qubit_fidelity(psi: &DualRailQubit, rho: &DensityMatrix) -> Result<f64> {
    let block = subspace_block(rho, &qubit_basis(rho.space())?)?.block;
    let v = psi.as_vector();
    Ok(v.dotc(&(&block * &v)).re.clamp(0.0, 1.0))
}

/// `1 - eta/3`.
pub fn classical_threshold(eta: f64) -> f64 {
    1.0 - eta / 3.0
}

/// Measure-and-prepare strategy after a photon-number measurement: send a
/// random qubit with probability `x` on a vacuum outcome, send vacuum with
/// probability `y` on a qubit outcome.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalStrategy {
    pub x: f64,
    pub y: f64,
}

impl ClassicalStrategy {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        for (name, v) in [("x", x), ("y", y)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(FockError::InvalidParameter(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(Self { x, y })
    }
}

// F = (sqrt(a) + sqrt(b))^2 with a, b linear in x and y.
fn strategy_terms(x: f64, y: f64, eta: f64) -> (f64, f64) {
    let a = eta * (x * (1.0 - eta) / 2.0 + 2.0 * (1.0 - y) * eta / 3.0);
    let b = (1.0 - eta) * ((1.0 - x) * (1.0 - eta) + y * eta);
    (a.max(0.0), b.max(0.0))
}

pub fn classical_strategy_fidelity(s: &ClassicalStrategy, eta: f64) -> f64 {
    let (a, b) = strategy_terms(s.x, s.y, eta);
    (a.sqrt() + b.sqrt()).powi(2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalOptimum {
    pub strategy: ClassicalStrategy,
    pub fidelity: f64,
    /// Coordinate sweeps used by the refinement.
    pub sweeps: usize,
    pub converged: bool,
}

const GRID_STEPS: usize = 100;
const MAX_SWEEPS: usize = 50;
const BISECTION_STEPS: usize = 200;

// Sign-carrying part of d/dt sqrt(v): slope / sqrt(v), infinite at v = 0.
fn root_slope(value: f64, slope: f64) -> f64 {
    if slope == 0.0 {
        0.0
    } else if value <= 0.0 {
        slope.signum() * f64::INFINITY
    } else {
        slope / value.sqrt()
    }
}

// Maximizes a concave function on [0, 1] given the sign of its derivative.
// Flat or decreasing at 0 resolves to 0.
fn maximize_unit_interval(derivative: impl Fn(f64) -> f64) -> f64 {
    if derivative(0.0) <= 0.0 {
        return 0.0;
    }
    if derivative(1.0) >= 0.0 {
        return 1.0;
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if derivative(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Maximizes [`classical_strategy_fidelity`] over `[0, 1]^2`: a grid with step
/// 0.01 followed by coordinate ascent. The objective is jointly concave, so
/// each coordinate step locates the root of the partial derivative by
/// bisection. At `eta = 0` the objective does not depend on `y`, which is
/// reported as 0.
pub fn optimize_classical_strategy(eta: f64) -> Result<ClassicalOptimum> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(FockError::InvalidParameter(format!("eta must lie in [0, 1], got {eta}")));
    }
    let fid = |x: f64, y: f64| classical_strategy_fidelity(&ClassicalStrategy { x, y }, eta);
    let (mut x, mut y, mut best) = (0.0, 0.0, f64::NEG_INFINITY);
    for i in 0..=GRID_STEPS {
        for j in 0..=GRID_STEPS {
            let (gx, gy) = (i as f64 / GRID_STEPS as f64, j as f64 / GRID_STEPS as f64);
            let f = fid(gx, gy);
            if f > best {
                (x, y, best) = (gx, gy, f);
            }
        }
    }

    let a_x = eta * (1.0 - eta) / 2.0;
    let b_x = -(1.0 - eta) * (1.0 - eta);
    let a_y = -2.0 * eta * eta / 3.0;
    let b_y = (1.0 - eta) * eta;
    let mut converged = false;
    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS {
        sweeps += 1;
        let nx = maximize_unit_interval(|t| {
            let (a, b) = strategy_terms(t, y, eta);
            root_slope(a, a_x) + root_slope(b, b_x)
        });
        let ny = maximize_unit_interval(|t| {
            let (a, b) = strategy_terms(nx, t, eta);
            root_slope(a, a_y) + root_slope(b, b_y)
        });
        let moved = (nx - x).abs().max((ny - y).abs());
        (x, y) = (nx, ny);
        if moved < 1e-14 {
            converged = true;
            break;
        }
    }
    Ok(ClassicalOptimum {
        strategy: ClassicalStrategy { x, y },
        fidelity: fid(x, y),
        sweeps,
        converged,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoryFidelities {
    pub f_state: f64,
    pub f_qubit: f64,
}

/// Closed-form fidelities of the lossless teleporter for a vacuum/qubit
/// mixture with qubit weight `eta`.
pub fn theory_fidelities(eta: f64, g: f64, q: f64) -> TheoryFidelities {
    let p00 = photon_transfer_prob(0, 0, g, q);
    let p01 = photon_transfer_prob(0, 1, g, q);
    let p10 = photon_transfer_prob(1, 0, g, q);
    let p11 = photon_transfer_prob(1, 1, g, q);
    let vac = (1.0 - eta) * p00 + eta * p10;
    let one = (1.0 - eta) * p01 + eta * p11;
    let f_state = p00 * (((1.0 - eta) * vac).sqrt() + (eta * one).sqrt()).powi(2);
    let f_qubit = p00 * one / (p00 * one + p01 * vac);
    TheoryFidelities { f_state, f_qubit }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonFractions {
    pub vacuum: f64,
    pub qubit: f64,
    pub multiphoton: f64,
}

/// Figures of merit for one teleported state. Qubit fields are absent when the
/// input or output has no weight in the qubit subspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FidelityReport {
    pub f_state: f64,
    pub f_qubit: Option<f64>,
    pub f_thr: f64,
    pub eta_in: f64,
    #[serde(flatten)]
    pub fractions_out: PhotonFractions,
    /// Output qubit weight over input qubit weight.
    pub success_prob: Option<f64>,
    /// `f_state > f_thr`.
    pub beats_state_bound: bool,
    /// `f_qubit > 2/3`.
    pub beats_qubit_bound: Option<bool>,
}

pub fn fidelity_report(
    rho_in: &DensityMatrix,
    rho_out: &DensityMatrix,
    psi: &DualRailQubit,
    eta: f64,
) -> Result<FidelityReport> {
    let f_state = uhlmann_fidelity(rho_in, rho_out)?;
    let f_thr = classical_threshold(eta);
    let frac_in = decompose_fractions(rho_in)?;
    let frac_out = decompose_fractions(rho_out)?;
    let qubit_present = frac_in.qubit >= EMPTY_SUBSPACE_WEIGHT && frac_out.qubit >= EMPTY_SUBSPACE_WEIGHT;
    let f_qubit = if qubit_present { Some(qubit_fidelity(psi, rho_out)?) } else { None };
    let success_prob = (frac_in.qubit >= EMPTY_SUBSPACE_WEIGHT).then(|| frac_out.qubit / frac_in.qubit);
    Ok(FidelityReport {
        f_state,
        f_qubit,
        f_thr,
        eta_in: eta,
        fractions_out: PhotonFractions {
            vacuum: frac_out.vacuum,
            qubit: frac_out.qubit,
            multiphoton: frac_out.multiphoton,
        },
        success_prob,
        beats_state_bound: f_state > f_thr,
        beats_qubit_bound: f_qubit.map(|f| f > QUBIT_CLASSICAL_LIMIT),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainPoint {
    pub g: f64,
    #[serde(flatten)]
    pub report: FidelityReport,
    pub tail_mass: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GainSweep {
    pub r: f64,
    pub l: f64,
    pub points: Vec<GainPoint>,
    pub argmax_f_state: f64,
    pub argmax_f_qubit: Option<f64>,
}

/// Largest value's gain, preferring the smaller gain on ties.
pub fn argmax_gain(points: &[(f64, f64)]) -> Option<f64> {
    let mut order: Vec<&(f64, f64)> = points.iter().filter(|(_, f)| f.is_finite()).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut best: Option<(f64, f64)> = None;
    for &(g, f) in order {
        match best {
            Some((_, bf)) if f <= bf + TIE_TOLERANCE => {}
            _ => best = Some((g, f)),
        }
    }
    best.map(|(g, _)| g)
}

fn sweep_point(mix: &InputMixture, space: FockSpace, g: f64, r: f64, l: f64) -> Result<GainPoint> {
    let p = TeleportParams::new(g, r, l)?;
    let rho_in = input_density(mix, space)?;
    let out = teleport_dual_rail(&rho_in, &p)?;
    let report = fidelity_report(&rho_in, &out.state, &mix.qubit, mix.eta)?;
    Ok(GainPoint { g, report, tail_mass: out.diagnostics.tail_mass })
}

/// Teleports the mixture at each gain. Points keep the order of `gains`.
pub fn sweep_gain(
    mix: &InputMixture,
    r: f64,
    l: f64,
    gains: &[f64],
    space: FockSpace,
) -> Result<GainSweep> {
    if gains.is_empty() {
        return Err(FockError::InvalidParameter("gain list is empty".into()));
    }
    #[cfg(feature = "parallel")]
    let points: Result<Vec<GainPoint>> = {
        use rayon::prelude::*;
        gains.par_iter().map(|&g| sweep_point(mix, space, g, r, l)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let points: Result<Vec<GainPoint>> = gains.iter().map(|&g| sweep_point(mix, space, g, r, l)).collect();
    let points = points?;

    let state: Vec<(f64, f64)> = points.iter().map(|p| (p.g, p.report.f_state)).collect();
    let qubit: Vec<(f64, f64)> =
        points.iter().filter_map(|p| p.report.f_qubit.map(|f| (p.g, f))).collect();
    Ok(GainSweep {
        r,
        l,
        argmax_f_state: argmax_gain(&state).expect("non-empty sweep"),
        argmax_f_qubit: argmax_gain(&qubit),
        points,
    })
}
