//! Acceptance checks shared by `fockport reproduce` and the acceptance tests.
//! Each check returns its verdict together with the table it was computed
//! from.

use std::f64::consts::PI;

use fockport::channel::{
    conditional_teleport_dual_rail, optimal_gain, photon_transfer_prob, teleport_dual_rail,
    teleport_mode, transfer_operator_channel, AcceptanceWindow, TeleportParams, TransferGrid,
};
use fockport::linalg::{c, max_abs_diff, CMatrix};
use fockport::metrics::{
    classical_fidelity_estimate, classical_threshold, fidelity_report, optimize_classical_strategy,
    qubit_fidelity, sweep_gain, FidelityReport,
};
use fockport::qubit::{decompose_fractions, encode_qubit, input_density, DualRailQubit, InputMixture};
use fockport::tomography::{mle_reconstruct, phase_grid, sample_homodyne, TomographySettings};
use fockport::{DensityMatrix, FockSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{round_grid, ReproduceConfig};
use crate::error::CliError;
use crate::output::{num, opt_num};

/// One reproduced table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub file: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    /// Informational checks are reported but never fail a run.
    pub informational: bool,
    pub tolerance: &'static str,
    pub summary: String,
    #[serde(skip)]
    pub tables: Vec<Table>,
}

type Check = fn(&ReproduceConfig) -> Result<Outcome, CliError>;

pub const CHECKS: [(u8, Check); 9] = [
    (1, attenuation_exactness),
    (2, closed_form_equivalence),
    (3, classical_bound),
    (4, qubit_independence),
    (5, optimal_gain_location),
    (6, loss_envelope),
    (7, multiphoton_suppression),
    (8, conditional_teleportation),
    (9, tomography_round_trip),
];

pub fn run_all(config: &ReproduceConfig) -> Result<Vec<Outcome>, CliError> {
    CHECKS.iter().map(|(_, check)| check(config)).collect()
}

fn sci(v: f64) -> String {
    format!("{v:.3e}")
}

fn two_mode(cutoff: usize) -> Result<FockSpace, CliError> {
    Ok(FockSpace::two_mode(cutoff)?)
}

fn named_qubits() -> [(&'static str, DualRailQubit); 4] {
    [
        ("|0,1>", DualRailQubit::zero_one()),
        ("|1,0>", DualRailQubit::one_zero()),
        ("psi1", DualRailQubit::psi1()),
        ("psi2", DualRailQubit::psi2()),
    ]
}

fn mixture_report(
    mix: &InputMixture,
    p: &TeleportParams,
    space: FockSpace,
) -> Result<FidelityReport, CliError> {
    let rho = input_density(mix, space)?;
    let out = teleport_dual_rail(&rho, p)?;
    Ok(fidelity_report(&rho, &out.state, &mix.qubit, mix.eta)?)
}

pub const ATTENUATION_TOL: f64 = 1e-6;

/// At `g = tanh r` without loss the teleporter maps a dual-rail qubit to
/// `g^2 |psi><psi| + (1 - g^2)|0,0><0,0|`.
pub fn attenuation_exactness(config: &ReproduceConfig) -> Result<Outcome, CliError> {
    let space = two_mode(config.cutoff)?;
    let vacuum = DensityMatrix::vacuum(space);
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for (name, q) in named_qubits() {
        let psi = encode_qubit(&q, space)?.projector();
        for r in [0.71, 1.01, 1.56] {
            let p = TeleportParams::optimal(r)?;
            let out = teleport_dual_rail(&psi, &p)?.state;
            let g2 = p.g * p.g;
            let expected = psi.elements().scale(g2) + vacuum.elements().scale(1.0 - g2);
            let err = max_abs_diff(out.elements(), &expected);
            worst = worst.max(err);
            rows.push(vec![name.to_string(), num(r), num(p.g), sci(err)]);
        }
    }
    Ok(Outcome {
        id: 1,
        name: "attenuation exactness at optimal gain",
        passed: worst <= ATTENUATION_TOL,
        informational: false,
        tolerance: "max entry error <= 1e-6",
        summary: format!("max entry error {}", sci(worst)),
        tables: vec![Table {
            file: "attenuation_exactness.csv",
            header: vec!["qubit", "r", "g", "max_abs_error"],
            rows,
        }],
    })
}

pub const GAUSSIAN_ROUTE_TOL: f64 = 1e-6;
pub const TRANSFER_ROUTE_TOL: f64 = 1e-4;
/// Levels compared against the closed form on the Gaussian route.
const CLOSED_FORM_CUTOFF: usize = 20;
pub const EQUIVALENCE_GAINS: [f64; 5] = [0.3, 0.5, 0.63, 0.79, 1.0];
pub const EQUIVALENCE_SQUEEZING: [f64; 5] = [0.3, 0.5, 0.71, 1.01, 1.3];

/// Closed-form photon transfer against the Gaussian channel and the
/// integrated transfer operators, for vacuum and single-photon inputs.
pub fn closed_form_equivalence(config: &ReproduceConfig) -> Result<Outcome, CliError> {
    let big = FockSpace::single(CLOSED_FORM_CUTOFF)?;
    let small = FockSpace::single(config.cutoff)?;
    let grid = TransferGrid::default();
    let mut rows = Vec::new();
    let (mut worst_gauss, mut worst_transfer): (f64, f64) = (0.0, 0.0);
    for &g in &EQUIVALENCE_GAINS {
        for &r in &EQUIVALENCE_SQUEEZING {
            let p = TeleportParams::new(g, r, 0.0)?;
            let q = p.q();
            let (mut e_gauss, mut e_transfer): (f64, f64) = (0.0, 0.0);
            for i in 0..2u8 {
                let out = teleport_mode(&DensityMatrix::fock(big, &[i as usize])?, 0, &p)?;
                for n in 0..=CLOSED_FORM_CUTOFF {
                    e_gauss = e_gauss.max((out.population(&[n])? - photon_transfer_prob(i, n, g, q)).abs());
                }
                let out = transfer_operator_channel(&DensityMatrix::fock(small, &[i as usize])?, 0, g, q, &grid)?;
                for n in 0..=config.cutoff {
                    e_transfer =
                        e_transfer.max((out.population(&[n])? - photon_transfer_prob(i, n, g, q)).abs());
                }
            }
            worst_gauss = worst_gauss.max(e_gauss);
            worst_transfer = worst_transfer.max(e_transfer);
            rows.push(vec![num(g), num(r), num(q), sci(e_gauss), sci(e_transfer)]);
        }
    }
    Ok(Outcome {
        id: 2,
        name: "closed-form photon transfer equivalence",
        passed: worst_gauss <= GAUSSIAN_ROUTE_TOL && worst_transfer <= TRANSFER_ROUTE_TOL,
        informational: false,
        tolerance: "Gaussian route <= 1e-6, transfer operators <= 1e-4",
        summary: format!(
            "max error Gaussian {} transfer {}",
            sci(worst_gauss),
            sci(worst_transfer)
        ),
        tables: vec![Table {
            file: "photon_transfer_equivalence.csv",
            header: vec!["g", "r", "q", "gaussian_error", "transfer_error"],
            rows,
        }],
    })
}

pub const OPTIMIZER_TOL: f64 = 1e-9;
pub const MC_ETAS: [f64; 3] = [0.5, 0.693, 1.0];

/// Optimal measure-and-prepare strategy against its closed form, plus the
/// Monte Carlo simulation at the optimum.
pub fn classical_bound(config: &ReproduceConfig) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut worst: f64 = 0.0;
    for k in 1..=10 {
        let eta = k as f64 / 10.0;
        let opt = optimize_classical_strategy(eta)?;
        let y_exact = (1.0 - eta) / (3.0 - eta);
        let err = opt
            .strategy
            .x
            .abs()
            .max((opt.strategy.y - y_exact).abs())
            .max((opt.fidelity - classical_threshold(eta)).abs());
        worst = worst.max(err);
        rows.push(vec![num(eta), num(opt.strategy.x), num(opt.strategy.y), num(opt.fidelity), sci(err)]);
    }
    let f_0693 = optimize_classical_strategy(0.693)?.fidelity;
    let rounded_ok = format!("{f_0693:.3}") == "0.769";

    let mut mc_rows = Vec::new();
    let mut mc_ok = true;
    for (i, &eta) in MC_ETAS.iter().enumerate() {
        let opt = optimize_classical_strategy(eta)?;
        let mc = classical_fidelity_estimate(
            eta,
            &opt.strategy,
            &DualRailQubit::psi1(),
            config.mc_trials,
            config.seed.wrapping_add(i as u64),
        )?;
        let sigmas = (mc.fidelity - opt.fidelity).abs() / mc.std_error;
        mc_ok &= sigmas <= 4.0;
        mc_rows.push(vec![num(eta), num(opt.fidelity), num(mc.fidelity), num(mc.std_error), num(sigmas)]);
    }
    Ok(Outcome {
        id: 3,
        name: "classical bound",
        passed: worst <= OPTIMIZER_TOL && rounded_ok && mc_ok,
        informational: false,
        tolerance: "optimizer <= 1e-9, Monte Carlo within 4 standard errors, F*(0.693) = 0.769",
        summary: format!(
            "optimizer error {}, F*(0.693) = {f_0693:.6}, Monte Carlo consistent: {mc_ok}",
            sci(worst)
        ),
        tables: vec![
            Table {
                file: "classical_optimum.csv",
                header: vec!["eta", "x", "y", "f", "max_error"],
                rows,
            },
            Table {
                file: "classical_monte_carlo.csv",
                header: vec!["eta", "f_closed", "f_mc", "std_error", "sigmas"],
                rows: mc_rows,
            },
        ],
    })
}

pub const INDEPENDENCE_TOL: f64 = 1e-9;

/// Bloch-uniform qubits from a seeded generator.
pub fn bloch_qubits(count: usize, seed: u64) -> Vec<DualRailQubit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let cos_theta: f64 = 2.0 * rng.random::<f64>() - 1.0;
            let phi = 2.0 * PI * rng.random::<f64>();
            DualRailQubit::from_bloch(cos_theta.acos(), phi)
        })
        .collect()
}

pub fn qubit_independence(config: &ReproduceConfig) -> Result<Outcome, CliError> {
    let space = two_mode(config.cutoff)?;
    let p = TeleportParams::new(0.79, 1.01, 0.25)?;
    let mut rows = Vec::new();
    let mut reports = Vec::new();
    for q in bloch_qubits(8, config.seed) {
        let mix = InputMixture::new(0.69, q)?;
        let r = mixture_report(&mix, &p, space)?;
        rows.push(vec![
            num(q.alpha().re),
            num(q.alpha().im),
            num(q.beta().re),
            num(q.beta().im),
            num(r.f_state),
            opt_num(r.f_qubit),
        ]);
        reports.push(r);
    }
    let spread = |f: &dyn Fn(&FidelityReport) -> f64| {
        let v: Vec<f64> = reports.iter().map(f).collect();
        v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min)
    };
    let s_state = spread(&|r| r.f_state);
    let s_qubit = spread(&|r| r.f_qubit.unwrap_or(f64::NAN));
    Ok(Outcome {
        id: 4,
        name: "qubit independence",
        passed: s_state <= INDEPENDENCE_TOL && s_qubit <= INDEPENDENCE_TOL,
        informational: false,
        tolerance: "spread across 8 qubits <= 1e-9",
        summary: format!("spread F_state {} F_qubit {}", sci(s_state), sci(s_qubit)),
        tables: vec![Table {
            file: "qubit_independence.csv",
            header: vec!["alpha_re", "alpha_im", "beta_re", "beta_im", "f_state", "f_qubit"],
            rows,
        }],
    })
}

pub const GAIN_LOCATION_TOL: f64 = 0.005;
pub const FINE_GAIN_STEP: f64 = 0.001;
/// Levels per mode for the fine sweep; the tail at unit gain stays below 1e-7.
const FINE_SWEEP_CUTOFF: usize = 8;
pub const COARSE_GAINS: [f64; 4] = [0.5, 0.63, 0.79, 1.0];

/// Argmax of the qubit fidelity over gain: a fine sweep near `tanh r` and the
/// four-point grid {0.50, 0.63, 0.79, 1.0}.
pub fn optimal_gain_location(config: &ReproduceConfig) -> Result<Outcome, CliError> {
    let mix = InputMixture::new(0.69, DualRailQubit::psi1())?;
    let fine: Vec<f64> = (0..=600).map(|k| round_grid(0.4 + FINE_GAIN_STEP * k as f64)).collect();
    let mut rows = Vec::new();
    let mut coarse_rows = Vec::new();
    let mut passed = true;
    let mut notes = Vec::new();
    for (r, expected_coarse) in [(0.71, 0.63), (1.01, 0.79)] {
        let sweep = sweep_gain(&mix, r, 0.0, &fine, two_mode(FINE_SWEEP_CUTOFF)?)?;
        let best = sweep.argmax_f_qubit.unwrap_or(f64::NAN);
        let offset = (best - optimal_gain(r)).abs();
        passed &= offset <= GAIN_LOCATION_TOL;
        rows.push(vec![num(r), num(optimal_gain(r)), num(best), num(sweep.argmax_f_state), sci(offset)]);

        let coarse = sweep_gain(&mix, r, 0.0, &COARSE_GAINS, two_mode(config.cutoff)?)?;
        let best_coarse = coarse.argmax_f_qubit.unwrap_or(f64::NAN);
        passed &= best_coarse == expected_coarse;
        for p in &coarse.points {
            coarse_rows.push(vec![num(r), num(p.g), num(p.report.f_state), opt_num(p.report.f_qubit)]);
        }
        notes.push(format!("r={r}: fine argmax {best}, coarse argmax {best_coarse}"));
    }
    Ok(Outcome {
        id: 5,
        name: "optimal gain location",
        passed,
        informational: false,
        tolerance: "fine argmax within 0.005 of tanh r; coarse argmax 0.63 (r=0.71), 0.79 (r=1.01)",
        summary: notes.join("; "),
        tables: vec![
            Table {
                file: "gain_argmax_fine.csv",
                header: vec!["r", "tanh_r", "argmax_f_qubit", "argmax_f_state", "offset"],
                rows,
            },
            Table {
                file: "gain_sweep_coarse.csv",
                header: vec!["r", "g", "f_state", "f_qubit"],
                rows: coarse_rows,
            },
        ],
    })
}

pub const MEASURED_F_STATE: f64 = 0.817;
pub const F_STATE_WINDOW: f64 = 0.02;
pub const MEASURED_F_QUBIT: f64 = 0.875;
pub const F_QUBIT_WINDOW: f64 = 0.04;
pub const MEASURED_SUCCESS: f64 = 0.43;
pub const SUCCESS_WINDOW: f64 = 0.04;
pub const LOSS_RANGE: (f64, f64) = (0.17, 0.32);
const LOSS_STEP: f64 = 0.001;

/// Searches the squeezed-beam loss range for a model matching the measured
/// fidelities at eta = 0.69, r = 1.01, g = 0.79, and compares the success
/// probability at r = 0.71, g = 0.63.
pub fn loss_envelope(config: &ReproduceConfig) -> Result<Outcome, CliError> {
    let space = two_mode(config.cutoff)?;
    let mix = InputMixture::new(0.69, DualRailQubit::psi1())?;
    let losses: Vec<f64> = if config.force_lossless {
        vec![0.0]
    } else {
        let n = ((LOSS_RANGE.1 - LOSS_RANGE.0) / LOSS_STEP).round() as usize;
        (0..=n).map(|k| round_grid(LOSS_RANGE.0 + LOSS_STEP * k as f64)).collect()
    };
    let mut rows = Vec::new();
    let mut matching = Vec::new();
    let (mut closest, mut closest_f, mut closest_l) = (f64::INFINITY, f64::NAN, f64::NAN);
    for &l in &losses {
        let r = mixture_report(&mix, &TeleportParams::new(0.79, 1.01, l)?, space)?;
        let fq = r.f_qubit.unwrap_or(f64::NAN);
        let in_state = (r.f_state - MEASURED_F_STATE).abs() <= F_STATE_WINDOW;
        let in_qubit = (fq - MEASURED_F_QUBIT).abs() <= F_QUBIT_WINDOW;
        if in_state && in_qubit {
            matching.push(l);
        }
        let distance = (r.f_state - MEASURED_F_STATE).abs();
        if distance < closest {
            (closest, closest_f, closest_l) = (distance, r.f_state, l);
        }
        rows.push(vec![num(l), num(r.f_state), num(fq), in_state.to_string(), in_qubit.to_string()]);
    }

    let lossless = mixture_report(&mix, &TeleportParams::new(0.79, 1.01, 0.0)?, space)?;
    let lossless_above = lossless.f_state > MEASURED_F_STATE + F_STATE_WINDOW
        && lossless.f_qubit.unwrap_or(0.0) > MEASURED_F_QUBIT + F_QUBIT_WINDOW;

    let pure = InputMixture::new(1.0, DualRailQubit::psi1())?;
    let success_params = TeleportParams::new(0.63, 0.71, 0.0)?;
    let success = mixture_report(&pure, &success_params, space)?.success_prob.unwrap_or(f64::NAN);
    let g2 = success_params.g * success_params.g;
    let success_ok = (success - 0.397).abs() < 5e-4
        && (success - g2).abs() < 1e-3
        && (success - MEASURED_SUCCESS).abs() <= SUCCESS_WINDOW;

    let summary = format!(
        "{} of {} loss values match both windows (closest F_state {:.4} at l={}); lossless F_state {:.4} F_qubit {:.4}; success probability {:.5}",
        matching.len(),
        losses.len(),
        closest_f,
        closest_l,
        lossless.f_state,
        lossless.f_qubit.unwrap_or(f64::NAN),
        success,
    );
    Ok(Outcome {
        id: 6,
        name: "measured-value envelope",
        passed: !matching.is_empty() && lossless_above && success_ok,
        informational: config.force_lossless,
        tolerance: "some l in [0.17, 0.32] with F_state in 0.817 +- 0.02 and F_qubit in 0.875 +- 0.04; success probability 0.397, within 0.04 of 0.43",
        summary,
        tables: vec![Table {
            file: "loss_envelope.csv",
            header: vec!["l", "f_state", "f_qubit", "f_state_in_window", "f_qubit_in_window"],
            rows,
        }],
    })
}

/// Multi-photon output fraction at unit gain against `g = tanh r`.
pub fn multiphoton_suppression(config: &ReproduceConfig) -> Result<Outcome, CliError> {
    let space = two_mode(config.cutoff)?;
    let mix = InputMixture::new(0.69, DualRailQubit::psi1())?;
    let rho = input_density(&mix, space)?;
    let mut rows = Vec::new();
    let mut passed = true;
    for r in [0.71, 1.01, 1.56] {
        for l in [0.0, 0.25] {
            let tuned = teleport_dual_rail(&rho, &TeleportParams::new(optimal_gain(r), r, l)?)?;
            let unit = teleport_dual_rail(&rho, &TeleportParams::new(1.0, r, l)?)?;
            let m_tuned = decompose_fractions(&tuned.state)?.multiphoton;
            let m_unit = decompose_fractions(&unit.state)?.multiphoton;
            passed &= m_unit > m_tuned;
            rows.push(vec![num(r), num(l), num(m_tuned), num(m_unit)]);
        }
    }
    Ok(Outcome {
        id: 7,
        name: "gain tuning suppresses extra photons",
        passed,
        informational: false,
        tolerance: "multiphoton(g=1) > multiphoton(g=tanh r) for every r and l",
        summary: format!("{} settings compared", rows.len()),
        tables: vec![Table {
            file: "multiphoton.csv",
            header: vec!["r", "l", "multiphoton_tanh_r", "multiphoton_unit_gain"],
            rows,
        }],
    })
}

pub const CONDITIONAL_Q: f64 = 0.3;
pub const CONDITIONAL_GAIN: f64 = 1.0;
pub const NARROW_WINDOW: f64 = 0.5;
pub const WIDE_WINDOW: f64 = 6.0;
pub const CONVERGENCE_TOL: f64 = 1e-3;
const CONDITIONAL_CUTOFF: usize = 8;

/// Post-selecting small Bell-measurement outcomes at unit gain.
pub fn conditional_teleportation(_config: &ReproduceConfig) -> Result<Outcome, CliError> {
    let space = two_mode(CONDITIONAL_CUTOFF)?;
    let q = DualRailQubit::psi1();
    let psi = encode_qubit(&q, space)?.projector();
    let r = CONDITIONAL_Q.atanh();
    let unconditional = teleport_dual_rail(&psi, &TeleportParams::new(CONDITIONAL_GAIN, r, 0.0)?)?.state;
    let f_uncond = qubit_fidelity(&q, &unconditional)?;

    let (narrow, p_narrow) =
        conditional_teleport_dual_rail(&psi, CONDITIONAL_GAIN, CONDITIONAL_Q, AcceptanceWindow { radius: NARROW_WINDOW })?;
    let f_narrow = qubit_fidelity(&q, &narrow.renormalized()?)?;
    let (wide, p_wide) =
        conditional_teleport_dual_rail(&psi, CONDITIONAL_GAIN, CONDITIONAL_Q, AcceptanceWindow { radius: WIDE_WINDOW })?;
    let wide_diff = max_abs_diff(wide.elements(), unconditional.elements());

    let passed = f_narrow > f_uncond && p_narrow < 1.0 && wide_diff <= CONVERGENCE_TOL;
    Ok(Outcome {
        id: 8,
        name: "conditional teleportation",
        passed,
        informational: false,
        tolerance: "conditional F_qubit above unconditional with acceptance < 1 at B = 0.5; B = 6 within 1e-3 of unconditional",
        summary: format!(
            "F_qubit {f_narrow:.6} vs {f_uncond:.6} at acceptance {p_narrow:.6}; B=6 deviation {}",
            sci(wide_diff)
        ),
        tables: vec![Table {
            file: "conditional.csv",
            header: vec!["window", "acceptance", "f_qubit", "max_diff_unconditional"],
            rows: vec![
                vec!["none".into(), num(1.0), num(f_uncond), num(0.0)],
                vec![num(NARROW_WINDOW), num(p_narrow), num(f_narrow), sci(max_abs_diff(narrow.elements(), unconditional.elements()))],
                vec![num(WIDE_WINDOW), num(p_wide), num(qubit_fidelity(&q, &wide.renormalized()?)?), sci(wide_diff)],
            ],
        }],
    })
}

pub const TOMOGRAPHY_CUTOFF: usize = 5;
pub const TOMOGRAPHY_MIN_FIDELITY: f64 = 0.98;

/// Hilbert-Schmidt random single-mode state.
pub fn random_density(cutoff: usize, seed: u64) -> Result<DensityMatrix, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = cutoff + 1;
    let a = CMatrix::from_fn(d, d, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    let m = &a * a.adjoint();
    let t = m.trace().re;
    Ok(DensityMatrix::new(FockSpace::single(cutoff)?, m.unscale(t))?)
}

pub fn tomography_round_trip(config: &ReproduceConfig) -> Result<Outcome, CliError> {
    let mut rows = Vec::new();
    let mut passed = true;
    let mut worst: f64 = 1.0;
    for k in 0..config.tomography_states {
        let seed = config.seed.wrapping_add(1000 + k as u64);
        let rho = random_density(TOMOGRAPHY_CUTOFF, seed)?;
        let settings = TomographySettings {
            phases: phase_grid(12),
            samples_per_phase: config.samples_per_phase,
            cutoff: TOMOGRAPHY_CUTOFF,
            seed,
            ..TomographySettings::default()
        };
        let data = sample_homodyne(&rho, &settings)?;
        let rec = mle_reconstruct(&data, &settings)?;
        let f = fockport::metrics::uhlmann_fidelity(&rec.state, &rho)?;
        let monotone = rec.log_likelihood.windows(2).all(|w| w[1] >= w[0]);
        passed &= f >= TOMOGRAPHY_MIN_FIDELITY && monotone;
        worst = worst.min(f);
        rows.push(vec![num(seed as f64), num(f), rec.iterations.to_string(), monotone.to_string()]);
    }
    Ok(Outcome {
        id: 9,
        name: "tomography round trip",
        passed,
        informational: false,
        tolerance: "fidelity >= 0.98 for each state, monotone likelihood",
        summary: format!("{} states, lowest fidelity {worst:.5}", rows.len()),
        tables: vec![Table {
            file: "tomography.csv",
            header: vec!["seed", "fidelity", "iterations", "likelihood_monotone"],
            rows,
        }],
    })
}
