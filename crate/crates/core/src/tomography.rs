//! Simulated homodyne detection and maximum-likelihood state reconstruction.

use std::f64::consts::PI;
use std::io::{Read, Write};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::linalg::{self, CMatrix};
use crate::quadrature::gauss_legendre_on;
use crate::space::FockSpace;
use crate::state::{tensor, DensityMatrix};

/// Quadrature values outside `[-RANGE, RANGE]` are not binned.
pub const RANGE: f64 = 8.0;
pub const BINS: usize = 200;
/// Resolution of the cached inverse-CDF grid used for sampling.
const SAMPLING_POINTS: usize = 8001;
const NODES_PER_BIN: usize = 8;
const MIN_PHASES: usize = 4;
const MAX_DILUTION_RETRIES: usize = 40;
const INITIAL_DILUTION: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSample {
    pub theta: f64,
    pub x: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct HomodyneDataset {
    pub samples: Vec<QuadratureSample>,
}

impl HomodyneDataset {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Reads CSV rows `theta,x` with a header line.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(reader);
        let mut samples = Vec::new();
        for row in rdr.deserialize() {
            let s: QuadratureSample = row.map_err(csv_error)?;
            if !(0.0..PI).contains(&s.theta) || !s.x.is_finite() {
                return Err(FockError::Parse(format!("invalid sample theta={} x={}", s.theta, s.x)));
            }
            samples.push(s);
        }
        Ok(Self { samples })
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        for s in &self.samples {
            w.serialize(s).map_err(csv_error)?;
        }
        w.flush().map_err(|e| FockError::Io(e.to_string()))
    }

    fn distinct_phases(&self) -> Vec<f64> {
        let mut phases: Vec<f64> = self.samples.iter().map(|s| s.theta).collect();
        phases.sort_by(f64::total_cmp);
        phases.dedup();
        phases
    }
}

fn csv_error(e: csv::Error) -> FockError {
    if e.is_io_error() {
        FockError::Io(e.to_string())
    } else {
        FockError::Parse(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TomographySettings {
    pub phases: Vec<f64>,
    pub samples_per_phase: usize,
    pub cutoff: usize,
    pub max_iters: usize,
    pub convergence_tol: f64,
    pub seed: u64,
}

/// `n` equally spaced phases in `[0, pi)`.
pub fn phase_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| PI * k as f64 / n as f64).collect()
}

impl Default for TomographySettings {
    fn default() -> Self {
        Self {
            phases: phase_grid(12),
            samples_per_phase: 10_000,
            cutoff: 6,
            max_iters: 5000,
            convergence_tol: 1e-10,
            seed: 0,
        }
    }
}

impl TomographySettings {
    pub fn validate(&self) -> Result<()> {
        if self.phases.is_empty() || self.phases.iter().any(|t| !(0.0..PI).contains(t)) {
            return Err(FockError::InvalidParameter("phases must be non-empty and lie in [0, pi)".into()));
        }
        if self.samples_per_phase == 0 {
            return Err(FockError::InvalidParameter("samples_per_phase must be at least 1".into()));
        }
        if self.cutoff == 0 {
            return Err(FockError::InvalidParameter("cutoff must be at least 1".into()));
        }
        if !(self.convergence_tol > 0.0) {
            return Err(FockError::InvalidParameter("convergence_tol must be positive".into()));
        }
        Ok(())
    }
}

/// Fock wavefunctions `<x|n>` for `n = 0..=n_max`, vacuum variance 1/2.
pub fn fock_wavefunctions(x: f64, n_max: usize) -> Vec<f64> {
    let mut psi = Vec::with_capacity(n_max + 1);
    psi.push(PI.powf(-0.25) * (-x * x / 2.0).exp());
    if n_max >= 1 {
        psi.push(2f64.sqrt() * x * psi[0]);
    }
    for n in 1..n_max {
        let nf = n as f64;
        let next = (2.0 / (nf + 1.0)).sqrt() * x * psi[n] - (nf / (nf + 1.0)).sqrt() * psi[n - 1];
        psi.push(next);
    }
    psi
}

fn require_single_mode(rho: &DensityMatrix) -> Result<()> {
    if rho.space().modes() != 1 {
        return Err(FockError::InvalidParameter("homodyne detection acts on one mode".into()));
    }
    Ok(())
}

// `sum_mn rho_mn e^{-i(m-n) theta} psi_m psi_n`, with the phase folded into `psi`.
fn density_at(rho: &CMatrix, psi: &[f64], theta: f64) -> f64 {
    let d = rho.nrows();
    let v: Vec<Complex64> =
        (0..d).map(|n| Complex64::from_polar(psi[n], n as f64 * theta)).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for m in 0..d {
        let mut row = Complex64::new(0.0, 0.0);
        for n in 0..d {
            row += rho[(m, n)] * v[n];
        }
        total += v[m].conj() * row;
    }
    total.re.max(0.0)
}

/// Probability density of the quadrature `x_theta = x cos(theta) + p sin(theta)`.
pub fn quadrature_pdf(rho: &DensityMatrix, theta: f64) -> Result<impl Fn(f64) -> f64 + '_> {
    require_single_mode(rho)?;
    let n_max = rho.space().cutoff();
    Ok(move |x: f64| density_at(rho.elements(), &fock_wavefunctions(x, n_max), theta))
}

struct InverseCdf {
    grid: Vec<f64>,
    cdf: Vec<f64>,
}

impl InverseCdf {
    fn new(pdf: impl Fn(f64) -> f64) -> Self {
        let h = 2.0 * RANGE / (SAMPLING_POINTS - 1) as f64;
        let grid: Vec<f64> = (0..SAMPLING_POINTS).map(|i| -RANGE + h * i as f64).collect();
        let values: Vec<f64> = grid.iter().map(|&x| pdf(x)).collect();
        let mut cdf = vec![0.0; SAMPLING_POINTS];
        for i in 1..SAMPLING_POINTS {
            cdf[i] = cdf[i - 1] + 0.5 * h * (values[i] + values[i - 1]);
        }
        let total = cdf[SAMPLING_POINTS - 1];
        for c in &mut cdf {
            *c /= total;
        }
        Self { grid, cdf }
    }

    fn sample(&self, u: f64) -> f64 {
        let i = self.cdf.partition_point(|&c| c < u).clamp(1, SAMPLING_POINTS - 1);
        let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
        let t = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.5 };
        self.grid[i - 1] + t * (self.grid[i] - self.grid[i - 1])
    }
}

fn sample_phase(rho: &DensityMatrix, theta: f64, index: usize, settings: &TomographySettings) -> Vec<QuadratureSample> {
    let n_max = rho.space().cutoff();
    let inv = InverseCdf::new(|x| density_at(rho.elements(), &fock_wavefunctions(x, n_max), theta));
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    rng.set_stream(index as u64);
    (0..settings.samples_per_phase)
        .map(|_| QuadratureSample { theta, x: inv.sample(rng.random::<f64>()) })
        .collect()
}

/// Draws `samples_per_phase` quadratures at each phase. Each phase uses its own
/// random stream derived from the seed, so the output does not depend on
/// scheduling.
pub fn sample_homodyne(rho: &DensityMatrix, settings: &TomographySettings) -> Result<HomodyneDataset> {
    require_single_mode(rho)?;
    settings.validate()?;
    let phases: Vec<(usize, f64)> = settings.phases.iter().copied().enumerate().collect();
    #[cfg(feature = "parallel")]
    let chunks: Vec<Vec<QuadratureSample>> = {
        use rayon::prelude::*;
        phases.par_iter().map(|&(i, t)| sample_phase(rho, t, i, settings)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let chunks: Vec<Vec<QuadratureSample>> =
        phases.iter().map(|&(i, t)| sample_phase(rho, t, i, settings)).collect();
    Ok(HomodyneDataset { samples: chunks.concat() })
}

/// Overlap integrals `int_bin psi_m psi_n dx` for every bin.
fn bin_overlaps(n_max: usize) -> Vec<CMatrix> {
    let width = 2.0 * RANGE / BINS as f64;
    (0..BINS)
        .map(|j| {
            let a = -RANGE + width * j as f64;
            let (nodes, weights) = gauss_legendre_on(NODES_PER_BIN, a, a + width);
            let mut m = CMatrix::zeros(n_max + 1, n_max + 1);
            for (x, w) in nodes.iter().zip(&weights) {
                let psi = fock_wavefunctions(*x, n_max);
                for r in 0..=n_max {
                    for c in 0..=n_max {
                        m[(r, c)] += Complex64::new(w * psi[r] * psi[c], 0.0);
                    }
                }
            }
            m
        })
        .collect()
}

fn bin_index(x: f64) -> Option<usize> {
    if !(-RANGE..RANGE).contains(&x) {
        return None;
    }
    let width = 2.0 * RANGE / BINS as f64;
    Some((((x + RANGE) / width) as usize).min(BINS - 1))
}

/// Binned projector with its observed frequency.
struct Outcome {
    projector: CMatrix,
    frequency: f64,
}

fn binned_outcomes(data: &HomodyneDataset, n_max: usize) -> Vec<Outcome> {
    let phases = data.distinct_phases();
    let mut counts = vec![vec![0u64; BINS]; phases.len()];
    let mut total = 0u64;
    for s in &data.samples {
        let k = phases.partition_point(|&t| t < s.theta);
        if let Some(j) = bin_index(s.x) {
            counts[k][j] += 1;
            total += 1;
        }
    }
    let overlaps = bin_overlaps(n_max);
    let mut outcomes = Vec::new();
    for (k, &theta) in phases.iter().enumerate() {
        let phase = CMatrix::from_fn(n_max + 1, n_max + 1, |m, n| {
            Complex64::from_polar(1.0, (m as f64 - n as f64) * theta)
        });
        for (j, &count) in counts[k].iter().enumerate() {
            if count > 0 {
                outcomes.push(Outcome {
                    projector: overlaps[j].component_mul(&phase),
                    frequency: count as f64 / total as f64,
                });
            }
        }
    }
    outcomes
}

fn probability(rho: &CMatrix, projector: &CMatrix) -> f64 {
    // Tr(rho P) for Hermitian arguments.
    rho.iter().zip(projector.transpose().iter()).map(|(a, b)| (a * b).re).sum::<f64>().max(1e-300)
}

fn log_likelihood(rho: &CMatrix, outcomes: &[Outcome]) -> f64 {
    outcomes.iter().map(|o| o.frequency * probability(rho, &o.projector).ln()).sum()
}

fn r_operator(rho: &CMatrix, outcomes: &[Outcome]) -> CMatrix {
    let d = rho.nrows();
    let mut r = CMatrix::zeros(d, d);
    for o in outcomes {
        let w = o.frequency / probability(rho, &o.projector);
        r += o.projector.scale(w);
    }
    r
}

#[derive(Debug, Clone, Serialize)]
pub struct MleReconstruction {
    pub state: DensityMatrix,
    /// Mean log-likelihood per binned sample after each accepted iteration,
    /// starting with the initial guess.
    pub log_likelihood: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// Samples outside the binned range.
    pub discarded: usize,
}

/// Iterative `R rho R` maximum-likelihood reconstruction on a single mode.
/// When a step lowers the likelihood, `R` is diluted to `(I + eps R)/(1 + eps)`
/// with `eps` halved from 0.5 until the step succeeds.
pub fn mle_reconstruct(data: &HomodyneDataset, settings: &TomographySettings) -> Result<MleReconstruction> {
    settings.validate()?;
    if data.is_empty() {
        return Err(FockError::EmptyDataset);
    }
    let phases = data.distinct_phases().len();
    if phases < MIN_PHASES {
        return Err(FockError::InvalidParameter(format!(
            "reconstruction needs at least {MIN_PHASES} distinct phases, got {phases}"
        )));
    }
    let n_max = settings.cutoff;
    let space = FockSpace::single(n_max)?;
    let d = space.dim();
    let outcomes = binned_outcomes(data, n_max);
    if outcomes.is_empty() {
        return Err(FockError::EmptyDataset);
    }
    let discarded = data.samples.iter().filter(|s| bin_index(s.x).is_none()).count();

    let identity = CMatrix::identity(d, d);
    let mut rho = identity.unscale(d as f64);
    let mut ll = log_likelihood(&rho, &outcomes);
    let mut history = vec![ll];
    let mut converged = false;
    let mut iterations = 0;
    while iterations < settings.max_iters {
        iterations += 1;
        let r = r_operator(&rho, &outcomes);
        let step = |op: &CMatrix| -> (CMatrix, f64) {
            let next = linalg::hermitian_part(&(op * &rho * op));
            let next = next.unscale(linalg::trace(&next).re);
            let l = log_likelihood(&next, &outcomes);
            (next, l)
        };
        let (mut next, mut next_ll) = step(&r);
        let mut eps = INITIAL_DILUTION;
        let mut retries = 0;
        while next_ll < ll {
            if retries == MAX_DILUTION_RETRIES {
                return Err(FockError::ConvergenceFailure { iteration: iterations });
            }
            let diluted = (&identity + r.scale(eps)).unscale(1.0 + eps);
            (next, next_ll) = step(&diluted);
            eps /= 2.0;
            retries += 1;
        }
        let gain = next_ll - ll;
        rho = next;
        ll = next_ll;
        history.push(ll);
        if gain < settings.convergence_tol {
            converged = true;
            break;
        }
    }
    Ok(MleReconstruction {
        state: DensityMatrix::new(space, rho)?,
        log_likelihood: history,
        iterations,
        converged,
        discarded,
    })
}

/// Two-mode state as the tensor product of per-mode reconstructions. Only
/// meaningful for product states; correlations between the modes are lost.
pub fn reconstruct_dual_rail_product(
    mode1: &HomodyneDataset,
    mode2: &HomodyneDataset,
    settings: &TomographySettings,
) -> Result<DensityMatrix> {
    let a = mle_reconstruct(mode1, settings)?.state;
    let b = mle_reconstruct(mode2, settings)?.state;
    tensor(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::metrics::uhlmann_fidelity;
    use crate::qubit::annihilation;
    use crate::state::PureState;

    fn single(cutoff: usize) -> FockSpace {
        FockSpace::single(cutoff).unwrap()
    }

    fn superposition(cutoff: usize) -> DensityMatrix {
        let s = single(cutoff);
        let mut amps = crate::linalg::CVector::zeros(s.dim());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        amps[0] = c(h, 0.0);
        amps[1] = c(h, 0.0);
        PureState::new(s, amps).unwrap().projector()
    }

    fn random_state(cutoff: usize, seed: u64) -> DensityMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = cutoff + 1;
        let a = CMatrix::from_fn(d, d, |_, _| c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
        let m = &a * a.adjoint();
        let t = linalg::trace(&m).re;
        DensityMatrix::new(single(cutoff), m.unscale(t)).unwrap()
    }

    fn integrate(f: impl Fn(f64) -> f64) -> f64 {
        let (nodes, weights) = gauss_legendre_on(200, -RANGE, RANGE);
        nodes.iter().zip(&weights).map(|(x, w)| w * f(*x)).sum()
    }

    #[test]
    fn wavefunctions_are_orthonormal() {
        let n = 15;
        for a in 0..=n {
            for b in 0..=n {
                let v = integrate(|x| {
                    let psi = fock_wavefunctions(x, n);
                    psi[a] * psi[b]
                });
                let expected = if a == b { 1.0 } else { 0.0 };
                assert!((v - expected).abs() < 1e-10, "{a} {b} {v}");
            }
        }
    }

    #[test]
    fn vacuum_and_single_photon_densities() {
        let vac = DensityMatrix::vacuum(single(6));
        let one = DensityMatrix::fock(single(6), &[1]).unwrap();
        for theta in [0.0, 0.7, 2.5] {
            let p = quadrature_pdf(&vac, theta).unwrap();
            let q = quadrature_pdf(&one, theta).unwrap();
            for x in [-2.0f64, -0.3, 0.0, 0.4, 1.7] {
                let gauss = (-x * x).exp() / PI.sqrt();
                assert!((p(x) - gauss).abs() < 1e-14);
                assert!((q(x) - 2.0 * x * x * gauss).abs() < 1e-14);
            }
            assert!((integrate(&p) - 1.0).abs() < 1e-6);
            assert!((integrate(|x| x * x * p(x)) - 0.5).abs() < 1e-10);
            assert_eq!(q(0.0), 0.0);
        }
    }

    #[test]
    fn second_moments_match_operator_expectation() {
        let rho = random_state(5, 9);
        // x_theta^2 on a larger space so the top level keeps its a a^dag term.
        let a = annihilation(single(7), 0);
        let mut big = CMatrix::zeros(8, 8);
        big.view_mut((0, 0), (6, 6)).copy_from(rho.elements());
        for theta in [0.0, 0.4, 1.3, 2.9] {
            let e = Complex64::from_polar(1.0, -theta);
            let x = (a.map(|v| v * e) + a.adjoint().map(|v| v * e.conj())).unscale(2f64.sqrt());
            let expected = linalg::trace(&(&big * &x * &x)).re;
            let p = quadrature_pdf(&rho, theta).unwrap();
            assert!((integrate(|t| t * t * p(t)) - expected).abs() < 1e-8, "theta={theta}");
            assert!((integrate(&p) - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn diagonal_states_are_phase_insensitive() {
        let rho = DensityMatrix::diagonal(single(3), &[0.1, 0.2, 0.3, 0.4]).unwrap();
        let p0 = quadrature_pdf(&rho, 0.0).unwrap();
        let p1 = quadrature_pdf(&rho, 1.1).unwrap();
        for x in [-1.0, 0.2, 2.3] {
            assert!((p0(x) - p1(x)).abs() < 1e-14);
        }
    }

    #[test]
    fn vacuum_sample_variance() {
        let settings = TomographySettings { samples_per_phase: 10_000, seed: 5, ..Default::default() };
        let data = sample_homodyne(&DensityMatrix::vacuum(single(4)), &settings).unwrap();
        assert_eq!(data.len(), 120_000);
        let n = data.len() as f64;
        let mean = data.samples.iter().map(|s| s.x).sum::<f64>() / n;
        let var = data.samples.iter().map(|s| (s.x - mean).powi(2)).sum::<f64>() / n;
        assert!((var - 0.5).abs() < 0.01, "{var}");
    }

    #[test]
    fn single_photon_rarely_near_origin() {
        let settings = TomographySettings { samples_per_phase: 10_000, seed: 1, ..Default::default() };
        let data = sample_homodyne(&DensityMatrix::fock(single(4), &[1]).unwrap(), &settings).unwrap();
        let near = data.samples.iter().filter(|s| s.x.abs() < 0.1).count() as f64 / data.len() as f64;
        assert!(near < 0.006, "{near}");
    }

    #[test]
    fn sampling_is_seeded() {
        let rho = superposition(3);
        let settings = TomographySettings { samples_per_phase: 200, seed: 3, ..Default::default() };
        let a = sample_homodyne(&rho, &settings).unwrap();
        let b = sample_homodyne(&rho, &settings).unwrap();
        let c = sample_homodyne(&rho, &TomographySettings { seed: 4, ..settings }).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn csv_round_trip() {
        let rho = superposition(3);
        let settings = TomographySettings { samples_per_phase: 50, ..Default::default() };
        let data = sample_homodyne(&rho, &settings).unwrap();
        let mut buf = Vec::new();
        data.write_csv(&mut buf).unwrap();
        assert!(buf.starts_with(b"theta,x\n"));
        assert_eq!(HomodyneDataset::read_csv(buf.as_slice()).unwrap(), data);
        assert!(matches!(
            HomodyneDataset::read_csv("theta,x\n0.1,abc\n".as_bytes()),
            Err(FockError::Parse(_))
        ));
    }

    #[test]
    fn settings_json_defaults() {
        let s: TomographySettings = serde_json::from_str(r#"{"seed": 9, "cutoff": 4}"#).unwrap();
        assert_eq!(s.phases.len(), 12);
        assert_eq!(s.seed, 9);
        assert!(serde_json::from_str::<TomographySettings>(r#"{"bogus": 1}"#).is_err());
        assert!(TomographySettings { convergence_tol: 0.0, ..Default::default() }.validate().is_err());
    }

    // With 1e5 samples the excess quadrature variance fluctuates by about
    // 2e-3, and the positivity constraint turns upward fluctuations into
    // photon population, so the vacuum is recovered to a few parts in 1e3.
    #[test]
    fn reconstructs_vacuum() {
        let settings = TomographySettings { samples_per_phase: 8_334, cutoff: 4, seed: 2, ..Default::default() };
        let data = sample_homodyne(&DensityMatrix::vacuum(single(4)), &settings).unwrap();
        let rec = mle_reconstruct(&data, &settings).unwrap();
        let f = uhlmann_fidelity(&rec.state, &DensityMatrix::vacuum(single(4))).unwrap();
        assert!(f > 0.995, "{f}");
        assert!(rec.converged);
    }

    #[test]
    fn reconstructs_superposition_and_likelihood_rises() {
        let settings = TomographySettings { cutoff: 4, seed: 8, ..Default::default() };
        let rho = superposition(4);
        let data = sample_homodyne(&rho, &settings).unwrap();
        let rec = mle_reconstruct(&data, &settings).unwrap();
        assert!(uhlmann_fidelity(&rec.state, &rho).unwrap() > 0.99);
        for w in rec.log_likelihood.windows(2) {
            assert!(w[1] >= w[0]);
        }
        assert!(rec.state.min_eigenvalue() > -1e-9);
        assert!((rec.state.trace() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bin_projectors_integrate_the_density() {
        let rho = random_state(4, 13);
        let overlaps = bin_overlaps(4);
        let width = 2.0 * RANGE / BINS as f64;
        for theta in [0.3, 2.2] {
            let phase = CMatrix::from_fn(5, 5, |m, n| Complex64::from_polar(1.0, (m as f64 - n as f64) * theta));
            let pdf = quadrature_pdf(&rho, theta).unwrap();
            for j in [70, 99, 130] {
                let a = -RANGE + width * j as f64;
                let (nodes, weights) = gauss_legendre_on(20, a, a + width);
                let direct: f64 = nodes.iter().zip(&weights).map(|(x, w)| w * pdf(*x)).sum();
                let via = probability(rho.elements(), &overlaps[j].component_mul(&phase));
                assert!((direct - via).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn reconstructs_state_with_complex_coherences() {
        let rho = random_state(3, 21);
        let settings = TomographySettings { samples_per_phase: 8_000, cutoff: 3, seed: 4, ..Default::default() };
        let data = sample_homodyne(&rho, &settings).unwrap();
        let rec = mle_reconstruct(&data, &settings).unwrap();
        assert!(uhlmann_fidelity(&rec.state, &rho).unwrap() > 0.98);
    }

    #[test]
    fn rejects_empty_or_single_phase_data() {
        let settings = TomographySettings::default();
        assert!(matches!(
            mle_reconstruct(&HomodyneDataset::default(), &settings),
            Err(FockError::EmptyDataset)
        ));
        let one_phase = HomodyneDataset { samples: vec![QuadratureSample { theta: 0.0, x: 0.1 }; 10] };
        assert!(mle_reconstruct(&one_phase, &settings).is_err());
    }

    #[test]
    fn product_reconstruction_of_vacuum_pair() {
        let settings = TomographySettings { samples_per_phase: 5_000, cutoff: 3, ..Default::default() };
        let vac = DensityMatrix::vacuum(single(3));
        let a = sample_homodyne(&vac, &settings).unwrap();
        let b = sample_homodyne(&vac, &TomographySettings { seed: 1, ..settings.clone() }).unwrap();
        let rec = reconstruct_dual_rail_product(&a, &b, &settings).unwrap();
        let target = DensityMatrix::vacuum(FockSpace::two_mode(3).unwrap());
        assert!(uhlmann_fidelity(&rec, &target).unwrap() > 0.99);
    }
}
