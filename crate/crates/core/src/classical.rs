//! Monte Carlo model of the measure-and-prepare teleporter.
//!
//! Alice measures the photon number of the input. On a vacuum outcome she
//! sends a random qubit with probability `x` and vacuum otherwise. On a qubit
//! outcome she measures along a random Bloch axis and resends the eigenstate
//! she found, or vacuum with probability `y`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{FockError, Result};
use crate::linalg::{c, CMatrix};
use crate::metrics::{uhlmann_fidelity, ClassicalStrategy};
use crate::qubit::{input_density, DualRailQubit, InputMixture};
use crate::space::FockSpace;
use crate::state::DensityMatrix;

const BATCHES: usize = 20;

#[derive(Debug, Clone, Copy, Default)]
struct Tally {
    trials: u64,
    vacuum: u64,
    qubit: u64,
    bloch: [f64; 3],
}

impl Tally {
    fn merge(&mut self, other: &Tally) {
        self.trials += other.trials;
        self.vacuum += other.vacuum;
        self.qubit += other.qubit;
        for k in 0..3 {
            self.bloch[k] += other.bloch[k];
        }
    }

    fn add_qubit(&mut self, m: [f64; 3]) {
        self.qubit += 1;
        for (b, v) in self.bloch.iter_mut().zip(m) {
            *b += v;
        }
    }

    /// Average sent state on the two-mode space with cutoff 1.
    fn state(&self) -> DensityMatrix {
        let space = FockSpace::two_mode(1).expect("valid space");
        let n = self.trials as f64;
        let [bx, by, bz] = self.bloch.map(|v| v / n);
        let w = self.qubit as f64 / n;
        let i01 = space.index(&[0, 1]).unwrap();
        let i10 = space.index(&[1, 0]).unwrap();
        let mut m = CMatrix::zeros(space.dim(), space.dim());
        m[(0, 0)] = c(self.vacuum as f64 / n, 0.0);
        m[(i01, i01)] = c((w + bz) / 2.0, 0.0);
        m[(i10, i10)] = c((w - bz) / 2.0, 0.0);
        m[(i10, i01)] = c(bx / 2.0, by / 2.0);
        m[(i01, i10)] = c(bx / 2.0, -by / 2.0);
        DensityMatrix::new(space, m).expect("tally is a valid state")
    }
}

fn random_axis(rng: &mut ChaCha8Rng) -> [f64; 3] {
    let cos_theta = 2.0 * rng.random::<f64>() - 1.0;
    let phi = std::f64::consts::TAU * rng.random::<f64>();
    let sin_theta = (1.0 - cos_theta * cos_theta).max(0.0).sqrt();
    [sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta]
}

// Bloch vector with |0,1> along +z.
fn bloch_vector(q: &DualRailQubit) -> [f64; 3] {
    let coherence = q.alpha().conj() * q.beta() * 2.0;
    [coherence.re, coherence.im, q.alpha().norm_sqr() - q.beta().norm_sqr()]
}

fn run(eta: f64, s: &ClassicalStrategy, psi: &DualRailQubit, trials: u64, rng: &mut ChaCha8Rng) -> Tally {
    let target = bloch_vector(psi);
    let mut t = Tally { trials, ..Tally::default() };
    for _ in 0..trials {
        if rng.random::<f64>() >= eta {
            if rng.random::<f64>() < s.x {
                let m = random_axis(rng);
                t.add_qubit(m);
            } else {
                t.vacuum += 1;
            }
        } else {
            let axis = random_axis(rng);
            let proj: f64 = axis.iter().zip(&target).map(|(a, b)| a * b).sum();
            let sign = if rng.random::<f64>() < 0.5 * (1.0 + proj) { 1.0 } else { -1.0 };
            if rng.random::<f64>() < s.y {
                t.vacuum += 1;
            } else {
                t.add_qubit(axis.map(|v| sign * v));
            }
        }
    }
    t
}

fn check_inputs(eta: f64, trials: u64) -> Result<()> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(FockError::InvalidParameter(format!("eta must lie in [0, 1], got {eta}")));
    }
    if trials == 0 {
        return Err(FockError::InvalidParameter("at least one trial is required".into()));
    }
    Ok(())
}

/// Average state sent by Alice over `trials` runs, on the two-mode space with
/// cutoff 1.
pub fn simulate_classical_teleporter(
    eta: f64,
    s: &ClassicalStrategy,
    psi: &DualRailQubit,
    trials: u64,
    seed: u64,
) -> Result<DensityMatrix> {
    check_inputs(eta, trials)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(run(eta, s, psi, trials, &mut rng).state())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloFidelity {
    /// Fidelity of the pooled average state with the input mixture.
    pub fidelity: f64,
    /// Standard error from the spread of per-batch fidelities.
    pub std_error: f64,
    pub trials: u64,
    pub batches: usize,
}

/// Fidelity of the classical teleporter with the vacuum/qubit mixture.
pub fn classical_fidelity_estimate(
    eta: f64,
    s: &ClassicalStrategy,
    psi: &DualRailQubit,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloFidelity> {
    check_inputs(eta, trials)?;
    if trials < BATCHES as u64 {
        return Err(FockError::InvalidParameter(format!(
            "at least {BATCHES} trials are required for an error estimate"
        )));
    }
    let space = FockSpace::two_mode(1)?;
    let input = input_density(&InputMixture::new(eta, *psi)?, space)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pooled = Tally::default();
    let mut batch_f = Vec::with_capacity(BATCHES);
    for b in 0..BATCHES as u64 {
        let n = trials / BATCHES as u64 + u64::from(b < trials % BATCHES as u64);
        let t = run(eta, s, psi, n, &mut rng);
        batch_f.push(uhlmann_fidelity(&input, &t.state())?);
        pooled.merge(&t);
    }
    let mean = batch_f.iter().sum::<f64>() / BATCHES as f64;
    let var = batch_f.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (BATCHES - 1) as f64;
    Ok(MonteCarloFidelity {
        fidelity: uhlmann_fidelity(&input, &pooled.state())?,
        std_error: (var / BATCHES as f64).sqrt(),
        trials,
        batches: BATCHES,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::classical_strategy_fidelity;
    use crate::qubit::decompose_fractions;

    fn strategy(x: f64, y: f64) -> ClassicalStrategy {
        ClassicalStrategy::new(x, y).unwrap()
    }

    // Weight on psi and on its orthogonal partner.
    fn qubit_weights(rho: &DensityMatrix, psi: &DualRailQubit) -> (f64, f64) {
        let block = decompose_fractions(rho).unwrap().qubit_block;
        let w = |q: &DualRailQubit| {
            let v = q.as_vector();
            v.dotc(&(&block * &v)).re
        };
        (w(psi), w(&psi.orthogonal()))
    }

    #[test]
    fn vacuum_input_without_guessing() {
        let rho = simulate_classical_teleporter(0.0, &strategy(0.0, 0.3), &DualRailQubit::psi1(), 1000, 1)
            .unwrap();
        assert_eq!(rho, DensityMatrix::vacuum(FockSpace::two_mode(1).unwrap()));
    }

    #[test]
    fn estimated_qubit_is_two_thirds_faithful() {
        let psi = DualRailQubit::psi2();
        let rho = simulate_classical_teleporter(1.0, &strategy(0.0, 0.0), &psi, 1_000_000, 7).unwrap();
        let (good, bad) = qubit_weights(&rho, &psi);
        assert!((good - 2.0 / 3.0).abs() < 3e-3, "{good}");
        assert!((bad - 1.0 / 3.0).abs() < 3e-3);
    }

    #[test]
    fn guessed_qubit_is_depolarized() {
        let psi = DualRailQubit::psi1();
        let rho = simulate_classical_teleporter(0.0, &strategy(1.0, 0.0), &psi, 200_000, 3).unwrap();
        let (good, bad) = qubit_weights(&rho, &psi);
        assert!((good - 0.5).abs() < 5e-3);
        assert!((bad - 0.5).abs() < 5e-3);
        assert_eq!(rho.population(&[0, 0]).unwrap(), 0.0);
    }

    #[test]
    fn converges_to_closed_form() {
        for (eta, x, y) in [(0.5, 0.3, 0.1), (0.69, 0.0, 0.134), (1.0, 0.0, 0.0)] {
            let s = strategy(x, y);
            let mc = classical_fidelity_estimate(eta, &s, &DualRailQubit::psi1(), 1_000_000, 11).unwrap();
            let exact = classical_strategy_fidelity(&s, eta);
            assert!((mc.fidelity - exact).abs() <= 4.0 * mc.std_error, "{eta}: {mc:?} vs {exact}");
            assert!(mc.std_error < 2e-3);
        }
    }

    #[test]
    fn seed_determines_output() {
        let s = strategy(0.2, 0.2);
        let psi = DualRailQubit::psi1();
        let a = simulate_classical_teleporter(0.6, &s, &psi, 5000, 42).unwrap();
        let b = simulate_classical_teleporter(0.6, &s, &psi, 5000, 42).unwrap();
        let c = simulate_classical_teleporter(0.6, &s, &psi, 5000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = strategy(0.0, 0.0);
        let psi = DualRailQubit::psi1();
        assert!(simulate_classical_teleporter(0.5, &s, &psi, 0, 1).is_err());
        assert!(simulate_classical_teleporter(1.5, &s, &psi, 10, 1).is_err());
        assert!(classical_fidelity_estimate(0.5, &s, &psi, 5, 1).is_err());
    }
}
