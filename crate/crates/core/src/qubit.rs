//! Dual-rail qubits and the mixed input model.
//!
//! The logical basis is `|0,1>` (photon in mode 2) and `|1,0>` (photon in
//! mode 1); a qubit `(alpha, beta)` is `alpha|0,1> + beta|1,0>`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::space::FockSpace;
use crate::state::{DensityMatrix, FockOperator, PureState};

const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualRailQubit {
    alpha: Complex64,
    beta: Complex64,
}

impl DualRailQubit {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = alpha.norm_sqr() + beta.norm_sqr();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(FockError::InvalidParameter(format!(
                "qubit amplitudes must satisfy |alpha|^2 + |beta|^2 = 1, got {norm}"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// Normalizes arbitrary nonzero amplitudes.
    pub fn normalized(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let norm = (alpha.norm_sqr() + beta.norm_sqr()).sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(FockError::InvalidParameter("qubit amplitudes are zero".into()));
        }
        Ok(Self { alpha: alpha / norm, beta: beta / norm })
    }

    /// `cos(theta/2)|0,1> + e^{i phi} sin(theta/2)|1,0>`.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        Self {
            alpha: Complex64::new((theta / 2.0).cos(), 0.0),
            beta: Complex64::from_polar((theta / 2.0).sin(), phi),
        }
    }

    /// `|0,1>`.
    pub fn zero_one() -> Self {
        Self { alpha: Complex64::new(1.0, 0.0), beta: Complex64::new(0.0, 0.0) }
    }

    /// `|1,0>`.
    pub fn one_zero() -> Self {
        Self { alpha: Complex64::new(0.0, 0.0), beta: Complex64::new(1.0, 0.0) }
    }

    /// `(|0,1> - i|1,0>)/sqrt(2)`.
    pub fn psi1() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self { alpha: Complex64::new(s, 0.0), beta: Complex64::new(0.0, -s) }
    }

    /// `(2|0,1> - |1,0>)/sqrt(5)`.
    pub fn psi2() -> Self {
        let s = 5f64.sqrt();
        Self { alpha: Complex64::new(2.0 / s, 0.0), beta: Complex64::new(-1.0 / s, 0.0) }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// Amplitudes in the `[|0,1>, |1,0>]` order used by qubit blocks.
    pub fn as_vector(&self) -> CVector {
        CVector::from_vec(vec![self.alpha, self.beta])
    }

    /// The orthogonal qubit `-beta*|0,1> + alpha*|1,0>`.
    pub fn orthogonal(&self) -> Self {
        Self { alpha: -self.beta.conj(), beta: self.alpha.conj() }
    }
}

/// Kets spanning the qubit subspace, in `[|0,1>, |1,0>]` order.
pub fn qubit_basis(space: FockSpace) -> Result<[PureState; 2]> {
    Ok([PureState::basis(space, &[0, 1])?, PureState::basis(space, &[1, 0])?])
}

pub fn encode_qubit(q: &DualRailQubit, space: FockSpace) -> Result<PureState> {
    require_two_mode(space)?;
    let mut amps = CVector::zeros(space.dim());
    amps[space.index(&[0, 1])?] = q.alpha;
    amps[space.index(&[1, 0])?] = q.beta;
    PureState::new(space, amps)
}

fn require_two_mode(space: FockSpace) -> Result<()> {
    if space.modes() != 2 {
        return Err(FockError::InvalidParameter("dual-rail states need two modes".into()));
    }
    Ok(())
}

/// The part of the input orthogonal to the qubit subspace.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Complement {
    #[default]
    Vacuum,
    State(DensityMatrix),
}

/// `eta |psi><psi| + (1 - eta) complement`.
#[derive(Debug, Clone, PartialEq)]
pub struct InputMixture {
    pub eta: f64,
    pub qubit: DualRailQubit,
    pub complement: Complement,
}

impl InputMixture {
    pub fn new(eta: f64, qubit: DualRailQubit) -> Result<Self> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(FockError::InvalidParameter(format!("eta must lie in [0, 1], got {eta}")));
        }
        Ok(Self { eta, qubit, complement: Complement::Vacuum })
    }

    pub fn with_complement(mut self, complement: DensityMatrix) -> Self {
        self.complement = Complement::State(complement);
        self
    }
}

#[derive(Serialize, Deserialize)]
struct InputMixtureJson {
    eta: f64,
    alpha: [f64; 2],
    beta: [f64; 2],
}

impl Serialize for InputMixture {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        InputMixtureJson {
            eta: self.eta,
            alpha: [self.qubit.alpha.re, self.qubit.alpha.im],
            beta: [self.qubit.beta.re, self.qubit.beta.im],
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InputMixture {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = InputMixtureJson::deserialize(d)?;
        let qubit = DualRailQubit::new(
            Complex64::new(raw.alpha[0], raw.alpha[1]),
            Complex64::new(raw.beta[0], raw.beta[1]),
        )
        .map_err(D::Error::custom)?;
        InputMixture::new(raw.eta, qubit).map_err(D::Error::custom)
    }
}

pub fn input_density(mix: &InputMixture, space: FockSpace) -> Result<DensityMatrix> {
    let psi = encode_qubit(&mix.qubit, space)?.projector();
    let complement = match &mix.complement {
        Complement::Vacuum => DensityMatrix::vacuum(space),
        Complement::State(rho) => {
            if rho.space() != space {
                return Err(FockError::DimensionMismatch {
                    expected: space.dim(),
                    actual: rho.space().dim(),
                });
            }
            let overlap = rho.population(&[0, 1])?.abs().max(rho.population(&[1, 0])?.abs());
            if overlap > 1e-12 {
                return Err(FockError::ComplementNotOrthogonal { overlap });
            }
            rho.clone()
        }
    };
    let elements =
        psi.elements().scale(mix.eta) + complement.elements().scale(1.0 - mix.eta);
    Ok(DensityMatrix::from_parts(space, elements, false))
}

/// Annihilation operator on one mode of a two-mode space.
pub(crate) fn annihilation(space: FockSpace, mode: usize) -> CMatrix {
    let d = space.levels();
    let mut a = CMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let id = CMatrix::identity(d, d);
    match (space.modes(), mode) {
        (1, _) => a,
        (_, 0) => a.kronecker(&id),
        _ => id.kronecker(&a),
    }
}

/// Logarithm of a 2x2 unitary as an anti-Hermitian matrix.
fn unitary_log_2x2(m: &CMatrix) -> CMatrix {
    // Eigenvectors of the Hermitian part (M - M^H)/2i also diagonalize the
    // normal matrix M; the eigenphases are read off directly.
    let i = Complex64::new(0.0, 1.0);
    let h = (m - m.adjoint()).map(|z| z / (2.0 * i));
    let (_, vectors) = linalg::eigh(&h);
    let mut log = CMatrix::zeros(2, 2);
    for k in 0..2 {
        let v = vectors.column(k).into_owned();
        let phase = v.dotc(&(m * &v)).arg();
        log += (&v * v.adjoint()).map(|z| z * i * phase);
    }
    log
}

/// Passive two-mode unitary mapping the qubit `q` onto `|0,1>`.
///
/// The single-photon mode transformation `M` sends creation operators as
/// `U a_j^+ U^H = sum_i M_ij a_i^+` with `M (beta, alpha)^T = (0, 1)^T` in
/// the (mode 1, mode 2) basis. It is lifted to Fock space as
/// `U = exp(sum_ij K_ij a_i^+ a_j)` with `K = log M`, exponentiated through
/// the Hermitian generator. The lift conserves total photon number and is
/// exact on every total-photon sector that fits inside the cutoff.
pub fn qubit_rotation_unitary(q: &DualRailQubit, space: FockSpace) -> Result<FockOperator> {
    require_two_mode(space)?;
    let (alpha, beta) = (q.alpha, q.beta);
    let mode_map = CMatrix::from_row_slice(2, 2, &[alpha, -beta, beta.conj(), alpha.conj()]);
    let k = unitary_log_2x2(&mode_map);
    let a = [annihilation(space, 0), annihilation(space, 1)];
    let dim = space.dim();
    let mut generator = CMatrix::zeros(dim, dim);
    for i in 0..2 {
        for j in 0..2 {
            if k[(i, j)].norm() > 0.0 {
                generator += (a[i].adjoint() * &a[j]).map(|z| z * k[(i, j)]);
            }
        }
    }
    // exp(G) = exp(-i H) with H = iG Hermitian.
    let h = generator.map(|z| z * Complex64::new(0.0, 1.0));
    FockOperator::new(space, linalg::unitary_from_hamiltonian(&h))
}

/// Vacuum, qubit, and multi-photon content of a two-mode state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fractions {
    pub vacuum: f64,
    pub qubit: f64,
    pub multiphoton: f64,
    /// Unrenormalized block in the `[|0,1>, |1,0>]` basis.
    #[serde(skip)]
    pub qubit_block: CMatrix,
}

pub fn decompose_fractions(rho: &DensityMatrix) -> Result<Fractions> {
    require_two_mode(rho.space())?;
    let vacuum = rho.population(&[0, 0])?;
    let basis = [[0, 1], [1, 0]];
    let qubit_block = CMatrix::from_fn(2, 2, |i, j| rho.get(&basis[i], &basis[j]).unwrap());
    let qubit = qubit_block[(0, 0)].re + qubit_block[(1, 1)].re;
    let multiphoton = (rho.trace() - vacuum - qubit).max(0.0);
    Ok(Fractions { vacuum, qubit, multiphoton, qubit_block })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs_diff};

    fn space() -> FockSpace {
        FockSpace::two_mode(4).unwrap()
    }

    #[test]
    fn encodes_basis_and_named_qubits() {
        let s = space();
        let psi = encode_qubit(&DualRailQubit::zero_one(), s).unwrap();
        assert_eq!(psi, PureState::basis(s, &[0, 1]).unwrap());

        let psi1 = encode_qubit(&DualRailQubit::psi1(), s).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(psi1.amplitudes()[s.index(&[0, 1]).unwrap()], c(h, 0.0));
        assert_eq!(psi1.amplitudes()[s.index(&[1, 0]).unwrap()], c(0.0, -h));

        let psi2 = encode_qubit(&DualRailQubit::psi2(), s).unwrap();
        let r5 = 5f64.sqrt();
        assert!((psi2.amplitudes()[s.index(&[0, 1]).unwrap()] - c(2.0 / r5, 0.0)).norm() < 1e-15);
        assert!((psi2.amplitudes()[s.index(&[1, 0]).unwrap()] - c(-1.0 / r5, 0.0)).norm() < 1e-15);
        assert!((psi2.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_unnormalized_qubits() {
        assert!(DualRailQubit::new(c(1.0, 0.0), c(0.1, 0.0)).is_err());
        assert!(DualRailQubit::normalized(c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn input_density_mixtures() {
        let s = space();
        let pure = InputMixture::new(1.0, DualRailQubit::psi1()).unwrap();
        let rho = input_density(&pure, s).unwrap();
        let proj = encode_qubit(&DualRailQubit::psi1(), s).unwrap().projector();
        assert!(max_abs_diff(rho.elements(), proj.elements()) < 1e-15);

        let mix = InputMixture::new(0.69, DualRailQubit::psi1()).unwrap();
        let rho = input_density(&mix, s).unwrap();
        assert!((rho.population(&[0, 0]).unwrap() - 0.31).abs() < 1e-15);
        assert!((rho.population(&[0, 1]).unwrap() - 0.345).abs() < 1e-15);
        assert!((rho.trace() - 1.0).abs() < 1e-12);

        let none = InputMixture::new(0.0, DualRailQubit::psi1()).unwrap();
        assert_eq!(input_density(&none, s).unwrap(), DensityMatrix::vacuum(s));
    }

    #[test]
    fn complement_must_avoid_qubit_subspace() {
        let s = space();
        let bad = DensityMatrix::fock(s, &[1, 0]).unwrap();
        let mix = InputMixture::new(0.5, DualRailQubit::psi1()).unwrap().with_complement(bad);
        assert!(matches!(
            input_density(&mix, s),
            Err(FockError::ComplementNotOrthogonal { .. })
        ));
        let good = DensityMatrix::fock(s, &[1, 1]).unwrap();
        let mix = InputMixture::new(0.5, DualRailQubit::psi1()).unwrap().with_complement(good);
        assert!((input_density(&mix, s).unwrap().population(&[1, 1]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn input_mixture_json() {
        let mix: InputMixture =
            serde_json::from_str(r#"{"eta": 0.69, "alpha": [0.6, 0.0], "beta": [0.0, -0.8]}"#)
                .unwrap();
        assert_eq!(mix.eta, 0.69);
        assert_eq!(mix.qubit.beta(), c(0.0, -0.8));
        assert!(serde_json::from_str::<InputMixture>(
            r#"{"eta": 0.69, "alpha": [1.0, 0.0], "beta": [1.0, 0.0]}"#
        )
        .is_err());
    }

    #[test]
    fn rotation_maps_qubit_to_zero_one() {
        let s = space();
        let target = PureState::basis(s, &[0, 1]).unwrap();
        let vac = PureState::vacuum(s);
        for q in [
            DualRailQubit::psi1(),
            DualRailQubit::psi2(),
            DualRailQubit::one_zero(),
            DualRailQubit::from_bloch(2.3, -1.1),
            DualRailQubit::new(c(-1.0, 0.0), c(0.0, 0.0)).unwrap(),
        ] {
            let u = qubit_rotation_unitary(&q, s).unwrap();
            let mapped = u.apply(&encode_qubit(&q, s).unwrap()).unwrap();
            assert!((mapped.amplitudes() - target.amplitudes()).norm() < 1e-12, "{q:?}");
            let v = u.apply(&vac).unwrap();
            assert!((v.amplitudes() - vac.amplitudes()).norm() < 1e-12);
            let id = CMatrix::identity(s.dim(), s.dim());
            assert!(max_abs_diff(&(u.matrix().adjoint() * u.matrix()), &id) < 1e-10);
        }
    }

    #[test]
    fn rotation_of_zero_one_is_identity_on_qubits() {
        let s = space();
        let u = qubit_rotation_unitary(&DualRailQubit::zero_one(), s).unwrap();
        for ket in qubit_basis(s).unwrap() {
            let out = u.apply(&ket).unwrap();
            assert!((out.amplitudes() - ket.amplitudes()).norm() < 1e-12);
        }
    }

    #[test]
    fn rotation_conserves_photon_number() {
        let s = space();
        let a1 = annihilation(s, 0);
        let a2 = annihilation(s, 1);
        let number = a1.adjoint() * &a1 + a2.adjoint() * &a2;
        let u = qubit_rotation_unitary(&DualRailQubit::psi2(), s).unwrap();
        let comm = u.matrix() * &number - &number * u.matrix();
        assert!(comm.iter().all(|z| z.norm() < 1e-10));
    }

    #[test]
    fn fractions_of_simple_states() {
        let s = space();
        let f = decompose_fractions(&DensityMatrix::vacuum(s)).unwrap();
        assert_eq!((f.vacuum, f.qubit, f.multiphoton), (1.0, 0.0, 0.0));

        let single = FockSpace::single(4).unwrap();
        let p1 = [0.5, 0.25, 0.125, 0.0625, 0.0625];
        let p2 = [0.4, 0.3, 0.2, 0.1, 0.0];
        let a = DensityMatrix::diagonal(single, &p1).unwrap();
        let b = DensityMatrix::diagonal(single, &p2).unwrap();
        let prod = crate::state::tensor(&a, &b).unwrap();
        let f = decompose_fractions(&prod).unwrap();
        // Direct sums over the product distribution.
        let mut vac = 0.0;
        let mut one = 0.0;
        let mut more = 0.0;
        for (n1, x) in p1.iter().enumerate() {
            for (n2, y) in p2.iter().enumerate() {
                match n1 + n2 {
                    0 => vac += x * y,
                    1 => one += x * y,
                    _ => more += x * y,
                }
            }
        }
        assert!((f.vacuum - vac).abs() < 1e-15);
        assert!((f.qubit - one).abs() < 1e-15);
        assert!((f.multiphoton - more).abs() < 1e-14);
        assert!((f.vacuum + f.qubit + f.multiphoton - prod.trace()).abs() < 1e-10);
    }
}
