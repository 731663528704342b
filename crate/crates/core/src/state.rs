//! States and operators on a truncated Fock space.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{FockError, Result};
use crate::linalg::{self, CMatrix, CVector, HERMITIAN_TOLERANCE, PSD_TOLERANCE, ZERO};
use crate::space::FockSpace;
use num_complex::Complex64;

/// Unit-trace states must match 1 to this tolerance unless flagged subnormalized.
pub const TRACE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    space: FockSpace,
    amplitudes: CVector,
}

impl PureState {
    pub fn new(space: FockSpace, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != space.dim() {
            return Err(FockError::DimensionMismatch {
                expected: space.dim(),
                actual: amplitudes.len(),
            });
        }
        Ok(Self { space, amplitudes })
    }

    pub fn basis(space: FockSpace, photons: &[usize]) -> Result<Self> {
        let mut amplitudes = CVector::zeros(space.dim());
        amplitudes[space.index(photons)?] = linalg::ONE;
        Ok(Self { space, amplitudes })
    }

    pub fn vacuum(space: FockSpace) -> Self {
        let mut amplitudes = CVector::zeros(space.dim());
        amplitudes[0] = linalg::ONE;
        Self { space, amplitudes }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    pub fn inner(&self, other: &PureState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn projector(&self) -> DensityMatrix {
        let elements = &self.amplitudes * self.amplitudes.adjoint();
        DensityMatrix::from_parts(self.space, elements, false)
    }
}

/// A density matrix in the truncated photon-number basis.
///
/// Channel outputs whose trace is an acceptance probability are flagged
/// `subnormalized`; every other state is expected to carry unit trace up to
/// the truncation tail recorded by the producing channel.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    space: FockSpace,
    elements: CMatrix,
    subnormalized: bool,
}

impl DensityMatrix {
    /// Validating constructor for externally supplied matrices.
    pub fn new(space: FockSpace, elements: CMatrix) -> Result<Self> {
        let rho = Self::from_parts(space, elements, false);
        rho.check_shape()?;
        rho.check_invariants()?;
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOLERANCE {
            return Err(FockError::InvalidTrace { trace: tr });
        }
        Ok(rho)
    }

    /// Validating constructor for a state whose trace may be below one.
    pub fn new_subnormalized(space: FockSpace, elements: CMatrix) -> Result<Self> {
        let rho = Self::from_parts(space, elements, true);
        rho.check_shape()?;
        rho.check_invariants()?;
        Ok(rho)
    }

    pub(crate) fn from_parts(space: FockSpace, elements: CMatrix, subnormalized: bool) -> Self {
        Self { space, elements, subnormalized }
    }

    pub fn vacuum(space: FockSpace) -> Self {
        PureState::vacuum(space).projector()
    }

    /// `|photons><photons|`.
    pub fn fock(space: FockSpace, photons: &[usize]) -> Result<Self> {
        Ok(PureState::basis(space, photons)?.projector())
    }

    /// Diagonal state from photon-number probabilities of a single mode.
    pub fn diagonal(space: FockSpace, probabilities: &[f64]) -> Result<Self> {
        if probabilities.len() != space.dim() {
            return Err(FockError::DimensionMismatch {
                expected: space.dim(),
                actual: probabilities.len(),
            });
        }
        let diag = CVector::from_iterator(
            probabilities.len(),
            probabilities.iter().map(|&p| Complex64::new(p, 0.0)),
        );
        Self::new(space, CMatrix::from_diagonal(&diag))
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn elements(&self) -> &CMatrix {
        &self.elements
    }

    pub fn into_elements(self) -> CMatrix {
        self.elements
    }

    pub fn is_subnormalized(&self) -> bool {
        self.subnormalized
    }

    pub fn trace(&self) -> f64 {
        linalg::trace(&self.elements).re
    }

    /// Element `<bra|rho|ket>` addressed by photon numbers.
    pub fn get(&self, row: &[usize], col: &[usize]) -> Result<Complex64> {
        Ok(self.elements[(self.space.index(row)?, self.space.index(col)?)])
    }

    pub fn population(&self, photons: &[usize]) -> Result<f64> {
        Ok(self.get(photons, photons)?.re)
    }

    /// Divides by the trace and clears the subnormalized flag.
    pub fn renormalized(&self) -> Result<Self> {
        let tr = self.trace();
        if tr <= 0.0 {
            return Err(FockError::InvalidTrace { trace: tr });
        }
        Ok(Self::from_parts(self.space, self.elements.unscale(tr), false))
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::min_eigenvalue(&self.elements)
    }

    fn check_shape(&self) -> Result<()> {
        let dim = self.space.dim();
        if self.elements.nrows() != dim || self.elements.ncols() != dim {
            return Err(FockError::DimensionMismatch {
                expected: dim,
                actual: self.elements.nrows(),
            });
        }
        Ok(())
    }

    /// Hermiticity, positivity, and the trace bound.
    pub fn check_invariants(&self) -> Result<()> {
        let deviation = linalg::hermitian_deviation(&self.elements);
        if deviation > HERMITIAN_TOLERANCE {
            return Err(FockError::NotHermitian { deviation });
        }
        let min = self.min_eigenvalue();
        if min < -PSD_TOLERANCE {
            return Err(FockError::PsdViolation { min_eigenvalue: min });
        }
        let tr = self.trace();
        if tr <= 0.0 || tr > 1.0 + TRACE_TOLERANCE {
            return Err(FockError::InvalidTrace { trace: tr });
        }
        Ok(())
    }

    /// Photon-number distribution of one mode.
    pub fn photon_distribution(&self, mode: usize) -> Result<Vec<f64>> {
        let reduced = match self.space.modes() {
            1 => {
                self.space.check_mode(mode)?;
                self.clone()
            }
            _ => partial_trace(self, 1 - mode)?,
        };
        Ok(reduced.elements.diagonal().iter().map(|z| z.re).collect())
    }

    /// Probability mass of basis states with more than `max_photons` in any mode.
    pub fn mass_above(&self, max_photons: usize) -> f64 {
        (0..self.space.dim())
            .filter(|&i| self.space.photons(i).iter().any(|&n| n > max_photons))
            .map(|i| self.elements[(i, i)].re)
            .sum()
    }
}

/// A linear operator on a truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    space: FockSpace,
    matrix: CMatrix,
}

impl FockOperator {
    pub fn new(space: FockSpace, matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != space.dim() || matrix.ncols() != space.dim() {
            return Err(FockError::DimensionMismatch {
                expected: space.dim(),
                actual: matrix.nrows(),
            });
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: FockSpace) -> Self {
        Self { space, matrix: CMatrix::identity(space.dim(), space.dim()) }
    }

    pub fn space(&self) -> FockSpace {
        self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self { space: self.space, matrix: self.matrix.adjoint() }
    }

    pub fn compose(&self, other: &FockOperator) -> Result<Self> {
        same_space(self.space, other.space)?;
        Ok(Self { space: self.space, matrix: &self.matrix * &other.matrix })
    }

    pub fn apply(&self, psi: &PureState) -> Result<PureState> {
        same_space(self.space, psi.space())?;
        PureState::new(self.space, &self.matrix * psi.amplitudes())
    }

    /// `U rho U^H`, keeping the subnormalized flag.
    pub fn conjugate(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        same_space(self.space, rho.space())?;
        let out = &self.matrix * rho.elements() * self.matrix.adjoint();
        Ok(DensityMatrix::from_parts(self.space, out, rho.is_subnormalized()))
    }
}

fn same_space(a: FockSpace, b: FockSpace) -> Result<()> {
    if a != b {
        return Err(FockError::DimensionMismatch { expected: a.dim(), actual: b.dim() });
    }
    Ok(())
}

/// Objects that combine into a two-mode object with mode 1 as the outer index.
pub trait Tensor: Sized {
    fn tensor(&self, other: &Self) -> Result<Self>;
}

fn two_mode_of(a: FockSpace, b: FockSpace) -> Result<FockSpace> {
    if a.modes() != 1 || b.modes() != 1 {
        return Err(FockError::InvalidParameter(
            "tensor product needs two single-mode operands".into(),
        ));
    }
    if a.cutoff() != b.cutoff() {
        return Err(FockError::DimensionMismatch {
            expected: a.levels(),
            actual: b.levels(),
        });
    }
    FockSpace::two_mode(a.cutoff())
}

impl Tensor for DensityMatrix {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let space = two_mode_of(self.space, other.space)?;
        Ok(Self::from_parts(
            space,
            linalg::kron(&self.elements, &other.elements),
            self.subnormalized || other.subnormalized,
        ))
    }
}

impl Tensor for FockOperator {
    fn tensor(&self, other: &Self) -> Result<Self> {
        let space = two_mode_of(self.space, other.space)?;
        Ok(Self { space, matrix: linalg::kron(&self.matrix, &other.matrix) })
    }
}

/// Free-function form of [`Tensor::tensor`].
pub fn tensor<T: Tensor>(a: &T, b: &T) -> Result<T> {
    a.tensor(b)
}

/// Traces out `mode` (0 or 1) of a two-mode state.
pub fn partial_trace(rho: &DensityMatrix, mode: usize) -> Result<DensityMatrix> {
    let space = rho.space();
    if space.modes() != 2 {
        return Err(FockError::InvalidParameter("partial trace needs a two-mode state".into()));
    }
    space.check_mode(mode)?;
    let d = space.levels();
    let single = space.single_mode();
    let e = rho.elements();
    let out = CMatrix::from_fn(d, d, |i, j| {
        (0..d)
            .map(|k| match mode {
                0 => e[(k * d + i, k * d + j)],
                _ => e[(i * d + k, j * d + k)],
            })
            .fold(ZERO, |acc, z| acc + z)
    });
    Ok(DensityMatrix::from_parts(single, out, rho.is_subnormalized()))
}

/// Positive square root of a density matrix.
pub fn matrix_sqrt_psd(rho: &DensityMatrix) -> Result<FockOperator> {
    let matrix = linalg::psd_sqrt(rho.elements())?;
    Ok(FockOperator { space: rho.space(), matrix })
}

/// Projection of `rho` onto the span of orthonormal basis kets.
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceBlock {
    /// Unit-trace block `<b_i|rho|b_j> / weight`.
    pub block: CMatrix,
    /// Unnormalized weight `sum_i <b_i|rho|b_i>`.
    pub weight: f64,
}

pub const EMPTY_SUBSPACE_WEIGHT: f64 = 1e-12;

pub fn subspace_block(rho: &DensityMatrix, basis: &[PureState]) -> Result<SubspaceBlock> {
    for (i, b) in basis.iter().enumerate() {
        same_space(rho.space(), b.space())?;
        for other in &basis[..i] {
            let overlap = b.inner(other).norm();
            if overlap > 1e-10 {
                return Err(FockError::InvalidParameter(format!(
                    "subspace basis is not orthogonal (overlap {overlap:e})"
                )));
            }
        }
    }
    let k = basis.len();
    let raw = CMatrix::from_fn(k, k, |i, j| {
        basis[i].amplitudes().dotc(&(rho.elements() * basis[j].amplitudes()))
    });
    let weight = linalg::trace(&raw).re;
    if weight < EMPTY_SUBSPACE_WEIGHT {
        return Err(FockError::EmptySubspace { weight });
    }
    Ok(SubspaceBlock { block: raw.unscale(weight), weight })
}

#[derive(Serialize, Deserialize)]
struct DensityMatrixJson {
    modes: usize,
    cutoff: usize,
    elements: Vec<[f64; 2]>,
}

impl Serialize for DensityMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.space.dim();
        let mut elements = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let z = self.elements[(i, j)];
                elements.push([z.re, z.im]);
            }
        }
        DensityMatrixJson { modes: self.space.modes(), cutoff: self.space.cutoff(), elements }
            .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = DensityMatrixJson::deserialize(deserializer)?;
        let space = FockSpace::new(raw.modes, raw.cutoff).map_err(D::Error::custom)?;
        let n = space.dim();
        if raw.elements.len() != n * n {
            return Err(D::Error::custom(format!(
                "expected {} elements, got {}",
                n * n,
                raw.elements.len()
            )));
        }
        let elements = CMatrix::from_row_iterator(
            n,
            n,
            raw.elements.iter().map(|[re, im]| Complex64::new(*re, *im)),
        );
        let rho = DensityMatrix::from_parts(space, elements, false);
        rho.check_invariants().map_err(D::Error::custom)?;
        let subnormalized = (rho.trace() - 1.0).abs() > TRACE_TOLERANCE;
        Ok(DensityMatrix { subnormalized, ..rho })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    fn qubit_space() -> FockSpace {
        FockSpace::single(1).unwrap()
    }

    #[test]
    fn tensor_of_basis_projectors() {
        let s = FockSpace::single(2).unwrap();
        let a = DensityMatrix::fock(s, &[0]).unwrap();
        let b = DensityMatrix::fock(s, &[1]).unwrap();
        let ab = tensor(&a, &b).unwrap();
        let expected = DensityMatrix::fock(FockSpace::two_mode(2).unwrap(), &[0, 1]).unwrap();
        assert_eq!(ab, expected);
    }

    #[test]
    fn tensor_of_maximally_mixed_qubits_is_uniform() {
        let s = qubit_space();
        let mixed = DensityMatrix::diagonal(s, &[0.5, 0.5]).unwrap();
        let rho = tensor(&mixed, &mixed).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j { 0.25 } else { 0.0 };
                assert_eq!(rho.elements()[(i, j)], c(expected, 0.0));
            }
        }
    }

    #[test]
    fn tensor_rejects_mismatched_cutoffs() {
        let a = DensityMatrix::vacuum(FockSpace::single(2).unwrap());
        let b = DensityMatrix::vacuum(FockSpace::single(3).unwrap());
        assert!(tensor(&a, &b).is_err());
    }

    #[test]
    fn tensor_with_identity_then_trace() {
        let s = FockSpace::single(2).unwrap();
        let rho = DensityMatrix::diagonal(s, &[0.5, 0.3, 0.2]).unwrap();
        let id = DensityMatrix::from_parts(s, CMatrix::identity(3, 3), true);
        let joint = tensor(&rho, &id).unwrap();
        let back = partial_trace(&joint, 1).unwrap();
        assert!(linalg::max_abs_diff(back.elements(), &rho.elements().scale(3.0)) < 1e-15);
    }

    #[test]
    fn partial_trace_of_basis_and_bell_states() {
        let two = FockSpace::two_mode(2).unwrap();
        let rho = DensityMatrix::fock(two, &[0, 1]).unwrap();
        let reduced = partial_trace(&rho, 0).unwrap();
        assert_eq!(reduced.population(&[1]).unwrap(), 1.0);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut amps = CVector::zeros(two.dim());
        amps[two.index(&[0, 1]).unwrap()] = c(s, 0.0);
        amps[two.index(&[1, 0]).unwrap()] = c(s, 0.0);
        let bell = PureState::new(two, amps).unwrap().projector();
        for mode in 0..2 {
            let r = partial_trace(&bell, mode).unwrap();
            assert!((r.population(&[0]).unwrap() - 0.5).abs() < 1e-15);
            assert!((r.population(&[1]).unwrap() - 0.5).abs() < 1e-15);
            assert!(r.elements()[(0, 1)].norm() < 1e-15);
        }
        assert!(partial_trace(&bell, 2).is_err());
    }

    #[test]
    fn partial_trace_of_two_mode_squeezed_state_is_thermal() {
        let cutoff = 10;
        let q: f64 = 0.4;
        let two = FockSpace::two_mode(cutoff).unwrap();
        let mut amps = CVector::zeros(two.dim());
        for n in 0..=cutoff {
            amps[two.index(&[n, n]).unwrap()] = c((1.0 - q * q).sqrt() * q.powi(n as i32), 0.0);
        }
        let rho = PureState::new(two, amps).unwrap().projector();
        let reduced = partial_trace(&rho, 1).unwrap();
        for n in 0..=cutoff {
            let expected = (1.0 - q * q) * q.powi(2 * n as i32);
            assert!((reduced.population(&[n]).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn sqrt_examples() {
        let s = FockSpace::single(3).unwrap();
        let mixed = DensityMatrix::diagonal(s, &[0.25; 4]).unwrap();
        let root = matrix_sqrt_psd(&mixed).unwrap();
        assert!(linalg::max_abs_diff(root.matrix(), &CMatrix::identity(4, 4).scale(0.5)) < 1e-12);

        let mut amps = CVector::zeros(4);
        amps[1] = c(0.6, 0.0);
        amps[2] = c(0.0, 0.8);
        let pure = PureState::new(s, amps).unwrap().projector();
        let root = matrix_sqrt_psd(&pure).unwrap();
        assert!(linalg::max_abs_diff(root.matrix(), pure.elements()) < 1e-12);
    }

    #[test]
    fn empty_qubit_subspace() {
        let two = FockSpace::two_mode(2).unwrap();
        let rho = DensityMatrix::vacuum(two);
        let basis = [
            PureState::basis(two, &[0, 1]).unwrap(),
            PureState::basis(two, &[1, 0]).unwrap(),
        ];
        assert!(matches!(subspace_block(&rho, &basis), Err(FockError::EmptySubspace { .. })));
    }

    #[test]
    fn json_schema_and_exact_round_trip() {
        let two = FockSpace::two_mode(1).unwrap();
        let mut amps = CVector::zeros(4);
        amps[1] = c(1.0 / 3f64.sqrt(), 0.0);
        amps[2] = c(0.0, -(2.0f64 / 3.0).sqrt());
        let rho = PureState::new(two, amps).unwrap().projector();
        let text = serde_json::to_string(&rho).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["modes"], 2);
        assert_eq!(value["cutoff"], 1);
        assert_eq!(value["elements"].as_array().unwrap().len(), 16);
        let back: DensityMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, rho);
    }

    #[test]
    fn json_rejects_non_hermitian() {
        let text = r#"{"modes":1,"cutoff":1,"elements":[[0.5,0],[0.3,0],[0.0,0],[0.5,0]]}"#;
        assert!(serde_json::from_str::<DensityMatrix>(text).is_err());
    }
}
