//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{FockError, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Eigenvalues below this are treated as numerical noise and clamped to zero.
pub const PSD_TOLERANCE: f64 = 1e-9;
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;
const EIGEN_NOISE: f64 = 1e-14;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Largest entrywise deviation `|A - A^H|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues come back in
/// ascending order with matching eigenvector columns.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let h = hermitian_part(m);
    let n = h.nrows();
    let f = faer::Mat::<faer::c64>::from_fn(n, n, |r, k| {
        let z = h[(r, k)];
        faer::c64::new(z.re, z.im)
    });
    // faer returns eigenvalues in ascending order.
    match f.self_adjoint_eigen(faer::Side::Lower) {
        Ok(eig) => {
            let (s, u) = (eig.S(), eig.U());
            let values = (0..n).map(|k| s[k].re).collect();
            let vectors = CMatrix::from_fn(n, n, |r, k| Complex64::new(u[(r, k)].re, u[(r, k)].im));
            (values, vectors)
        }
        Err(_) => (vec![f64::NAN; n], CMatrix::zeros(n, n)),
    }
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    eigh(m).0.first().copied().unwrap_or(0.0)
}

/// `V diag(f(lambda)) V^H` for a Hermitian matrix.
pub fn hermitian_function(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (values, vectors) = eigh(m);
    let n = values.len();
    let mut scaled = vectors.clone();
    for (k, &lambda) in values.iter().enumerate() {
        let w = f(lambda);
        for r in 0..n {
            scaled[(r, k)] *= w;
        }
    }
    scaled * vectors.adjoint()
}

/// Eigenvalues of a PSD matrix with solver noise clamped away.
///
/// Fails when any eigenvalue is below `-PSD_TOLERANCE`. The clamped spectrum
/// is rescaled to keep the original trace.
pub fn clamped_spectrum(m: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let (mut values, vectors) = eigh(m);
    if values.iter().any(|v| !v.is_finite()) {
        return Err(FockError::NonFinite("eigenvalue".into()));
    }
    let min = values.first().copied().unwrap_or(0.0);
    if min < -PSD_TOLERANCE {
        return Err(FockError::PsdViolation { min_eigenvalue: min });
    }
    let trace: f64 = values.iter().sum();
    // Solver noise of either sign on null directions is zeroed.
    let noise = EIGEN_NOISE * values.last().copied().unwrap_or(0.0).abs().max(1.0);
    for v in values.iter_mut() {
        if *v < noise {
            *v = 0.0;
        }
    }
    let clamped: f64 = values.iter().sum();
    if clamped > 0.0 && trace > 0.0 {
        let scale = trace / clamped;
        values.iter_mut().for_each(|v| *v *= scale);
    }
    Ok((values, vectors))
}

pub fn psd_sqrt(m: &CMatrix) -> Result<CMatrix> {
    let (values, vectors) = clamped_spectrum(m)?;
    let n = values.len();
    let mut scaled = vectors.clone();
    for (k, &lambda) in values.iter().enumerate() {
        let s = lambda.sqrt();
        for r in 0..n {
            scaled[(r, k)] *= s;
        }
    }
    Ok(scaled * vectors.adjoint())
}

/// `exp(-i H)` for Hermitian `H`.
pub fn unitary_from_hamiltonian(h: &CMatrix) -> CMatrix {
    let (values, vectors) = eigh(h);
    let n = values.len();
    let mut scaled = vectors.clone();
    for (k, &lambda) in values.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, -lambda);
        for r in 0..n {
            scaled[(r, k)] *= phase;
        }
    }
    scaled * vectors.adjoint()
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.diagonal().iter().sum()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
