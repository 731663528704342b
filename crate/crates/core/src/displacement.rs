//! Displacement operator matrix elements in the number basis.
//!
//! For `m >= n`,
//! `<m|D(b)|n> = sqrt(n!/m!) b^(m-n) exp(-|b|^2/2) L_n^(m-n)(|b|^2)`,
//! and `<m|D(b)|n> = conj(<n|D(-b)|m>)` otherwise. Only the smaller index
//! enters the Laguerre degree, so rectangular blocks with many rows and few
//! columns stay cheap and accurate.

use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::linalg::CMatrix;
use crate::space::FockSpace;
use crate::state::FockOperator;

/// Generalized Laguerre polynomial `L_n^(alpha)(x)` by upward recurrence.
pub fn laguerre(n: usize, alpha: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `ln(k!)` for `k = 0..=max`.
pub(crate) fn ln_factorials(max: usize) -> Vec<f64> {
    let mut table = Vec::with_capacity(max + 1);
    let mut acc = 0.0;
    table.push(acc);
    for k in 1..=max {
        acc += (k as f64).ln();
        table.push(acc);
    }
    table
}

fn element(beta: Complex64, m: usize, n: usize, ln_fact: &[f64]) -> Complex64 {
    let x = beta.norm_sqr();
    if x == 0.0 {
        return if m == n { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
    }
    let (hi, lo, amp) = if m >= n { (m, n, beta) } else { (n, m, -beta.conj()) };
    let k = hi - lo;
    let ln_mag = 0.5 * (ln_fact[lo] - ln_fact[hi]) + k as f64 * amp.norm().ln() - 0.5 * x;
    let lag = laguerre(lo, k as f64, x);
    Complex64::from_polar(ln_mag.exp() * lag, k as f64 * amp.arg())
}

/// Block of `D(beta)` with row indices `0..rows` and column indices `0..cols`.
pub fn displacement_block(beta: Complex64, rows: usize, cols: usize) -> CMatrix {
    let ln_fact = ln_factorials(rows.max(cols));
    CMatrix::from_fn(rows, cols, |m, n| element(beta, m, n, &ln_fact))
}

/// Truncated `D(beta)` on a single mode with photon numbers `0..=cutoff`.
pub fn displacement_operator(beta: Complex64, cutoff: usize) -> Result<FockOperator> {
    if cutoff < 2 {
        return Err(FockError::InvalidParameter(format!(
            "displacement needs cutoff >= 2, got {cutoff}"
        )));
    }
    let space = FockSpace::single(cutoff)?;
    FockOperator::new(space, displacement_block(beta, cutoff + 1, cutoff + 1))
}

/// Diagnostic for displacements too large for the truncation to stay near-unitary.
pub fn truncation_warning(beta: Complex64, cutoff: usize) -> Option<String> {
    (beta.norm_sqr() > cutoff as f64 / 4.0).then(|| {
        format!(
            "|beta|^2 = {:.3} exceeds cutoff/4 = {:.3}; truncated displacement is not unitary",
            beta.norm_sqr(),
            cutoff as f64 / 4.0
        )
    })
}
