use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::linalg::{CMatrix, ZERO};
use crate::state::DensityMatrix;

/// A linear map on the operators of one mode, stored as a superoperator
/// acting on row-major vectorized matrices: `vec(X)[(m, m')] = X[m][m']`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeChannel {
    levels: usize,
    matrix: DMatrix<Complex64>,
}

impl ModeChannel {
    pub fn identity(levels: usize) -> Self {
        Self { levels, matrix: DMatrix::identity(levels * levels, levels * levels) }
    }

    pub(crate) fn zeros(levels: usize) -> Self {
        Self { levels, matrix: DMatrix::zeros(levels * levels, levels * levels) }
    }

    /// `X -> sum_k K_k X K_k^H`.
    pub fn from_kraus(levels: usize, kraus: &[CMatrix]) -> Self {
        let mut ch = Self::zeros(levels);
        for k in kraus {
            ch.add_kraus(k, 1.0);
        }
        ch
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Adds `weight * K X K^H`.
    pub(crate) fn add_kraus(&mut self, k: &CMatrix, weight: f64) {
        let d = self.levels;
        for m in 0..d {
            for mp in 0..d {
                let row = m * d + mp;
                for a in 0..d {
                    let kma = k[(m, a)] * weight;
                    if kma == ZERO {
                        continue;
                    }
                    for ap in 0..d {
                        self.matrix[(row, a * d + ap)] += kma * k[(mp, ap)].conj();
                    }
                }
            }
        }
    }

    pub(crate) fn accumulate_matrix(&mut self, other: &DMatrix<Complex64>) {
        self.matrix += other;
    }

    pub(crate) fn set(&mut self, out: (usize, usize), input: (usize, usize), value: f64) {
        let d = self.levels;
        self.matrix[(out.0 * d + out.1, input.0 * d + input.1)] = Complex64::new(value, 0.0);
    }

    /// `next` applied after `self`.
    pub fn then(&self, next: &ModeChannel) -> ModeChannel {
        assert_eq!(self.levels, next.levels, "composed channels must share a cutoff");
        ModeChannel { levels: self.levels, matrix: &next.matrix * &self.matrix }
    }

    /// Applies the channel to one mode of a one- or two-mode state. The
    /// subnormalized flag of the input is carried over.
    pub fn apply(&self, rho: &DensityMatrix, mode: usize) -> Result<DensityMatrix> {
        self.apply_flagged(rho, mode, rho.is_subnormalized())
    }

    pub(crate) fn apply_flagged(
        &self,
        rho: &DensityMatrix,
        mode: usize,
        subnormalized: bool,
    ) -> Result<DensityMatrix> {
        let space = rho.space();
        space.check_mode(mode)?;
        let d = self.levels;
        if space.levels() != d {
            return Err(FockError::DimensionMismatch { expected: d, actual: space.levels() });
        }
        let e = rho.elements();
        let out = match space.modes() {
            1 => {
                let v = DMatrix::from_row_iterator(d * d, 1, e.transpose().iter().copied());
                let w = &self.matrix * v;
                CMatrix::from_fn(d, d, |m, mp| w[(m * d + mp, 0)])
            }
            _ => {
                let dim = space.dim();
                let mut out = CMatrix::zeros(dim, dim);
                let index = |active: usize, spectator: usize| match mode {
                    0 => active * d + spectator,
                    _ => spectator * d + active,
                };
                let mut v = DMatrix::<Complex64>::zeros(d * d, 1);
                for b in 0..d {
                    for bp in 0..d {
                        for a in 0..d {
                            for ap in 0..d {
                                v[(a * d + ap, 0)] = e[(index(a, b), index(ap, bp))];
                            }
                        }
                        let w = &self.matrix * &v;
                        for m in 0..d {
                            for mp in 0..d {
                                out[(index(m, b), index(mp, bp))] = w[(m * d + mp, 0)];
                            }
                        }
                    }
                }
                out
            }
        };
        let out = crate::linalg::hermitian_part(&out);
        Ok(DensityMatrix::from_parts(space, out, subnormalized))
    }
}
