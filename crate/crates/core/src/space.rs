use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};

pub const DEFAULT_CUTOFF: usize = 12;

/// A truncated bosonic Fock space of one or two modes.
///
/// Two-mode basis states `|n1, n2>` are indexed row-major with mode 1 as the
/// outer (slow) index: `index = n1 * (cutoff + 1) + n2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FockSpace {
    modes: usize,
    cutoff: usize,
}

impl FockSpace {
    pub fn new(modes: usize, cutoff: usize) -> Result<Self> {
        if !(1..=2).contains(&modes) {
            return Err(FockError::InvalidParameter(format!(
                "mode count must be 1 or 2, got {modes}"
            )));
        }
        if cutoff < 1 {
            return Err(FockError::InvalidParameter(format!(
                "cutoff must be at least 1, got {cutoff}"
            )));
        }
        Ok(Self { modes, cutoff })
    }

    pub fn single(cutoff: usize) -> Result<Self> {
        Self::new(1, cutoff)
    }

    pub fn two_mode(cutoff: usize) -> Result<Self> {
        Self::new(2, cutoff)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Number of levels per mode, `cutoff + 1`.
    pub fn levels(&self) -> usize {
        self.cutoff + 1
    }

    pub fn dim(&self) -> usize {
        self.levels().pow(self.modes as u32)
    }

    pub fn single_mode(&self) -> FockSpace {
        FockSpace { modes: 1, cutoff: self.cutoff }
    }

    pub fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.modes {
            return Err(FockError::ModeOutOfRange { mode, modes: self.modes });
        }
        Ok(())
    }

    /// Flat index of the ket `|n1, n2>` (or `|n1>` for a single mode).
    pub fn index(&self, photons: &[usize]) -> Result<usize> {
        if photons.len() != self.modes {
            return Err(FockError::DimensionMismatch {
                expected: self.modes,
                actual: photons.len(),
            });
        }
        photons.iter().try_fold(0, |acc, &n| {
            if n > self.cutoff {
                Err(FockError::InvalidParameter(format!(
                    "photon number {n} exceeds cutoff {}",
                    self.cutoff
                )))
            } else {
                Ok(acc * self.levels() + n)
            }
        })
    }

    /// Photon numbers of each mode for a flat index.
    pub fn photons(&self, index: usize) -> Vec<usize> {
        let levels = self.levels();
        match self.modes {
            1 => vec![index],
            _ => vec![index / levels, index % levels],
        }
    }

    pub fn total_photons(&self, index: usize) -> usize {
        self.photons(index).iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mode_one_is_the_slow_index() {
        let space = FockSpace::two_mode(3).unwrap();
        assert_eq!(space.dim(), 16);
        assert_eq!(space.index(&[0, 1]).unwrap(), 1);
        assert_eq!(space.index(&[1, 0]).unwrap(), 4);
        assert_eq!(space.photons(7), vec![1, 3]);
    }

    #[test]
    fn rejects_three_modes_and_large_photon_numbers() {
        assert!(FockSpace::new(3, 4).is_err());
        assert!(FockSpace::new(0, 4).is_err());
        let space = FockSpace::single(2).unwrap();
        assert!(space.index(&[3]).is_err());
        assert!(space.check_mode(1).is_err());
    }
}
