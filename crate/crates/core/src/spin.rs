use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{DickeError, Result};

/// A collective pseudospin quantum number `j`, stored as `2j` so that half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pseudospin(u32);

impl Pseudospin {
    pub fn from_twice(two_j: u32) -> Self {
        Self(two_j)
    }

    /// Parse a real `j`; fails unless `2j` is a non-negative integer.
    pub fn from_value(j: f64) -> Result<Self> {
        let t = 2.0 * j;
        if t >= 0.0 && t.fract() == 0.0 && t <= u32::MAX as f64 {
            Ok(Self(t as u32))
        } else {
            Err(DickeError::InvalidArgument(format!(
                "pseudospin must be a non-negative half-integer, got {j}"
            )))
        }
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        0.5 * self.0 as f64
    }

    /// Number of `m` states, `2j + 1`.
    pub fn multiplet_size(self) -> usize {
        self.0 as usize + 1
    }

    /// Requires `0 < 2j <= N`.
    pub fn check_positive(self, n_atoms: u32) -> Result<()> {
        if self.0 == 0 || self.0 > n_atoms {
            Err(DickeError::InvalidSpin {
                n_atoms,
                two_j: self.0,
            })
        } else {
            Ok(())
        }
    }

    /// Requires `2j <= N` and `N - 2j` even.
    pub fn check_allowed(self, n_atoms: u32) -> Result<()> {
        if self.0 > n_atoms {
            return Err(DickeError::InvalidSpin {
                n_atoms,
                two_j: self.0,
            });
        }
        if (n_atoms - self.0) % 2 != 0 {
            return Err(DickeError::Parity {
                n_atoms,
                two_j: self.0,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Pseudospin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// All pseudospins that occur for `n_atoms` two-level atoms, in ascending order.
pub fn allowed_pseudospins(n_atoms: u32) -> impl Iterator<Item = Pseudospin> {
    (n_atoms % 2..=n_atoms).step_by(2).map(Pseudospin)
}
