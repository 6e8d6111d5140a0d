//! Monte-Carlo estimate of the classical phase-space volume, used as an
//! independent check of the analytic density of states.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

use super::hamiltonian::coupling_scale;
use crate::error::{DickeError, Result};
use crate::model::ModelParams;
use crate::spin::Pseudospin;

pub const MIN_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub std_error: f64,
}

/// Draws `(y, phi)` uniformly on the sphere coordinates and the two field
/// amplitudes uniformly in a square that contains the allowed disc at `e_max`.
/// Calls `visit(weight, energy)` for every sample with a non-empty square.
fn sample<F: FnMut(f64, f64)>(p: &ModelParams, j: f64, e_max: f64, samples: usize, seed: u64, mut visit: F) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kappa0 = coupling_scale(p, j);
    for _ in 0..samples {
        let y: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..TAU);
        let xp: f64 = rng.gen_range(-1.0..1.0);
        let xm: f64 = rng.gen_range(-1.0..1.0);
        let kappa = kappa0 * (1.0 - y * y).sqrt();
        let fa = kappa * (1.0 + p.delta) * phi.cos();
        let fb = -kappa * (1.0 - p.delta) * phi.sin();
        // energy at the bottom of the field paraboloid
        let floor = p.omega0 * j * y - (fa * fa + fb * fb) / (2.0 * p.omega);
        let room = e_max - floor;
        if room <= 0.0 {
            continue;
        }
        let radius = (2.0 * room / p.omega).sqrt();
        let energy = floor + 0.5 * p.omega * radius * radius * (xp * xp + xm * xm);
        visit(4.0 * radius * radius, energy);
    }
}

fn check(p: &ModelParams, j: Pseudospin, samples: usize) -> Result<()> {
    p.validate()?;
    j.check_positive(p.n_atoms)?;
    if samples < MIN_SAMPLES {
        return Err(DickeError::InvalidArgument(format!(
            "at least {MIN_SAMPLES} samples are required, got {samples}"
        )));
    }
    Ok(())
}

fn mean_and_error(sum: f64, sum_sq: f64, n: usize) -> (f64, f64) {
    let nf = n as f64;
    let mean = sum / nf;
    let var = (sum_sq / nf - mean * mean).max(0.0);
    (mean, (var / nf).sqrt())
}

/// Phase-space volume with energy below `energy`, in units of `(2 pi)^2`.
pub fn phase_space_volume_mc(
    p: &ModelParams,
    j: Pseudospin,
    energy: f64,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    check(p, j, samples)?;
    let jv = j.value();
    let (mut s, mut s2) = (0.0, 0.0);
    sample(p, jv, energy, samples, seed, |w, e| {
        if e <= energy {
            s += w;
            s2 += w * w;
        }
    });
    let (m, se) = mean_and_error(s, s2, samples);
    Ok(McEstimate {
        value: jv / PI * m,
        std_error: jv / PI * se,
    })
}

/// Density of states as the finite difference of the phase-space volume across
/// `[energy - half_width, energy + half_width]`, with both volumes taken from one
/// common sample so that the error is that of the shell alone.
pub fn sdos_mc(
    p: &ModelParams,
    j: Pseudospin,
    energy: f64,
    half_width: f64,
    samples: usize,
    seed: u64,
) -> Result<McEstimate> {
    check(p, j, samples)?;
    if !(half_width > 0.0) {
        return Err(DickeError::InvalidArgument(format!(
            "shell half width must be positive, got {half_width}"
        )));
    }
    let jv = j.value();
    let (lo, hi) = (energy - half_width, energy + half_width);
    let (mut s, mut s2) = (0.0, 0.0);
    sample(p, jv, hi, samples, seed, |w, e| {
        if e > lo && e <= hi {
            s += w;
            s2 += w * w;
        }
    });
    let (m, se) = mean_and_error(s, s2, samples);
    let scale = jv / PI / (2.0 * half_width);
    Ok(McEstimate {
        value: scale * m,
        std_error: scale * se,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_seed() {
        let p = ModelParams::new(1.0, 1.0, 1.5, 0.3, 10).unwrap();
        let j = Pseudospin::from_twice(10);
        let a = phase_space_volume_mc(&p, j, -2.0, 20_000, 7).unwrap();
        let b = phase_space_volume_mc(&p, j, -2.0, 20_000, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_below_ground() {
        let p = ModelParams::new(1.0, 1.0, 0.3, 0.3, 10).unwrap();
        let j = Pseudospin::from_twice(10);
        let v = phase_space_volume_mc(&p, j, -5.5, 20_000, 1).unwrap();
        assert_eq!(v.value, 0.0);
    }

    #[test]
    fn slope_above_full_sphere() {
        // above +j omega0 the volume grows at exactly 2j/omega
        let p = ModelParams::new(1.0, 1.0, 0.3, 0.3, 10).unwrap();
        let j = Pseudospin::from_twice(10);
        let v = sdos_mc(&p, j, 10.0, 0.5, 200_000, 3).unwrap();
        assert!((v.value - 10.0).abs() < 4.0 * v.std_error);
    }

    #[test]
    fn too_few_samples() {
        let p = ModelParams::new(1.0, 1.0, 0.3, 0.3, 10).unwrap();
        assert!(phase_space_volume_mc(&p, Pseudospin::from_twice(10), 0.0, 100, 1).is_err());
    }
}
