use serde::{Deserialize, Serialize};

use super::hamiltonian::{parity_blocks, sector_dimension, MAX_DIMENSION};
use crate::error::{DickeError, Result};
use crate::model::ModelParams;
use crate::semiclassical::{coupling_regime, CouplingRegime};
use crate::spin::Pseudospin;

/// Largest eigenvalue shift (in units of `omega0`) tolerated between cutoffs.
pub const CONVERGENCE_TOL: f64 = 1e-8;
/// Fraction of the spectrum, counted from the bottom, that must be stable for
/// [`Spectrum::converged`].
pub const CONVERGENCE_FRACTION: f64 = 0.6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub j: Pseudospin,
    pub n_max: usize,
    /// Cutoff used as the reference for the convergence test.
    pub reference_n_max: usize,
    /// Ascending eigenvalues at `n_max`.
    pub eigenvalues: Vec<f64>,
    /// Number of lowest eigenvalues that agree with the reference cutoff.
    pub convergence_window: usize,
    pub converged: bool,
}

impl Spectrum {
    /// Highest eigenvalue inside the convergence window.
    pub fn converged_top(&self) -> Option<f64> {
        self.convergence_window
            .checked_sub(1)
            .map(|i| self.eigenvalues[i])
    }
}

/// All eigenvalues of sector `j` at cutoff `n_max`, ascending.
pub fn eigenvalues(p: &ModelParams, j: Pseudospin, n_max: usize) -> Result<Vec<f64>> {
    let blocks = parity_blocks(p, j, n_max)?;
    let mut all = Vec::with_capacity(sector_dimension(j, n_max));
    for b in &blocks {
        all.extend(b.eigenvalues()?);
    }
    all.sort_by(f64::total_cmp);
    Ok(all)
}

fn reference_cutoff(n_max: usize) -> usize {
    (3 * n_max).div_ceil(2).max(n_max + 1)
}

fn window(p: &ModelParams, low: &[f64], high: &[f64]) -> usize {
    let tol = CONVERGENCE_TOL * p.omega0;
    low.iter()
        .zip(high)
        .take_while(|(a, b)| (*a - *b).abs() < tol)
        .count()
}

fn assemble(p: &ModelParams, j: Pseudospin, n_max: usize, low: Vec<f64>, high: &[f64]) -> Spectrum {
    let w = window(p, &low, high);
    let needed = (CONVERGENCE_FRACTION * low.len() as f64).ceil() as usize;
    Spectrum {
        j,
        n_max,
        reference_n_max: reference_cutoff(n_max),
        convergence_window: w,
        converged: w >= needed,
        eigenvalues: low,
    }
}

/// Spectrum at `n_max`, checked against the cutoff `ceil(1.5 n_max)`.
pub fn spectrum(p: &ModelParams, j: Pseudospin, n_max: usize) -> Result<Spectrum> {
    let low = eigenvalues(p, j, n_max)?;
    let high = eigenvalues(p, j, reference_cutoff(n_max))?;
    Ok(assemble(p, j, n_max, low, &high))
}

/// Initial boson cutoff: four times the classical photon number of the
/// displaced minimum plus a margin of 40.
pub fn cutoff_start(p: &ModelParams, j: Pseudospin) -> Result<usize> {
    p.validate()?;
    j.check_allowed(p.n_atoms)?;
    if j.twice() == 0 || coupling_regime(p, j)? == CouplingRegime::Weak {
        return Ok(40);
    }
    let min = crate::semiclassical::lowest_energy(p, j)?;
    let q = min.minimizers[0].q_plus;
    Ok((4.0 * 0.5 * q * q + 40.0).ceil() as usize)
}

/// Grows the cutoff by factors of 1.5 from [`cutoff_start`] until `accept`
/// returns true for the resulting spectrum.
pub fn converged_spectrum<F: Fn(&Spectrum) -> bool>(p: &ModelParams, j: Pseudospin, accept: F) -> Result<Spectrum> {
    let mut n_max = cutoff_start(p, j)?;
    let mut low = eigenvalues(p, j, n_max)?;
    loop {
        let next = reference_cutoff(n_max);
        let dim = sector_dimension(j, next);
        if dim > MAX_DIMENSION {
            return Err(DickeError::Dimension {
                dim,
                limit: MAX_DIMENSION,
            });
        }
        let high = eigenvalues(p, j, next)?;
        let s = assemble(p, j, n_max, low, &high);
        if accept(&s) {
            return Ok(s);
        }
        n_max = next;
        low = high;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DosHistogram {
    pub bin_width: f64,
    /// Bin centres.
    pub centers: Vec<f64>,
    /// Level counts divided by the bin width.
    pub density: Vec<f64>,
}

/// Histogram of the eigenvalues on `[lo, hi)` in bins of `bin_width`. The window
/// must lie inside the converged part of the spectrum.
pub fn quantum_dos(s: &Spectrum, bin_width: f64, lo: f64, hi: f64) -> Result<DosHistogram> {
    if !(bin_width > 0.0 && hi > lo) {
        return Err(DickeError::InvalidArgument(format!(
            "need bin_width > 0 and hi > lo, got {bin_width}, [{lo}, {hi})"
        )));
    }
    let top = s.converged_top().unwrap_or(f64::NEG_INFINITY);
    if hi > top {
        return Err(DickeError::Window {
            requested: hi,
            converged_top: top,
        });
    }
    let bins = ((hi - lo) / bin_width).round().max(1.0) as usize;
    let mut counts = vec![0usize; bins];
    for &e in &s.eigenvalues {
        if e < lo {
            continue;
        }
        let k = ((e - lo) / bin_width).floor() as usize;
        if k >= bins {
            break;
        }
        counts[k] += 1;
    }
    Ok(DosHistogram {
        bin_width,
        centers: (0..bins).map(|k| lo + (k as f64 + 0.5) * bin_width).collect(),
        density: counts.iter().map(|&c| c as f64 / bin_width).collect(),
    })
}
