use serde::{Deserialize, Serialize};

use super::spectrum::eigenvalues;
use crate::error::{DickeError, Result};
use crate::microcanonical::MultiplicityTable;
use crate::model::ModelParams;
use crate::numerics::special::log_sum_exp;
use crate::spin::allowed_pseudospins;

/// Canonical quantities per atom from the exact spectrum of all sectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumThermo {
    pub beta: f64,
    pub log_z: f64,
    pub free_energy: f64,
    pub internal_energy: f64,
    pub entropy: f64,
}

const LOG_Z_TOL: f64 = 1e-8;

fn sector_sums(p: &ModelParams, beta: f64, n_max: usize, table: &MultiplicityTable) -> Result<(f64, f64)> {
    // returns ln Z and <E>
    let mut log_terms = Vec::new();
    let mut log_energy_pos = Vec::new();
    let mut log_energy_neg = Vec::new();
    for j in allowed_pseudospins(p.n_atoms) {
        let ly = table.ln(j).expect("table covers every allowed pseudospin");
        for e in eigenvalues(p, j, n_max)? {
            let w = ly - beta * e;
            log_terms.push(w);
            if e > 0.0 {
                log_energy_pos.push(w + e.ln());
            } else if e < 0.0 {
                log_energy_neg.push(w + (-e).ln());
            }
        }
    }
    let log_z = log_sum_exp(&log_terms);
    let u = (log_sum_exp(&log_energy_pos) - log_z).exp() - (log_sum_exp(&log_energy_neg) - log_z).exp();
    Ok((log_z, u))
}

/// Canonical thermodynamics of the finite system, summing `Y(N, j) exp(-beta E)`
/// over every sector. The cutoff is accepted only if doubling it moves `ln Z`
/// by less than `1e-8`.
pub fn canonical_from_spectrum(p: &ModelParams, beta: f64, n_max: usize) -> Result<SpectrumThermo> {
    p.validate()?;
    if !(beta.is_finite() && beta > 0.0) {
        return Err(DickeError::InvalidArgument(format!(
            "beta must be positive and finite, got {beta}"
        )));
    }
    let table = MultiplicityTable::new(p.n_atoms)?;
    let (log_z, u) = sector_sums(p, beta, n_max, &table)?;
    let (log_z2, _) = sector_sums(p, beta, 2 * n_max, &table)?;
    let shift = (log_z - log_z2).abs();
    if shift > LOG_Z_TOL {
        return Err(DickeError::Cutoff { n_max, shift });
    }
    let n = p.n_atoms as f64;
    Ok(SpectrumThermo {
        beta,
        log_z: log_z / n,
        free_energy: -log_z / (beta * n),
        internal_energy: u / n,
        entropy: (beta * u + log_z) / n,
    })
}
