use serde::{Deserialize, Serialize};

use crate::error::{DickeError, Result};
use crate::model::ModelParams;
use crate::spin::Pseudospin;

/// Point of the four-dimensional classical phase space. `azimuth` is `None` at the
/// poles of the Bloch sphere, where the angle is irrelevant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalCoords {
    pub q_plus: f64,
    pub q_minus: f64,
    pub j_z: f64,
    pub azimuth: Option<f64>,
}

/// Critical couplings of a single pseudospin sector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorCouplings {
    pub plus: f64,
    pub minus: f64,
}

impl SectorCouplings {
    /// `(gamma / gamma_{j,+})^2`
    pub fn strength_plus(&self, gamma: f64) -> f64 {
        (gamma / self.plus).powi(2)
    }

    /// `(gamma / gamma_{j,-})^2`, zero when the minus coupling is infinite.
    pub fn strength_minus(&self, gamma: f64) -> f64 {
        if self.minus.is_finite() {
            (gamma / self.minus).powi(2)
        } else {
            0.0
        }
    }
}

/// Coupling interval of a sector relative to its two critical couplings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CouplingRegime {
    /// `gamma < gamma_{j,+}`
    Weak,
    /// `gamma_{j,+} <= gamma < gamma_{j,-}`
    Intermediate,
    /// `gamma_{j,-} <= gamma`
    Strong,
}

pub fn sector_couplings(p: &ModelParams, j: Pseudospin) -> Result<SectorCouplings> {
    p.validate()?;
    j.check_positive(p.n_atoms)?;
    let scale = (p.n_atoms as f64 / j.twice() as f64).sqrt();
    let c = p.critical();
    Ok(SectorCouplings {
        plus: scale * c.plus,
        minus: scale * c.minus,
    })
}

pub fn coupling_regime(p: &ModelParams, j: Pseudospin) -> Result<CouplingRegime> {
    let sc = sector_couplings(p, j)?;
    Ok(if p.gamma < sc.plus {
        CouplingRegime::Weak
    } else if p.gamma < sc.minus {
        CouplingRegime::Intermediate
    } else {
        CouplingRegime::Strong
    })
}

/// Amplitude of the spin-field coupling term, `gamma j / sqrt(N/2)`.
pub(crate) fn coupling_scale(p: &ModelParams, j: f64) -> f64 {
    p.gamma * j / (0.5 * p.n_atoms as f64).sqrt()
}

pub(crate) fn hamiltonian_unchecked(p: &ModelParams, j: f64, c: &ClassicalCoords) -> f64 {
    let y = c.j_z / j;
    let sin_theta = (1.0 - y * y).max(0.0).sqrt();
    let phi = c.azimuth.unwrap_or(0.0);
    p.omega0 * c.j_z
        + 0.5 * p.omega * (c.q_plus * c.q_plus + c.q_minus * c.q_minus)
        + coupling_scale(p, j)
            * sin_theta
            * ((1.0 + p.delta) * c.q_plus * phi.cos() - (1.0 - p.delta) * c.q_minus * phi.sin())
}

/// Classical energy of the sector `j` at the given phase-space point.
pub fn classical_hamiltonian(p: &ModelParams, j: Pseudospin, c: &ClassicalCoords) -> Result<f64> {
    p.validate()?;
    j.check_positive(p.n_atoms)?;
    let jv = j.value();
    if !(c.j_z.abs() <= jv) {
        return Err(DickeError::Domain {
            what: "j_z",
            value: c.j_z,
            lo: -jv,
            hi: jv,
        });
    }
    Ok(hamiltonian_unchecked(p, jv, c))
}
