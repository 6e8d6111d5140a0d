use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use super::hamiltonian::{coupling_regime, coupling_scale, sector_couplings, ClassicalCoords, CouplingRegime};
use crate::error::{DickeError, Result};
use crate::model::ModelParams;
use crate::spin::Pseudospin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StationaryKind {
    GlobalMinimum,
    SaddlePoint,
    LocalMaximum,
}

/// A stationary point of the classical Hamiltonian. Points related by the parity
/// symmetry share one entry, with the twin stored in `mirror`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExtremalPoint {
    pub coords: ClassicalCoords,
    pub mirror: Option<ClassicalCoords>,
    pub energy: f64,
    pub kind: StationaryKind,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LowestEnergy {
    pub energy: f64,
    pub minimizers: Vec<ClassicalCoords>,
}

fn pole(j: f64) -> ClassicalCoords {
    ClassicalCoords {
        q_plus: 0.0,
        q_minus: 0.0,
        j_z: j,
        azimuth: None,
    }
}

/// Energy `-(j omega0 / 2)(s + 1/s)` of the displaced stationary point with strength `s >= 1`.
fn displaced_energy(p: &ModelParams, j: f64, s: f64) -> f64 {
    -0.5 * j * p.omega0 * (s + 1.0 / s)
}

fn plus_pair(p: &ModelParams, j: f64, a: f64) -> (ClassicalCoords, ClassicalCoords) {
    let q = (1.0 + p.delta) * coupling_scale(p, j) / p.omega * (1.0 - 1.0 / (a * a)).max(0.0).sqrt();
    let jz = -j / a;
    (
        ClassicalCoords {
            q_plus: -q,
            q_minus: 0.0,
            j_z: jz,
            azimuth: Some(0.0),
        },
        ClassicalCoords {
            q_plus: q,
            q_minus: 0.0,
            j_z: jz,
            azimuth: Some(PI),
        },
    )
}

fn minus_pair(p: &ModelParams, j: f64, b: f64) -> (ClassicalCoords, ClassicalCoords) {
    let q = (1.0 - p.delta) * coupling_scale(p, j) / p.omega * (1.0 - 1.0 / (b * b)).max(0.0).sqrt();
    let jz = -j / b;
    (
        ClassicalCoords {
            q_plus: 0.0,
            q_minus: q,
            j_z: jz,
            azimuth: Some(FRAC_PI_2),
        },
        ClassicalCoords {
            q_plus: 0.0,
            q_minus: -q,
            j_z: jz,
            azimuth: Some(3.0 * FRAC_PI_2),
        },
    )
}

/// Minimum of the classical Hamiltonian in sector `j` and the points attaining it.
pub fn lowest_energy(p: &ModelParams, j: Pseudospin) -> Result<LowestEnergy> {
    let sc = sector_couplings(p, j)?;
    let jv = j.value();
    let a = sc.strength_plus(p.gamma);
    if a < 1.0 {
        return Ok(LowestEnergy {
            energy: -jv * p.omega0,
            minimizers: vec![pole(-jv)],
        });
    }
    let (c1, c2) = plus_pair(p, jv, a);
    Ok(LowestEnergy {
        energy: displaced_energy(p, jv, a),
        minimizers: vec![c1, c2],
    })
}

/// All stationary points of the classical Hamiltonian, ordered by energy.
///
/// In the rotating-wave limit the minima form a ring and the listed saddle points
/// lie on that ring, degenerate with the minimum.
pub fn extremal_points(p: &ModelParams, j: Pseudospin) -> Result<Vec<ExtremalPoint>> {
    let sc = sector_couplings(p, j)?;
    let jv = j.value();
    let a = sc.strength_plus(p.gamma);
    let b = sc.strength_minus(p.gamma);
    let single = |coords, energy, kind| ExtremalPoint {
        coords,
        mirror: None,
        energy,
        kind,
    };
    let south = -jv * p.omega0;
    let north = jv * p.omega0;
    let regime = coupling_regime(p, j)?;
    let mut pts = Vec::with_capacity(4);
    match regime {
        CouplingRegime::Weak => {
            pts.push(single(pole(-jv), south, StationaryKind::GlobalMinimum));
        }
        CouplingRegime::Intermediate | CouplingRegime::Strong => {
            let (c1, c2) = plus_pair(p, jv, a);
            pts.push(ExtremalPoint {
                coords: c1,
                mirror: Some(c2),
                energy: displaced_energy(p, jv, a),
                kind: StationaryKind::GlobalMinimum,
            });
            if regime == CouplingRegime::Strong {
                let (s1, s2) = minus_pair(p, jv, b);
                pts.push(ExtremalPoint {
                    coords: s1,
                    mirror: Some(s2),
                    energy: displaced_energy(p, jv, b),
                    kind: StationaryKind::SaddlePoint,
                });
                pts.push(single(pole(-jv), south, StationaryKind::LocalMaximum));
            } else {
                pts.push(single(pole(-jv), south, StationaryKind::SaddlePoint));
            }
        }
    }
    pts.push(single(pole(jv), north, StationaryKind::LocalMaximum));
    Ok(pts)
}

/// Energies of the excited-state transitions of sector `j`, ascending.
pub fn esqpt_energies(p: &ModelParams, j: Pseudospin) -> Result<Vec<f64>> {
    let pts = extremal_points(p, j)?;
    Ok(pts
        .iter()
        .filter(|e| e.kind != StationaryKind::GlobalMinimum)
        .map(|e| e.energy)
        .collect())
}

/// Energy per atom of the ground-state transition of the sector whose critical
/// coupling equals `gamma`, treating `j` as continuous.
pub fn qpt_energy_per_atom(p: &ModelParams) -> Result<Option<f64>> {
    p.validate()?;
    let gp = p.critical().plus;
    if p.gamma <= gp {
        return Ok(None);
    }
    let n = p.n_atoms as f64;
    let j_star = 0.5 * n * (gp / p.gamma).powi(2);
    if !(j_star > 0.0 && j_star <= 0.5 * n) {
        return Err(DickeError::InvalidArgument(format!("no sector becomes critical at gamma = {}", p.gamma)));
    }
    // strength is exactly 1 at the sector's own critical coupling
    Ok(Some(displaced_energy(p, j_star, 1.0) / n))
}
