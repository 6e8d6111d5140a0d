//! Exact thermodynamic limit of the canonical ensemble.
//!
//! Observables are per atom. The superradiant branch is obtained from the gap
//! equation `tanh(eta * chi) = r * chi` with `eta = beta * omega0 / 2` and
//! `r = (critical coupling / gamma)^2`.

use serde::{Deserialize, Serialize};

use crate::error::{DickeError, Result};
use crate::model::{Branch, ModelParams};
use crate::numerics::roots::bisect;
use crate::numerics::special::{binary_entropy, ln_two_cosh, sech2, two_level_entropy};

const GAP_TOL: f64 = 1e-13;
const GAP_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseKind {
    Normal,
    Superradiant,
}

impl PhaseKind {
    pub fn label(self) -> &'static str {
        match self {
            PhaseKind::Normal => "normal",
            PhaseKind::Superradiant => "superradiant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThermalPhase {
    pub kind: PhaseKind,
    /// Whether the second superradiant branch exists (as saddles of the surface).
    pub second_branch: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalPoint {
    pub beta: f64,
    pub phase: ThermalPhase,
    pub chi: f64,
    pub free_energy: f64,
    pub entropy: f64,
    pub internal_energy: f64,
    pub heat_capacity: f64,
    pub photon_number: f64,
    pub sigma_x: f64,
    pub sigma_y: f64,
    pub sigma_z: f64,
}

/// Thermodynamic quantities evaluated on the second (saddle) branch.
/// These never describe the equilibrium state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SaddleBranchPoint {
    pub beta: f64,
    pub chi: f64,
    pub free_energy: f64,
    pub internal_energy: f64,
    pub heat_capacity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpinAxis {
    X,
    Y,
    Z,
}

fn check_beta(beta: f64) -> Result<()> {
    if beta.is_finite() && beta > 0.0 {
        Ok(())
    } else {
        Err(DickeError::InvalidArgument(format!(
            "beta must be positive and finite, got {beta}"
        )))
    }
}

fn ratio_sq(p: &ModelParams, branch: Branch) -> f64 {
    (p.critical().get(branch) / p.gamma).powi(2)
}

/// Inverse temperature at which the given branch opens, if it ever does.
pub fn critical_beta(p: &ModelParams, branch: Branch) -> Option<f64> {
    let gc = p.critical().get(branch);
    if !(p.gamma > gc) {
        return None;
    }
    Some(2.0 / p.omega0 * ratio_sq(p, branch).atanh())
}

pub(crate) fn branch_open(p: &ModelParams, beta: f64, branch: Branch) -> bool {
    critical_beta(p, branch).is_some_and(|bc| beta >= bc)
}

pub fn classify_phase(p: &ModelParams, beta: f64) -> Result<ThermalPhase> {
    p.validate()?;
    check_beta(beta)?;
    let kind = if branch_open(p, beta, Branch::Plus) {
        PhaseKind::Superradiant
    } else {
        PhaseKind::Normal
    };
    Ok(ThermalPhase {
        kind,
        second_branch: branch_open(p, beta, Branch::Minus),
    })
}

/// Nontrivial root `chi >= 1` of the gap equation on the given branch.
pub fn solve_chi(p: &ModelParams, beta: f64, branch: Branch) -> Result<f64> {
    p.validate()?;
    check_beta(beta)?;
    if !branch_open(p, beta, branch) {
        return Err(DickeError::NoSuperradiantRoot {
            branch: branch.name(),
            beta,
        });
    }
    let eta = 0.5 * beta * p.omega0;
    let r = ratio_sq(p, branch);
    let f = |x: f64| (eta * x).tanh() - r * x;
    if f(1.0) <= 0.0 {
        // exactly at the critical temperature
        return Ok(1.0);
    }
    // tanh saturates to 1 at low temperature, so 1/r itself may not change sign
    bisect(f, 1.0, (1.0 + 1e-12) / r, GAP_TOL, GAP_MAX_ITER).ok_or(DickeError::NoSuperradiantRoot {
        branch: branch.name(),
        beta,
    })
}

pub fn canonical_point(p: &ModelParams, beta: f64) -> Result<CanonicalPoint> {
    let phase = classify_phase(p, beta)?;
    let eta = 0.5 * beta * p.omega0;
    let point = match phase.kind {
        PhaseKind::Normal => {
            let t = eta.tanh();
            let lc = ln_two_cosh(eta);
            CanonicalPoint {
                beta,
                phase,
                chi: 1.0,
                free_energy: -lc / beta,
                entropy: two_level_entropy(eta),
                internal_energy: -0.5 * p.omega0 * t,
                heat_capacity: eta * eta * sech2(eta),
                photon_number: 0.0,
                sigma_x: 0.0,
                sigma_y: 0.0,
                sigma_z: -0.5 * t,
            }
        }
        PhaseKind::Superradiant => {
            let x = solve_chi(p, beta, Branch::Plus)?;
            let r = ratio_sq(p, Branch::Plus);
            let lc = ln_two_cosh(eta * x);
            let n = p.omega0 / (4.0 * p.omega) * r * (x * x - 1.0);
            let u_plus = n.max(0.0).sqrt();
            CanonicalPoint {
                beta,
                phase,
                chi: x,
                free_energy: 0.25 * p.omega0 * r * (x * x - 1.0) - lc / beta,
                // r chi = tanh(eta chi) on the gap root
                entropy: two_level_entropy(eta * x),
                internal_energy: -0.25 * p.omega0 * r * (x * x + 1.0),
                heat_capacity: branch_heat_capacity(eta, x, r),
                photon_number: n,
                sigma_x: -0.5 * r * (p.gamma / p.omega0) * (1.0 + p.delta) * u_plus,
                sigma_y: 0.0,
                sigma_z: -0.5 * r,
            }
        }
    };
    Ok(point)
}

fn branch_heat_capacity(eta: f64, x: f64, r: f64) -> f64 {
    let s2 = sech2(eta * x);
    let t = (eta * x).tanh();
    eta * eta * s2 * t * t / (r * r) / (1.0 - eta * s2 / r)
}

/// `k`-th moment of the scaled photon number.
pub fn photon_moment(p: &ModelParams, beta: f64, k: u32) -> Result<f64> {
    let pt = canonical_point(p, beta)?;
    Ok(pt.photon_number.powi(k as i32))
}

/// Thermal expectation of the scaled collective spin component.
pub fn spin_average(p: &ModelParams, beta: f64, axis: SpinAxis) -> Result<f64> {
    let pt = canonical_point(p, beta)?;
    Ok(match axis {
        SpinAxis::X => pt.sigma_x,
        SpinAxis::Y => pt.sigma_y,
        SpinAxis::Z => pt.sigma_z,
    })
}

/// Ground-state energy per atom in the thermodynamic limit.
pub fn ground_energy_per_atom(p: &ModelParams) -> f64 {
    let gp = p.critical().plus;
    if p.gamma < gp {
        -0.5 * p.omega0
    } else {
        let r = ratio_sq(p, Branch::Plus);
        -0.25 * p.omega0 * (r + 1.0 / r)
    }
}

/// Energy per atom at which the normal-superradiant transition occurs.
pub fn critical_energy_per_atom(p: &ModelParams) -> Option<f64> {
    (p.gamma > p.critical().plus).then(|| -0.5 * p.omega0 * ratio_sq(p, Branch::Plus))
}

/// Entropy per atom as a function of the energy per atom `u`.
pub fn entropy_of_energy(p: &ModelParams, u: f64) -> Result<f64> {
    p.validate()?;
    let ground = ground_energy_per_atom(p);
    let tol = 1e-12 * p.omega0;
    if !(u <= tol && u >= ground - tol) {
        return Err(DickeError::Domain {
            what: "energy per atom",
            value: u,
            lo: ground,
            hi: 0.0,
        });
    }
    let scaled = match critical_energy_per_atom(p) {
        Some(uc) if u <= uc => {
            let r = ratio_sq(p, Branch::Plus);
            (-r * (4.0 * u / p.omega0 + r)).max(0.0).sqrt()
        }
        _ => -2.0 * u / p.omega0,
    };
    Ok(binary_entropy(scaled.clamp(0.0, 1.0)))
}

/// Scaled energy `E_delta` in `[0, 1]` that enters [`entropy_of_energy`].
pub fn scaled_energy(p: &ModelParams, u: f64) -> f64 {
    match critical_energy_per_atom(p) {
        Some(uc) if u <= uc => {
            let r = ratio_sq(p, Branch::Plus);
            (-r * (4.0 * u / p.omega0 + r)).max(0.0).sqrt()
        }
        _ => (-2.0 * u / p.omega0).max(0.0),
    }
}

/// Free energy, internal energy and heat capacity on the second branch.
pub fn second_branch_point(p: &ModelParams, beta: f64) -> Result<SaddleBranchPoint> {
    let x = solve_chi(p, beta, Branch::Minus)?;
    let eta = 0.5 * beta * p.omega0;
    let r = ratio_sq(p, Branch::Minus);
    Ok(SaddleBranchPoint {
        beta,
        chi: x,
        free_energy: 0.25 * p.omega0 * r * (x * x - 1.0) - ln_two_cosh(eta * x) / beta,
        internal_energy: -0.25 * p.omega0 * r * (x * x + 1.0),
        heat_capacity: branch_heat_capacity(eta, x, r),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagramRow {
    pub gamma: f64,
    pub ground_energy: f64,
    pub critical_energy: Option<f64>,
    /// Energy window `[lower, upper]` spanned by the second branch, per atom.
    pub second_branch_window: Option<(f64, f64)>,
}

/// Energy-coupling phase boundaries per atom along a list of couplings.
pub fn phase_diagram_curves(p: &ModelParams, gammas: &[f64]) -> Result<Vec<PhaseDiagramRow>> {
    p.validate()?;
    gammas
        .iter()
        .map(|&g| {
            let q = p.with_gamma(g);
            q.validate()?;
            let gm = q.critical().minus;
            let window = (g > gm).then(|| {
                let r = ratio_sq(&q, Branch::Minus);
                (-0.25 * q.omega0 * (r + 1.0 / r), -0.5 * q.omega0 * r)
            });
            Ok(PhaseDiagramRow {
                gamma: g,
                ground_energy: ground_energy_per_atom(&q),
                critical_energy: critical_energy_per_atom(&q),
                second_branch_window: window,
            })
        })
        .collect()
}
