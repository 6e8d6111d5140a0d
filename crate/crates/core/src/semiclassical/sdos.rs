//! Semiclassical density of states of one pseudospin sector.
//!
//! After the bosonic integration the density reduces to an integral over
//! `y = j_z / j` of the azimuthal measure allowed at energy `E`. The piecewise
//! forms below follow the topology of the allowed region, which changes at the
//! stationary energies of the classical Hamiltonian.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::hamiltonian::{coupling_regime, sector_couplings, CouplingRegime};
use crate::error::Result;
use crate::model::ModelParams;
use crate::numerics::quadrature::{tanh_sinh, QuadratureOptions};
use crate::spin::Pseudospin;

/// Energies closer than this (in units of `omega0`) to a regime boundary are
/// assigned to the lower regime.
const BOUNDARY_TOL: f64 = 1e-10;
const ROOT_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SdosRegime {
    /// Below the sector's ground energy.
    BelowGround,
    /// One simply connected region inside the displaced well.
    LowerWell,
    /// Between the saddle energy and `-j omega0`, where the region splits around the saddles.
    Intertwined,
    /// Between `-j omega0` and `+j omega0`.
    Bulk,
    /// Above `+j omega0`; the whole Bloch sphere is accessible.
    FullSphere,
}

impl SdosRegime {
    pub fn label(self) -> &'static str {
        match self {
            SdosRegime::BelowGround => "below-ground",
            SdosRegime::LowerWell => "lower-well",
            SdosRegime::Intertwined => "intertwined",
            SdosRegime::Bulk => "bulk",
            SdosRegime::FullSphere => "full-sphere",
        }
    }
}

struct Sector {
    eps: f64,
    a: f64,
    b: f64,
    regime: SdosRegime,
}

fn sector(p: &ModelParams, j: Pseudospin, energy: f64) -> Result<Sector> {
    let sc = sector_couplings(p, j)?;
    let cr = coupling_regime(p, j)?;
    let jv = j.value();
    let a = sc.strength_plus(p.gamma);
    let b = sc.strength_minus(p.gamma);
    let scale = p.omega0 * jv;
    let tol = BOUNDARY_TOL * p.omega0;
    let well = |s: f64| -0.5 * (s + 1.0 / s) * scale;
    // boundaries in ascending order, each paired with the regime that starts there
    let mut bounds: Vec<(f64, SdosRegime)> = Vec::with_capacity(4);
    match cr {
        CouplingRegime::Weak => bounds.push((-scale, SdosRegime::Bulk)),
        CouplingRegime::Intermediate => {
            bounds.push((well(a), SdosRegime::LowerWell));
            bounds.push((-scale, SdosRegime::Bulk));
        }
        CouplingRegime::Strong => {
            bounds.push((well(a), SdosRegime::LowerWell));
            bounds.push((well(b), SdosRegime::Intertwined));
            bounds.push((-scale, SdosRegime::Bulk));
        }
    }
    bounds.push((scale, SdosRegime::FullSphere));
    let mut regime = SdosRegime::BelowGround;
    for &(e, r) in &bounds {
        if energy >= e + tol {
            regime = r;
        }
    }
    Ok(Sector {
        eps: energy / scale,
        a,
        b,
        regime,
    })
}

/// Roots of `k y^2 + 2 y - 2 eps - k = 0` written to avoid cancellation; the lower
/// root is `-inf` when `k = 0`.
fn roots(k: f64, eps: f64) -> (f64, f64) {
    let s = (1.0 + k * (2.0 * eps + k)).max(0.0).sqrt();
    let upper = (2.0 * eps + k) / (1.0 + s);
    let lower = if k > 0.0 { -(1.0 + s) / k } else { f64::NEG_INFINITY };
    (lower, upper)
}

fn clamp_unit(y: f64) -> f64 {
    if y < -1.0 + ROOT_TOL {
        -1.0
    } else if y > 1.0 - ROOT_TOL {
        1.0
    } else {
        y
    }
}

/// Boundaries in `y = j_z / j` of the region where the azimuthal constraint is
/// active: `g = 0` at the `zero` roots and `g = 1` at the `one` roots.
/// Values are not clamped to `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SdosRoots {
    pub zero_lower: f64,
    pub zero_upper: f64,
    pub one_lower: f64,
    pub one_upper: f64,
}

pub fn sdos_roots(p: &ModelParams, j: Pseudospin, energy: f64) -> Result<SdosRoots> {
    let s = sector(p, j, energy)?;
    let (zero_lower, zero_upper) = roots(s.b, s.eps);
    let (one_lower, one_upper) = roots(s.a, s.eps);
    Ok(SdosRoots {
        zero_lower,
        zero_upper,
        one_lower,
        one_upper,
    })
}

/// The function `g(y)` whose value fixes the accessible fraction of the azimuth:
/// everything for `g <= 0`, nothing for `g >= 1`, and `4 arccos(sqrt g) / 2pi` in between.
/// Undefined in the rotating-wave limit, where it is replaced by an all-or-nothing test.
pub fn azimuth_function(p: &ModelParams, j: Pseudospin, energy: f64, y: f64) -> Result<f64> {
    let s = sector(p, j, energy)?;
    let c = 2.0 * (y - s.eps) / (1.0 - y * y);
    Ok((c - s.b) / (s.a - s.b))
}

/// Regime of the density of states at `energy`.
pub fn sdos_regime(p: &ModelParams, j: Pseudospin, energy: f64) -> Result<SdosRegime> {
    Ok(sector(p, j, energy)?.regime)
}

/// Scaled density `(omega / 2j) nu(E)`, which equals 1 once the full sphere is accessible.
pub fn sdos_scaled(p: &ModelParams, j: Pseudospin, energy: f64) -> Result<f64> {
    let s = sector(p, j, energy)?;
    let Sector { eps, a, b, regime } = s;
    match regime {
        SdosRegime::BelowGround => return Ok(0.0),
        SdosRegime::FullSphere => return Ok(1.0),
        _ => {}
    }
    let (y1_lo, y1_hi) = roots(a, eps);
    let (y1_lo, y1_hi) = (clamp_unit(y1_lo), clamp_unit(y1_hi));
    if p.is_tavis_cummings() {
        // the azimuthal measure is all or nothing
        return Ok(0.5 * (y1_hi - y1_lo).max(0.0));
    }
    let (y0_lo, y0_hi) = roots(b, eps);
    let (y0_lo, y0_hi) = (clamp_unit(y0_lo), clamp_unit(y0_hi));
    let integrand = |y: f64| {
        let c = 2.0 * (y - eps) / (1.0 - y * y);
        ((c - b) / (a - b)).clamp(0.0, 1.0).sqrt().acos()
    };
    let integral = |lo: f64, hi: f64| {
        if hi <= lo {
            0.0
        } else {
            tanh_sinh(integrand, lo, hi, QuadratureOptions::default()).value / PI
        }
    };
    let value = match regime {
        SdosRegime::Bulk => 0.5 * (y0_hi + 1.0) + integral(y0_hi, y1_hi),
        SdosRegime::LowerWell => integral(y1_lo, y1_hi),
        SdosRegime::Intertwined => 0.5 * (y0_hi - y0_lo) + integral(y1_lo, y0_lo) + integral(y0_hi, y1_hi),
        SdosRegime::BelowGround | SdosRegime::FullSphere => unreachable!(),
    };
    Ok(value)
}

/// Semiclassical density of states of sector `j` at energy `energy`.
pub fn sdos(p: &ModelParams, j: Pseudospin, energy: f64) -> Result<f64> {
    Ok(2.0 * j.value() / p.omega * sdos_scaled(p, j, energy)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ratio: f64, delta: f64) -> ModelParams {
        let p = ModelParams::new(1.0, 1.0, 1.0, delta, 40).unwrap();
        p.with_gamma(ratio * p.critical().plus)
    }

    /// Direct integration of the azimuthal measure over the whole sphere.
    fn brute(p: &ModelParams, j: Pseudospin, e: f64) -> f64 {
        let sc = sector_couplings(p, j).unwrap();
        let a = sc.strength_plus(p.gamma);
        let b = sc.strength_minus(p.gamma);
        let eps = e / (p.omega0 * j.value());
        let n = 400_000;
        let mut acc = 0.0;
        for i in 0..n {
            let y = -1.0 + (i as f64 + 0.5) * 2.0 / n as f64;
            let c = 2.0 * (y - eps) / (1.0 - y * y);
            let g = (c - b) / (a - b);
            acc += if g <= 0.0 {
                2.0 * PI
            } else if g < 1.0 {
                4.0 * g.sqrt().acos()
            } else {
                0.0
            };
        }
        acc * (2.0 / n as f64) / (4.0 * PI)
    }

    #[test]
    fn matches_brute_force_in_every_regime() {
        let j = Pseudospin::from_twice(40);
        let p = params(2.6, 0.2);
        // eps_{j,+} = -(6.76 + 1/6.76)/2, eps_{j,-} uses (2.6 * 0.8/1.2)^2
        for eps in [-3.3, -2.5, -1.6, -1.2, -0.9, 0.0, 0.7, 1.2] {
            let e = eps * 20.0;
            let v = sdos_scaled(&p, j, e).unwrap();
            let w = brute(&p, j, e);
            assert!((v - w).abs() < 2e-4, "eps {eps}: {v} vs {w}");
        }
    }

    #[test]
    fn regimes_in_strong_coupling() {
        let j = Pseudospin::from_twice(40);
        let p = params(2.6, 0.2);
        assert_eq!(sdos_regime(&p, j, -80.0).unwrap(), SdosRegime::BelowGround);
        assert_eq!(sdos_regime(&p, j, -50.0).unwrap(), SdosRegime::LowerWell);
        assert_eq!(sdos_regime(&p, j, -24.0).unwrap(), SdosRegime::Intertwined);
        assert_eq!(sdos_regime(&p, j, 0.0).unwrap(), SdosRegime::Bulk);
        assert_eq!(sdos_regime(&p, j, 20.0).unwrap(), SdosRegime::Bulk);
        assert_eq!(sdos_regime(&p, j, 25.0).unwrap(), SdosRegime::FullSphere);
    }

    #[test]
    fn boundary_goes_to_lower_regime() {
        let j = Pseudospin::from_twice(40);
        let p = params(1.4, 0.2);
        assert_eq!(sdos_regime(&p, j, -20.0).unwrap(), SdosRegime::LowerWell);
        assert_eq!(sdos_regime(&p, j, -20.0 + 1e-11).unwrap(), SdosRegime::LowerWell);
        assert_eq!(sdos_regime(&p, j, -20.0 + 1e-9).unwrap(), SdosRegime::Bulk);
    }

    #[test]
    fn tavis_cummings_measure() {
        let j = Pseudospin::from_twice(40);
        let p = params(2.0, 0.0);
        for eps in [-2.0, -1.3, -0.5, 0.5] {
            let v = sdos_scaled(&p, j, 20.0 * eps).unwrap();
            let a: f64 = 4.0;
            let s = (1.0 + a * (2.0 * eps + a)).sqrt();
            let hi = ((2.0 * eps + a) / (1.0 + s)).min(1.0);
            let lo = (-(1.0 + s) / a).max(-1.0);
            assert!((v - 0.5 * (hi - lo)).abs() < 1e-14);
        }
    }

    #[test]
    fn dicke_limit_roots() {
        let j = Pseudospin::from_twice(40);
        let p = params(0.7, 1.0);
        let v = sdos_scaled(&p, j, -5.0).unwrap();
        let w = brute(&p, j, -5.0);
        assert!((v - w).abs() < 2e-4);
    }
}
