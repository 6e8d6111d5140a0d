//! Model parameters, critical couplings and the collective free-energy surface.

use serde::{Deserialize, Serialize};

use crate::error::{DickeError, Result};
use crate::numerics::special::{ln_two_cosh, tanh_ratio};

/// Parameters of the generalized Dicke Hamiltonian.
///
/// `omega` is the cavity frequency, `omega0` the atomic splitting, `gamma` the
/// light-matter coupling and `delta` the weight of the counter-rotating terms
/// (0 gives the Tavis-Cummings limit, 1 the Dicke limit).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega: f64,
    pub omega0: f64,
    pub gamma: f64,
    pub delta: f64,
    pub n_atoms: u32,
}

impl ModelParams {
    pub fn new(omega: f64, omega0: f64, gamma: f64, delta: f64, n_atoms: u32) -> Result<Self> {
        let p = Self {
            omega,
            omega0,
            gamma,
            delta,
            n_atoms,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(DickeError::InvalidParams(msg));
        if !(self.omega.is_finite() && self.omega > 0.0) {
            return bad(format!("omega must be positive, got {}", self.omega));
        }
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return bad(format!("omega0 must be positive, got {}", self.omega0));
        }
        if !(self.gamma.is_finite() && self.gamma >= 0.0) {
            return bad(format!("gamma must be non-negative, got {}", self.gamma));
        }
        if !(0.0..=1.0).contains(&self.delta) {
            return bad(format!("delta must lie in [0, 1], got {}", self.delta));
        }
        if self.n_atoms == 0 {
            return bad("n_atoms must be positive".into());
        }
        Ok(())
    }

    /// Copy with a different coupling.
    pub fn with_gamma(&self, gamma: f64) -> Self {
        Self { gamma, ..*self }
    }

    pub fn critical(&self) -> CriticalCouplings {
        critical_couplings(self)
    }

    /// `true` when the two critical couplings coincide (rotating-wave limit).
    pub fn is_tavis_cummings(&self) -> bool {
        self.delta < 1e-12
    }
}

/// The two critical couplings. `minus` is infinite when `delta == 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalCouplings {
    pub plus: f64,
    pub minus: f64,
}

/// Which of the two critical couplings a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        }
    }
}

impl CriticalCouplings {
    pub fn get(&self, branch: Branch) -> f64 {
        match branch {
            Branch::Plus => self.plus,
            Branch::Minus => self.minus,
        }
    }
}

pub fn critical_couplings(p: &ModelParams) -> CriticalCouplings {
    let root = (p.omega * p.omega0).sqrt();
    let minus = if p.delta >= 1.0 {
        f64::INFINITY
    } else {
        root / (1.0 - p.delta)
    };
    CriticalCouplings {
        plus: root / (1.0 + p.delta),
        minus,
    }
}

/// Square-root factor of the collective atomic energy at field amplitudes `(u_plus, u_minus)`.
pub fn chi(p: &ModelParams, u_plus: f64, u_minus: f64) -> f64 {
    let k = 4.0 * p.gamma * p.gamma / (p.omega0 * p.omega0);
    let a = (1.0 + p.delta) * u_plus;
    let b = (1.0 - p.delta) * u_minus;
    (1.0 + k * (a * a + b * b)).sqrt()
}

/// Free-energy surface per atom in units of `-beta`, whose global maximum gives the
/// thermodynamic limit of `ln Z / N`.
pub fn phi_surface(p: &ModelParams, beta: f64, u_plus: f64, u_minus: f64) -> f64 {
    let eta = 0.5 * beta * p.omega0;
    -beta * p.omega * (u_plus * u_plus + u_minus * u_minus) + ln_two_cosh(eta * chi(p, u_plus, u_minus))
}

/// Analytic gradient of [`phi_surface`].
pub fn phi_gradient(p: &ModelParams, beta: f64, u_plus: f64, u_minus: f64) -> (f64, f64) {
    let c = p.critical();
    let eta = 0.5 * beta * p.omega0;
    let x = chi(p, u_plus, u_minus);
    let t = tanh_ratio(eta, x);
    let g2 = p.gamma * p.gamma;
    let dp = -2.0 * u_plus * beta * p.omega * (1.0 - g2 / (c.plus * c.plus) * t);
    let dm = if c.minus.is_finite() {
        -2.0 * u_minus * beta * p.omega * (1.0 - g2 / (c.minus * c.minus) * t)
    } else {
        -2.0 * u_minus * beta * p.omega
    };
    (dp, dm)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExtremumKind {
    Maximum,
    Saddle,
    Minimum,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiExtremum {
    pub u_plus: f64,
    pub u_minus: f64,
    pub phi_value: f64,
    pub kind: ExtremumKind,
}

/// Stationary points of [`phi_surface`].
///
/// The origin is always returned. A symmetric pair of maxima on the `u_plus` axis
/// appears once the system is superradiant, and a pair of saddles on the `u_minus`
/// axis once the second branch opens. In the rotating-wave limit the maxima form a
/// ring, which is represented by its two points on the `u_plus` axis.
pub fn phi_extrema(p: &ModelParams, beta: f64) -> Result<Vec<PhiExtremum>> {
    p.validate()?;
    if !(beta.is_finite() && beta > 0.0) {
        return Err(DickeError::InvalidArgument(format!(
            "beta must be positive and finite, got {beta}"
        )));
    }
    let plus_open = crate::canonical::branch_open(p, beta, Branch::Plus);
    let minus_open = crate::canonical::branch_open(p, beta, Branch::Minus);
    let origin_kind = if !plus_open {
        ExtremumKind::Maximum
    } else if minus_open {
        ExtremumKind::Minimum
    } else {
        ExtremumKind::Saddle
    };
    let mut out = vec![PhiExtremum {
        u_plus: 0.0,
        u_minus: 0.0,
        phi_value: phi_surface(p, beta, 0.0, 0.0),
        kind: origin_kind,
    }];
    if plus_open {
        let u = extremum_amplitude(p, beta, Branch::Plus)?;
        for s in [1.0, -1.0] {
            out.push(PhiExtremum {
                u_plus: s * u,
                u_minus: 0.0,
                phi_value: phi_surface(p, beta, s * u, 0.0),
                kind: ExtremumKind::Maximum,
            });
        }
    }
    if minus_open && !p.is_tavis_cummings() {
        let u = extremum_amplitude(p, beta, Branch::Minus)?;
        for s in [1.0, -1.0] {
            out.push(PhiExtremum {
                u_plus: 0.0,
                u_minus: s * u,
                phi_value: phi_surface(p, beta, 0.0, s * u),
                kind: ExtremumKind::Saddle,
            });
        }
    }
    Ok(out)
}

/// Non-negative field amplitude of the stationary point on the given axis.
pub fn extremum_amplitude(p: &ModelParams, beta: f64, branch: Branch) -> Result<f64> {
    let x = crate::canonical::solve_chi(p, beta, branch)?;
    let r = (p.critical().get(branch) / p.gamma).powi(2);
    Ok((p.omega0 / (4.0 * p.omega) * r * (x * x - 1.0)).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(gamma: f64, delta: f64) -> ModelParams {
        ModelParams::new(1.0, 1.0, gamma, delta, 40).unwrap()
    }

    #[test]
    fn critical_values() {
        let c = critical_couplings(&params(1.0, 0.5));
        assert!((c.plus - 2.0 / 3.0).abs() < 1e-15);
        assert!((c.minus - 2.0).abs() < 1e-15);
        assert!(critical_couplings(&params(1.0, 1.0)).minus.is_infinite());
        let tc = critical_couplings(&params(1.0, 0.0));
        assert_eq!(tc.plus, tc.minus);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(ModelParams::new(0.0, 1.0, 1.0, 0.5, 10).is_err());
        assert!(ModelParams::new(1.0, 1.0, -1.0, 0.5, 10).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0, 1.5, 10).is_err());
        assert!(ModelParams::new(1.0, 1.0, 1.0, 0.5, 0).is_err());
    }

    #[test]
    fn chi_at_origin_is_one() {
        assert_eq!(chi(&params(2.0, 0.3), 0.0, 0.0), 1.0);
    }

    #[test]
    fn gradient_matches_finite_difference() {
        let p = params(1.3, 0.4);
        let (beta, up, um) = (1.7, 0.3, -0.2);
        let h = 1e-6;
        let fd_p = (phi_surface(&p, beta, up + h, um) - phi_surface(&p, beta, up - h, um)) / (2.0 * h);
        let fd_m = (phi_surface(&p, beta, up, um + h) - phi_surface(&p, beta, up, um - h)) / (2.0 * h);
        let (gp, gm) = phi_gradient(&p, beta, up, um);
        assert!((gp - fd_p).abs() < 1e-8);
        assert!((gm - fd_m).abs() < 1e-8);
    }

    #[test]
    fn normal_phase_has_single_maximum() {
        let ex = phi_extrema(&params(0.5, 0.5), 3.0).unwrap();
        assert_eq!(ex.len(), 1);
        assert_eq!(ex[0].kind, ExtremumKind::Maximum);
    }

    #[test]
    fn second_branch_adds_saddles() {
        // gamma above both critical couplings at low temperature
        let p = params(3.0, 0.5);
        let ex = phi_extrema(&p, 20.0).unwrap();
        assert_eq!(ex.len(), 5);
        assert_eq!(ex[0].kind, ExtremumKind::Minimum);
        assert_eq!(ex.iter().filter(|e| e.kind == ExtremumKind::Saddle).count(), 2);
        let maxima: Vec<_> = ex.iter().filter(|e| e.kind == ExtremumKind::Maximum).collect();
        assert_eq!(maxima.len(), 2);
        for e in &ex {
            let (gp, gm) = phi_gradient(&p, 20.0, e.u_plus, e.u_minus);
            assert!(gp.abs() < 1e-9 && gm.abs() < 1e-9);
        }
    }
}
