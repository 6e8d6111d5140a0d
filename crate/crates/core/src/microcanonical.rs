//! Microcanonical description: pseudospin multiplicities, the entropy of the
//! thermodynamic limit and the finite-size state count.
//!
//! Energies are scaled as `eps = 2E / (omega0 N)`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;
use std::collections::BTreeMap;

use crate::error::{DickeError, Result};
use crate::model::ModelParams;
use crate::numerics::special::{binary_entropy, log_sum_exp, xlogx};
use crate::semiclassical::{lowest_energy, sdos};
use crate::spin::{allowed_pseudospins, Pseudospin};

fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of times the irreducible representation `j` occurs among `n_atoms` spins one-half.
pub fn multiplicity_exact(n_atoms: u32, j: Pseudospin) -> Result<BigUint> {
    j.check_allowed(n_atoms)?;
    let k = (n_atoms - j.twice()) / 2;
    let top = binomial(n_atoms, k);
    Ok(if k == 0 { top } else { top - binomial(n_atoms, k - 1) })
}

/// Natural logarithm of a positive big integer.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::ln);
    }
    let shift = bits - 64;
    let head = (x >> shift).to_f64().unwrap_or(f64::NAN);
    head.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln Y(N, j)` through log-gamma functions.
pub fn multiplicity_ln(n_atoms: u32, j: Pseudospin) -> Result<f64> {
    j.check_allowed(n_atoms)?;
    let n = n_atoms as f64;
    let k = ((n_atoms - j.twice()) / 2) as f64;
    let ln_binom = ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0);
    // C(N,k-1)/C(N,k) = k / (N-k+1)
    Ok(ln_binom + ((j.twice() as f64 + 1.0) / (n - k + 1.0)).ln())
}

/// Leading-order `(1/N) ln Y` for polarization `z = 2j/N`.
pub fn multiplicity_log_approx(z: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&z) {
        return Err(DickeError::Domain {
            what: "z",
            value: z,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(0.5 * (4f64.ln() - xlogx(1.0 - z) - xlogx(1.0 + z)))
}

/// Log-multiplicities of every pseudospin of an `n_atoms` ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityTable {
    pub n_atoms: u32,
    pub log_y: BTreeMap<u32, f64>,
}

impl MultiplicityTable {
    pub fn new(n_atoms: u32) -> Result<Self> {
        if n_atoms == 0 {
            return Err(DickeError::InvalidParams("n_atoms must be positive".into()));
        }
        let log_y = allowed_pseudospins(n_atoms)
            .map(|j| multiplicity_ln(n_atoms, j).map(|v| (j.twice(), v)))
            .collect::<Result<_>>()?;
        Ok(Self { n_atoms, log_y })
    }

    pub fn ln(&self, j: Pseudospin) -> Option<f64> {
        self.log_y.get(&j.twice()).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MicrocanonicalPoint {
    pub epsilon: f64,
    pub z_m: f64,
    pub entropy: f64,
    pub beta: f64,
}

fn ratio_sq(p: &ModelParams) -> f64 {
    (p.critical().plus / p.gamma).powi(2)
}

/// Scaled ground energy of the whole ensemble.
pub fn epsilon_min(p: &ModelParams) -> f64 {
    if p.gamma < p.critical().plus {
        -1.0
    } else {
        let r = ratio_sq(p);
        -0.5 * (r + 1.0 / r)
    }
}

/// Scaled energy of the ground-state transition, if the coupling is supercritical.
pub fn epsilon_critical(p: &ModelParams) -> Option<f64> {
    (p.gamma >= p.critical().plus).then(|| -ratio_sq(p))
}

const EPS_TOL: f64 = 1e-12;

fn check_above_ground(p: &ModelParams, eps: f64) -> Result<f64> {
    p.validate()?;
    let lo = epsilon_min(p);
    if !(eps >= lo - EPS_TOL) {
        return Err(DickeError::Domain {
            what: "epsilon",
            value: eps,
            lo,
            hi: 0.0,
        });
    }
    Ok(lo)
}

/// Smallest polarization `z = 2j/N` whose sector reaches energy `eps`.
pub fn min_pseudospin(p: &ModelParams, eps: f64) -> Result<f64> {
    let lo = check_above_ground(p, eps)?;
    if eps > EPS_TOL {
        return Err(DickeError::Domain {
            what: "epsilon",
            value: eps,
            lo,
            hi: 0.0,
        });
    }
    let z = match epsilon_critical(p) {
        Some(ec) if eps < ec => {
            let r = ratio_sq(p);
            r.sqrt() * (-(2.0 * eps + r)).max(0.0).sqrt()
        }
        _ => -eps,
    };
    Ok(z.clamp(0.0, 1.0))
}

/// Entropy per atom; constant `ln 2` for `eps >= 0`.
pub fn entropy_micro(p: &ModelParams, eps: f64) -> Result<f64> {
    check_above_ground(p, eps)?;
    if eps >= 0.0 {
        return Ok(std::f64::consts::LN_2);
    }
    Ok(binary_entropy(min_pseudospin(p, eps)?))
}

/// Inverse temperature `dS/dE`; zero for `eps >= 0` and infinite at the ground energy.
pub fn temperature_micro(p: &ModelParams, eps: f64) -> Result<f64> {
    check_above_ground(p, eps)?;
    if eps >= 0.0 {
        return Ok(0.0);
    }
    let z = min_pseudospin(p, eps)?;
    if z >= 1.0 {
        return Ok(f64::INFINITY);
    }
    let scale = 2.0 / p.omega0;
    Ok(match epsilon_critical(p) {
        Some(ec) if eps < ec => {
            let r = ratio_sq(p);
            let w = (-(2.0 * eps + r)).sqrt();
            scale * r.sqrt() / w * z.atanh()
        }
        _ => scale * (-eps).atanh(),
    })
}

pub fn microcanonical_point(p: &ModelParams, eps: f64) -> Result<MicrocanonicalPoint> {
    let entropy = entropy_micro(p, eps)?;
    let beta = temperature_micro(p, eps)?;
    let z_m = if eps >= 0.0 { 0.0 } else { min_pseudospin(p, eps)? };
    Ok(MicrocanonicalPoint {
        epsilon: eps,
        z_m,
        entropy,
        beta,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateCount {
    /// `ln Omega`, `-inf` when no sector reaches the energy.
    pub log_count: f64,
    /// Sector with the largest contribution.
    pub dominant: Option<Pseudospin>,
    /// `(j, ln(Y nu dE))` for every contributing sector.
    pub terms: Vec<(Pseudospin, f64)>,
}

/// Number of states in `[E, E + delta_e]` at finite `N` from the semiclassical
/// densities of all pseudospin sectors.
pub fn number_of_states(p: &ModelParams, energy: f64, delta_e: f64) -> Result<StateCount> {
    p.validate()?;
    if !(delta_e > 0.0) {
        return Err(DickeError::InvalidArgument(format!(
            "energy width must be positive, got {delta_e}"
        )));
    }
    let table = MultiplicityTable::new(p.n_atoms)?;
    let mut terms = Vec::new();
    for j in allowed_pseudospins(p.n_atoms).filter(|j| j.twice() > 0) {
        if energy < lowest_energy(p, j)?.energy {
            continue;
        }
        let nu = sdos(p, j, energy)?;
        if nu > 0.0 {
            let ly = table.ln(j).expect("table covers every allowed pseudospin");
            terms.push((j, ly + nu.ln() + delta_e.ln()));
        }
    }
    let logs: Vec<f64> = terms.iter().map(|t| t.1).collect();
    let dominant = terms
        .iter()
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .map(|t| t.0);
    Ok(StateCount {
        log_count: log_sum_exp(&logs),
        dominant,
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(ratio: f64, delta: f64, n: u32) -> ModelParams {
        let p = ModelParams::new(1.0, 1.0, 1.0, delta, n).unwrap();
        p.with_gamma(ratio * p.critical().plus)
    }

    #[test]
    fn small_multiplicities() {
        assert_eq!(multiplicity_exact(4, Pseudospin::from_twice(0)).unwrap(), BigUint::from(2u32));
        assert_eq!(multiplicity_exact(7, Pseudospin::from_twice(7)).unwrap(), BigUint::one());
        assert!(matches!(
            multiplicity_exact(4, Pseudospin::from_twice(1)),
            Err(DickeError::Parity { .. })
        ));
    }

    #[test]
    fn log_gamma_matches_exact() {
        for n in [10u32, 25, 200] {
            for j in allowed_pseudospins(n) {
                let exact = ln_biguint(&multiplicity_exact(n, j).unwrap());
                let lg = multiplicity_ln(n, j).unwrap();
                assert!((exact - lg).abs() < 1e-9 * exact.abs().max(1.0), "N={n} j={j}");
            }
        }
    }

    #[test]
    fn ln_of_large_integer() {
        let x = BigUint::one() << 3000u32;
        assert!((ln_biguint(&x) - 3000.0 * std::f64::consts::LN_2).abs() < 1e-9);
    }

    #[test]
    fn approx_endpoints() {
        assert!((multiplicity_log_approx(0.0).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(multiplicity_log_approx(1.0).unwrap().abs() < 1e-15);
        assert!(multiplicity_log_approx(1.1).is_err());
    }

    #[test]
    fn z_continuous_at_transition() {
        let p = params(2.0, 0.5, 40);
        let ec = epsilon_critical(&p).unwrap();
        let left = min_pseudospin(&p, ec - 1e-13).unwrap();
        let right = min_pseudospin(&p, ec).unwrap();
        assert!((left - right).abs() < 1e-12);
        assert!((right - 0.25).abs() < 1e-15);
    }

    #[test]
    fn beta_at_transition_is_critical() {
        let p = params(2.0, 0.5, 40);
        let ec = epsilon_critical(&p).unwrap();
        let b = temperature_micro(&p, ec - 1e-15).unwrap();
        let bc = crate::canonical::critical_beta(&p, crate::model::Branch::Plus).unwrap();
        assert!((b - bc).abs() < 1e-9);
    }

    #[test]
    fn beta_is_entropy_slope() {
        let p = params(0.6, 0.5, 40);
        let h = 1e-6;
        let ds = (entropy_micro(&p, -0.3 + h).unwrap() - entropy_micro(&p, -0.3 - h).unwrap()) / (2.0 * h);
        assert!((2.0 * ds - temperature_micro(&p, -0.3).unwrap()).abs() < 1e-6);
    }

    #[test]
    fn ground_and_top() {
        let p = params(2.0, 0.5, 40);
        assert!(entropy_micro(&p, epsilon_min(&p)).unwrap().abs() < 1e-12);
        assert!(temperature_micro(&p, epsilon_min(&p)).unwrap().is_infinite());
        assert_eq!(temperature_micro(&p, 0.2).unwrap(), 0.0);
        assert!(entropy_micro(&p, epsilon_min(&p) - 0.01).is_err());
    }

    #[test]
    fn empty_below_ground() {
        let p = params(0.5, 0.5, 20);
        let c = number_of_states(&p, -11.0, 0.01).unwrap();
        assert_eq!(c.log_count, f64::NEG_INFINITY);
        assert!(c.dominant.is_none());
    }
}
