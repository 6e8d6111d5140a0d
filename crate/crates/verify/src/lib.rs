//! Acceptance checks. Each criterion compares a production route with an
//! independent one (closed form, Monte-Carlo volume, exact diagonalization or
//! integer arithmetic) and reports a single pass/fail line.

use std::fmt;
use std::time::{Duration, Instant};

use dicke_core::canonical::{canonical_point, critical_beta, critical_energy_per_atom};
use dicke_core::microcanonical::{
    entropy_micro, ln_biguint, multiplicity_exact, multiplicity_log_approx,
};
use dicke_core::quantum::{converged_spectrum, eigenvalues, quantum_dos, cutoff_start};
use dicke_core::semiclassical::{
    classical_hamiltonian, esqpt_energies, extremal_points, lowest_energy, qpt_energy_per_atom,
    sdos, sdos_mc, sdos_regime, ClassicalCoords, SdosRegime, StationaryKind,
};
use dicke_core::{Branch, ModelParams, Pseudospin};
use num_bigint::BigUint;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// Everything except the exact-diagonalization scans (criteria 7 and 8).
    Quick,
    Full,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {:>2} {} {}: {} ({:.3} s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn timed(id: u8, title: &'static str, check: impl FnOnce() -> (bool, String)) -> Report {
    let start = Instant::now();
    let (passed, detail) = check();
    Report {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

fn params(omega: f64, omega0: f64, ratio: f64, delta: f64, n_atoms: u32) -> ModelParams {
    let p = ModelParams::new(omega, omega0, 1.0, delta, n_atoms).expect("valid parameters");
    p.with_gamma(ratio * p.critical().plus)
}

/// `sqrt(N / 2j) sqrt(omega omega0) / (1 +- delta)`, infinite for the minus branch at `delta = 1`.
fn sector_critical(p: &ModelParams, j: f64, sign: f64) -> f64 {
    let d = 1.0 + sign * p.delta;
    if d == 0.0 {
        f64::INFINITY
    } else {
        (p.n_atoms as f64 / (2.0 * j)).sqrt() * (p.omega * p.omega0).sqrt() / d
    }
}

pub fn criterion_1() -> Report {
    timed(1, "zero-temperature energy", || {
        let start = Instant::now();
        let p = params(1.0, 1.0, 2.0, 0.5, 100);
        let u = canonical_point(&p, 500.0).map(|pt| pt.internal_energy);
        let took = start.elapsed();
        match u {
            Ok(u) => {
                let v = 2.0 * u / p.omega0;
                let ok = (v + 2.125).abs() < 1e-6 && took < Duration::from_millis(1);
                (ok, format!("2U/w0 = {v:.12} (target -2.125), solve took {took:?}"))
            }
            Err(e) => (false, e.to_string()),
        }
    })
}

pub fn criterion_2() -> Report {
    timed(2, "critical temperature", || {
        let mut worst_beta: f64 = 0.0;
        let mut worst_u: f64 = 0.0;
        for delta in [0.0, 0.5, 1.0] {
            let p = params(1.0, 1.0, std::f64::consts::SQRT_2, delta, 100);
            let Some(bc) = critical_beta(&p, Branch::Plus) else {
                return (false, format!("no critical temperature at delta = {delta}"));
            };
            worst_beta = worst_beta.max((bc - 3f64.ln()).abs());
            let target = -0.5 * p.omega0 * (p.critical().plus / p.gamma).powi(2);
            match canonical_point(&p, bc) {
                Ok(pt) => worst_u = worst_u.max((pt.internal_energy - target).abs()),
                Err(e) => return (false, e.to_string()),
            }
        }
        (
            worst_beta < 1e-12 && worst_u < 1e-9,
            format!("|beta_c - ln 3| = {worst_beta:.2e}, |U(beta_c) - U_c| = {worst_u:.2e}"),
        )
    })
}

pub fn criterion_3() -> Report {
    timed(3, "ensemble equivalence", || {
        let mut worst: f64 = 0.0;
        let mut sets = 0;
        for delta in [0.0, 0.5, 1.0] {
            for ratio in [0.5, 2.0] {
                let p = params(1.0, 1.0, ratio, delta, 100);
                sets += 1;
                for k in 0..200 {
                    let beta = 10f64.powf(-3.0 + 6.0 * k as f64 / 199.0);
                    let pt = match canonical_point(&p, beta) {
                        Ok(pt) => pt,
                        Err(e) => return (false, e.to_string()),
                    };
                    let eps = 2.0 * pt.internal_energy / p.omega0;
                    match entropy_micro(&p, eps) {
                        Ok(s) => worst = worst.max((s - pt.entropy).abs()),
                        Err(e) => return (false, e.to_string()),
                    }
                }
            }
        }
        (
            worst < 1e-9,
            format!("max |S_can - S_micro| = {worst:.2e} over {sets} parameter sets x 200 beta"),
        )
    })
}

pub fn criterion_4() -> Report {
    timed(4, "multiplicity identity", || {
        for n in (2..=30u32).step_by(2) {
            let mut total = BigUint::from(0u32);
            for two_j in (0..=n).step_by(2) {
                match multiplicity_exact(n, Pseudospin::from_twice(two_j)) {
                    Ok(y) => total += y * (two_j + 1),
                    Err(e) => return (false, e.to_string()),
                }
            }
            if total != BigUint::from(1u32) << n {
                return (false, format!("sum rule broken at N = {n}"));
            }
        }
        let mut worst: f64 = 0.0;
        for k in 1..=9u32 {
            let z = k as f64 / 10.0;
            let exact = ln_biguint(&multiplicity_exact(1000, Pseudospin::from_twice(100 * k)).expect("allowed")) / 1000.0;
            let approx = multiplicity_log_approx(z).expect("z in [0, 1]");
            worst = worst.max((approx - exact).abs());
        }
        (
            worst < 0.01,
            format!("sum rule exact for even N <= 30; leading-order log multiplicity off by {worst:.4} per atom at N = 1000"),
        )
    })
}

pub fn criterion_5() -> Report {
    timed(5, "full-sphere plateau", || {
        let mut worst: f64 = 0.0;
        for ratio in [0.8, 1.4, 2.6] {
            let p = params(1.0, 1.0, ratio, 0.2, 40);
            for two_j in (2..=40).step_by(2) {
                let j = Pseudospin::from_twice(two_j);
                for eps in [1.0, 1.25, 2.0, 5.0, 100.0] {
                    let e = eps * j.value() * p.omega0;
                    match sdos(&p, j, e) {
                        Ok(v) => worst = worst.max((p.omega / (2.0 * j.value()) * v - 1.0).abs()),
                        Err(err) => return (false, err.to_string()),
                    }
                }
            }
        }
        (worst < 1e-10, format!("max |(w/2j) nu - 1| = {worst:.2e} for j = 1..20"))
    })
}

/// Regime intervals of sector `j` from its ground energy up to `2 j omega0`.
fn regime_intervals(p: &ModelParams, j: Pseudospin) -> Vec<(f64, f64)> {
    let mut edges = vec![lowest_energy(p, j).expect("valid sector").energy];
    edges.extend(esqpt_energies(p, j).expect("valid sector"));
    edges.push(2.0 * j.value() * p.omega0);
    edges.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    edges.windows(2).map(|w| (w[0], w[1])).collect()
}

pub fn criterion_6() -> Report {
    timed(6, "SDoS vs Monte-Carlo volume", || {
        let j = Pseudospin::from_twice(40);
        let mut worst: f64 = 0.0;
        let mut probes = 0u64;
        let mut regimes = Vec::new();
        for ratio in [0.8, 1.4, 2.6] {
            let p = params(1.0, 1.0, ratio, 0.2, 40);
            for (lo, hi) in regime_intervals(&p, j) {
                let width = hi - lo;
                regimes.push(sdos_regime(&p, j, 0.5 * (lo + hi)).expect("valid sector"));
                for k in 0..10 {
                    let e = lo + (k as f64 + 0.5) / 10.0 * width;
                    let exact = sdos(&p, j, e).expect("valid sector");
                    let mc = match sdos_mc(&p, j, e, 0.01 * width, 1_000_000, 1000 + probes) {
                        Ok(m) => m,
                        Err(err) => return (false, err.to_string()),
                    };
                    probes += 1;
                    worst = worst.max((mc.value - exact).abs() / mc.std_error);
                }
            }
        }
        let all_regimes = [SdosRegime::LowerWell, SdosRegime::Intertwined, SdosRegime::Bulk, SdosRegime::FullSphere]
            .iter()
            .all(|r| regimes.contains(r));
        (
            worst < 3.0 && all_regimes,
            format!("{probes} probes over {} regime intervals, max |nu - nu_mc| / sigma = {worst:.2}", regimes.len()),
        )
    })
}

pub fn criterion_7() -> Report {
    timed(7, "SDoS vs exact diagonalization", || {
        let p = params(1.0, 1.0, 2.0, 0.5, 32);
        let j = Pseudospin::from_twice(32);
        let jw = j.value() * p.omega0;
        // the lower half of the stable window must reach past the static transition
        let s = match converged_spectrum(&p, j, |s| {
            s.convergence_window >= 2 && s.eigenvalues[s.convergence_window / 2] >= jw + 1.0
        }) {
            Ok(s) => s,
            Err(e) => return (false, e.to_string()),
        };
        let half_top = s.eigenvalues[s.convergence_window / 2];
        let esqpts = esqpt_energies(&p, j).expect("valid sector");
        let bin = 2.0 * p.omega0;
        let lo = s.eigenvalues[0].floor();
        let bins = ((half_top - lo) / bin).floor() as usize;
        let hist = match quantum_dos(&s, bin, lo, lo + bins as f64 * bin) {
            Ok(h) => h,
            Err(e) => return (false, e.to_string()),
        };
        let mut checked = 0;
        let mut failed = Vec::new();
        for (c, q) in hist.centers.iter().zip(&hist.density) {
            let (a, b) = (c - 0.5 * bin, c + 0.5 * bin);
            if esqpts.iter().any(|&x| x > a - 0.5 * p.omega0 && x < b + 0.5 * p.omega0) {
                continue;
            }
            // average of nu over the bin
            let m = 64;
            let nu = (0..m)
                .map(|i| sdos(&p, j, a + (i as f64 + 0.5) * bin / m as f64).expect("valid sector"))
                .sum::<f64>()
                / m as f64;
            checked += 1;
            let rel = q / nu - 1.0;
            if !(rel.abs() <= 0.1) {
                failed.push(format!("{c:+.0}:{rel:+.2}"));
            }
        }
        (
            failed.is_empty() && checked > 0,
            format!(
                "n_max = {}, {} bins of {bin} w0 checked up to E = {half_top:.2}; outside 10%: [{}]",
                s.n_max,
                checked,
                failed.join(" ")
            ),
        )
    })
}

pub fn criterion_8() -> Report {
    timed(8, "variational bound", || {
        let mut worst_excess = f64::NEG_INFINITY;
        let mut monotone = true;
        let mut notes = Vec::new();
        for delta in [0.0, 0.4, 1.0] {
            for ratio in [0.5, 1.5, 3.0] {
                let mut scaled = Vec::new();
                let mut gaps = Vec::new();
                for two_j in [8u32, 16, 32] {
                    // N = 2j, so the sector couplings equal the global ones
                    let p = params(1.0, 1.0, ratio, delta, two_j);
                    let j = Pseudospin::from_twice(two_j);
                    let classical = lowest_energy(&p, j).expect("valid sector").energy;
                    let n_max = cutoff_start(&p, j).expect("valid sector") + 40;
                    let e0 = match eigenvalues(&p, j, n_max) {
                        Ok(ev) => ev[0],
                        Err(e) => return (false, e.to_string()),
                    };
                    worst_excess = worst_excess.max(e0 - classical);
                    gaps.push(classical - e0);
                    scaled.push((classical - e0) / j.value());
                }
                let ok = scaled.windows(2).all(|w| w[1] < w[0]) || gaps.iter().all(|g| g.abs() <= 1e-9);
                if !ok {
                    monotone = false;
                    notes.push(format!("delta {delta} ratio {ratio}: {scaled:?}"));
                }
            }
        }
        (
            worst_excess <= 1e-9 && monotone,
            format!(
                "max (E_ED - E_cl) = {worst_excess:.2e}; (E_cl - E_ED)/j decreasing along j = 4, 8, 16{}",
                if notes.is_empty() { String::new() } else { format!(" except {}", notes.join("; ")) }
            ),
        )
    })
}

fn gradient_ok(p: &ModelParams, j: Pseudospin, c: &ClassicalCoords) -> Option<f64> {
    let h = 1e-6;
    let eval = |x: &ClassicalCoords| classical_hamiltonian(p, j, x).ok();
    let mut worst: f64 = 0.0;
    let mut partial = |shift: &dyn Fn(&mut ClassicalCoords, f64)| -> Option<()> {
        let mut a = *c;
        let mut b = *c;
        shift(&mut a, h);
        shift(&mut b, -h);
        worst = worst.max(((eval(&a)? - eval(&b)?) / (2.0 * h)).abs());
        Some(())
    };
    partial(&|x, d| x.q_plus += d)?;
    partial(&|x, d| x.q_minus += d)?;
    if c.azimuth.is_some() {
        partial(&|x, d| x.j_z += d)?;
        partial(&|x, d| x.azimuth = x.azimuth.map(|a| a + d))?;
    }
    Some(worst)
}

pub fn criterion_9() -> Report {
    timed(9, "stationary-point inventory", || {
        let j = Pseudospin::from_twice(4);
        let cases: [(f64, &[f64]); 3] = [(0.4, &[0.8, 1.8, 5.0]), (0.0, &[0.8, 1.8]), (1.0, &[0.8, 1.8, 5.0])];
        let mut worst_grad: f64 = 0.0;
        let mut worst_energy: f64 = 0.0;
        let mut summary = Vec::new();
        for (delta, ratios) in cases {
            for &ratio in ratios {
                let p = params(1.0, 1.0, ratio, delta, 8);
                let jv = j.value();
                let gp = sector_critical(&p, jv, 1.0);
                let gm = sector_critical(&p, jv, -1.0);
                let well = |gc: f64| {
                    let s = (p.gamma / gc).powi(2);
                    -0.5 * jv * p.omega0 * (s + 1.0 / s)
                };
                use StationaryKind::*;
                let expected: Vec<(StationaryKind, f64)> = if p.gamma < gp {
                    vec![(GlobalMinimum, -jv * p.omega0), (LocalMaximum, jv * p.omega0)]
                } else if p.gamma < gm {
                    vec![(GlobalMinimum, well(gp)), (SaddlePoint, -jv * p.omega0), (LocalMaximum, jv * p.omega0)]
                } else {
                    vec![
                        (GlobalMinimum, well(gp)),
                        (SaddlePoint, well(gm)),
                        (LocalMaximum, -jv * p.omega0),
                        (LocalMaximum, jv * p.omega0),
                    ]
                };
                let pts = match extremal_points(&p, j) {
                    Ok(pts) => pts,
                    Err(e) => return (false, e.to_string()),
                };
                summary.push(format!("d{delta}/r{ratio}:{}", pts.len()));
                if pts.len() != expected.len() {
                    return (false, format!("delta {delta} ratio {ratio}: {} points, expected {}", pts.len(), expected.len()));
                }
                for (pt, (kind, energy)) in pts.iter().zip(&expected) {
                    if pt.kind != *kind {
                        return (false, format!("delta {delta} ratio {ratio}: kind {:?}, expected {kind:?}", pt.kind));
                    }
                    worst_energy = worst_energy.max((pt.energy - energy).abs());
                    for c in std::iter::once(pt.coords).chain(pt.mirror) {
                        match gradient_ok(&p, j, &c) {
                            Some(g) => worst_grad = worst_grad.max(g),
                            None => return (false, format!("cannot evaluate H at {c:?}")),
                        }
                    }
                }
            }
        }
        (
            worst_grad < 1e-8 && worst_energy < 1e-12,
            format!(
                "counts {}; max energy error {worst_energy:.1e}, max |grad H| {worst_grad:.1e}",
                summary.join(" ")
            ),
        )
    })
}

pub fn criterion_10() -> Report {
    timed(10, "QPT curve equals thermal critical energy", || {
        let mut worst: f64 = 0.0;
        for k in 0..100 {
            let ratio = 1.05 + (6.0 - 1.05) * k as f64 / 99.0;
            let p = params(1.0, 1.0, ratio, 0.5, 1000);
            let qpt = match qpt_energy_per_atom(&p) {
                Ok(Some(e)) => e,
                Ok(None) => return (false, format!("no QPT at ratio {ratio}")),
                Err(e) => return (false, e.to_string()),
            };
            let Some(uc) = critical_energy_per_atom(&p) else {
                return (false, format!("no critical energy at ratio {ratio}"));
            };
            let bc = critical_beta(&p, Branch::Plus).expect("supercritical");
            let u = match canonical_point(&p, bc) {
                Ok(pt) => pt.internal_energy,
                Err(e) => return (false, e.to_string()),
            };
            worst = worst.max((qpt - uc).abs()).max((u - uc).abs());
        }
        (worst < 1e-12, format!("max deviation {worst:.2e} over 100 couplings"))
    })
}

/// Runs the criteria selected by `level`, in order.
pub fn run(level: Level) -> Vec<Report> {
    let mut out = vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
    ];
    if level == Level::Full {
        out.push(criterion_7());
        out.push(criterion_8());
    }
    out.push(criterion_9());
    out.push(criterion_10());
    out
}
