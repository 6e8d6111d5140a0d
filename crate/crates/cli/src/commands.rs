//! One function per subcommand. Each resolves its settings (flag, then config
//! file, then default), computes the rows in parallel and returns a table.

use anyhow::{bail, Context, Result};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use dicke_core::canonical::{
    canonical_point, entropy_of_energy, ground_energy_per_atom, phase_diagram_curves, scaled_energy,
};
use dicke_core::microcanonical::{
    epsilon_min, microcanonical_point, multiplicity_exact, multiplicity_ln, multiplicity_log_approx, number_of_states,
};
use dicke_core::semiclassical::{coupling_regime, lowest_energy, sdos, sdos_mc, sdos_regime, sdos_scaled, CouplingRegime};
use dicke_core::spin::allowed_pseudospins;
use dicke_core::{ModelParams, Pseudospin};

use crate::args::{Command, LevelArg, ModelArgs};
use crate::config::ConfigFile;
use crate::sweep::{Spacing, SweepRange};
use crate::table::{Cell, Table};

const DEFAULT_OMEGA: f64 = 1.0;
const DEFAULT_OMEGA0: f64 = 1.0;
const DEFAULT_DELTA: f64 = 0.5;
const DEFAULT_ATOMS: u32 = 40;
const DEFAULT_POINTS: usize = 200;
const SDOS_POINTS: usize = 400;

/// Table plus the resolved settings that produced it.
pub struct Output {
    pub table: Table,
    pub params: Map<String, Value>,
}

enum Coupling {
    Required,
    Swept,
}

fn model(m: &ModelArgs, cfg: &ConfigFile, coupling: Coupling, params: &mut Map<String, Value>) -> Result<ModelParams> {
    let omega = cfg.pick(m.omega, "omega")?.unwrap_or(DEFAULT_OMEGA);
    let omega0 = cfg.pick(m.omega0, "omega0")?.unwrap_or(DEFAULT_OMEGA0);
    let delta = cfg.pick(m.delta, "delta")?.unwrap_or(DEFAULT_DELTA);
    let n_atoms = cfg.pick(m.n_atoms, "n-atoms")?.unwrap_or(DEFAULT_ATOMS);
    // gamma is a placeholder until resolved
    let base = ModelParams::new(omega, omega0, 0.0, delta, n_atoms)?;
    let gamma_plus = base.critical().plus;
    let gamma = match (m.gamma, m.gamma_ratio) {
        (Some(g), _) => Some(g),
        (None, Some(r)) => Some(r * gamma_plus),
        (None, None) => {
            if cfg.has("gamma") && cfg.has("gamma-ratio") {
                bail!("config sets both gamma and gamma-ratio");
            }
            match (cfg.pick::<f64>(None, "gamma")?, cfg.pick::<f64>(None, "gamma-ratio")?) {
                (Some(g), _) => Some(g),
                (None, Some(r)) => Some(r * gamma_plus),
                (None, None) => None,
            }
        }
    };
    params.insert("omega".into(), json!(omega));
    params.insert("omega0".into(), json!(omega0));
    params.insert("delta".into(), json!(delta));
    params.insert("n_atoms".into(), json!(n_atoms));
    let p = match (coupling, gamma) {
        (Coupling::Required, None) => bail!("a coupling is required: pass --gamma or --gamma-ratio"),
        (Coupling::Required, Some(g)) => {
            params.insert("gamma".into(), json!(g));
            params.insert("gamma_ratio".into(), json!(g / gamma_plus));
            base.with_gamma(g)
        }
        (Coupling::Swept, _) => base,
    };
    p.validate()?;
    Ok(p)
}

fn range(
    flag: &Option<String>,
    cfg: &ConfigFile,
    key: &str,
    default: impl FnOnce() -> Result<SweepRange>,
    params: &mut Map<String, Value>,
) -> Result<SweepRange> {
    let r = match cfg.pick(flag.clone(), key)? {
        Some(text) => text.parse::<SweepRange>().with_context(|| format!("--{key}"))?,
        None => default()?,
    };
    params.insert(key.replace('-', "_"), json!(r.to_string()));
    Ok(r)
}

fn linear(start: f64, stop: f64, count: usize) -> Result<SweepRange> {
    Ok(SweepRange::new(start, stop, count, Spacing::Linear)?)
}

fn rows<T: Sync>(xs: &[T], f: impl Fn(&T) -> Result<Vec<Cell>> + Sync + Send) -> Result<Vec<Vec<Cell>>> {
    xs.par_iter().map(f).collect()
}

fn regime_label(r: CouplingRegime) -> &'static str {
    match r {
        CouplingRegime::Weak => "weak",
        CouplingRegime::Intermediate => "intermediate",
        CouplingRegime::Strong => "strong",
    }
}

pub fn run(command: &Command, cfg: &ConfigFile) -> Result<Output> {
    let mut params = Map::new();
    let table = match command {
        Command::Canonical {
            model: m,
            beta_range,
            temperature_range,
        } => {
            let p = model(m, cfg, Coupling::Required, &mut params)?;
            canonical(&p, cfg, beta_range, temperature_range, &mut params)?
        }
        Command::PhaseDiagram { model: m, gamma_range } => {
            let p = model(m, cfg, Coupling::Swept, &mut params)?;
            let gp = p.critical().plus;
            let r = range(gamma_range, cfg, "gamma-range", || linear(0.0, 3.0 * gp, DEFAULT_POINTS), &mut params)?;
            let gammas = r.values();
            let curves = phase_diagram_curves(&p, &gammas)?;
            Table {
                columns: vec![
                    "gamma",
                    "gamma_ratio",
                    "ground_energy",
                    "critical_energy",
                    "second_branch_lower",
                    "second_branch_upper",
                ],
                rows: curves
                    .iter()
                    .map(|c| {
                        vec![
                            c.gamma.into(),
                            (c.gamma / gp).into(),
                            c.ground_energy.into(),
                            c.critical_energy.into(),
                            c.second_branch_window.map(|w| w.0).into(),
                            c.second_branch_window.map(|w| w.1).into(),
                        ]
                    })
                    .collect(),
            }
        }
        Command::LowestEnergies { model: m, gamma_range } => {
            let p = model(m, cfg, Coupling::Swept, &mut params)?;
            let gp = p.critical().plus;
            let r = range(gamma_range, cfg, "gamma-range", || linear(0.0, 3.0 * gp, 61), &mut params)?;
            let gammas = r.values();
            let pairs: Vec<(Pseudospin, f64)> = allowed_pseudospins(p.n_atoms)
                .filter(|j| j.twice() > 0)
                .flat_map(|j| gammas.iter().map(move |&g| (j, g)))
                .collect();
            Table {
                columns: vec!["j", "gamma", "lowest_energy", "coupling_regime"],
                rows: rows(&pairs, |&(j, g)| {
                    let q = p.with_gamma(g);
                    Ok(vec![
                        j.value().into(),
                        g.into(),
                        lowest_energy(&q, j)?.energy.into(),
                        regime_label(coupling_regime(&q, j)?).into(),
                    ])
                })?,
            }
        }
        Command::Sdos {
            model: m,
            j,
            energy_range,
            mc_samples,
            mc_half_width,
            seed,
        } => {
            let p = model(m, cfg, Coupling::Required, &mut params)?;
            let j = match cfg.pick(*j, "j")? {
                Some(v) => Pseudospin::from_value(v)?,
                None => Pseudospin::from_twice(p.n_atoms),
            };
            j.check_positive(p.n_atoms)?;
            j.check_allowed(p.n_atoms)?;
            params.insert("j".into(), json!(j.value()));
            let ground = lowest_energy(&p, j)?.energy;
            let top = 2.0 * j.value() * p.omega0;
            let r = range(energy_range, cfg, "energy-range", || linear(ground, top, SDOS_POINTS), &mut params)?;
            let mc = cfg.pick(*mc_samples, "mc-samples")?;
            let half = cfg.pick(*mc_half_width, "mc-half-width")?.unwrap_or(0.05 * p.omega0);
            let seed = cfg.pick(*seed, "seed")?.unwrap_or(0);
            let mut columns = vec!["energy", "regime", "sdos", "sdos_scaled"];
            if let Some(n) = mc {
                columns.extend(["sdos_mc", "sdos_mc_error"]);
                params.insert("mc_samples".into(), json!(n));
                params.insert("mc_half_width".into(), json!(half));
                params.insert("seed".into(), json!(seed));
            }
            let energies: Vec<(usize, f64)> = r.values().into_iter().enumerate().collect();
            Table {
                columns,
                rows: rows(&energies, |&(i, e)| {
                    let mut row: Vec<Cell> = vec![
                        e.into(),
                        sdos_regime(&p, j, e)?.label().into(),
                        sdos(&p, j, e)?.into(),
                        sdos_scaled(&p, j, e)?.into(),
                    ];
                    if let Some(n) = mc {
                        // one independent stream per grid point
                        let est = sdos_mc(&p, j, e, half, n, seed.wrapping_add(i as u64))?;
                        row.push(est.value.into());
                        row.push(est.std_error.into());
                    }
                    Ok(row)
                })?,
            }
        }
        Command::Multiplicity { n_atoms } => {
            let n = cfg.pick(*n_atoms, "n-atoms")?.unwrap_or(DEFAULT_ATOMS);
            if n == 0 {
                bail!("n-atoms must be positive");
            }
            params.insert("n_atoms".into(), json!(n));
            let js: Vec<Pseudospin> = allowed_pseudospins(n).collect();
            let nf = n as f64;
            Table {
                columns: vec![
                    "j",
                    "z",
                    "multiplicity",
                    "weighted",
                    "log_multiplicity",
                    "log_multiplicity_per_atom",
                    "approx_per_atom",
                ],
                rows: rows(&js, |&j| {
                    let y = multiplicity_exact(n, j)?;
                    let weighted = &y * BigUint::from(j.multiplet_size());
                    let ln_y = multiplicity_ln(n, j)?;
                    let z = j.twice() as f64 / nf;
                    Ok(vec![
                        j.value().into(),
                        z.into(),
                        Cell::BigInt(y.to_string()),
                        Cell::BigInt(weighted.to_string()),
                        ln_y.into(),
                        (ln_y / nf).into(),
                        multiplicity_log_approx(z)?.into(),
                    ])
                })?,
            }
        }
        Command::Microcanonical {
            model: m,
            epsilon_range,
            delta_e,
        } => {
            let p = model(m, cfg, Coupling::Required, &mut params)?;
            let lo = epsilon_min(&p);
            let r = range(epsilon_range, cfg, "epsilon-range", || linear(lo, 0.0, DEFAULT_POINTS), &mut params)?;
            let de = cfg.pick(*delta_e, "delta-e")?.unwrap_or(0.01 * p.omega0);
            params.insert("delta_e".into(), json!(de));
            let n = p.n_atoms as f64;
            let eps = r.values();
            Table {
                columns: vec!["epsilon", "energy", "z_m", "entropy", "beta", "log_states_per_atom"],
                rows: rows(&eps, |&e| {
                    let pt = microcanonical_point(&p, e)?;
                    let energy = 0.5 * e * p.omega0 * n;
                    let count = number_of_states(&p, energy, de)?;
                    Ok(vec![
                        e.into(),
                        energy.into(),
                        pt.z_m.into(),
                        pt.entropy.into(),
                        pt.beta.into(),
                        (count.log_count / n).into(),
                    ])
                })?,
            }
        }
        Command::EntropyCurve { model: m, energy_range } => {
            let p = model(m, cfg, Coupling::Required, &mut params)?;
            let lo = ground_energy_per_atom(&p);
            let r = range(energy_range, cfg, "energy-range", || linear(lo, 0.0, DEFAULT_POINTS), &mut params)?;
            let us = r.values();
            Table {
                columns: vec!["u", "e_delta", "entropy"],
                rows: rows(&us, |&u| {
                    Ok(vec![u.into(), scaled_energy(&p, u).into(), entropy_of_energy(&p, u)?.into()])
                })?,
            }
        }
        Command::Verify { .. } => bail!("verify does not produce a table"),
    };
    Ok(Output { table, params })
}

fn canonical(
    p: &ModelParams,
    cfg: &ConfigFile,
    beta_range: &Option<String>,
    temperature_range: &Option<String>,
    params: &mut Map<String, Value>,
) -> Result<Table> {
    let from_flags = beta_range.is_some() || temperature_range.is_some();
    if !from_flags && cfg.has("beta-range") && cfg.has("temperature-range") {
        bail!("config sets both beta-range and temperature-range");
    }
    let use_temperature = temperature_range.is_some() || (!from_flags && cfg.has("temperature-range"));
    let betas = if use_temperature {
        let r = range(temperature_range, cfg, "temperature-range", || unreachable!(), params)?;
        if !(r.start > 0.0) {
            bail!("temperatures must be positive");
        }
        r.values().into_iter().map(|t| 1.0 / t).collect::<Vec<_>>()
    } else {
        let r = range(
            beta_range,
            cfg,
            "beta-range",
            || Ok(SweepRange::new(0.01, 100.0, DEFAULT_POINTS, Spacing::Log)?),
            params,
        )?;
        if !(r.start > 0.0) {
            bail!("beta must be positive");
        }
        r.values()
    };
    Ok(Table {
        columns: vec![
            "beta",
            "eta",
            "phase",
            "chi",
            "free_energy",
            "entropy",
            "internal_energy",
            "heat_capacity",
            "photon_number",
            "sigma_x",
            "sigma_z",
        ],
        rows: rows(&betas, |&b| {
            let c = canonical_point(p, b)?;
            Ok(vec![
                b.into(),
                (0.5 * b * p.omega0).into(),
                c.phase.kind.label().into(),
                c.chi.into(),
                c.free_energy.into(),
                c.entropy.into(),
                c.internal_energy.into(),
                c.heat_capacity.into(),
                c.photon_number.into(),
                c.sigma_x.into(),
                c.sigma_z.into(),
            ])
        })?,
    })
}

pub fn verify_level(flag: Option<LevelArg>, cfg: &ConfigFile) -> Result<dicke_verify::Level> {
    Ok(match cfg.pick(flag, "level")?.unwrap_or(LevelArg::Full) {
        LevelArg::Quick => dicke_verify::Level::Quick,
        LevelArg::Full => dicke_verify::Level::Full,
    })
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Canonical { .. } => "canonical",
        Command::PhaseDiagram { .. } => "phase-diagram",
        Command::LowestEnergies { .. } => "lowest-energies",
        Command::Sdos { .. } => "sdos",
        Command::Multiplicity { .. } => "multiplicity",
        Command::Microcanonical { .. } => "microcanonical",
        Command::EntropyCurve { .. } => "entropy-curve",
        Command::Verify { .. } => "verify",
    }
}
