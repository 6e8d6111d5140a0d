use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::table::Format;

/// Thermodynamics, semiclassical level densities and exact spectra of the
/// generalized Dicke model. Units: hbar = k_B = 1.
#[derive(Debug, Parser)]
#[command(name = "dicke", version)]
pub struct Cli {
    /// Flat `key = value` file; keys are the long flag names.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Destination file (default: stdout). Written atomically.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Comma-separated subset of output columns.
    #[arg(long, global = true, value_delimiter = ',')]
    pub columns: Option<Vec<String>>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ModelArgs {
    /// Field frequency.
    #[arg(long, allow_hyphen_values = true)]
    pub omega: Option<f64>,
    /// Atomic level splitting.
    #[arg(long, allow_hyphen_values = true)]
    pub omega0: Option<f64>,
    /// Coupling strength.
    #[arg(long, conflicts_with = "gamma_ratio", allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Coupling in units of the critical coupling gamma_+.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_ratio: Option<f64>,
    /// Counter-rotating weight, 0 (Tavis-Cummings) to 1 (Dicke).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n_atoms: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

impl std::str::FromStr for LevelArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <LevelArg as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Thermodynamic-limit canonical observables along a beta or temperature sweep.
    Canonical {
        #[command(flatten)]
        model: ModelArgs,
        /// start:stop:count[:lin|log]
        #[arg(long, conflicts_with = "temperature_range", allow_hyphen_values = true)]
        beta_range: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        temperature_range: Option<String>,
    },
    /// Ground, critical and second-branch energies per atom along a coupling sweep.
    PhaseDiagram {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        gamma_range: Option<String>,
    },
    /// Minimum classical energy of every pseudospin sector along a coupling sweep.
    LowestEnergies {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true)]
        gamma_range: Option<String>,
    },
    /// Semiclassical density of states of one sector along an energy sweep.
    Sdos {
        #[command(flatten)]
        model: ModelArgs,
        /// Pseudospin (integer or half-integer); default N/2.
        #[arg(long, allow_hyphen_values = true)]
        j: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        energy_range: Option<String>,
        /// Adds a Monte-Carlo estimate with this many samples per point.
        #[arg(long)]
        mc_samples: Option<usize>,
        /// Energy half-width of the Monte-Carlo shell (default 0.05 omega0).
        #[arg(long, allow_hyphen_values = true)]
        mc_half_width: Option<f64>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Exact and leading-order pseudospin multiplicities.
    Multiplicity {
        #[arg(long)]
        n_atoms: Option<u32>,
    },
    /// Microcanonical entropy and temperature along a scaled-energy sweep.
    Microcanonical {
        #[command(flatten)]
        model: ModelArgs,
        /// Sweep of eps = 2E / (omega0 N).
        #[arg(long, allow_hyphen_values = true)]
        epsilon_range: Option<String>,
        /// Energy window for the finite-N state count (default 0.01 omega0).
        #[arg(long, allow_hyphen_values = true)]
        delta_e: Option<f64>,
    },
    /// Canonical entropy per atom as a function of the energy per atom.
    EntropyCurve {
        #[command(flatten)]
        model: ModelArgs,
        /// Sweep of the energy per atom.
        #[arg(long, allow_hyphen_values = true)]
        energy_range: Option<String>,
    },
    /// Runs the acceptance checks and prints one line per criterion.
    Verify {
        #[arg(long, value_enum)]
        level: Option<LevelArg>,
    },
}
