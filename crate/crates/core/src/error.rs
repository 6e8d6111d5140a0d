use thiserror::Error;

/// Errors produced by the model, thermodynamic and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DickeError {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("{what} = {value} lies outside [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("no superradiant solution of the gap equation on the {branch} branch at beta = {beta}")]
    NoSuperradiantRoot { branch: &'static str, beta: f64 },
    #[error("N - 2j must be even (N = {n_atoms}, 2j = {two_j})")]
    Parity { n_atoms: u32, two_j: u32 },
    #[error("pseudospin 2j = {two_j} is not allowed for N = {n_atoms}")]
    InvalidSpin { n_atoms: u32, two_j: u32 },
    #[error("Hilbert space dimension {dim} exceeds the limit {limit}")]
    Dimension { dim: usize, limit: usize },
    #[error("energy window reaches {requested} but the spectrum is converged only up to {converged_top}")]
    Window { requested: f64, converged_top: f64 },
    #[error("boson cutoff {n_max} not converged: log Z moved by {shift:e} on doubling")]
    Cutoff { n_max: usize, shift: f64 },
    #[error("eigenvalue iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, DickeError>;
