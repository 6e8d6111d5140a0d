//! Thermodynamics of the generalized Dicke model: a single bosonic mode coupled to
//! `N` two-level atoms with independently weighted rotating and counter-rotating terms.
//!
//! * [`canonical`]: exact thermodynamic limit of the canonical ensemble.
//! * [`semiclassical`]: classical limit of each pseudospin sector and its density of states.
//! * [`microcanonical`]: multiplicities, microcanonical entropy and temperature.
//! * [`quantum`]: exact diagonalization in a truncated Fock space, used as a reference.

pub mod canonical;
pub mod error;
pub mod microcanonical;
pub mod model;
pub mod numerics;
pub mod quantum;
pub mod semiclassical;
pub mod spin;

pub use error::{DickeError, Result};
pub use model::{Branch, CriticalCouplings, ModelParams};
pub use spin::Pseudospin;
