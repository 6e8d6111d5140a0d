//! Exact diagonalization of one pseudospin sector in a truncated Fock space.
//!
//! This is a reference implementation for checking the semiclassical and
//! thermodynamic-limit results at finite size.

pub mod band;
mod hamiltonian;
mod spectrum;
mod thermal;

pub use band::SymmetricBand;
pub use hamiltonian::{build_hamiltonian, parity_blocks, sector_dimension, FockBasis, MAX_DIMENSION};
pub use spectrum::{
    converged_spectrum, cutoff_start, eigenvalues, quantum_dos, spectrum, DosHistogram, Spectrum,
    CONVERGENCE_FRACTION, CONVERGENCE_TOL,
};
pub use thermal::{canonical_from_spectrum, SpectrumThermo};
