//! Classical limit of each pseudospin sector: the classical Hamiltonian, its
//! stationary points, and the semiclassical density of states.

mod extrema;
mod hamiltonian;
mod montecarlo;
mod sdos;

pub use extrema::{
    esqpt_energies, extremal_points, lowest_energy, qpt_energy_per_atom, ExtremalPoint, LowestEnergy,
    StationaryKind,
};
pub use hamiltonian::{
    classical_hamiltonian, coupling_regime, sector_couplings, ClassicalCoords, CouplingRegime, SectorCouplings,
};
pub use montecarlo::{phase_space_volume_mc, sdos_mc, McEstimate};
pub use sdos::{azimuth_function, sdos, sdos_regime, sdos_roots, sdos_scaled, SdosRegime, SdosRoots};
