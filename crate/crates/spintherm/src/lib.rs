//! Spin-resource thermodynamics.
//!
//! This crate treats spin angular momentum as an independently conserved
//! resource with its own temperature, and provides:
//!
//! - exact partition functions, entropies, and average spin for
//!   distinguishable, Bose, and Fermi ensembles ([`statmech`]);
//! - the combinatorial backbone (Gaussian binomials and their lattice-path
//!   interpretation) used by the Bose counting ([`combinatorics`]);
//! - spin heat capacities ("waste responses") and entropic responses,
//!   including Einstein and Debye reference solids ([`responses`]);
//! - analytic large-N thermodynamics, entropy capacities, and the
//!   polarization ↔ spin-temperature maps ([`thermo`]);
//! - the entropy-battery equilibrium solver and efficiency sweeps
//!   ([`battery`]);
//! - brute-force enumeration oracles for validating all of the above
//!   ([`oracle`]).

pub mod battery;
pub mod combinatorics;
pub mod error;
pub mod numeric;
pub mod oracle;
pub mod responses;
pub mod statmech;
pub mod thermo;

pub use battery::{
    endoreversible_reference, solve_equilibrium, sweep_efficiency, total_entropy_change,
    BatterySpec, EquilibriumResult, SweepCell,
};
pub use error::{Error, Result};
pub use responses::{
    debye, einstein_solid, entropic_response, waste_response, waste_response_boson,
    waste_response_distinguishable, waste_response_numeric, ResponseCurve, ResponseKind,
    ResponseModel,
};
pub use statmech::{
    average_spin, entropy, log_partition, microstate_probability, occupation_bose,
    occupation_fermi, probability, EnsembleSpec, InverseTemperature, Spin, Statistics,
    ThermalPoint,
};
pub use thermo::{
    boson_entropy_analytic, boson_heat, capacity_report, entropy_capacity, heat_between,
    polarization_to_tau, tau_to_polarization, waste_capacity, CapacityReport, Polarization,
    SpinTemperature,
};

/// Runs every code block in the README and the guide (`book/`) as a
/// doctest, so the prose can never drift from the library it documents.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ensembles.md")]
    mod ensembles {}
    #[doc = include_str!("../../../book/src/counting.md")]
    mod counting {}
    #[doc = include_str!("../../../book/src/responses.md")]
    mod responses {}
    #[doc = include_str!("../../../book/src/polarization.md")]
    mod polarization {}
    #[doc = include_str!("../../../book/src/battery.md")]
    mod battery {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
