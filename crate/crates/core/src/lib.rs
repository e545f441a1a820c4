//! Vertical vehicle vibration models solved through their force-current
//! electrical analogue.
//!
//! [`model`] builds `M x'' + D x' + K x = Q` for a two-mass chain, a
//! half-car and a three-axle truck. [`analogy`] turns a model into a
//! netlist (masses become grounded capacitors, springs inductors, dampers
//! conductances, road inputs voltage sources) and assembles the nodal
//! admittance matrix. [`solver`] solves the harmonic steady state, and
//! [`oracle`] recomputes the same velocities in the mechanical domain.

pub mod analogy;
pub mod format;
pub mod model;
pub mod oracle;
pub mod solver;

#[cfg(test)]
mod fixtures;

pub use analogy::{
    assemble_admittance, translate_force_current, AdmittanceSystem, AnalogyError, Netlist,
};
pub use model::{
    build_half_car, build_three_axle, build_two_dof, Excitation, FrameGeometry, HalfCarParams,
    HarmonicRoadExcitation, ModelError, ModelKind, SecondOrderModel, ThreeAxleParams, TwoDofParams,
};
pub use oracle::{
    closed_form_velocity_phasors, spectral_velocities, validate, OracleError, SpectralGrid,
    TimeSeries, ValidationReport,
};
pub use solver::{analyze, solve, Analysis, PhasorSolution, SolveError};
