//! Electrical analogue networks and their nodal admittance equations.

mod assemble;
mod netlist;
mod text;
mod translate;

pub use assemble::{assemble_admittance, AdmittanceSystem};
pub use netlist::{Branch, BranchKind, CoupledCapacitorPair, NodeId, Netlist, GROUND};
pub use text::{read_netlist, write_netlist};
pub use translate::{norton_transform, pi_equivalent, translate_force_current};

use thiserror::Error;

use crate::model::ModelError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalogyError {
    #[error("unsupported topology: {0}")]
    UnsupportedTopology(&'static str),
    #[error("coupled pair {0} is not positive definite or is degenerate")]
    InvalidCoupling(String),
    #[error("branch {0} is malformed (equal terminals, unknown node or zero inductance)")]
    BadBranch(String),
    #[error("node label {0} is already in use")]
    DuplicateNode(String),
    #[error("voltage source {0} must be Norton transformed before assembly")]
    RawVoltageSource(String),
    #[error("voltage source {0} is not a grounded source behind a single series admittance")]
    UnsupportedSource(String),
    #[error("source has zero series admittance")]
    DegenerateSource,
    #[error("angular frequency must be finite and > 0, got {0}")]
    BadFrequency(f64),
    #[error("netlist line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}
