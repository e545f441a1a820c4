//! Harmonic steady-state solution of the nodal equations.

mod lu;
mod sinusoid;
mod sweep;

pub use lu::{ComplexLu, SingularPivot};
pub use sinusoid::{to_sinusoid, SinusoidRecord};
pub use sweep::{sweep, write_sweep_csv, SweepRow};

use nalgebra::DVector;
use num_complex::Complex64;
use thiserror::Error;

use crate::analogy::{
    assemble_admittance, translate_force_current, AdmittanceSystem, AnalogyError, BranchKind,
    Netlist, NodeId, GROUND,
};
use crate::model::{Excitation, ModelError, SecondOrderModel};

/// Pivots below this fraction of `||Y||_1` count as singular.
pub const SINGULAR_PIVOT_TOL: f64 = 1e-13;
/// Accepted relative residual `||Y U - I|| / ||I||`.
pub const RESIDUAL_TOL: f64 = 1e-9;
/// Condition numbers above this are flagged on the solution.
pub const CONDITION_WARN: f64 = 1e12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("admittance matrix is numerically singular at node {node} (omega = {omega} rad/s)")]
    Singular { node: String, omega: f64 },
    #[error("solution residual {residual:e} exceeds the accepted bound")]
    Inaccurate { residual: f64 },
    #[error("angular frequency must be finite and > 0, got {0}")]
    BadFrequency(f64),
    #[error("netlist has {netlist} non-ground nodes but the solution has {solution}")]
    NodeCountMismatch { netlist: usize, solution: usize },
    #[error(transparent)]
    Analogy(#[from] AnalogyError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhasorSolution {
    pub omega: f64,
    pub node_order: Vec<NodeId>,
    /// RMS node voltage phasors [V], i.e. velocities [m/s].
    pub node_voltages: DVector<Complex64>,
    /// 1-norm condition number of the admittance matrix.
    pub condition: f64,
    /// `||Y U - I|| / ||I||` (absolute when `I = 0`).
    pub residual: f64,
}

impl PhasorSolution {
    pub fn voltage(&self, label: &str) -> Option<Complex64> {
        self.node_order
            .iter()
            .position(|n| n.label == label)
            .map(|k| self.node_voltages[k])
    }

    pub fn ill_conditioned(&self) -> bool {
        self.condition > CONDITION_WARN
    }

    /// Voltages of the nodes carrying the mechanical coordinates, in
    /// coordinate order.
    pub fn coordinate_voltages(&self, net: &Netlist) -> DVector<Complex64> {
        DVector::from_iterator(
            net.coordinate_nodes.len(),
            net.coordinate_nodes.iter().map(|&k| self.node_voltages[k - 1]),
        )
    }
}

fn residual(sys: &AdmittanceSystem, u: &DVector<Complex64>) -> f64 {
    let r = (&sys.matrix * u - &sys.currents).norm();
    let scale = sys.currents.norm();
    if scale > 0.0 {
        r / scale
    } else {
        r
    }
}

/// Solves `Y U = I` by pivoted LU factorization.
pub fn solve(sys: &AdmittanceSystem) -> Result<PhasorSolution, SolveError> {
    if let Some(node) = sys.disconnected.first() {
        return Err(SolveError::Singular { node: node.label.clone(), omega: sys.omega });
    }
    let lu = ComplexLu::factor(&sys.matrix, SINGULAR_PIVOT_TOL).map_err(|p| SolveError::Singular {
        node: sys.node_order[p.column].label.clone(),
        omega: sys.omega,
    })?;
    let mut u = lu.solve(&sys.currents);
    let mut res = residual(sys, &u);
    if res > RESIDUAL_TOL {
        // one step of iterative refinement
        let r = &sys.currents - &sys.matrix * &u;
        u += lu.solve(&r);
        res = residual(sys, &u);
    }
    if res > RESIDUAL_TOL {
        return Err(SolveError::Inaccurate { residual: res });
    }
    Ok(PhasorSolution {
        omega: sys.omega,
        node_order: sys.node_order.clone(),
        node_voltages: u,
        condition: lu.condition_1(),
        residual: res,
    })
}

/// Everything produced on the way from a model to its phasor solution.
#[derive(Debug, Clone)]
pub struct Analysis {
    /// Netlist with Norton-form sources, the one actually solved.
    pub netlist: Netlist,
    pub system: AdmittanceSystem,
    pub solution: PhasorSolution,
}

/// Translate, Norton-transform, assemble at the excitation frequency and
/// solve.
pub fn analyze(model: &SecondOrderModel, excitation: &Excitation) -> Result<Analysis, SolveError> {
    let netlist = translate_force_current(model, excitation)?.to_norton()?;
    let system = assemble_admittance(&netlist, excitation.omega())?;
    let solution = solve(&system)?;
    Ok(Analysis { netlist, system, solution })
}

/// Current through one element, flowing from `from` to `to`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementCurrent {
    pub name: String,
    pub from: String,
    pub to: String,
    pub current: Complex64,
    pub is_source: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BranchCurrents {
    pub elements: Vec<ElementCurrent>,
    /// Largest KCL imbalance over the non-ground nodes [A].
    pub kcl_residual: f64,
    /// Largest source current magnitude [A].
    pub max_source: f64,
}

impl BranchCurrents {
    /// KCL imbalance relative to the largest source (absolute without
    /// sources).
    pub fn relative_kcl_residual(&self) -> f64 {
        if self.max_source > 0.0 {
            self.kcl_residual / self.max_source
        } else {
            self.kcl_residual
        }
    }
}

/// Ohm's law on every element of a solved netlist. Coupled pairs report the
/// current leaving each terminal to ground as `NAME:node`.
pub fn branch_currents(net: &Netlist, solution: &PhasorSolution) -> Result<BranchCurrents, SolveError> {
    if let Some(b) = net.branches.iter().find(|b| matches!(b.kind, BranchKind::VoltageSource(_))) {
        return Err(AnalogyError::RawVoltageSource(b.name.clone()).into());
    }
    if net.nodes.len() != solution.node_voltages.len() + 1 {
        return Err(SolveError::NodeCountMismatch {
            netlist: net.nodes.len() - 1,
            solution: solution.node_voltages.len(),
        });
    }
    let omega = solution.omega;
    let jw = Complex64::new(0.0, omega);
    let voltage = |k: usize| {
        if k == GROUND {
            Complex64::new(0.0, 0.0)
        } else {
            solution.node_voltages[k - 1]
        }
    };
    let label = |k: usize| net.nodes[k].label.clone();
    let mut imbalance = vec![Complex64::new(0.0, 0.0); net.nodes.len()];
    let mut elements = Vec::with_capacity(net.branches.len() + 2 * net.couplings.len());
    let mut max_source: f64 = 0.0;

    for b in &net.branches {
        let (current, is_source) = match b.kind {
            BranchKind::CurrentSource(i) => {
                max_source = max_source.max(i.norm());
                (i, true)
            }
            kind => (kind.admittance(omega).expect("passive") * (voltage(b.from) - voltage(b.to)), false),
        };
        imbalance[b.from] += current;
        imbalance[b.to] -= current;
        elements.push(ElementCurrent {
            name: b.name.clone(),
            from: label(b.from),
            to: label(b.to),
            current,
            is_source,
        });
    }
    for c in &net.couplings {
        let (ua, ub) = (voltage(c.node_a), voltage(c.node_b));
        for (node, current) in [
            (c.node_a, jw * (ua * c.c_a - ub * c.c_m)),
            (c.node_b, jw * (ub * c.c_b - ua * c.c_m)),
        ] {
            imbalance[node] += current;
            elements.push(ElementCurrent {
                name: format!("{}:{}", c.name, label(node)),
                from: label(node),
                to: label(GROUND),
                current,
                is_source: false,
            });
        }
    }
    let kcl_residual = imbalance[1..].iter().map(|z| z.norm()).fold(0.0, f64::max);
    Ok(BranchCurrents { elements, kcl_residual, max_source })
}
