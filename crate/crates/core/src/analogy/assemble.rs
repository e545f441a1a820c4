use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::netlist::{BranchKind, NodeId, Netlist, GROUND};
use super::AnalogyError;

/// Nodal equations `Y U = I` with the ground row and column removed.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmittanceSystem {
    pub omega: f64,
    pub matrix: DMatrix<Complex64>,
    pub currents: DVector<Complex64>,
    /// Node of each row, i.e. the non-ground nodes in index order.
    pub node_order: Vec<NodeId>,
    /// Nodes with no passive path to ground; the system is singular if any.
    pub disconnected: Vec<NodeId>,
}

impl AdmittanceSystem {
    pub fn size(&self) -> usize {
        self.node_order.len()
    }
}

/// Stamps every element of `net` at angular frequency `omega`.
///
/// Voltage sources must have been converted with [`Netlist::to_norton`]
/// first.
pub fn assemble_admittance(net: &Netlist, omega: f64) -> Result<AdmittanceSystem, AnalogyError> {
    if !(omega.is_finite() && omega > 0.0) {
        return Err(AnalogyError::BadFrequency(omega));
    }
    let n = net.nodes.len() - 1;
    let mut y = DMatrix::<Complex64>::zeros(n, n);
    let mut currents = DVector::<Complex64>::zeros(n);
    let jw = Complex64::new(0.0, omega);

    let mut stamp = |i: usize, j: usize, value: Complex64| {
        if i != GROUND {
            y[(i - 1, i - 1)] += value;
        }
        if j != GROUND {
            y[(j - 1, j - 1)] += value;
        }
        if i != GROUND && j != GROUND {
            y[(i - 1, j - 1)] -= value;
            y[(j - 1, i - 1)] -= value;
        }
    };

    for b in &net.branches {
        match b.kind {
            BranchKind::VoltageSource(_) => return Err(AnalogyError::RawVoltageSource(b.name.clone())),
            BranchKind::CurrentSource(i) => {
                if b.to != GROUND {
                    currents[b.to - 1] += i;
                }
                if b.from != GROUND {
                    currents[b.from - 1] -= i;
                }
            }
            kind => stamp(b.from, b.to, kind.admittance(omega).expect("passive element")),
        }
    }
    for c in &net.couplings {
        let (a, b) = (c.node_a - 1, c.node_b - 1);
        y[(a, a)] += jw * c.c_a;
        y[(b, b)] += jw * c.c_b;
        y[(a, b)] -= jw * c.c_m;
        y[(b, a)] -= jw * c.c_m;
    }

    Ok(AdmittanceSystem {
        omega,
        matrix: y,
        currents,
        node_order: net.nodes[1..].to_vec(),
        disconnected: unreachable_from_ground(net),
    })
}

fn unreachable_from_ground(net: &Netlist) -> Vec<NodeId> {
    let count = net.nodes.len();
    let mut adjacency = vec![Vec::new(); count];
    let mut link = |a: usize, b: usize| {
        adjacency[a].push(b);
        adjacency[b].push(a);
    };
    for b in net.branches.iter().filter(|b| !b.kind.is_source()) {
        link(b.from, b.to);
    }
    for c in &net.couplings {
        link(c.node_a, GROUND);
        link(c.node_b, GROUND);
        link(c.node_a, c.node_b);
    }
    let mut seen = vec![false; count];
    seen[GROUND] = true;
    let mut queue = VecDeque::from([GROUND]);
    while let Some(k) = queue.pop_front() {
        for &next in &adjacency[k] {
            if !seen[next] {
                seen[next] = true;
                queue.push_back(next);
            }
        }
    }
    net.nodes
        .iter()
        .filter(|n| !seen[n.index])
        .cloned()
        .collect()
}
