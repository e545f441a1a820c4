use num_complex::Complex64;

use super::AnalogyError;

pub const GROUND: usize = 0;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeId {
    pub index: usize,
    pub label: String,
}

impl NodeId {
    pub fn ground() -> Self {
        NodeId { index: GROUND, label: "0".to_string() }
    }
}

/// Element value. Passive values are frequency independent; source values
/// are RMS phasors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BranchKind {
    /// Conductance [S].
    Conductance(f64),
    /// Inductance [H].
    Inductance(f64),
    /// Capacitance [F].
    Capacitance(f64),
    /// Current source [A]; current is driven out of `from` and into `to`.
    CurrentSource(Complex64),
    /// Voltage source [V]; `U_from - U_to = value`.
    VoltageSource(Complex64),
}

impl BranchKind {
    pub fn code(&self) -> &'static str {
        match self {
            BranchKind::Conductance(_) => "G",
            BranchKind::Inductance(_) => "L",
            BranchKind::Capacitance(_) => "C",
            BranchKind::CurrentSource(_) => "I",
            BranchKind::VoltageSource(_) => "V",
        }
    }

    /// Admittance of a passive element at `omega`; `None` for sources.
    pub fn admittance(&self, omega: f64) -> Option<Complex64> {
        let jw = Complex64::new(0.0, omega);
        match *self {
            BranchKind::Conductance(g) => Some(Complex64::new(g, 0.0)),
            BranchKind::Inductance(l) => Some(1.0 / (jw * l)),
            BranchKind::Capacitance(c) => Some(jw * c),
            BranchKind::CurrentSource(_) | BranchKind::VoltageSource(_) => None,
        }
    }

    pub fn is_source(&self) -> bool {
        matches!(self, BranchKind::CurrentSource(_) | BranchKind::VoltageSource(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Branch {
    pub name: String,
    pub kind: BranchKind,
    pub from: usize,
    pub to: usize,
    /// Mechanical element the branch stands for.
    pub provenance: String,
}

/// Two grounded capacitors with a mutual capacitance. Its nodal stamp is
/// `jw [[C_A, -C_M], [-C_M, C_B]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoupledCapacitorPair {
    pub name: String,
    pub node_a: usize,
    pub node_b: usize,
    pub c_a: f64,
    pub c_b: f64,
    pub c_m: f64,
    /// Dot convention: `true` when both dots sit on the node side.
    pub dotted: bool,
    pub provenance: String,
}

impl CoupledCapacitorPair {
    pub fn validate(&self) -> Result<(), AnalogyError> {
        if !(self.c_a > 0.0 && self.c_b > 0.0) || self.c_a * self.c_b - self.c_m * self.c_m <= 0.0 {
            return Err(AnalogyError::InvalidCoupling(self.name.clone()));
        }
        if self.node_a == self.node_b {
            return Err(AnalogyError::InvalidCoupling(self.name.clone()));
        }
        Ok(())
    }
}

/// Electrical analogue of a mechanical model.
#[derive(Debug, Clone, PartialEq)]
pub struct Netlist {
    /// All nodes, ground first; `nodes[i].index == i`.
    pub nodes: Vec<NodeId>,
    pub branches: Vec<Branch>,
    pub couplings: Vec<CoupledCapacitorPair>,
    /// `coordinate_nodes[k]` is the node carrying the velocity of mechanical
    /// coordinate `k`.
    pub coordinate_nodes: Vec<usize>,
    /// Angular frequency the source phasors were generated for [rad/s].
    pub source_omega: f64,
}

impl Netlist {
    pub fn new(source_omega: f64) -> Self {
        Netlist {
            nodes: vec![NodeId::ground()],
            branches: Vec::new(),
            couplings: Vec::new(),
            coordinate_nodes: Vec::new(),
            source_omega,
        }
    }

    pub fn add_node(&mut self, label: impl Into<String>) -> Result<usize, AnalogyError> {
        let label = label.into();
        if self.node_index(&label).is_some() || label == "earth" {
            return Err(AnalogyError::DuplicateNode(label));
        }
        let index = self.nodes.len();
        self.nodes.push(NodeId { index, label });
        Ok(index)
    }

    /// Node by label; ground answers to both `0` and `earth`.
    pub fn node_index(&self, label: &str) -> Option<usize> {
        if label == "earth" {
            return Some(GROUND);
        }
        self.nodes.iter().position(|n| n.label == label)
    }

    pub fn add_branch(
        &mut self,
        name: impl Into<String>,
        kind: BranchKind,
        from: usize,
        to: usize,
        provenance: impl Into<String>,
    ) -> Result<(), AnalogyError> {
        let name = name.into();
        if from == to || from >= self.nodes.len() || to >= self.nodes.len() {
            return Err(AnalogyError::BadBranch(name));
        }
        if let BranchKind::Inductance(l) = kind {
            if l == 0.0 || !l.is_finite() {
                return Err(AnalogyError::BadBranch(name));
            }
        }
        self.branches.push(Branch { name, kind, from, to, provenance: provenance.into() });
        Ok(())
    }

    pub fn has_voltage_sources(&self) -> bool {
        self.branches.iter().any(|b| matches!(b.kind, BranchKind::VoltageSource(_)))
    }

    /// Labels of the non-ground nodes in index order.
    pub fn node_labels(&self) -> Vec<&str> {
        self.nodes[1..].iter().map(|n| n.label.as_str()).collect()
    }

    pub fn branch_count(&self, code: &str) -> usize {
        self.branches.iter().filter(|b| b.kind.code() == code).count()
    }
}
