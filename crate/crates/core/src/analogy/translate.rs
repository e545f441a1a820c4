//! Force-current translation of a mechanical model and the two network
//! transformations applied to it afterwards.
//!
//! Mapping: mass -> grounded capacitor `C = m`, spring -> inductor
//! `L = 1/k`, damper -> conductance `G = d`, force -> current, velocity ->
//! node voltage. Topology is preserved.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::netlist::{Branch, BranchKind, CoupledCapacitorPair, Netlist, GROUND};
use super::AnalogyError;
use crate::model::{excitation_phasors, Excitation, SecondOrderModel};

/// Builds the force-current analogue of `model` driven by `excitation`.
///
/// Every off-diagonal damping/stiffness entry `a_ij` becomes a branch of
/// value `-a_ij` between the two coordinate nodes, and whatever is left of
/// each row sum becomes a branch to ground. A tyre is not stamped to ground:
/// it runs to a separate road node held at the road velocity by a voltage
/// source, ready for [`Netlist::to_norton`]. The off-diagonal mass term of
/// the body block becomes a [`CoupledCapacitorPair`].
pub fn translate_force_current(
    model: &SecondOrderModel,
    excitation: &Excitation,
) -> Result<Netlist, AnalogyError> {
    excitation.validate()?;
    let n = model.dof();
    let mut net = Netlist::new(excitation.omega());
    for label in &model.labels {
        let node = net.add_node(label.clone())?;
        net.coordinate_nodes.push(node);
    }
    let node = |k: usize| k + 1;
    let label = |k: usize| model.labels[k].as_str();

    // inertia
    let mass = &model.mass;
    let coupled = mass_coupling(mass)?;
    for k in 0..n {
        if let Some((i, j)) = coupled {
            if k == i || k == j {
                continue;
            }
        }
        net.add_branch(
            format!("C_{}", label(k)),
            BranchKind::Capacitance(mass[(k, k)]),
            node(k),
            GROUND,
            format!("mass on {}", label(k)),
        )?;
    }
    if let Some((i, j)) = coupled {
        let pair = CoupledCapacitorPair {
            name: format!("K_{}_{}", label(i), label(j)),
            node_a: node(i),
            node_b: node(j),
            c_a: mass[(i, i)],
            c_b: mass[(j, j)],
            c_m: -mass[(i, j)],
            dotted: true,
            provenance: format!("inertial coupling {}-{}", label(i), label(j)),
        };
        pair.validate()?;
        net.couplings.push(pair);
    }

    // dissipation and elasticity
    let mut tyre_d = vec![0.0; n];
    let mut tyre_k = vec![0.0; n];
    for axle in &model.axles {
        tyre_d[axle.coordinate] += axle.d_r;
        tyre_k[axle.coordinate] += axle.k_r;
    }
    let element_sets: [(&DMatrix<f64>, &Vec<f64>, &str, &str); 2] = [
        (&model.damping, &tyre_d, "G", "damper"),
        (&model.stiffness, &tyre_k, "L", "spring"),
    ];
    for (matrix, tyre, code, what) in element_sets {
        let make = |value: f64| match code {
            "G" => BranchKind::Conductance(value),
            _ => BranchKind::Inductance(1.0 / value),
        };
        for i in 0..n {
            for j in (i + 1)..n {
                let a = matrix[(i, j)];
                if a != 0.0 {
                    net.add_branch(
                        format!("{code}_{}_{}", label(i), label(j)),
                        make(-a),
                        node(i),
                        node(j),
                        format!("{what} {}-{}", label(i), label(j)),
                    )?;
                }
            }
            let row = matrix.row(i);
            let shunt = row.sum() - tyre[i];
            let scale = row.iter().map(|x| x.abs()).sum::<f64>();
            if shunt.abs() > 1e-12 * scale {
                net.add_branch(
                    format!("{code}_{}", label(i)),
                    make(shunt),
                    node(i),
                    GROUND,
                    format!("{what} {}-frame", label(i)),
                )?;
            }
        }
    }

    // road inputs behind the tyres
    let phasors = excitation_phasors(excitation, model);
    for (axle, ph) in model.axles.iter().zip(&phasors.axles) {
        let p = axle.coordinate;
        let road = net.add_node(format!("road_{}", label(p)))?;
        if axle.d_r != 0.0 {
            net.add_branch(
                format!("G_r{}", label(p)),
                BranchKind::Conductance(axle.d_r),
                node(p),
                road,
                format!("tyre damper {}", label(p)),
            )?;
        }
        if axle.k_r != 0.0 {
            net.add_branch(
                format!("L_r{}", label(p)),
                BranchKind::Inductance(1.0 / axle.k_r),
                node(p),
                road,
                format!("tyre spring {}", label(p)),
            )?;
        }
        net.add_branch(
            format!("V_{}", label(p)),
            BranchKind::VoltageSource(ph.velocity),
            road,
            GROUND,
            format!("road velocity under {}", label(p)),
        )?;
    }

    for force in &model.forces {
        let k = force.coordinate;
        net.add_branch(
            format!("I_{}", label(k)),
            BranchKind::CurrentSource(force.phasor),
            GROUND,
            node(k),
            format!("applied force on {}", label(k)),
        )?;
    }
    Ok(net)
}

/// Locates the single off-diagonal pair of the mass matrix, if any.
fn mass_coupling(mass: &DMatrix<f64>) -> Result<Option<(usize, usize)>, AnalogyError> {
    let n = mass.nrows();
    let tol = 1e-12 * mass.amax();
    let mut found = None;
    for i in 0..n {
        for j in (i + 1)..n {
            if mass[(i, j)].abs() > tol {
                if found.is_some() {
                    return Err(AnalogyError::UnsupportedTopology(
                        "more than one inertially coupled coordinate pair",
                    ));
                }
                found = Some((i, j));
            }
        }
    }
    Ok(found)
}

/// Π equivalent of a coupled pair: `C_A - C_M` to ground at `a`,
/// `C_B - C_M` to ground at `b`, and `C_M` in series between them. The
/// series element is left out when `C_M` is zero.
pub fn pi_equivalent(c: &CoupledCapacitorPair) -> Vec<Branch> {
    let mut out = vec![
        Branch {
            name: format!("{}_A", c.name),
            kind: BranchKind::Capacitance(c.c_a - c.c_m),
            from: c.node_a,
            to: GROUND,
            provenance: format!("{} (shunt A)", c.provenance),
        },
        Branch {
            name: format!("{}_B", c.name),
            kind: BranchKind::Capacitance(c.c_b - c.c_m),
            from: c.node_b,
            to: GROUND,
            provenance: format!("{} (shunt B)", c.provenance),
        },
    ];
    if c.c_m != 0.0 {
        out.push(Branch {
            name: format!("{}_M", c.name),
            kind: BranchKind::Capacitance(c.c_m),
            from: c.node_a,
            to: c.node_b,
            provenance: format!("{} (series)", c.provenance),
        });
    }
    out
}

/// Turns a voltage source behind a series admittance into a current source
/// feeding the same admittance, now tied to ground.
pub fn norton_transform(
    v_src: Complex64,
    series_admittance: Complex64,
) -> Result<(Complex64, Complex64), AnalogyError> {
    if series_admittance.norm() == 0.0 || !series_admittance.is_finite() {
        return Err(AnalogyError::DegenerateSource);
    }
    Ok((series_admittance * v_src, series_admittance))
}

impl Netlist {
    /// Copy with every coupled pair replaced by its Π network.
    pub fn with_pi_couplings(&self) -> Netlist {
        let mut out = self.clone();
        let couplings = std::mem::take(&mut out.couplings);
        for c in &couplings {
            out.branches.extend(pi_equivalent(c));
        }
        out
    }

    /// Copy with every grounded voltage source converted to a current
    /// source, eliminating its source node.
    ///
    /// The source node may only connect to one other node through passive
    /// branches (the tyre); anything else is reported as unsupported.
    pub fn to_norton(&self) -> Result<Netlist, AnalogyError> {
        let mut out = self.clone();
        while let Some(pos) = out
            .branches
            .iter()
            .position(|b| matches!(b.kind, BranchKind::VoltageSource(_)))
        {
            let src = out.branches.remove(pos);
            let BranchKind::VoltageSource(v) = src.kind else { unreachable!() };
            let (source_node, u_source) = match (src.from, src.to) {
                (r, GROUND) => (r, v),
                (GROUND, r) => (r, -v),
                _ => return Err(AnalogyError::UnsupportedSource(src.name)),
            };
            if out.couplings.iter().any(|c| c.node_a == source_node || c.node_b == source_node) {
                return Err(AnalogyError::UnsupportedSource(src.name));
            }

            let mut target = None;
            let mut series = Complex64::new(0.0, 0.0);
            for b in out.branches.iter().filter(|b| b.from == source_node || b.to == source_node) {
                let other = if b.from == source_node { b.to } else { b.from };
                let y = b.kind.admittance(self.source_omega);
                match (y, target) {
                    (Some(y), None) if other != GROUND => {
                        target = Some(other);
                        series += y;
                    }
                    (Some(y), Some(t)) if t == other => series += y,
                    _ => return Err(AnalogyError::UnsupportedSource(src.name)),
                }
            }
            let target = target.ok_or(AnalogyError::DegenerateSource)?;
            let (current, _) = norton_transform(u_source, series)?;

            for b in out.branches.iter_mut() {
                if b.from == source_node {
                    b.from = target;
                    b.to = GROUND;
                } else if b.to == source_node {
                    b.to = GROUND;
                }
            }
            out.branches.push(Branch {
                name: src.name.replacen('V', "I", 1),
                kind: BranchKind::CurrentSource(current),
                from: GROUND,
                to: target,
                provenance: src.provenance,
            });
            out.remove_node(source_node);
        }
        Ok(out)
    }

    fn remove_node(&mut self, index: usize) {
        self.nodes.remove(index);
        for (i, node) in self.nodes.iter_mut().enumerate() {
            node.index = i;
        }
        let shift = |k: &mut usize| {
            if *k > index {
                *k -= 1;
            }
        };
        for b in &mut self.branches {
            shift(&mut b.from);
            shift(&mut b.to);
        }
        for c in &mut self.couplings {
            shift(&mut c.node_a);
            shift(&mut c.node_b);
        }
        for k in &mut self.coordinate_nodes {
            shift(k);
        }
    }
}
