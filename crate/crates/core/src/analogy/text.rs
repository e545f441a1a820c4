//! Line-oriented netlist text format.
//!
//! ```text
//! * comment
//! .omega 52.35987755982989
//! .node a 0
//! .node road_d
//! G G_a_d a d 15400 # damper a-d
//! KCAP K_a_b a b 2256.07 12021.92 -3861.00 # inertial coupling a-b
//! V V_d road_d 0 1.8512,0 # road velocity under d
//! ```
//!
//! Element lines are `KIND NAME NODE_FROM NODE_TO VALUE [# provenance]` with
//! kinds `G L C I V`; `KCAP` lines carry `NAME nodeA nodeB C_A C_B C_M`.
//! Source values are complex, written `re,im`. `.node LABEL [COORD]` fixes
//! node order and the coordinate a node carries; ground is `0` (or
//! `earth`) and is never declared. Numbers are written in shortest
//! round-trip form so a written netlist reads back bit-identical.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::netlist::{BranchKind, CoupledCapacitorPair, Netlist};
use super::AnalogyError;

pub fn write_netlist(net: &Netlist) -> String {
    let mut out = String::new();
    let label = |k: usize| net.nodes[k].label.as_str();
    out.push_str("* force-current analogue netlist\n");
    out.push_str("* passive values do not depend on frequency; sources are RMS phasors\n");
    let _ = writeln!(out, "* source phasors generated for omega = {} rad/s", net.source_omega);
    let _ = writeln!(out, ".omega {}", net.source_omega);
    for node in &net.nodes[1..] {
        match net.coordinate_nodes.iter().position(|&k| k == node.index) {
            Some(coord) => {
                let _ = writeln!(out, ".node {} {}", node.label, coord);
            }
            None => {
                let _ = writeln!(out, ".node {}", node.label);
            }
        }
    }
    for b in &net.branches {
        let value = match b.kind {
            BranchKind::Conductance(x) | BranchKind::Inductance(x) | BranchKind::Capacitance(x) => {
                format!("{x}")
            }
            BranchKind::CurrentSource(z) | BranchKind::VoltageSource(z) => format!("{},{}", z.re, z.im),
        };
        let _ = write!(out, "{} {} {} {} {}", b.kind.code(), b.name, label(b.from), label(b.to), value);
        provenance(&mut out, &b.provenance);
    }
    for c in &net.couplings {
        let _ = write!(
            out,
            "KCAP {} {} {} {} {} {}",
            c.name,
            label(c.node_a),
            label(c.node_b),
            c.c_a,
            c.c_b,
            c.c_m
        );
        provenance(&mut out, &c.provenance);
    }
    out
}

fn provenance(out: &mut String, text: &str) {
    if text.is_empty() {
        out.push('\n');
    } else {
        let _ = writeln!(out, " # {text}");
    }
}

pub fn read_netlist(text: &str) -> Result<Netlist, AnalogyError> {
    let mut net = Netlist::new(0.0);
    let mut omega_seen = false;
    let mut coords: Vec<(usize, usize)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let err = |msg: String| AnalogyError::Parse { line: line_no, message: msg };
        let (body, prov) = match raw.split_once('#') {
            Some((b, p)) => (b.trim(), p.trim()),
            None => (raw.trim(), ""),
        };
        if body.is_empty() || body.starts_with('*') {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let number = |s: &str| s.parse::<f64>().map_err(|_| err(format!("bad number `{s}`")));
        let node = |net: &Netlist, s: &str| {
            net.node_index(s).ok_or_else(|| err(format!("undeclared node `{s}`")))
        };
        match fields[0] {
            ".omega" if fields.len() == 2 => {
                net.source_omega = number(fields[1])?;
                omega_seen = true;
            }
            ".node" if fields.len() == 2 || fields.len() == 3 => {
                let index = net.add_node(fields[1]).map_err(|e| err(e.to_string()))?;
                if let Some(c) = fields.get(2) {
                    let c = c.parse::<usize>().map_err(|_| err(format!("bad coordinate `{c}`")))?;
                    coords.push((c, index));
                }
            }
            "KCAP" if fields.len() == 7 => {
                let pair = CoupledCapacitorPair {
                    name: fields[1].to_string(),
                    node_a: node(&net, fields[2])?,
                    node_b: node(&net, fields[3])?,
                    c_a: number(fields[4])?,
                    c_b: number(fields[5])?,
                    c_m: number(fields[6])?,
                    dotted: true,
                    provenance: prov.to_string(),
                };
                pair.validate().map_err(|e| err(e.to_string()))?;
                net.couplings.push(pair);
            }
            code @ ("G" | "L" | "C" | "I" | "V") if fields.len() == 5 => {
                let from = node(&net, fields[2])?;
                let to = node(&net, fields[3])?;
                let kind = match code {
                    "G" => BranchKind::Conductance(number(fields[4])?),
                    "L" => BranchKind::Inductance(number(fields[4])?),
                    "C" => BranchKind::Capacitance(number(fields[4])?),
                    _ => {
                        let (re, im) = fields[4]
                            .split_once(',')
                            .ok_or_else(|| err(format!("expected re,im in `{}`", fields[4])))?;
                        let z = Complex64::new(number(re)?, number(im)?);
                        if code == "I" {
                            BranchKind::CurrentSource(z)
                        } else {
                            BranchKind::VoltageSource(z)
                        }
                    }
                };
                net.add_branch(fields[1], kind, from, to, prov)
                    .map_err(|e| err(e.to_string()))?;
            }
            other => return Err(err(format!("unrecognised line starting with `{other}`"))),
        }
    }
    if !omega_seen {
        return Err(AnalogyError::Parse { line: 0, message: "missing .omega directive".into() });
    }
    coords.sort();
    for (expected, (coord, _)) in coords.iter().enumerate() {
        if *coord != expected {
            return Err(AnalogyError::Parse {
                line: 0,
                message: format!("coordinate indices must be 0..n, found {coord}"),
            });
        }
    }
    net.coordinate_nodes = coords.into_iter().map(|(_, node)| node).collect();
    Ok(net)
}
