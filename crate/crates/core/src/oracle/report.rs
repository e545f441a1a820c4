use nalgebra::DVector;
use num_complex::Complex64;

use super::{OracleError, TimeSeries};
use crate::model::{dependent_velocity_c, FrameGeometry, SecondOrderModel};
use crate::solver::PhasorSolution;

/// Largest accepted disagreement of a pairwise phase difference [deg].
pub const PHASE_TOL_DEG: f64 = 0.01;

/// What the electrical solution is compared against.
#[derive(Debug, Clone)]
pub enum MechanicalReference {
    Phasors { labels: Vec<String>, values: Vec<Complex64> },
    Series(TimeSeries),
}

impl MechanicalReference {
    /// Labels the phasors with the model's coordinate names.
    pub fn from_phasors(model: &SecondOrderModel, values: &DVector<Complex64>) -> Self {
        MechanicalReference::Phasors {
            labels: model.labels.clone(),
            values: values.iter().copied().collect(),
        }
    }

    fn labels(&self) -> &[String] {
        match self {
            MechanicalReference::Phasors { labels, .. } => labels,
            MechanicalReference::Series(ts) => &ts.labels,
        }
    }

    fn phasor(&self, label: &str) -> Option<Complex64> {
        match self {
            MechanicalReference::Phasors { labels, values } => {
                labels.iter().position(|l| l == label).map(|k| values[k])
            }
            MechanicalReference::Series(ts) => ts.phasor(label),
        }
    }

    fn rms(&self, label: &str) -> Option<f64> {
        match self {
            MechanicalReference::Phasors { .. } => self.phasor(label).map(|z| z.norm()),
            MechanicalReference::Series(ts) => ts.rms(label),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoordinateCheck {
    pub label: String,
    pub rms_electrical: f64,
    pub rms_mechanical: f64,
    /// `|rms_m - rms_e| / rms_e`, absolute when `rms_e = 0`.
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseCheck {
    pub first: String,
    pub second: String,
    /// `arg(U_first) - arg(U_second)` on the electrical side [deg].
    pub electrical_deg: f64,
    pub mechanical_deg: f64,
    /// Wrapped absolute difference of the two [deg].
    pub delta_deg: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub coordinates: Vec<CoordinateCheck>,
    pub max_relative_error: f64,
    /// Pairs where both sides carry a measurable signal.
    pub phases: Vec<PhaseCheck>,
    pub max_phase_delta_deg: f64,
    pub tolerance: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.max_relative_error <= self.tolerance && self.max_phase_delta_deg <= PHASE_TOL_DEG
    }
}

fn wrap_deg(x: f64) -> f64 {
    let r = (x + 180.0).rem_euclid(360.0) - 180.0;
    if r == -180.0 {
        180.0
    } else {
        r
    }
}

/// Compares the electrical node voltages with a mechanical reference,
/// coordinate by coordinate, then pairwise phase differences. With a frame
/// geometry the dependent point `c` is checked as well.
pub fn validate(
    electrical: &PhasorSolution,
    mechanical: &MechanicalReference,
    frame: Option<&FrameGeometry>,
    tolerance: f64,
) -> Result<ValidationReport, OracleError> {
    let mut e_labels: Vec<String> = electrical.node_order.iter().map(|n| n.label.clone()).collect();
    let mut m_labels: Vec<String> = mechanical.labels().iter().filter(|l| *l != "c").cloned().collect();
    let mismatch = || OracleError::CoordinateMismatch {
        electrical: e_labels.clone(),
        mechanical: mechanical.labels().to_vec(),
    };
    {
        let mut a = e_labels.clone();
        let mut b = m_labels.clone();
        a.sort();
        b.sort();
        if a != b {
            return Err(mismatch());
        }
    }

    let mut e_phasors: Vec<Complex64> = electrical.node_voltages.iter().copied().collect();
    let mut m_phasors: Vec<Complex64> = Vec::with_capacity(e_labels.len() + 1);
    let mut m_rms: Vec<f64> = Vec::with_capacity(e_labels.len() + 1);
    for l in &e_labels {
        m_phasors.push(mechanical.phasor(l).ok_or_else(mismatch)?);
        m_rms.push(mechanical.rms(l).ok_or_else(mismatch)?);
    }
    if let Some(frame) = frame {
        let pos = |l: &str| e_labels.iter().position(|x| x == l);
        let (a, b) = pos("a").zip(pos("b")).ok_or_else(mismatch)?;
        e_phasors.push(dependent_velocity_c(e_phasors[a], e_phasors[b], frame));
        let mc = match mechanical.phasor("c") {
            Some(z) => z,
            None => dependent_velocity_c(m_phasors[a], m_phasors[b], frame),
        };
        m_rms.push(mechanical.rms("c").unwrap_or(mc.norm()));
        m_phasors.push(mc);
        e_labels.push("c".to_string());
        m_labels.push("c".to_string());
    }

    let coordinates: Vec<CoordinateCheck> = e_labels
        .iter()
        .zip(&e_phasors)
        .zip(&m_rms)
        .map(|((label, u), &rms_m)| {
            let rms_e = u.norm();
            let diff = (rms_m - rms_e).abs();
            CoordinateCheck {
                label: label.clone(),
                rms_electrical: rms_e,
                rms_mechanical: rms_m,
                relative_error: if rms_e > 0.0 { diff / rms_e } else { diff },
            }
        })
        .collect();

    let floor = 1e-9 * e_phasors.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let measurable = |k: usize| e_phasors[k].norm() > floor && m_phasors[k].norm() > floor;
    let mut phases = Vec::new();
    for i in 0..e_labels.len() {
        for j in (i + 1)..e_labels.len() {
            if !(measurable(i) && measurable(j)) {
                continue;
            }
            let e = wrap_deg((e_phasors[i].arg() - e_phasors[j].arg()).to_degrees());
            let m = wrap_deg((m_phasors[i].arg() - m_phasors[j].arg()).to_degrees());
            phases.push(PhaseCheck {
                first: e_labels[i].clone(),
                second: e_labels[j].clone(),
                electrical_deg: e,
                mechanical_deg: m,
                delta_deg: wrap_deg(e - m).abs(),
            });
        }
    }

    Ok(ValidationReport {
        max_relative_error: coordinates.iter().map(|c| c.relative_error).fold(0.0, f64::max),
        max_phase_delta_deg: phases.iter().map(|p| p.delta_deg).fold(0.0, f64::max),
        coordinates,
        phases,
        tolerance,
    })
}
