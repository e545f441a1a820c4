//! Lumped-parameter vertical vehicle models as `M x'' + D x' + K x = Q(t)`.
//!
//! Three builders are provided: a two-mass chain, a half-car and a
//! three-axle truck. The vehicle builders use the vertical displacements of
//! the suspension attachment points (`a` front, `b` rear) as body
//! coordinates, which puts an inertial coupling term into the mass matrix.
//! Coordinates are always ordered `(a, b, d, t[, m])`.

mod excitation;
mod params;

pub use excitation::{
    dependent_velocity_c, excitation_phasors, AxlePhasor, Excitation, ExcitationPhasors,
    HarmonicRoadExcitation,
};
pub use params::{FrameGeometry, HalfCarParams, ThreeAxleParams, TwoDofParams};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("axle positions l_a + l_b = {axle_sum} do not add up to the wheelbase l = {wheelbase}")]
    GeometryInconsistent { wheelbase: f64, axle_sum: f64 },
    #[error("{0} matrix is not symmetric")]
    NotSymmetric(&'static str),
    #[error("mass matrix is not positive definite")]
    MassNotPositiveDefinite,
    #[error("stiffness matrix is not positive semidefinite")]
    StiffnessIndefinite,
    #[error("invalid excitation: {0}")]
    InvalidExcitation(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    TwoDof,
    HalfCar,
    ThreeAxle,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::TwoDof => "two_dof",
            ModelKind::HalfCar => "half_car",
            ModelKind::ThreeAxle => "three_axle",
        }
    }
}

/// Tyre contact of one axle: the road drives `coordinate` through a
/// parallel tyre spring/damper.
#[derive(Debug, Clone, PartialEq)]
pub struct AxleSupport {
    pub coordinate: usize,
    pub k_r: f64,
    pub d_r: f64,
    /// Distance behind the front axle [m].
    pub offset: f64,
}

/// Externally applied harmonic force, as an RMS phasor already carrying the
/// sign with which it enters the generalized force vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ForceInput {
    pub coordinate: usize,
    pub phasor: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecondOrderModel {
    pub kind: ModelKind,
    pub mass: DMatrix<f64>,
    pub damping: DMatrix<f64>,
    pub stiffness: DMatrix<f64>,
    pub labels: Vec<String>,
    pub axles: Vec<AxleSupport>,
    pub forces: Vec<ForceInput>,
    /// Constant gravity load. Kept for completeness; it has no harmonic part
    /// and never enters the steady-state solve.
    pub gravity: DVector<f64>,
    /// Frame geometry of the three-axle model, used to recover the middle
    /// attachment point `c`.
    pub frame: Option<FrameGeometry>,
}

impl SecondOrderModel {
    pub fn dof(&self) -> usize {
        self.labels.len()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Checks symmetry of all three matrices, positive definiteness of the
    /// mass matrix and positive semidefiniteness of the stiffness matrix.
    pub fn check_invariants(&self) -> Result<(), ModelError> {
        for (name, a) in [
            ("mass", &self.mass),
            ("damping", &self.damping),
            ("stiffness", &self.stiffness),
        ] {
            let scale = a.amax().max(f64::MIN_POSITIVE);
            if (a - a.transpose()).amax() > 1e-12 * scale {
                return Err(ModelError::NotSymmetric(name));
            }
        }
        if self.mass.clone().cholesky().is_none() {
            return Err(ModelError::MassNotPositiveDefinite);
        }
        let eig = self.stiffness.clone().symmetric_eigen();
        let floor = -1e-9 * self.stiffness.amax();
        if eig.eigenvalues.iter().any(|&e| e < floor) {
            return Err(ModelError::StiffnessIndefinite);
        }
        Ok(())
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// Two-mass chain. The force acts on the second mass and enters the
/// generalized force vector with a negative sign.
pub fn build_two_dof(p: &TwoDofParams) -> Result<SecondOrderModel, ModelError> {
    p.validate()?;
    let mass = DMatrix::from_row_slice(2, 2, &[p.m1, 0.0, 0.0, p.m2]);
    let chain = |a1: f64, a2: f64| DMatrix::from_row_slice(2, 2, &[a1 + a2, -a2, -a2, a2]);
    let force = Complex64::from_polar(p.f_amplitude / std::f64::consts::SQRT_2, p.f_phase);
    let model = SecondOrderModel {
        kind: ModelKind::TwoDof,
        mass,
        damping: chain(p.d1, p.d2),
        stiffness: chain(p.k1, p.k2),
        labels: labels(&["1", "2"]),
        axles: Vec::new(),
        forces: vec![ForceInput {
            coordinate: 1,
            phasor: -force,
        }],
        gravity: DVector::zeros(2),
        frame: None,
    };
    model.check_invariants()?;
    Ok(model)
}

/// Sprung-mass block in attachment-point coordinates `(a, b)`.
fn body_mass_block(p: &HalfCarParams) -> [f64; 3] {
    let l2 = p.l() * p.l();
    let m11 = (p.m * p.l_t * p.l_t + p.i_g) / l2;
    let m22 = (p.m * p.l_d * p.l_d + p.i_g) / l2;
    let m12 = (p.l_d * p.l_t * p.m - p.i_g) / l2;
    [m11, m22, m12]
}

pub fn build_half_car(p: &HalfCarParams) -> Result<SecondOrderModel, ModelError> {
    p.validate()?;
    let [m11, m22, m12] = body_mass_block(p);
    let l = p.l();

    #[rustfmt::skip]
    let mass = DMatrix::from_row_slice(4, 4, &[
        m11, m12, 0.0,     0.0,
        m12, m22, 0.0,     0.0,
        0.0, 0.0, p.m_ssd, 0.0,
        0.0, 0.0, 0.0,     p.m_sst,
    ]);
    #[rustfmt::skip]
    let suspension = |sd: f64, st: f64, rd: f64, rt: f64| DMatrix::from_row_slice(4, 4, &[
        sd,  0.0, -sd,     0.0,
        0.0, st,  0.0,     -st,
        -sd, 0.0, rd + sd, 0.0,
        0.0, -st, 0.0,     rt + st,
    ]);
    let gravity = DVector::from_column_slice(&[
        -p.g * p.l_t * p.m / l,
        -p.g * p.l_d * p.m / l,
        -p.g * p.m_ssd,
        -p.g * p.m_sst,
    ]);

    let model = SecondOrderModel {
        kind: ModelKind::HalfCar,
        mass,
        damping: suspension(p.d_sd, p.d_st, p.d_rd, p.d_rt),
        stiffness: suspension(p.k_sd, p.k_st, p.k_rd, p.k_rt),
        labels: labels(&["a", "b", "d", "t"]),
        axles: vec![
            AxleSupport { coordinate: 2, k_r: p.k_rd, d_r: p.d_rd, offset: 0.0 },
            AxleSupport { coordinate: 3, k_r: p.k_rt, d_r: p.d_rt, offset: l },
        ],
        forces: Vec::new(),
        gravity,
        frame: None,
    };
    model.check_invariants()?;
    Ok(model)
}

pub fn build_three_axle(p: &ThreeAxleParams) -> Result<SecondOrderModel, ModelError> {
    p.validate()?;
    let h = &p.half_car;
    let [m11, m22, m12] = body_mass_block(h);
    let l = h.l();
    let (la, lb) = (p.l_a, p.l_b);

    #[rustfmt::skip]
    let mass = DMatrix::from_row_slice(5, 5, &[
        m11, m12, 0.0,     0.0,     0.0,
        m12, m22, 0.0,     0.0,     0.0,
        0.0, 0.0, h.m_ssd, 0.0,     0.0,
        0.0, 0.0, 0.0,     h.m_sst, 0.0,
        0.0, 0.0, 0.0,     0.0,     p.m_ssm,
    ]);

    // The middle suspension acts on the frame point c = (l_b a + l_a b) / l.
    let suspension = |sd: f64, st: f64, sm: f64, rd: f64, rt: f64, rm: f64| {
        let a11 = sd + sm * lb * lb / (l * l);
        let a12 = sm * la * lb / (l * l);
        let a15 = -sm * lb / l;
        let a22 = st + sm * la * la / (l * l);
        let a25 = -sm * la / l;
        #[rustfmt::skip]
        let a = DMatrix::from_row_slice(5, 5, &[
            a11, a12, -sd,     0.0,     a15,
            a12, a22, 0.0,     -st,     a25,
            -sd, 0.0, rd + sd, 0.0,     0.0,
            0.0, -st, 0.0,     rt + st, 0.0,
            a15, a25, 0.0,     0.0,     rm + sm,
        ]);
        a
    };
    let gravity = DVector::from_column_slice(&[
        -h.g * h.l_t * h.m / l,
        -h.g * h.l_d * h.m / l,
        -h.g * h.m_ssd,
        -h.g * h.m_sst,
        -h.g * p.m_ssm,
    ]);

    let model = SecondOrderModel {
        kind: ModelKind::ThreeAxle,
        mass,
        damping: suspension(h.d_sd, h.d_st, p.d_sm, h.d_rd, h.d_rt, p.d_rm),
        stiffness: suspension(h.k_sd, h.k_st, p.k_sm, h.k_rd, h.k_rt, p.k_rm),
        labels: labels(&["a", "b", "d", "t", "m"]),
        axles: vec![
            AxleSupport { coordinate: 2, k_r: h.k_rd, d_r: h.d_rd, offset: 0.0 },
            AxleSupport { coordinate: 4, k_r: p.k_rm, d_r: p.d_rm, offset: la },
            AxleSupport { coordinate: 3, k_r: h.k_rt, d_r: h.d_rt, offset: l },
        ],
        forces: Vec::new(),
        gravity,
        frame: Some(p.geometry()),
    };
    model.check_invariants()?;
    Ok(model)
}
