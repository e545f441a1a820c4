//! Mechanical-domain reference solutions, computed without the circuit.
//!
//! The closed form solves `(-w^2 M + j w D + K) X = Q` directly. The
//! spectral path samples the excitation over whole periods, filters every
//! frequency bin through the frequency response and transforms back.

pub mod fft;
mod report;
mod spectral;

pub use report::{validate, CoordinateCheck, MechanicalReference, PhaseCheck, ValidationReport, PHASE_TOL_DEG};
pub use spectral::{spectral_velocities, SpectralGrid, TimeSeries};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{excitation_phasors, Excitation, ModelError, SecondOrderModel};

/// Pivots of the dynamic stiffness below this fraction of its largest
/// entry count as singular.
pub const SINGULAR_TOL: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("dynamic stiffness is singular at omega = {omega} rad/s")]
    Singular { omega: f64 },
    #[error("excitation tone does not fall on a frequency bin ({cycles} cycles in the window)")]
    Misaligned { cycles: f64 },
    #[error("excitation tone lands on bin {bin}, not below the Nyquist bin of {samples} samples")]
    AboveNyquist { bin: usize, samples: usize },
    #[error("invalid sampling grid: {0}")]
    BadGrid(&'static str),
    #[error("coordinate sets differ: electrical {electrical:?}, mechanical {mechanical:?}")]
    CoordinateMismatch {
        electrical: Vec<String>,
        mechanical: Vec<String>,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn dynamic_stiffness(model: &SecondOrderModel, omega: f64) -> DMatrix<Complex64> {
    let n = model.dof();
    DMatrix::from_fn(n, n, |i, j| {
        Complex64::new(
            model.stiffness[(i, j)] - omega * omega * model.mass[(i, j)],
            omega * model.damping[(i, j)],
        )
    })
}

/// `H(w) = (-w^2 M + j w D + K)^-1`.
pub fn frequency_response(model: &SecondOrderModel, omega: f64) -> Result<DMatrix<Complex64>, OracleError> {
    let z = dynamic_stiffness(model, omega);
    let scale = z.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let lu = z.lu();
    let smallest = lu.u().diagonal().iter().map(|x| x.norm()).fold(f64::INFINITY, f64::min);
    if !(smallest > SINGULAR_TOL * scale) {
        return Err(OracleError::Singular { omega });
    }
    lu.try_inverse().ok_or(OracleError::Singular { omega })
}

/// Phasor of the harmonic part of the generalized force: `(d_r + k_r/(j w))`
/// times the road velocity under each tyre, plus any applied forces.
/// Gravity is left out.
pub fn harmonic_force_phasor(model: &SecondOrderModel, excitation: &Excitation) -> DVector<Complex64> {
    let phasors = excitation_phasors(excitation, model);
    let jw = Complex64::new(0.0, phasors.omega);
    let mut q = DVector::zeros(model.dof());
    for (axle, ph) in model.axles.iter().zip(&phasors.axles) {
        q[axle.coordinate] += (axle.d_r + axle.k_r / jw) * ph.velocity;
    }
    for f in &model.forces {
        q[f.coordinate] += f.phasor;
    }
    q
}

/// `V = j w H(w) Q`, the velocity phasors of every coordinate.
pub fn closed_form_velocity_phasors(
    model: &SecondOrderModel,
    excitation: &Excitation,
) -> Result<DVector<Complex64>, OracleError> {
    excitation.validate()?;
    let omega = excitation.omega();
    let h = frequency_response(model, omega)?;
    Ok(h * harmonic_force_phasor(model, excitation) * Complex64::new(0.0, omega))
}
