//! Harmonic road input and its per-axle phasors.
//!
//! A phasor `E` stands for the signal `e(t) = Re{sqrt(2) E exp(j w t)}`. The
//! road under the front axle is `y_d(t) = Y sin(w t)`, so its vertical
//! velocity phasor `Y w / sqrt(2)` is real and positive; it is the phase
//! reference of every solution in this crate.

use std::f64::consts::{PI, SQRT_2, TAU};
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use super::{FrameGeometry, ModelError, SecondOrderModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicRoadExcitation {
    /// Unevenness amplitude `Y` [m].
    pub amplitude: f64,
    /// Wavelength `lambda` [m].
    pub wavelength: f64,
    /// Forward speed `v` [m/s].
    pub speed: f64,
}

impl HarmonicRoadExcitation {
    pub fn new(amplitude: f64, wavelength: f64, speed: f64) -> Result<Self, ModelError> {
        if !(amplitude.is_finite() && amplitude >= 0.0) {
            return Err(ModelError::InvalidExcitation("amplitude must be >= 0"));
        }
        if !(wavelength.is_finite() && wavelength > 0.0) {
            return Err(ModelError::InvalidExcitation("wavelength must be > 0"));
        }
        if !(speed.is_finite() && speed > 0.0) {
            return Err(ModelError::InvalidExcitation("speed must be > 0"));
        }
        Ok(Self { amplitude, wavelength, speed })
    }

    pub fn omega(&self) -> f64 {
        TAU * self.speed / self.wavelength
    }

    /// Phase lag of an axle `offset` metres behind the front one, reduced to
    /// `(-pi, pi]`.
    pub fn phase_lag(&self, offset: f64) -> f64 {
        wrap_angle(-TAU * offset / self.wavelength)
    }

    /// Road displacement under an axle at time `t`.
    pub fn displacement(&self, offset: f64, t: f64) -> f64 {
        self.amplitude * (self.omega() * t - TAU * offset / self.wavelength).sin()
    }

    /// Road vertical velocity under an axle at time `t`.
    pub fn velocity(&self, offset: f64, t: f64) -> f64 {
        let w = self.omega();
        self.amplitude * w * (w * t - TAU * offset / self.wavelength).cos()
    }
}

pub(crate) fn wrap_angle(x: f64) -> f64 {
    // adding 0.0 turns -0.0 into 0.0
    let r = x.rem_euclid(TAU) + 0.0;
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// What drives the model: the road, or only the model's own applied forces
/// at a given angular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Excitation {
    Road(HarmonicRoadExcitation),
    Tone { omega: f64 },
}

impl Excitation {
    pub fn omega(&self) -> f64 {
        match self {
            Excitation::Road(r) => r.omega(),
            Excitation::Tone { omega } => *omega,
        }
    }

    /// Same excitation moved to another frequency. For the road this keeps
    /// amplitude and wavelength and changes the forward speed.
    pub fn retuned(&self, omega: f64) -> Excitation {
        match self {
            Excitation::Road(r) => Excitation::Road(HarmonicRoadExcitation {
                speed: omega * r.wavelength / TAU,
                ..*r
            }),
            Excitation::Tone { .. } => Excitation::Tone { omega },
        }
    }

    pub fn road(&self) -> Option<&HarmonicRoadExcitation> {
        match self {
            Excitation::Road(r) => Some(r),
            Excitation::Tone { .. } => None,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            Excitation::Road(r) => HarmonicRoadExcitation::new(r.amplitude, r.wavelength, r.speed).map(|_| ()),
            Excitation::Tone { omega } if omega.is_finite() && *omega > 0.0 => Ok(()),
            Excitation::Tone { .. } => Err(ModelError::InvalidExcitation("omega must be > 0")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxlePhasor {
    pub coordinate: usize,
    pub offset: f64,
    /// Road velocity under the tyre [m/s RMS].
    pub velocity: Complex64,
    /// Road displacement under the tyre [m RMS].
    pub displacement: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExcitationPhasors {
    pub omega: f64,
    pub axles: Vec<AxlePhasor>,
}

/// Road velocity and displacement phasors under every tyre of `model`.
/// With a [`Excitation::Tone`] the road is still and every phasor is zero.
pub fn excitation_phasors(excitation: &Excitation, model: &SecondOrderModel) -> ExcitationPhasors {
    let omega = excitation.omega();
    let axles = model
        .axles
        .iter()
        .map(|axle| {
            let velocity = match excitation {
                Excitation::Road(r) => {
                    Complex64::from_polar(r.amplitude * omega / SQRT_2, r.phase_lag(axle.offset))
                }
                Excitation::Tone { .. } => Complex64::new(0.0, 0.0),
            };
            AxlePhasor {
                coordinate: axle.coordinate,
                offset: axle.offset,
                velocity,
                displacement: velocity / Complex64::new(0.0, omega),
            }
        })
        .collect();
    ExcitationPhasors { omega, axles }
}

/// Velocity (or displacement) of the middle-axle attachment point `c` of a
/// rigid frame, from the values at the front and rear attachment points.
/// Works on phasors and on time samples alike.
pub fn dependent_velocity_c<T>(v_a: T, v_b: T, geometry: &FrameGeometry) -> T
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<f64, Output = T>,
{
    let l = geometry.l();
    let g = geometry;
    (v_a * g.l_b - v_b * g.l_b + v_b * g.l_d + v_b * g.l_t) * (1.0 / l)
}
