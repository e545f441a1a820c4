use std::f64::consts::SQRT_2;

use num_complex::Complex64;

/// RMS amplitude and phase of one harmonic signal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidRecord {
    pub rms: f64,
    /// Phase in degrees, in `(-180, 180]`.
    pub phase_deg: f64,
    pub omega: f64,
}

impl SinusoidRecord {
    /// `sqrt(2) rms sin(w t + phase)`.
    pub fn sample(&self, t: f64) -> f64 {
        SQRT_2 * self.rms * (self.omega * t + self.phase_deg.to_radians()).sin()
    }

    pub fn peak(&self) -> f64 {
        SQRT_2 * self.rms
    }
}

pub fn to_sinusoid(phasor: Complex64, omega: f64) -> SinusoidRecord {
    let mut phase_deg = phasor.arg().to_degrees();
    if phase_deg <= -180.0 {
        phase_deg += 360.0;
    }
    SinusoidRecord { rms: phasor.norm(), phase_deg, omega }
}
