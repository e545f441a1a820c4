use std::f64::consts::{SQRT_2, TAU};

use num_complex::Complex64;

use super::fft::transform;
use super::{frequency_response, OracleError};
use crate::format::sig6;
use crate::model::{dependent_velocity_c, Excitation, SecondOrderModel};

/// Sampling window: `samples` points spaced `dt` apart. Without an explicit
/// `dt` the window spans exactly `periods` excitation periods.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralGrid {
    pub periods: usize,
    pub samples: usize,
    pub dt: Option<f64>,
}

impl Default for SpectralGrid {
    fn default() -> Self {
        SpectralGrid { periods: 10, samples: 1024, dt: None }
    }
}

impl SpectralGrid {
    /// Time step and bin index of the tone at `omega`.
    pub fn resolve(&self, omega: f64) -> Result<(f64, usize), OracleError> {
        if self.samples < 4 {
            return Err(OracleError::BadGrid("need at least 4 samples"));
        }
        let dt = match self.dt {
            Some(dt) if dt.is_finite() && dt > 0.0 => dt,
            Some(_) => return Err(OracleError::BadGrid("dt must be > 0")),
            None if self.periods == 0 => return Err(OracleError::BadGrid("periods must be > 0")),
            None => self.periods as f64 * TAU / omega / self.samples as f64,
        };
        let cycles = omega * dt * self.samples as f64 / TAU;
        let bin = cycles.round();
        if bin < 1.0 || (cycles - bin).abs() > 1e-9 * cycles.max(1.0) {
            return Err(OracleError::Misaligned { cycles });
        }
        let bin = bin as usize;
        if 2 * bin >= self.samples {
            return Err(OracleError::AboveNyquist { bin, samples: self.samples });
        }
        Ok((dt, bin))
    }
}

/// Uniformly sampled velocities, one column per label.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub dt: f64,
    pub omega: f64,
    pub labels: Vec<String>,
    /// `samples[k][i]` is coordinate `k` at `t = i dt` [m/s].
    pub samples: Vec<Vec<f64>>,
    pub n_samples: usize,
    /// Largest imaginary part left by the inverse transform, relative to
    /// the largest sample magnitude.
    pub imag_residue: f64,
}

impl TimeSeries {
    pub fn column(&self, label: &str) -> Option<&[f64]> {
        self.labels.iter().position(|l| l == label).map(|k| self.samples[k].as_slice())
    }

    pub fn rms(&self, label: &str) -> Option<f64> {
        self.column(label).map(rms)
    }

    /// Phasor of the component at `omega`, by projecting the samples.
    /// Exact when the window holds a whole number of periods.
    pub fn phasor(&self, label: &str) -> Option<Complex64> {
        let x = self.column(label)?;
        let sum: Complex64 = x
            .iter()
            .enumerate()
            .map(|(i, &v)| v * Complex64::from_polar(1.0, -self.omega * self.dt * i as f64))
            .sum();
        Some(sum * (SQRT_2 / self.n_samples as f64))
    }

    /// `t_s,<labels>` rows followed by an `rms` row.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t_s");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for i in 0..self.n_samples {
            out.push_str(&sig6(i as f64 * self.dt));
            for col in &self.samples {
                out.push(',');
                out.push_str(&sig6(col[i]));
            }
            out.push('\n');
        }
        out.push_str("rms");
        for col in &self.samples {
            out.push(',');
            out.push_str(&sig6(rms(col)));
        }
        out.push('\n');
        out
    }
}

fn rms(x: &[f64]) -> f64 {
    (x.iter().map(|v| v * v).sum::<f64>() / x.len() as f64).sqrt()
}

/// Harmonic part of the generalized force at time `t`.
fn sample_force(model: &SecondOrderModel, excitation: &Excitation, t: f64, out: &mut [f64]) {
    out.iter_mut().for_each(|q| *q = 0.0);
    if let Some(road) = excitation.road() {
        for axle in &model.axles {
            out[axle.coordinate] +=
                axle.d_r * road.velocity(axle.offset, t) + axle.k_r * road.displacement(axle.offset, t);
        }
    }
    let w = excitation.omega();
    for f in &model.forces {
        out[f.coordinate] += SQRT_2 * (f.phasor * Complex64::from_polar(1.0, w * t)).re;
    }
}

/// Steady-state velocities by discrete Fourier filtering of the sampled
/// excitation. The DC and Nyquist bins are dropped; the negative-frequency
/// half is rebuilt as the conjugate of the positive half. Models with a
/// rigid frame get an extra column `c`.
pub fn spectral_velocities(
    model: &SecondOrderModel,
    excitation: &Excitation,
    grid: &SpectralGrid,
) -> Result<TimeSeries, OracleError> {
    excitation.validate()?;
    let omega = excitation.omega();
    let (dt, _) = grid.resolve(omega)?;
    let n = grid.samples;
    let dof = model.dof();

    let mut spectra = vec![vec![Complex64::new(0.0, 0.0); n]; dof];
    let mut q = vec![0.0; dof];
    for i in 0..n {
        sample_force(model, excitation, i as f64 * dt, &mut q);
        for (p, &v) in q.iter().enumerate() {
            spectra[p][i] = Complex64::new(v, 0.0);
        }
    }
    for s in spectra.iter_mut() {
        transform(s, false);
    }

    let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; dof];
    let bin_step = TAU / (n as f64 * dt);
    for k in 1..n.div_ceil(2) {
        let wk = k as f64 * bin_step;
        let h = frequency_response(model, wk)?;
        let jw = Complex64::new(0.0, wk);
        for r in 0..dof {
            let v: Complex64 = (0..dof).map(|c| h[(r, c)] * spectra[c][k]).sum::<Complex64>() * jw;
            out[r][k] = v;
            out[r][n - k] = v.conj();
        }
    }

    let mut imag: f64 = 0.0;
    let mut peak: f64 = 0.0;
    let mut samples = Vec::with_capacity(dof + 1);
    for mut s in out {
        transform(&mut s, true);
        for z in &s {
            imag = imag.max(z.im.abs());
            peak = peak.max(z.norm());
        }
        samples.push(s.iter().map(|z| z.re).collect::<Vec<f64>>());
    }
    let mut labels = model.labels.clone();
    if let (Some(frame), Some(a), Some(b)) = (model.frame, model.label_index("a"), model.label_index("b")) {
        let c = samples[a]
            .iter()
            .zip(&samples[b])
            .map(|(&va, &vb)| dependent_velocity_c(va, vb, &frame))
            .collect();
        samples.push(c);
        labels.push("c".to_string());
    }
    Ok(TimeSeries {
        dt,
        omega,
        labels,
        samples,
        n_samples: n,
        imag_residue: if peak > 0.0 { imag / peak } else { imag },
    })
}
