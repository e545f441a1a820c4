//! Frequency sweeps of the analogue network.

use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{analyze, to_sinusoid, SolveError};
use crate::format::sig6;
use crate::model::{Excitation, SecondOrderModel};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub omega: f64,
    /// Coordinate label and velocity phasor, or why this row failed.
    pub outcome: Result<Vec<(String, Complex64)>, SolveError>,
}

/// Solves the model at every angular frequency in `omegas`, re-tuning the
/// excitation for each. Rows are independent: one failing does not stop
/// the others. Output order follows `omegas`.
pub fn sweep(
    model: &SecondOrderModel,
    excitation: &Excitation,
    omegas: &[f64],
) -> Result<Vec<SweepRow>, SolveError> {
    if let Some(&bad) = omegas.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(SolveError::BadFrequency(bad));
    }
    Ok(omegas
        .par_iter()
        .map(|&omega| {
            let outcome = analyze(model, &excitation.retuned(omega)).map(|a| {
                let u = a.solution.coordinate_voltages(&a.netlist);
                model.labels.iter().cloned().zip(u.iter().copied()).collect()
            });
            SweepRow { omega, outcome }
        })
        .collect())
}

/// CSV with one line per node and frequency:
/// `omega_rad_s,node,rms,phase_deg,re,im`. A failed row is written as a
/// single line with node `ERROR` and the message in place of the numbers.
pub fn write_sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("omega_rad_s,node,rms,phase_deg,re,im\n");
    for row in rows {
        match &row.outcome {
            Ok(values) => {
                for (label, u) in values {
                    let s = to_sinusoid(*u, row.omega);
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        sig6(row.omega),
                        label,
                        sig6(s.rms),
                        sig6(s.phase_deg),
                        sig6(u.re),
                        sig6(u.im)
                    );
                }
            }
            Err(e) => {
                let _ = writeln!(out, "{},ERROR,\"{}\",,,", sig6(row.omega), e.to_string().replace('"', "'"));
            }
        }
    }
    out
}
