use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use mobility_core::analogy::{translate_force_current, write_netlist, AnalogyError};
use mobility_core::format::sig6;
use mobility_core::model::dependent_velocity_c;
use mobility_core::oracle::{closed_form_velocity_phasors, spectral_velocities, validate as compare, MechanicalReference, SpectralGrid, PHASE_TOL_DEG};
use mobility_core::solver::{analyze, branch_currents, sweep as run_sweep, to_sinusoid, write_sweep_csv};
use mobility_core::{OracleError, SolveError};

use crate::config::{omega_at_speed, parse_config, write_config, ConfigError, RunConfig};

pub enum Failure {
    Config(String),
    Singular(String),
    Validation(String),
    Other(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Config(_) => 2,
            Failure::Singular(_) => 3,
            Failure::Validation(_) => 4,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) | Failure::Singular(m) | Failure::Validation(m) => f.write_str(m),
            Failure::Other(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.0)
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Singular { .. } => Failure::Singular(e.to_string()),
            SolveError::Model(_) | SolveError::BadFrequency(_) => Failure::Config(e.to_string()),
            _ => Failure::Other(e.into()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Singular { .. } => Failure::Singular(e.to_string()),
            OracleError::Model(_) | OracleError::Misaligned { .. } | OracleError::AboveNyquist { .. } | OracleError::BadGrid(_) => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Other(e.into()),
        }
    }
}

impl From<AnalogyError> for Failure {
    fn from(e: AnalogyError) -> Self {
        Failure::Other(e.into())
    }
}

/// Output of one command: the text, where it goes by default, and whether
/// the command counts as failed once the text is written.
pub struct Report {
    text: String,
    default_path: Option<PathBuf>,
    failure: Option<Failure>,
}

impl Report {
    fn stdout(text: String) -> Self {
        Report { text, default_path: None, failure: None }
    }
}

/// The configuration in canonical form.
pub fn canonical(cfg: &RunConfig) -> Result<Report, Failure> {
    Ok(Report::stdout(write_config(cfg)))
}

pub fn run(
    config: &Path,
    output: Option<PathBuf>,
    command: impl FnOnce(&RunConfig) -> Result<Report, Failure>,
) -> Result<(), Failure> {
    let text = fs::read_to_string(config)
        .with_context(|| format!("reading {}", config.display()))
        .map_err(|e| Failure::Config(format!("{e:#}")))?;
    let cfg = parse_config(&text).map_err(|e| Failure::Config(format!("{}: {e}", config.display())))?;
    let report = command(&cfg)?;
    match output.or(report.default_path) {
        Some(path) => fs::write(&path, &report.text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Other)?,
        None => print!("{}", report.text),
    }
    match report.failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

pub fn translate(cfg: &RunConfig, pi: bool, norton: bool) -> Result<Report, Failure> {
    let model = cfg.model.build().map_err(ConfigError::from)?;
    let mut net = translate_force_current(&model, &cfg.excitation)?;
    if norton {
        net = net.to_norton()?;
    }
    if pi {
        net = net.with_pi_couplings();
    }
    Ok(Report { text: write_netlist(&net), default_path: cfg.output.netlist.clone(), failure: None })
}

pub fn solve(cfg: &RunConfig, with_currents: bool) -> Result<Report, Failure> {
    let model = cfg.model.build().map_err(ConfigError::from)?;
    let a = analyze(&model, &cfg.excitation)?;
    let sol = &a.solution;
    let mut out = String::new();
    writeln!(out, "# {} omega = {} rad/s", cfg.model.kind_name(), sig6(sol.omega)).unwrap();
    writeln!(out, "{:<6} {:>13} {:>13} {:>13} {:>13}", "node", "re", "im", "rms", "phase_deg").unwrap();
    let mut rows: Vec<(String, num_complex::Complex64)> =
        sol.node_order.iter().map(|n| n.label.clone()).zip(sol.node_voltages.iter().copied()).collect();
    if let (Some(frame), Some(u_a), Some(u_b)) = (model.frame, sol.voltage("a"), sol.voltage("b")) {
        rows.push(("c".to_string(), dependent_velocity_c(u_a, u_b, &frame)));
    }
    for (label, u) in rows {
        let s = to_sinusoid(u, sol.omega);
        writeln!(out, "{:<6} {:>13} {:>13} {:>13} {:>13}", label, sig6(u.re), sig6(u.im), sig6(s.rms), sig6(s.phase_deg))
            .unwrap();
    }
    if sol.ill_conditioned() {
        eprintln!("warning: admittance matrix condition number {} is large", sig6(sol.condition));
    }
    if with_currents {
        let currents = branch_currents(&a.netlist, sol)?;
        writeln!(out, "\n{:<12} {:<8} {:<8} {:>13} {:>13} {:>13}", "element", "from", "to", "re", "im", "rms").unwrap();
        for e in &currents.elements {
            writeln!(
                out,
                "{:<12} {:<8} {:<8} {:>13} {:>13} {:>13}",
                e.name,
                e.from,
                e.to,
                sig6(e.current.re),
                sig6(e.current.im),
                sig6(e.current.norm())
            )
            .unwrap();
        }
        writeln!(
            out,
            "kcl_residual {} (relative {})",
            sig6(currents.kcl_residual),
            sig6(currents.relative_kcl_residual())
        )
        .unwrap();
    }
    Ok(Report { text: out, default_path: cfg.output.solution.clone(), failure: None })
}

pub fn validate(cfg: &RunConfig, perturb: Option<&str>, tolerance: Option<f64>) -> Result<Report, Failure> {
    let tolerance = tolerance.unwrap_or(cfg.solver.tolerance);
    if !(tolerance > 0.0) {
        return Err(Failure::Config("tolerance must be > 0".into()));
    }
    let model = cfg.model.build().map_err(ConfigError::from)?;
    let mut mech_spec = cfg.model.clone();
    if let Some(p) = perturb {
        let (key, factor) = p
            .split_once('=')
            .and_then(|(k, f)| f.trim().parse::<f64>().ok().map(|f| (k.trim(), f)))
            .ok_or_else(|| Failure::Config(format!("--perturb expects KEY=FACTOR, got `{p}`")))?;
        mech_spec.scale(key, factor)?;
    }
    let mech = mech_spec.build().map_err(ConfigError::from)?;

    let a = analyze(&model, &cfg.excitation)?;
    let closed = closed_form_velocity_phasors(&mech, &cfg.excitation)?;
    let grid = SpectralGrid { periods: cfg.solver.periods, samples: cfg.solver.samples, dt: None };
    let series = spectral_velocities(&mech, &cfg.excitation, &grid)?;
    let frame = model.frame.as_ref();
    let r_closed = compare(&a.solution, &MechanicalReference::from_phasors(&mech, &closed), frame, tolerance)?;
    let r_spec = compare(&a.solution, &MechanicalReference::Series(series), frame, tolerance)?;

    let mut out = String::new();
    writeln!(out, "# {} omega = {} rad/s, tolerance {}", cfg.model.kind_name(), sig6(a.solution.omega), sig6(tolerance))
        .unwrap();
    writeln!(
        out,
        "{:<6} {:>13} {:>13} {:>13} {:>13} {:>13}",
        "coord", "rms_circuit", "rms_closed", "rms_spectral", "err_closed", "err_spectral"
    )
    .unwrap();
    for (c, s) in r_closed.coordinates.iter().zip(&r_spec.coordinates) {
        writeln!(
            out,
            "{:<6} {:>13} {:>13} {:>13} {:>13} {:>13}",
            c.label,
            sig6(c.rms_electrical),
            sig6(c.rms_mechanical),
            sig6(s.rms_mechanical),
            sig6(c.relative_error),
            sig6(s.relative_error)
        )
        .unwrap();
    }
    let max_err = r_closed.max_relative_error.max(r_spec.max_relative_error);
    let max_phase = r_closed.max_phase_delta_deg.max(r_spec.max_phase_delta_deg);
    writeln!(out, "max_relative_error {}", sig6(max_err)).unwrap();
    writeln!(out, "max_phase_delta_deg {} (limit {})", sig6(max_phase), PHASE_TOL_DEG).unwrap();
    let passed = r_closed.passed() && r_spec.passed();
    writeln!(out, "{}", if passed { "PASS" } else { "FAIL" }).unwrap();
    let failure = (!passed).then(|| Failure::Validation(format!("validation failed, max relative error {}", sig6(max_err))));
    Ok(Report { failure, ..Report::stdout(out) })
}

pub fn sweep(
    cfg: &RunConfig,
    from: Option<f64>,
    to: Option<f64>,
    points: Option<usize>,
    speeds: bool,
) -> Result<Report, Failure> {
    let range = cfg.solver.sweep.as_ref();
    let from = from.or(range.map(|r| r.from));
    let to = to.or(range.map(|r| r.to));
    let points = points.or(range.map(|r| r.points));
    let (Some(from), Some(to), Some(points)) = (from, to, points) else {
        return Err(Failure::Config("sweep needs --from, --to and --points (or sweep_* keys in [solver])".into()));
    };
    if !(from > 0.0 && to >= from && points >= 1) || (points == 1 && to != from) {
        return Err(Failure::Config(format!("bad sweep range {from}..{to} with {points} points")));
    }
    let grid: Vec<f64> = (0..points)
        .map(|k| if points == 1 { from } else { from + (to - from) * k as f64 / (points - 1) as f64 })
        .collect();
    let omegas: Vec<f64> = if speeds {
        grid.iter()
            .map(|&kmh| omega_at_speed(&cfg.excitation, kmh))
            .collect::<Option<Vec<f64>>>()
            .ok_or_else(|| Failure::Config("--speeds needs a road excitation".into()))?
    } else {
        grid
    };
    let model = cfg.model.build().map_err(ConfigError::from)?;
    let rows = run_sweep(&model, &cfg.excitation, &omegas)?;
    Ok(Report { text: write_sweep_csv(&rows), default_path: cfg.output.sweep.clone(), failure: None })
}

pub fn timeseries(cfg: &RunConfig, periods: Option<usize>, samples: Option<usize>) -> Result<Report, Failure> {
    let model = cfg.model.build().map_err(ConfigError::from)?;
    let grid = SpectralGrid {
        periods: periods.unwrap_or(cfg.solver.periods),
        samples: samples.unwrap_or(cfg.solver.samples),
        dt: None,
    };
    let series = spectral_velocities(&model, &cfg.excitation, &grid)?;
    Ok(Report { text: series.to_csv(), default_path: cfg.output.timeseries.clone(), failure: None })
}
