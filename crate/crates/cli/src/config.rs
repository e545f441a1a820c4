//! Run configuration: `key = value` lines under `[model]`, `[excitation]`,
//! `[solver]` and `[output]` headers. `#` and `;` start comments. SI units
//! throughout, except the `v_kmh` convenience key.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::path::PathBuf;

use mobility_core::model::{
    build_half_car, build_three_axle, build_two_dof, HalfCarParams, ThreeAxleParams, TwoDofParams,
};
use mobility_core::{Excitation, HarmonicRoadExcitation, ModelError, SecondOrderModel};

#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    TwoDof(TwoDofParams),
    HalfCar(HalfCarParams),
    ThreeAxle(ThreeAxleParams),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRange {
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverSpec {
    /// Relative rms tolerance for `validate`.
    pub tolerance: f64,
    pub sweep: Option<SweepRange>,
    pub periods: usize,
    pub samples: usize,
}

impl Default for SolverSpec {
    fn default() -> Self {
        SolverSpec { tolerance: 1e-3, sweep: None, periods: 10, samples: 1024 }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct OutputSpec {
    pub netlist: Option<PathBuf>,
    pub solution: Option<PathBuf>,
    pub sweep: Option<PathBuf>,
    pub timeseries: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub model: ModelSpec,
    pub excitation: Excitation,
    pub solver: SolverSpec,
    pub output: OutputSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<ModelError> for ConfigError {
    fn from(e: ModelError) -> Self {
        ConfigError(e.to_string())
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

const TWO_DOF_KEYS: [&str; 8] = ["m1", "m2", "k1", "k2", "d1", "d2", "F", "phi"];
const HALF_CAR_KEYS: [&str; 15] = [
    "m", "I_G", "m_ssd", "m_sst", "k_sd", "k_st", "d_sd", "d_st", "k_rd", "k_rt", "d_rd", "d_rt", "l_d", "l_t", "g",
];
const THREE_AXLE_KEYS: [&str; 7] = ["m_ssm", "k_sm", "d_sm", "k_rm", "d_rm", "l_a", "l_b"];

impl ModelSpec {
    pub fn kind_name(&self) -> &'static str {
        match self {
            ModelSpec::TwoDof(_) => "two_dof",
            ModelSpec::HalfCar(_) => "half_car",
            ModelSpec::ThreeAxle(_) => "three_axle",
        }
    }

    fn empty(kind: &str) -> Option<ModelSpec> {
        let two = TwoDofParams { m1: 0.0, m2: 0.0, k1: 0.0, k2: 0.0, d1: 0.0, d2: 0.0, f_amplitude: 0.0, f_phase: 0.0 };
        let half = HalfCarParams {
            m: 0.0, i_g: 0.0, m_ssd: 0.0, m_sst: 0.0, k_sd: 0.0, k_st: 0.0, d_sd: 0.0, d_st: 0.0,
            k_rd: 0.0, k_rt: 0.0, d_rd: 0.0, d_rt: 0.0, l_d: 0.0, l_t: 0.0, g: 9.81,
        };
        match kind {
            "two_dof" => Some(ModelSpec::TwoDof(two)),
            "half_car" => Some(ModelSpec::HalfCar(half)),
            "three_axle" => Some(ModelSpec::ThreeAxle(ThreeAxleParams {
                half_car: half,
                m_ssm: 0.0, k_sm: 0.0, d_sm: 0.0, k_rm: 0.0, d_rm: 0.0, l_a: 0.0, l_b: 0.0,
            })),
            _ => None,
        }
    }

    /// Every numeric parameter with its key, in canonical order.
    pub fn fields_mut(&mut self) -> Vec<(&'static str, &mut f64)> {
        fn half(h: &mut HalfCarParams) -> Vec<&mut f64> {
            vec![
                &mut h.m, &mut h.i_g, &mut h.m_ssd, &mut h.m_sst, &mut h.k_sd, &mut h.k_st, &mut h.d_sd,
                &mut h.d_st, &mut h.k_rd, &mut h.k_rt, &mut h.d_rd, &mut h.d_rt, &mut h.l_d, &mut h.l_t, &mut h.g,
            ]
        }
        match self {
            ModelSpec::TwoDof(p) => TWO_DOF_KEYS
                .into_iter()
                .zip([
                    &mut p.m1, &mut p.m2, &mut p.k1, &mut p.k2, &mut p.d1, &mut p.d2, &mut p.f_amplitude,
                    &mut p.f_phase,
                ])
                .collect(),
            ModelSpec::HalfCar(h) => HALF_CAR_KEYS.into_iter().zip(half(h)).collect(),
            ModelSpec::ThreeAxle(p) => {
                let mut v: Vec<(&'static str, &mut f64)> =
                    HALF_CAR_KEYS.into_iter().zip(half(&mut p.half_car)).collect();
                v.extend(THREE_AXLE_KEYS.into_iter().zip([
                    &mut p.m_ssm, &mut p.k_sm, &mut p.d_sm, &mut p.k_rm, &mut p.d_rm, &mut p.l_a, &mut p.l_b,
                ]));
                v
            }
        }
    }

    fn fields(&self) -> Vec<(&'static str, f64)> {
        let mut copy = self.clone();
        copy.fields_mut().into_iter().map(|(k, v)| (k, *v)).collect()
    }

    pub fn build(&self) -> Result<SecondOrderModel, ModelError> {
        match self {
            ModelSpec::TwoDof(p) => build_two_dof(p),
            ModelSpec::HalfCar(p) => build_half_car(p),
            ModelSpec::ThreeAxle(p) => build_three_axle(p),
        }
    }

    /// Multiplies the parameter `key` by `factor`.
    pub fn scale(&mut self, key: &str, factor: f64) -> Result<(), ConfigError> {
        let kind = self.kind_name();
        match self.fields_mut().into_iter().find(|(k, _)| *k == key) {
            Some((_, v)) => {
                *v *= factor;
                Ok(())
            }
            None => err(format!("no parameter `{key}` in a {kind} model")),
        }
    }

    fn wheelbase(&self) -> Option<f64> {
        match self {
            ModelSpec::TwoDof(_) => None,
            ModelSpec::HalfCar(h) => Some(h.l()),
            ModelSpec::ThreeAxle(p) => Some(p.half_car.l()),
        }
    }
}

struct Entry {
    value: String,
    line: usize,
}

type Sections = BTreeMap<String, BTreeMap<String, Entry>>;

const SECTIONS: [&str; 4] = ["model", "excitation", "solver", "output"];

fn split(text: &str) -> Result<Sections, ConfigError> {
    let mut sections: Sections = BTreeMap::new();
    let mut current: Option<String> = None;
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split(['#', ';']).next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(name) = body.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let name = name.trim();
            if !SECTIONS.contains(&name) {
                return err(format!("line {line}: unknown section [{name}]"));
            }
            if sections.contains_key(name) {
                return err(format!("line {line}: section [{name}] appears twice"));
            }
            sections.insert(name.to_string(), BTreeMap::new());
            current = Some(name.to_string());
            continue;
        }
        let Some((key, value)) = body.split_once('=') else {
            return err(format!("line {line}: expected `key = value`, got `{body}`"));
        };
        let Some(section) = &current else {
            return err(format!("line {line}: `{}` appears before any section header", key.trim()));
        };
        let key = key.trim().to_string();
        let entries = sections.get_mut(section).unwrap();
        if entries.contains_key(&key) {
            return err(format!("line {line}: key `{key}` repeated in [{section}]"));
        }
        entries.insert(key, Entry { value: value.trim().to_string(), line });
    }
    Ok(sections)
}

struct Section<'a> {
    name: &'static str,
    entries: BTreeMap<String, Entry>,
    _marker: std::marker::PhantomData<&'a ()>,
}

impl Section<'_> {
    fn take(sections: &mut Sections, name: &'static str) -> Self {
        Section { name, entries: sections.remove(name).unwrap_or_default(), _marker: Default::default() }
    }

    fn text(&mut self, key: &str) -> Option<(String, usize)> {
        self.entries.remove(key).map(|e| (e.value, e.line))
    }

    fn number(&mut self, key: &str) -> Result<Option<f64>, ConfigError> {
        match self.text(key) {
            None => Ok(None),
            Some((v, line)) => match v.parse::<f64>() {
                Ok(x) if x.is_finite() => Ok(Some(x)),
                _ => err(format!("line {line}: `{key}` must be a finite number, got `{v}`")),
            },
        }
    }

    fn required(&mut self, key: &str) -> Result<f64, ConfigError> {
        match self.number(key)? {
            Some(x) => Ok(x),
            None => err(format!("missing key `{key}` in [{}]", self.name)),
        }
    }

    fn count(&mut self, key: &str) -> Result<Option<usize>, ConfigError> {
        match self.text(key) {
            None => Ok(None),
            Some((v, line)) => v
                .parse::<usize>()
                .map(Some)
                .map_err(|_| ConfigError(format!("line {line}: `{key}` must be a non-negative integer, got `{v}`"))),
        }
    }

    fn finish(self) -> Result<(), ConfigError> {
        match self.entries.iter().min_by_key(|(_, e)| e.line) {
            Some((key, e)) => err(format!("line {}: unknown key `{key}` in [{}]", e.line, self.name)),
            None => Ok(()),
        }
    }
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut sections = split(text)?;
    if !sections.contains_key("model") {
        return err("missing section [model]");
    }

    let mut sec = Section::take(&mut sections, "model");
    let Some((kind, line)) = sec.text("kind") else {
        return err("missing key `kind` in [model]");
    };
    let Some(mut model) = ModelSpec::empty(&kind) else {
        return err(format!("line {line}: unknown model kind `{kind}` (two_dof, half_car, three_axle)"));
    };
    for (key, slot) in model.fields_mut() {
        *slot = match (key, sec.number(key)?) {
            (_, Some(x)) => x,
            ("g", None) => 9.81,
            (_, None) => return err(format!("missing key `{key}` in [model]")),
        };
    }
    if let Some(l) = sec.number("l")? {
        let wheelbase = model.wheelbase().ok_or_else(|| ConfigError("unknown key `l` in [model]".into()))?;
        if (l - wheelbase).abs() > 1e-9 * wheelbase.abs().max(1e-300) {
            return err(format!("`l` = {l} does not equal l_d + l_t = {wheelbase}"));
        }
    }
    sec.finish()?;
    model.build()?;

    let mut sec = Section::take(&mut sections, "excitation");
    let excitation = match model {
        ModelSpec::TwoDof(_) => Excitation::Tone { omega: sec.required("omega")? },
        _ => {
            let amplitude = sec.required("Y")?;
            let wavelength = sec.required("lambda")?;
            let speed = match (sec.number("v")?, sec.number("v_kmh")?) {
                (Some(v), None) => v,
                (None, Some(kmh)) => kmh / 3.6,
                (Some(_), Some(_)) => return err("give either `v` or `v_kmh` in [excitation], not both"),
                (None, None) => return err("missing key `v` in [excitation]"),
            };
            Excitation::Road(HarmonicRoadExcitation::new(amplitude, wavelength, speed)?)
        }
    };
    excitation.validate()?;
    sec.finish()?;

    let mut sec = Section::take(&mut sections, "solver");
    let defaults = SolverSpec::default();
    let tolerance = sec.number("tolerance")?.unwrap_or(defaults.tolerance);
    if !(tolerance > 0.0) {
        return err("`tolerance` must be > 0");
    }
    let sweep = match (sec.number("sweep_from")?, sec.number("sweep_to")?, sec.count("sweep_points")?) {
        (None, None, None) => None,
        (Some(from), Some(to), Some(points)) => Some(SweepRange { from, to, points }),
        _ => return err("`sweep_from`, `sweep_to` and `sweep_points` go together in [solver]"),
    };
    let solver = SolverSpec {
        tolerance,
        sweep,
        periods: sec.count("periods")?.unwrap_or(defaults.periods),
        samples: sec.count("samples")?.unwrap_or(defaults.samples),
    };
    sec.finish()?;

    let mut sec = Section::take(&mut sections, "output");
    let mut path = |key: &str| sec.text(key).map(|(v, _)| PathBuf::from(v));
    let output = OutputSpec {
        netlist: path("netlist"),
        solution: path("solution"),
        sweep: path("sweep"),
        timeseries: path("timeseries"),
    };
    sec.finish()?;

    Ok(RunConfig { model, excitation, solver, output })
}

/// Canonical text form; parses back to an equal config.
pub fn write_config(cfg: &RunConfig) -> String {
    let mut out = String::from("[model]\n");
    writeln!(out, "kind = {}", cfg.model.kind_name()).unwrap();
    for (key, value) in cfg.model.fields() {
        writeln!(out, "{key} = {value}").unwrap();
    }
    out.push_str("\n[excitation]\n");
    match &cfg.excitation {
        Excitation::Tone { omega } => writeln!(out, "omega = {omega}").unwrap(),
        Excitation::Road(r) => {
            writeln!(out, "Y = {}\nlambda = {}\nv = {}", r.amplitude, r.wavelength, r.speed).unwrap();
        }
    }
    out.push_str("\n[solver]\n");
    let s = &cfg.solver;
    writeln!(out, "tolerance = {}", s.tolerance).unwrap();
    if let Some(r) = &s.sweep {
        writeln!(out, "sweep_from = {}\nsweep_to = {}\nsweep_points = {}", r.from, r.to, r.points).unwrap();
    }
    writeln!(out, "periods = {}\nsamples = {}", s.periods, s.samples).unwrap();
    let o = &cfg.output;
    let paths = [("netlist", &o.netlist), ("solution", &o.solution), ("sweep", &o.sweep), ("timeseries", &o.timeseries)];
    if paths.iter().any(|(_, p)| p.is_some()) {
        out.push_str("\n[output]\n");
        for (key, p) in paths {
            if let Some(p) = p {
                writeln!(out, "{key} = {}", p.display()).unwrap();
            }
        }
    }
    out
}

/// Angular frequency of a vehicle moving at `kmh` over the configured road.
pub fn omega_at_speed(excitation: &Excitation, kmh: f64) -> Option<f64> {
    excitation.road().map(|r| TAU * (kmh / 3.6) / r.wavelength)
}
