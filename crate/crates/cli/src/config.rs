//! Flat `key = value` configuration files.
//!
//! One assignment per line, `#` starts a comment, every key has a
//! default, unknown keys are hard errors carrying the offending line
//! number. `--set key=value` overrides are validated through the same
//! path.

use std::collections::BTreeMap;
use std::fmt;

use hallsim_core::dynamics::{
    CurrentTag, GaugeInit, GaugeStepper, PsiInit, PsiStepper, SigmaMode, SimConfig,
};
use hallsim_core::params::{PhysicalParams, UnitScales, UnitSystem};
use hallsim_core::transport::{RegimeKind, RegimeThresholds, SweepVariable};

#[derive(Debug)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config line {}: {}: {}", line, self.key, self.message),
            None => write!(f, "config: {}: {}", self.key, self.message),
        }
    }
}

impl std::error::Error for ConfigError {}

/// Sweep grid specification: `log:<lo>:<hi>:<n>`, `lin:<lo>:<hi>:<n>`,
/// or `list:v1,v2,...`.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSpec {
    Log { lo: f64, hi: f64, n: usize },
    Lin { lo: f64, hi: f64, n: usize },
    List(Vec<f64>),
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            SweepSpec::Log { lo, hi, n } => {
                if *n == 1 {
                    return vec![*lo];
                }
                let llo = lo.ln();
                let lhi = hi.ln();
                (0..*n)
                    .map(|k| (llo + (lhi - llo) * k as f64 / (*n - 1) as f64).exp())
                    .collect()
            }
            SweepSpec::Lin { lo, hi, n } => {
                if *n == 1 {
                    return vec![*lo];
                }
                (0..*n)
                    .map(|k| lo + (hi - lo) * k as f64 / (*n - 1) as f64)
                    .collect()
            }
            SweepSpec::List(values) => values.clone(),
        }
    }
}

/// Which run the `simulate`/`edge` subcommands perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Auto,
    Classical,
    Quantum,
}

/// Snapshot serialization of the final state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SnapshotFormat {
    Json,
    Binary,
    None,
}

/// Radial envelope spec for the quantize command.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnvelopeSpec {
    Gaussian { width: f64 },
    Bump { width: f64 },
}

/// Fully validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub units: UnitSystem,
    pub unit_scales: UnitScales,
    /// Parameters in natural units (converted at the I/O boundary when
    /// `units = si`).
    pub params: PhysicalParams,
    pub thresholds: RegimeThresholds,
    pub b_sweep: SweepSpec,
    pub sweep_variable: SweepVariable,
    pub seed: u64,

    pub nx: usize,
    pub ny: usize,
    pub spacing: f64,
    pub dt: Option<f64>,
    pub steps: usize,
    pub stability_factor: f64,
    pub psi_stepper: PsiStepper,
    pub gauge_stepper: GaugeStepper,
    pub psi_init: PsiInit,
    pub gauge_init: GaugeInit,
    pub sigma_mode: SigmaMode,
    pub sigma_h_override: Option<f64>,
    pub regime_override: Option<RegimeKind>,
    pub drive_sign: f64,
    pub evolve_gauge: Option<bool>,
    pub current_tag: Option<CurrentTag>,
    pub measure_margin: Option<usize>,
    pub taper_rings: usize,
    pub diag_every: usize,
    pub run_mode: RunMode,
    pub snapshot_format: SnapshotFormat,
    pub breakdown_threshold: f64,

    pub sigma_in: f64,
    pub l_constant: f64,
    pub phi_points: usize,
    pub r_points: usize,
    pub envelope: EnvelopeSpec,
    pub comm_half_width: f64,
    pub comm_spacing: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            units: UnitSystem::Natural,
            unit_scales: UnitScales::default(),
            params: PhysicalParams::natural(1.0, 1.0, 1.0).expect("default params valid"),
            thresholds: RegimeThresholds::default(),
            b_sweep: SweepSpec::Log {
                lo: 0.1,
                hi: 100.0,
                n: 50,
            },
            sweep_variable: SweepVariable::Field,
            seed: 0,
            nx: 64,
            ny: 64,
            spacing: 0.1,
            dt: None,
            steps: 200,
            stability_factor: 0.7,
            psi_stepper: PsiStepper::CrankNicolson,
            gauge_stepper: GaugeStepper::Euler,
            psi_init: PsiInit::PlaneWave { kx: 0.0, ky: 0.0 },
            gauge_init: GaugeInit::Zero,
            sigma_mode: SigmaMode::Continuous,
            sigma_h_override: None,
            regime_override: None,
            drive_sign: 1.0,
            evolve_gauge: None,
            current_tag: None,
            measure_margin: None,
            taper_rings: 2,
            diag_every: 1,
            run_mode: RunMode::Auto,
            snapshot_format: SnapshotFormat::Json,
            breakdown_threshold: 0.1,
            sigma_in: 1.0,
            l_constant: 1.0,
            phi_points: 257,
            r_points: 9,
            envelope: EnvelopeSpec::Gaussian { width: 0.3 },
            comm_half_width: 2.0,
            comm_spacing: 1e-3,
        }
    }
}

pub const KNOWN_KEYS: &[&str] = &[
    "units",
    "length_scale",
    "e",
    "hbar",
    "mass",
    "tau",
    "density",
    "B",
    "regime_classical",
    "regime_quantum",
    "B_sweep",
    "sweep_variable",
    "seed",
    "nx",
    "ny",
    "spacing",
    "dt",
    "steps",
    "stability_factor",
    "psi_stepper",
    "gauge_stepper",
    "initial_psi",
    "initial_a",
    "sigma_h_mode",
    "sigma_h_override",
    "regime_override",
    "drive_sign",
    "evolve_gauge",
    "current_tag",
    "measure_margin",
    "taper_rings",
    "diag_every",
    "run_mode",
    "snapshot_format",
    "breakdown_threshold",
    "sigma_in",
    "l_constant",
    "phi_points",
    "r_points",
    "envelope",
    "comm_half_width",
    "comm_spacing",
];

fn err(line: Option<usize>, key: &str, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

fn parse_f64(line: Option<usize>, key: &str, raw: &str) -> Result<f64, ConfigError> {
    raw.parse::<f64>()
        .map_err(|_| err(line, key, format!("expected a number, got `{raw}`")))
}

fn parse_usize(line: Option<usize>, key: &str, raw: &str) -> Result<usize, ConfigError> {
    raw.parse::<usize>()
        .map_err(|_| err(line, key, format!("expected a non-negative integer, got `{raw}`")))
}

fn parse_parts<'a>(
    line: Option<usize>,
    key: &str,
    raw: &'a str,
    head: &str,
    n_args: usize,
) -> Result<Vec<&'a str>, ConfigError> {
    let parts: Vec<&str> = raw.split(':').collect();
    if parts.len() != n_args + 1 || parts[0] != head {
        return Err(err(
            line,
            key,
            format!("expected `{head}` with {n_args} `:`-separated arguments, got `{raw}`"),
        ));
    }
    Ok(parts[1..].to_vec())
}

/// Raw assignments with their line numbers, in file order.
fn tokenize(text: &str) -> Result<Vec<(usize, String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let stripped = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        };
        let trimmed = stripped.trim();
        if trimmed.is_empty() {
            continue;
        }
        let Some(eq) = trimmed.find('=') else {
            return Err(err(
                Some(line_no),
                trimmed,
                "expected `key = value`".to_string(),
            ));
        };
        let key = trimmed[..eq].trim().to_string();
        let value = trimmed[eq + 1..].trim().to_string();
        if key.is_empty() {
            return Err(err(Some(line_no), "<empty>", "missing key before `=`"));
        }
        if value.is_empty() {
            return Err(err(Some(line_no), &key, "missing value after `=`"));
        }
        out.push((line_no, key, value));
    }
    Ok(out)
}

/// Parse a config file plus `--set` overrides into a validated RunConfig.
pub fn parse_config(text: &str, overrides: &[(String, String)]) -> Result<RunConfig, ConfigError> {
    let mut assignments: Vec<(Option<usize>, String, String)> = tokenize(text)?
        .into_iter()
        .map(|(l, k, v)| (Some(l), k, v))
        .collect();
    for (k, v) in overrides {
        assignments.push((None, k.clone(), v.clone()));
    }

    // Reject unknown keys first, with their locations.
    for (line, key, _) in &assignments {
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(err(*line, key, "unknown key"));
        }
    }

    // Later assignments win; remember the line for error reporting.
    let mut map: BTreeMap<String, (Option<usize>, String)> = BTreeMap::new();
    for (line, key, value) in assignments {
        map.insert(key, (line, value));
    }

    let mut cfg = RunConfig::default();
    let mut raw_params = (1.0f64, 1.0f64, 1.0f64, 1.0f64, 1.0f64, 1.0f64);

    for (key, (line, value)) in &map {
        let line = *line;
        let v = value.as_str();
        match key.as_str() {
            "units" => {
                cfg.units = match v {
                    "natural" => UnitSystem::Natural,
                    "si" => UnitSystem::Si,
                    _ => return Err(err(line, key, format!("expected natural|si, got `{v}`"))),
                }
            }
            "length_scale" => {
                let s = parse_f64(line, key, v)?;
                if !s.is_finite() || s <= 0.0 {
                    return Err(err(line, key, "length scale must be positive"));
                }
                cfg.unit_scales.length = s;
            }
            "e" => raw_params.0 = parse_f64(line, key, v)?,
            "hbar" => raw_params.1 = parse_f64(line, key, v)?,
            "mass" => raw_params.2 = parse_f64(line, key, v)?,
            "tau" => raw_params.3 = parse_f64(line, key, v)?,
            "density" => raw_params.4 = parse_f64(line, key, v)?,
            "B" => raw_params.5 = parse_f64(line, key, v)?,
            "regime_classical" => cfg.thresholds.classical = parse_f64(line, key, v)?,
            "regime_quantum" => cfg.thresholds.quantum = parse_f64(line, key, v)?,
            "B_sweep" => {
                cfg.b_sweep = if let Some(rest) = v.strip_prefix("list:") {
                    let mut values = Vec::new();
                    for piece in rest.split(',') {
                        values.push(parse_f64(line, key, piece.trim())?);
                    }
                    SweepSpec::List(values)
                } else if v.starts_with("log:") {
                    let parts = parse_parts(line, key, v, "log", 3)?;
                    SweepSpec::Log {
                        lo: parse_f64(line, key, parts[0])?,
                        hi: parse_f64(line, key, parts[1])?,
                        n: parse_usize(line, key, parts[2])?,
                    }
                } else if v.starts_with("lin:") {
                    let parts = parse_parts(line, key, v, "lin", 3)?;
                    SweepSpec::Lin {
                        lo: parse_f64(line, key, parts[0])?,
                        hi: parse_f64(line, key, parts[1])?,
                        n: parse_usize(line, key, parts[2])?,
                    }
                } else {
                    return Err(err(
                        line,
                        key,
                        format!("expected log:lo:hi:n, lin:lo:hi:n or list:..., got `{v}`"),
                    ));
                };
            }
            "sweep_variable" => {
                cfg.sweep_variable = match v {
                    "field" => SweepVariable::Field,
                    "mean_free_time" => SweepVariable::MeanFreeTime,
                    _ => {
                        return Err(err(
                            line,
                            key,
                            format!("expected field|mean_free_time, got `{v}`"),
                        ))
                    }
                }
            }
            "seed" => {
                cfg.seed = v
                    .parse::<u64>()
                    .map_err(|_| err(line, key, format!("expected an integer, got `{v}`")))?
            }
            "nx" => cfg.nx = parse_usize(line, key, v)?,
            "ny" => cfg.ny = parse_usize(line, key, v)?,
            "spacing" => cfg.spacing = parse_f64(line, key, v)?,
            "dt" => cfg.dt = Some(parse_f64(line, key, v)?),
            "steps" => cfg.steps = parse_usize(line, key, v)?,
            "stability_factor" => cfg.stability_factor = parse_f64(line, key, v)?,
            "psi_stepper" => {
                cfg.psi_stepper = match v {
                    "crank_nicolson" => PsiStepper::CrankNicolson,
                    "rk4" => PsiStepper::Rk4,
                    _ => {
                        return Err(err(
                            line,
                            key,
                            format!("expected crank_nicolson|rk4, got `{v}`"),
                        ))
                    }
                }
            }
            "gauge_stepper" => {
                cfg.gauge_stepper = match v {
                    "euler" => GaugeStepper::Euler,
                    "heun" => GaugeStepper::Heun,
                    _ => return Err(err(line, key, format!("expected euler|heun, got `{v}`"))),
                }
            }
            "initial_psi" => {
                cfg.psi_init = if v == "ground_mode" {
                    PsiInit::GroundMode
                } else if v.starts_with("plane_wave:") {
                    let parts = parse_parts(line, key, v, "plane_wave", 2)?;
                    PsiInit::PlaneWave {
                        kx: parse_f64(line, key, parts[0])?,
                        ky: parse_f64(line, key, parts[1])?,
                    }
                } else if v.starts_with("gaussian:") {
                    let parts = parse_parts(line, key, v, "gaussian", 5)?;
                    PsiInit::GaussianPacket {
                        x0: parse_f64(line, key, parts[0])?,
                        y0: parse_f64(line, key, parts[1])?,
                        width: parse_f64(line, key, parts[2])?,
                        kx: parse_f64(line, key, parts[3])?,
                        ky: parse_f64(line, key, parts[4])?,
                    }
                } else {
                    return Err(err(
                        line,
                        key,
                        format!(
                            "expected plane_wave:kx:ky, gaussian:x0:y0:width:kx:ky or ground_mode, got `{v}`"
                        ),
                    ));
                };
            }
            "initial_a" => {
                cfg.gauge_init = if v == "zero" {
                    GaugeInit::Zero
                } else if v.starts_with("uniform_e:") {
                    let parts = parse_parts(line, key, v, "uniform_e", 2)?;
                    GaugeInit::UniformE {
                        ex: parse_f64(line, key, parts[0])?,
                        ey: parse_f64(line, key, parts[1])?,
                    }
                } else if v.starts_with("pure_gauge:") {
                    let parts = parse_parts(line, key, v, "pure_gauge", 2)?;
                    GaugeInit::PureGauge {
                        amplitude: parse_f64(line, key, parts[0])?,
                        width: parse_f64(line, key, parts[1])?,
                    }
                } else {
                    return Err(err(
                        line,
                        key,
                        format!(
                            "expected zero, uniform_e:Ex:Ey or pure_gauge:amplitude:width, got `{v}`"
                        ),
                    ));
                };
            }
            "sigma_h_mode" => {
                cfg.sigma_mode = match v {
                    "continuous" => SigmaMode::Continuous,
                    "quantized" => SigmaMode::Quantized,
                    _ => {
                        return Err(err(
                            line,
                            key,
                            format!("expected continuous|quantized, got `{v}`"),
                        ))
                    }
                }
            }
            "sigma_h_override" => cfg.sigma_h_override = Some(parse_f64(line, key, v)?),
            "regime_override" => {
                cfg.regime_override = Some(match v {
                    "classical" => RegimeKind::Classical,
                    "crossover" => RegimeKind::Crossover,
                    "quantum" => RegimeKind::Quantum,
                    _ => {
                        return Err(err(
                            line,
                            key,
                            format!("expected classical|crossover|quantum, got `{v}`"),
                        ))
                    }
                })
            }
            "drive_sign" => {
                cfg.drive_sign = parse_f64(line, key, v)?;
                if cfg.drive_sign != 1.0 && cfg.drive_sign != -1.0 {
                    return Err(err(line, key, "must be 1 or -1"));
                }
            }
            "evolve_gauge" => {
                cfg.evolve_gauge = match v {
                    "auto" => None,
                    "true" => Some(true),
                    "false" => Some(false),
                    _ => {
                        return Err(err(line, key, format!("expected auto|true|false, got `{v}`")))
                    }
                }
            }
            "current_tag" => {
                cfg.current_tag = match v {
                    "auto" => None,
                    "with_gauge" => Some(CurrentTag::WithGaugeTerm),
                    "free" => Some(CurrentTag::Free),
                    _ => {
                        return Err(err(
                            line,
                            key,
                            format!("expected auto|with_gauge|free, got `{v}`"),
                        ))
                    }
                }
            }
            "measure_margin" => cfg.measure_margin = Some(parse_usize(line, key, v)?),
            "taper_rings" => cfg.taper_rings = parse_usize(line, key, v)?,
            "diag_every" => cfg.diag_every = parse_usize(line, key, v)?,
            "run_mode" => {
                cfg.run_mode = match v {
                    "auto" => RunMode::Auto,
                    "classical" => RunMode::Classical,
                    "quantum" => RunMode::Quantum,
                    _ => {
                        return Err(err(
                            line,
                            key,
                            format!("expected auto|classical|quantum, got `{v}`"),
                        ))
                    }
                }
            }
            "snapshot_format" => {
                cfg.snapshot_format = match v {
                    "json" => SnapshotFormat::Json,
                    "binary" => SnapshotFormat::Binary,
                    "none" => SnapshotFormat::None,
                    _ => {
                        return Err(err(line, key, format!("expected json|binary|none, got `{v}`")))
                    }
                }
            }
            "breakdown_threshold" => cfg.breakdown_threshold = parse_f64(line, key, v)?,
            "sigma_in" => cfg.sigma_in = parse_f64(line, key, v)?,
            "l_constant" => cfg.l_constant = parse_f64(line, key, v)?,
            "phi_points" => cfg.phi_points = parse_usize(line, key, v)?,
            "r_points" => cfg.r_points = parse_usize(line, key, v)?,
            "envelope" => {
                cfg.envelope = if v.starts_with("gaussian:") {
                    let parts = parse_parts(line, key, v, "gaussian", 1)?;
                    EnvelopeSpec::Gaussian {
                        width: parse_f64(line, key, parts[0])?,
                    }
                } else if v.starts_with("bump:") {
                    let parts = parse_parts(line, key, v, "bump", 1)?;
                    EnvelopeSpec::Bump {
                        width: parse_f64(line, key, parts[0])?,
                    }
                } else {
                    return Err(err(
                        line,
                        key,
                        format!("expected gaussian:width or bump:width, got `{v}`"),
                    ));
                };
            }
            "comm_half_width" => cfg.comm_half_width = parse_f64(line, key, v)?,
            "comm_spacing" => cfg.comm_spacing = parse_f64(line, key, v)?,
            _ => unreachable!("key set checked above"),
        }
    }

    // Assemble and validate the physical parameters, reporting the
    // offending key's line when possible.
    let (e, hbar, mass, tau, density, b) = raw_params;
    let raw = PhysicalParams {
        e,
        hbar,
        mass,
        tau,
        density,
        b_field: b,
    };
    if let Err(core_err) = raw.validate() {
        let msg = core_err.to_string();
        // Attribute to the most plausible key.
        for key in ["e", "hbar", "mass", "tau", "density", "B"] {
            let label = if key == "B" { "B" } else { key };
            if msg.contains(&format!("parameter {label}:"))
                || msg.contains(&format!("parameter {}:", key))
            {
                let line = map.get(key).and_then(|(l, _)| *l);
                return Err(err(line, key, msg));
            }
        }
        return Err(err(None, "params", msg));
    }
    cfg.params = match cfg.units {
        UnitSystem::Natural => raw,
        UnitSystem::Si => cfg.unit_scales.to_natural(&raw),
    };

    if cfg.thresholds.classical >= cfg.thresholds.quantum {
        return Err(err(
            None,
            "regime_classical/regime_quantum",
            "classical threshold must lie below the quantum threshold",
        ));
    }
    if cfg.diag_every == 0 {
        return Err(err(None, "diag_every", "must be at least 1"));
    }
    Ok(cfg)
}

impl RunConfig {
    /// Lower the CLI-level configuration into a core simulation config.
    pub fn sim_config(&self) -> Result<SimConfig, ConfigError> {
        let mut sim = SimConfig::new(self.params, self.nx, self.ny, self.spacing)
            .map_err(|e| err(None, "grid", e.to_string()))?;
        if let Some(dt) = self.dt {
            sim.dt = dt;
        }
        sim.steps = self.steps;
        sim.stability_factor = self.stability_factor;
        sim.psi_init = self.psi_init;
        sim.gauge_init = self.gauge_init;
        sim.sigma_mode = self.sigma_mode;
        sim.sigma_h_override = self.sigma_h_override;
        sim.regime_override = self.regime_override;
        sim.thresholds = self.thresholds;
        sim.psi_stepper = self.psi_stepper;
        sim.gauge_stepper = self.gauge_stepper;
        sim.drive_sign = self.drive_sign;
        sim.evolve_gauge = self.evolve_gauge;
        sim.current_tag_override = self.current_tag;
        if let Some(margin) = self.measure_margin {
            sim.measure_margin = margin;
        }
        sim.taper_rings = self.taper_rings;
        sim.diag_every = self.diag_every;
        sim.validate().map_err(|e| err(None, "sim", e.to_string()))?;
        Ok(sim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config_is_valid() {
        let cfg = parse_config("B = 1.0\ntau = 1.0\n", &[]).unwrap();
        assert_eq!(cfg.params.b_field, 1.0);
        assert_eq!(cfg.params.tau, 1.0);
        assert!(cfg.params.is_natural());
    }

    #[test]
    fn unknown_key_reports_line() {
        let res = parse_config("tau = 1.0\ntua = 1.0\n", &[]);
        let e = res.unwrap_err();
        assert_eq!(e.line, Some(2));
        assert_eq!(e.key, "tua");
        assert!(e.message.contains("unknown key"));
    }

    #[test]
    fn invariant_violation_reports_key_and_line() {
        let res = parse_config("# comment\nB = -1\n", &[]);
        let e = res.unwrap_err();
        assert_eq!(e.key, "B");
        assert_eq!(e.line, Some(2));
        assert!(e.message.contains("non-negative"), "{}", e.message);
    }

    #[test]
    fn type_mismatch_reports_line() {
        let e = parse_config("steps = soon\n", &[]).unwrap_err();
        assert_eq!(e.line, Some(1));
        assert_eq!(e.key, "steps");
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let cfg = parse_config("\n# full line comment\n  tau = 2.0 # trailing\n\n", &[]).unwrap();
        assert_eq!(cfg.params.tau, 2.0);
    }

    #[test]
    fn overrides_win_and_are_validated() {
        let cfg = parse_config("tau = 1.0\n", &[("tau".into(), "3.0".into())]).unwrap();
        assert_eq!(cfg.params.tau, 3.0);
        let e = parse_config("", &[("nonsense".into(), "1".into())]).unwrap_err();
        assert_eq!(e.key, "nonsense");
        assert_eq!(e.line, None);
    }

    #[test]
    fn sweep_specs_parse() {
        let cfg = parse_config("B_sweep = log:0.1:100:5\n", &[]).unwrap();
        let v = cfg.b_sweep.values();
        assert_eq!(v.len(), 5);
        assert!((v[0] - 0.1).abs() < 1e-12);
        assert!((v[4] - 100.0).abs() < 1e-9);
        let cfg = parse_config("B_sweep = list:1,2,4\n", &[]).unwrap();
        assert_eq!(cfg.b_sweep.values(), vec![1.0, 2.0, 4.0]);
        assert!(parse_config("B_sweep = geom:1:2:3\n", &[]).is_err());
    }

    #[test]
    fn si_units_convert_to_natural() {
        let text = "units = si\n\
                    e = 1.602176634e-19\n\
                    hbar = 1.054571817e-34\n\
                    mass = 9.1093837015e-31\n\
                    tau = 1e-12\n\
                    density = 1e15\n\
                    B = 10\n";
        let cfg = parse_config(text, &[]).unwrap();
        assert!((cfg.params.e - 1.0).abs() < 1e-12);
        assert!((cfg.params.hbar - 1.0).abs() < 1e-12);
        assert!((cfg.params.mass - 1.0).abs() < 1e-12);
    }

    #[test]
    fn structured_values_parse() {
        let cfg = parse_config(
            "initial_psi = gaussian:1.0:2.0:0.5:0.1:-0.2\ninitial_a = pure_gauge:0.3:0.2\n",
            &[],
        )
        .unwrap();
        assert!(matches!(
            cfg.psi_init,
            PsiInit::GaussianPacket { x0, .. } if x0 == 1.0
        ));
        assert!(matches!(
            cfg.gauge_init,
            GaugeInit::PureGauge { amplitude, .. } if amplitude == 0.3
        ));
    }
}
