//! Scenario configuration: flat `key = value` files plus command-line
//! overrides of the same names.
//!
//! Recognized keys (one per line, `#` starts a comment):
//!
//! ```text
//! nu, omega_r, omega_L          geometry
//! d1, d2                        dipoles, three comma-separated reals
//! werner_p                      initial-state parameter, default 2/3
//! t_max, dt, method             evolution (method: exact | rk4)
//! n_max, term_tol, quad_points, quad_tol   numerics
//! sweep_param, sweep_values     optional sweep axis (nu | omega_r | omega_L)
//! ```
//!
//! Dipoles are normalized on load; a norm deviating by more than 1e-6
//! earns a warning on stderr.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use csqed::{
    DipolePair, EvolutionSettings, GeometryParams, Method, SummationControl,
};

use crate::CliError;

const KNOWN_KEYS: [&str; 15] = [
    "nu",
    "omega_r",
    "omega_L",
    "d1",
    "d2",
    "werner_p",
    "t_max",
    "dt",
    "method",
    "n_max",
    "term_tol",
    "quad_points",
    "quad_tol",
    "sweep_param",
    "sweep_values",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Nu,
    OmegaR,
    OmegaL,
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepParam::Nu => "nu",
            SweepParam::OmegaR => "omega_r",
            SweepParam::OmegaL => "omega_L",
        })
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nu" => Ok(SweepParam::Nu),
            "omega_r" => Ok(SweepParam::OmegaR),
            "omega_L" => Ok(SweepParam::OmegaL),
            other => Err(format!(
                "unknown sweep_param '{other}' (expected nu, omega_r or omega_L)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

/// A fully validated run description.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub geometry: GeometryParams,
    pub dipoles: DipolePair,
    pub werner_p: f64,
    pub evolution: EvolutionSettings,
    pub numerics: SummationControl,
    pub sweep: Option<SweepSpec>,
}

impl Scenario {
    /// Geometry with one swept parameter replaced.
    pub fn geometry_at(&self, param: SweepParam, value: f64) -> Result<GeometryParams, CliError> {
        let g = &self.geometry;
        let (nu, wr, wl) = match param {
            SweepParam::Nu => (value, g.omega_r(), g.omega_l()),
            SweepParam::OmegaR => (g.nu(), value, g.omega_l()),
            SweepParam::OmegaL => (g.nu(), g.omega_r(), value),
        };
        GeometryParams::new(nu, wr, wl)
            .map_err(|e| CliError::Config(format!("sweep value {value}: {e}")))
    }
}

/// Command-line overrides, applied on top of the config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub nu: Option<f64>,
    pub omega_r: Option<f64>,
    pub omega_l: Option<f64>,
    pub d1: Option<String>,
    pub d2: Option<String>,
    pub werner_p: Option<f64>,
    pub t_max: Option<f64>,
    pub dt: Option<f64>,
    pub method: Option<String>,
    pub n_max: Option<u32>,
    pub term_tol: Option<f64>,
    pub quad_points: Option<usize>,
    pub quad_tol: Option<f64>,
    pub sweep_param: Option<String>,
    pub sweep_values: Option<String>,
}

pub fn load_scenario(path: &std::path::Path, overrides: &Overrides) -> Result<Scenario, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
    let mut raw = parse_key_values(&text)?;
    apply_overrides(&mut raw, overrides);
    build_scenario(&raw)
}

fn parse_key_values(text: &str) -> Result<HashMap<String, String>, CliError> {
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("line {}: expected 'key = value'", lineno + 1))
        })?;
        let key = key.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!(
                "line {}: unknown key '{key}'",
                lineno + 1
            )));
        }
        if map.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(CliError::Config(format!(
                "line {}: duplicate key '{key}'",
                lineno + 1
            )));
        }
    }
    Ok(map)
}

fn apply_overrides(raw: &mut HashMap<String, String>, o: &Overrides) {
    let mut set = |key: &str, value: Option<String>| {
        if let Some(v) = value {
            raw.insert(key.to_string(), v);
        }
    };
    set("nu", o.nu.map(|v| v.to_string()));
    set("omega_r", o.omega_r.map(|v| v.to_string()));
    set("omega_L", o.omega_l.map(|v| v.to_string()));
    set("d1", o.d1.clone());
    set("d2", o.d2.clone());
    set("werner_p", o.werner_p.map(|v| v.to_string()));
    set("t_max", o.t_max.map(|v| v.to_string()));
    set("dt", o.dt.map(|v| v.to_string()));
    set("method", o.method.clone());
    set("n_max", o.n_max.map(|v| v.to_string()));
    set("term_tol", o.term_tol.map(|v| v.to_string()));
    set("quad_points", o.quad_points.map(|v| v.to_string()));
    set("quad_tol", o.quad_tol.map(|v| v.to_string()));
    set("sweep_param", o.sweep_param.clone());
    set("sweep_values", o.sweep_values.clone());
}

fn build_scenario(raw: &HashMap<String, String>) -> Result<Scenario, CliError> {
    let nu = require_f64(raw, "nu")?;
    let omega_r = require_f64(raw, "omega_r")?;
    let omega_l = require_f64(raw, "omega_L")?;
    let geometry =
        GeometryParams::new(nu, omega_r, omega_l).map_err(|e| CliError::Config(e.to_string()))?;

    let d1 = parse_vec3(require(raw, "d1")?).map_err(CliError::Config)?;
    let d2 = parse_vec3(require(raw, "d2")?).map_err(CliError::Config)?;
    let (dipoles, deviation) =
        DipolePair::normalizing(d1, d2).map_err(|e| CliError::Config(e.to_string()))?;
    if deviation > 1e-6 {
        eprintln!(
            "warning: dipole norms deviated from 1 by up to {deviation:.3e}; normalized on load"
        );
    }

    let werner_p = optional_f64(raw, "werner_p")?.unwrap_or(2.0 / 3.0);
    if !(0.0..=1.0).contains(&werner_p) {
        return Err(CliError::Config(format!(
            "werner_p must lie in [0, 1], got {werner_p}"
        )));
    }

    let t_max = optional_f64(raw, "t_max")?.unwrap_or(30.0);
    let dt = optional_f64(raw, "dt")?.unwrap_or(0.005);
    let method = match raw.get("method").map(String::as_str) {
        None | Some("exact") => Method::Exact,
        Some("rk4") => Method::Rk4,
        Some(other) => {
            return Err(CliError::Config(format!(
                "unknown method '{other}' (expected exact or rk4)"
            )))
        }
    };
    let evolution =
        EvolutionSettings::new(t_max, dt, method).map_err(|e| CliError::Config(e.to_string()))?;

    let defaults = SummationControl::for_geometry(&geometry);
    let n_max = optional::<u32>(raw, "n_max")?.unwrap_or(defaults.n_max());
    let term_tol = optional_f64(raw, "term_tol")?.unwrap_or(defaults.term_tol());
    let quad_points = optional::<usize>(raw, "quad_points")?.unwrap_or(defaults.quad_points());
    let quad_tol = optional_f64(raw, "quad_tol")?.unwrap_or(defaults.quad_tol());
    let numerics = SummationControl::new(n_max, term_tol, quad_points, quad_tol)
        .map_err(|e| CliError::Config(e.to_string()))?;

    let sweep = match (raw.get("sweep_param"), raw.get("sweep_values")) {
        (None, None) => None,
        (Some(p), Some(v)) => {
            let param: SweepParam = p.parse().map_err(CliError::Config)?;
            let values = v
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<f64>()
                        .map_err(|e| CliError::Config(format!("sweep value '{tok}': {e}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if values.is_empty() || values.iter().any(|v| !v.is_finite()) {
                return Err(CliError::Config(
                    "sweep_values must be a non-empty list of finite reals".into(),
                ));
            }
            Some(SweepSpec { param, values })
        }
        _ => {
            return Err(CliError::Config(
                "sweep_param and sweep_values must be given together".into(),
            ))
        }
    };

    Ok(Scenario {
        geometry,
        dipoles,
        werner_p,
        evolution,
        numerics,
        sweep,
    })
}

fn require<'a>(raw: &'a HashMap<String, String>, key: &str) -> Result<&'a str, CliError> {
    raw.get(key)
        .map(String::as_str)
        .ok_or_else(|| CliError::Config(format!("missing required key '{key}'")))
}

fn require_f64(raw: &HashMap<String, String>, key: &str) -> Result<f64, CliError> {
    require(raw, key)?
        .parse()
        .map_err(|e| CliError::Config(format!("key '{key}': {e}")))
}

fn optional_f64(raw: &HashMap<String, String>, key: &str) -> Result<Option<f64>, CliError> {
    optional::<f64>(raw, key)
}

fn optional<T: FromStr>(raw: &HashMap<String, String>, key: &str) -> Result<Option<T>, CliError>
where
    T::Err: fmt::Display,
{
    raw.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|e| CliError::Config(format!("key '{key}': {e}")))
        })
        .transpose()
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated components, got '{s}'"
        ));
    }
    let mut out = [0.0; 3];
    for (slot, tok) in out.iter_mut().zip(&parts) {
        *slot = tok
            .parse()
            .map_err(|e| format!("component '{tok}': {e}"))?;
    }
    Ok(out)
}
