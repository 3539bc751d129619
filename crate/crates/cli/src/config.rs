//! Flat `key = value` experiment configuration.
//!
//! Values come from an optional config file and from `--key value` flags,
//! flags winning. Every value is type- and range-checked when it is read, so
//! errors can point at the file line or flag that produced them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rcobs::dynamics::Var;
use rcobs::sweeps::{Param, TestStart};
use rcobs::{Axis, RunSpec, SystemId};

use crate::error::{CliError, CliResult};

/// Where a value was set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    File { path: String, line: usize },
    Flag,
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::File { path, line } => write!(f, "{path}:{line}"),
            Origin::Flag => f.write_str("command line"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    /// Real with an inclusive lower bound and optional upper bound.
    Real {
        min: f64,
        max: f64,
        open_min: bool,
    },
    Int {
        min: u64,
    },
    Bool,
    System,
    Var,
    Period,
    TestStart,
    Axis,
    Text,
}

const ANY_REAL: Kind = Kind::Real {
    min: f64::NEG_INFINITY,
    max: f64::INFINITY,
    open_min: false,
};
const NON_NEG: Kind = Kind::Real {
    min: 0.0,
    max: f64::INFINITY,
    open_min: false,
};
const POSITIVE: Kind = Kind::Real {
    min: 0.0,
    max: f64::INFINITY,
    open_min: true,
};
const UNIT: Kind = Kind::Real {
    min: 0.0,
    max: 1.0,
    open_min: false,
};

/// Every accepted key with a one-line description.
pub const KEYS: &[(&str, &str)] = &[
    ("system", "task system: lorenz | rossler | hr"),
    ("input_var", "observed state variable (x, y or z)"),
    ("output_var", "reconstructed state variable (x, y or z)"),
    ("n_train", "training samples"),
    ("n_test", "testing samples (default n_train / 2)"),
    ("transient", "integration samples discarded before recording"),
    ("ts", "sampling period"),
    ("substeps", "RK4 steps per sample"),
    ("period", "noise weighting period T, or auto"),
    ("init_seed", "seed for the chaotic initial conditions"),
    ("eps1", "noise strength, training input"),
    ("eps2", "noise strength, testing input"),
    ("eps3", "noise strength, training target"),
    ("eps4", "noise strength, testing target"),
    ("filter_train_input", "low-pass the training input"),
    ("filter_test_input", "low-pass the testing input"),
    ("filter_train_target", "low-pass the training target"),
    ("filter_test_target", "low-pass the testing target"),
    ("a", "cutoff for every filter"),
    ("a_tr", "cutoff of the training-phase filters"),
    ("a_ts", "cutoff of the testing-phase filters"),
    ("n", "reservoir nodes"),
    ("p", "connection probability"),
    ("directed", "directed coupling network"),
    ("alpha", "leakage rate"),
    ("washout", "training rows dropped before the fit"),
    ("test_start", "continue | fresh"),
    ("beta", "ridge parameter"),
    ("realizations", "runs averaged per grid cell"),
    ("seed", "base seed for networks, weights and noise"),
    ("w_mean", "input weight mean"),
    ("w_std", "input weight standard deviation"),
    ("jobs", "worker threads"),
    ("out", "output directory"),
    ("recipe", "named sweep"),
    ("axis1", "explicit sweep axis, param=v1,v2,... or param=start:step:stop"),
    ("axis2", "second sweep axis"),
    ("smoke", "shrink recipes to a 3x3 grid with 2 realizations"),
    ("input", "signal file for the spectrum command"),
    ("realization", "realization index for generate and dump-network"),
];

fn kind_of(key: &str) -> Option<Kind> {
    Some(match key {
        "system" => Kind::System,
        "input_var" | "output_var" => Kind::Var,
        "n_train" => Kind::Int { min: 2 },
        "n_test" | "substeps" | "realizations" | "jobs" => Kind::Int { min: 1 },
        "transient" | "init_seed" | "washout" | "seed" | "realization" => Kind::Int { min: 0 },
        "ts" | "a" | "a_tr" | "a_ts" => POSITIVE,
        "period" => Kind::Period,
        "eps1" | "eps2" | "eps3" | "eps4" | "beta" | "w_std" => NON_NEG,
        "filter_train_input"
        | "filter_test_input"
        | "filter_train_target"
        | "filter_test_target"
        | "directed"
        | "smoke" => Kind::Bool,
        "n" => Kind::Int { min: 2 },
        "p" | "alpha" => UNIT,
        "test_start" => Kind::TestStart,
        "w_mean" => ANY_REAL,
        "axis1" | "axis2" => Kind::Axis,
        "out" | "recipe" | "input" => Kind::Text,
        _ => return None,
    })
}

pub fn parse_bool_literal(s: &str) -> Option<bool> {
    match s.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Some(true),
        "false" | "no" | "off" | "0" => Some(false),
        _ => None,
    }
}

/// Boolean keys may be given as bare flags.
pub fn is_bool_key(key: &str) -> bool {
    kind_of(key) == Some(Kind::Bool)
}

/// Parses `param=v1,v2,...` or `param=start:step:stop`.
pub fn parse_axis(s: &str) -> Result<Axis, String> {
    let (name, values) = s
        .split_once('=')
        .ok_or_else(|| format!("axis '{s}' must look like param=v1,v2,..."))?;
    let param = Param::from_str(name.trim()).map_err(|e| e.to_string())?;
    let values = values.trim();
    let parsed: Vec<f64> = if values.contains(':') {
        let parts: Vec<&str> = values.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range '{values}' must be start:step:stop"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("'{t}' is not a number"));
        let (start, step, stop) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || !(stop >= start) {
            return Err(format!("range '{values}' needs step > 0 and stop >= start"));
        }
        let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
        if n > 10_000 {
            return Err(format!("range '{values}' has too many points"));
        }
        (0..n).map(|i| start + i as f64 * step).collect()
    } else {
        values
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<f64>()
                    .map_err(|_| format!("'{}' is not a number", t.trim()))
            })
            .collect::<Result<_, _>>()?
    };
    if parsed.is_empty() || parsed.iter().any(|v| !v.is_finite()) {
        return Err(format!("axis '{s}' needs finite values"));
    }
    Ok(Axis::new(param, parsed))
}

fn parse_value(key: &str, raw: &str) -> Result<Value, String> {
    let kind = kind_of(key).ok_or_else(|| format!("unknown key '{key}'"))?;
    let raw = raw.trim();
    if raw.is_empty() {
        return Err(format!("{key} needs a value"));
    }
    match kind {
        Kind::Real { min, max, open_min } => {
            let v: f64 = raw
                .parse()
                .map_err(|_| format!("{key} must be a number, got '{raw}'"))?;
            let low_ok = if open_min { v > min } else { v >= min };
            if !v.is_finite() || !low_ok || v > max {
                let range = match (open_min, max.is_finite()) {
                    (true, _) => format!("> {min}"),
                    (false, true) => format!("in [{min}, {max}]"),
                    (false, false) if min.is_finite() => format!(">= {min}"),
                    _ => "finite".to_string(),
                };
                return Err(format!("{key} must be {range}, got {raw}"));
            }
            Ok(Value::Num(v))
        }
        Kind::Int { min } => {
            let v: u64 = raw
                .parse()
                .map_err(|_| format!("{key} must be a non-negative integer, got '{raw}'"))?;
            if v < min {
                return Err(format!("{key} must be >= {min}, got {v}"));
            }
            Ok(Value::Int(v))
        }
        Kind::Bool => parse_bool_literal(raw)
            .map(Value::Bool)
            .ok_or_else(|| format!("{key} must be true or false, got '{raw}'")),
        Kind::System => SystemId::from_str(raw)
            .map(|_| Value::Text(raw.to_string()))
            .map_err(|_| format!("{key} must be lorenz, rossler or hr, got '{raw}'")),
        Kind::Var => Var::from_str(raw)
            .map(|_| Value::Text(raw.to_string()))
            .map_err(|_| format!("{key} must be x, y or z, got '{raw}'")),
        Kind::Period => {
            if raw == "auto" {
                return Ok(Value::Text(raw.to_string()));
            }
            match raw.parse::<f64>() {
                Ok(v) if v > 0.0 && v.is_finite() => Ok(Value::Num(v)),
                _ => Err(format!("period must be auto or > 0, got '{raw}'")),
            }
        }
        Kind::TestStart => match raw {
            "continue" | "fresh" => Ok(Value::Text(raw.to_string())),
            _ => Err(format!("test_start must be continue or fresh, got '{raw}'")),
        },
        Kind::Axis => parse_axis(raw).map(|_| Value::Text(raw.to_string())),
        Kind::Text => Ok(Value::Text(raw.to_string())),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub value: Value,
    pub origin: Origin,
}

/// Validated key/value settings.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, Entry>,
}

impl Config {
    /// Parses config file text. `#` starts a comment.
    pub fn parse(text: &str, path: &str) -> CliResult<Self> {
        let mut cfg = Config::default();
        for (i, line) in text.lines().enumerate() {
            let origin = Origin::File {
                path: path.to_string(),
                line: i + 1,
            };
            let content = line.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| CliError::Validation(format!("{origin}: expected 'key = value', got '{content}'")))?;
            let key = key.trim();
            if let Some(prev) = cfg.entries.get(key) {
                return Err(CliError::Validation(format!(
                    "{origin}: duplicate key '{key}' (first set at {})",
                    prev.origin
                )));
            }
            cfg.insert(key, value, origin)?;
        }
        Ok(cfg)
    }

    /// Adds or replaces one value.
    pub fn insert(&mut self, key: &str, raw: &str, origin: Origin) -> CliResult<()> {
        let value = parse_value(key, raw).map_err(|m| CliError::Validation(format!("{origin}: {m}")))?;
        self.entries.insert(key.to_string(), Entry { value, origin });
        Ok(())
    }

    pub fn set_flag(&mut self, key: &str, raw: &str) -> CliResult<()> {
        self.insert(key, raw, Origin::Flag)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn get(&self, key: &str) -> Option<&Entry> {
        self.entries.get(key)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn num(&self, key: &str) -> Option<f64> {
        match self.get(key)?.value {
            Value::Num(v) => Some(v),
            Value::Int(v) => Some(v as f64),
            _ => None,
        }
    }

    pub fn int(&self, key: &str) -> Option<u64> {
        match self.get(key)?.value {
            Value::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn flag(&self, key: &str) -> Option<bool> {
        match self.get(key)?.value {
            Value::Bool(b) => Some(b),
            _ => None,
        }
    }

    pub fn text(&self, key: &str) -> Option<&str> {
        match &self.get(key)?.value {
            Value::Text(s) => Some(s),
            _ => None,
        }
    }

    pub fn system(&self) -> Option<SystemId> {
        self.text("system").and_then(|s| s.parse().ok())
    }

    /// The `system` key, or a validation error naming it.
    pub fn require_system(&self) -> CliResult<SystemId> {
        self.system()
            .ok_or_else(|| CliError::Validation("missing required key 'system' (lorenz, rossler or hr)".into()))
    }

    pub fn axis(&self, key: &str) -> Option<Axis> {
        self.text(key).and_then(|s| parse_axis(s).ok())
    }

    fn usize(&self, key: &str) -> Option<usize> {
        self.int(key).map(|v| v as usize)
    }

    /// Writes every run setting present in the config into `spec`, then
    /// checks cross-key constraints.
    pub fn apply(&self, spec: &mut RunSpec) -> CliResult<()> {
        let t = &mut spec.task;
        if let Some(s) = self.text("input_var") {
            t.input_var = s.parse()?;
        }
        if let Some(s) = self.text("output_var") {
            t.output_var = s.parse()?;
        }
        if let Some(n) = self.usize("n_train") {
            t.n_train = n;
            if !self.contains("n_test") {
                t.n_test = (n / 2).max(1);
            }
        }
        if let Some(n) = self.usize("n_test") {
            t.n_test = n;
        }
        if let Some(n) = self.usize("transient") {
            t.transient_discard = n;
        }
        if let Some(v) = self.num("ts") {
            t.ts = v;
        }
        if let Some(n) = self.usize("substeps") {
            t.substeps = n;
        }
        match self.get("period").map(|e| &e.value) {
            Some(Value::Num(v)) => t.period_t = Some(*v),
            Some(_) => t.period_t = None,
            None => {}
        }
        if let Some(v) = self.int("init_seed") {
            t.init_seed = v;
        }

        let setters: [(&str, Param); 8] = [
            ("eps1", Param::Eps1),
            ("eps2", Param::Eps2),
            ("eps3", Param::Eps3),
            ("eps4", Param::Eps4),
            ("a", Param::A),
            ("a_tr", Param::ATr),
            ("a_ts", Param::ATs),
            ("alpha", Param::Alpha),
        ];
        for (key, param) in setters {
            if let Some(v) = self.num(key) {
                param.apply(spec, v)?;
            }
        }
        if let Some(b) = self.flag("filter_train_input") {
            spec.filter.enabled_tr_in = b;
        }
        if let Some(b) = self.flag("filter_test_input") {
            spec.filter.enabled_ts_in = b;
        }
        if let Some(b) = self.flag("filter_train_target") {
            spec.filter.enabled_tr_out = b;
        }
        if let Some(b) = self.flag("filter_test_target") {
            spec.filter.enabled_ts_out = b;
        }
        if let Some(n) = self.usize("n") {
            spec.net.n = n;
            spec.rc.n_nodes = n;
        }
        if let Some(p) = self.num("p") {
            spec.net.p = p;
        }
        if let Some(d) = self.flag("directed") {
            spec.net.directed = d;
        }
        if let Some(w) = self.usize("washout") {
            spec.rc.washout = w;
        }
        if let Some(s) = self.text("test_start") {
            spec.test_start = if s == "fresh" {
                TestStart::Fresh
            } else {
                TestStart::Continue
            };
        }
        if let Some(b) = self.num("beta") {
            spec.beta = b;
        }
        if let Some(r) = self.usize("realizations") {
            spec.realizations = r;
        }
        if let Some(s) = self.int("seed") {
            spec.base_seed = s;
        }
        if let Some(v) = self.num("w_mean") {
            spec.w_mean = v;
        }
        if let Some(v) = self.num("w_std") {
            spec.w_std = v;
        }
        spec.validate()
            .map_err(|e| CliError::Validation(format!("configuration: {e}")))
    }

    /// A run spec for `system` with every config setting applied.
    pub fn run_spec(&self, system: SystemId) -> CliResult<RunSpec> {
        let mut spec = RunSpec::for_system(system);
        self.apply(&mut spec)?;
        Ok(spec)
    }
}
