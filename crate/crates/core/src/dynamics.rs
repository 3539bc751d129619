//! The three chaotic observer tasks: vector fields, a fixed-step RK4
//! integrator and generation of normalized input/target signal pairs.

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;

use crate::error::{invalid, Error, Result};
use crate::seed;
use crate::series::{mean, std_dev, TimeSeries};
use crate::signal;

/// Default sampling period shared by all tasks.
pub const DEFAULT_TS: f64 = 0.01;

/// Hindmarsh-Rose slow-variable rate.
const HR_RATE: f64 = 0.006;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SystemId {
    Lorenz,
    Rossler,
    HindmarshRose,
}

impl SystemId {
    pub const ALL: [SystemId; 3] = [SystemId::Lorenz, SystemId::Rossler, SystemId::HindmarshRose];

    pub fn name(self) -> &'static str {
        match self {
            SystemId::Lorenz => "lorenz",
            SystemId::Rossler => "rossler",
            SystemId::HindmarshRose => "hr",
        }
    }

    /// Leakage rate that minimizes the noise-free testing error for the task.
    pub fn default_alpha(self) -> f64 {
        match self {
            SystemId::Lorenz => 0.1,
            SystemId::Rossler => 0.003,
            SystemId::HindmarshRose => 0.01,
        }
    }

    /// Nominal low-pass cutoff for the task's input signal.
    pub fn nominal_cutoff(self) -> f64 {
        match self {
            SystemId::Lorenz => 12.0,
            SystemId::Rossler => 2.0,
            SystemId::HindmarshRose => 3.0,
        }
    }

    /// Center and half-width of the box initial conditions are drawn from.
    fn initial_box(self) -> (State3, f64) {
        match self {
            SystemId::Lorenz => (State3::new(1.0, 1.0, 20.0), 1.0),
            SystemId::Rossler => (State3::new(1.0, 1.0, 1.0), 1.0),
            SystemId::HindmarshRose => (State3::new(-1.6, -10.0, 2.0), 0.1),
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lorenz" => Ok(SystemId::Lorenz),
            "rossler" | "roessler" => Ok(SystemId::Rossler),
            "hr" | "hindmarsh-rose" | "hindmarshrose" | "hindmarsh_rose" => Ok(SystemId::HindmarshRose),
            other => Err(invalid(format!("unknown system '{other}'"))),
        }
    }
}

/// State variable selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
    Z,
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(Var::X),
            "y" | "Y" => Ok(Var::Y),
            "z" | "Z" => Ok(Var::Z),
            other => Err(invalid(format!("unknown state variable '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl State3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn get(&self, var: Var) -> f64 {
        match var {
            Var::X => self.x,
            Var::Y => self.y,
            Var::Z => self.z,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    fn axpy(self, h: f64, d: State3) -> State3 {
        State3::new(self.x + h * d.x, self.y + h * d.y, self.z + h * d.z)
    }
}

/// Vector field of `system` at `s`.
pub fn derivative(system: SystemId, s: State3) -> State3 {
    let State3 { x, y, z } = s;
    match system {
        SystemId::Lorenz => State3::new(10.0 * (y - x), x * (28.0 - z) - y, x * y - 8.0 / 3.0 * z),
        SystemId::Rossler => State3::new(-y - z, x + 0.15 * y, 0.2 + x * z - 4.0 * z),
        SystemId::HindmarshRose => {
            let phi = -x * x * x + 3.0 * x * x;
            let psi = 1.0 - 5.0 * x * x;
            State3::new(y + phi - z + 3.2, psi - y, HR_RATE * (4.0 * (x + 8.0 / 5.0) - z))
        }
    }
}

/// One classical Runge-Kutta step of an arbitrary autonomous field.
pub fn rk4<F: Fn(State3) -> State3>(f: F, s: State3, dt: f64) -> State3 {
    let k1 = f(s);
    let k2 = f(s.axpy(dt / 2.0, k1));
    let k3 = f(s.axpy(dt / 2.0, k2));
    let k4 = f(s.axpy(dt, k3));
    State3::new(
        s.x + dt / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
        s.y + dt / 6.0 * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y),
        s.z + dt / 6.0 * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z),
    )
}

pub fn rk4_step(system: SystemId, s: State3, dt: f64) -> Result<State3> {
    if !(dt > 0.0) {
        return Err(invalid(format!("step size must be positive, got {dt}")));
    }
    let next = rk4(|u| derivative(system, u), s, dt);
    if next.is_finite() {
        Ok(next)
    } else {
        Err(Error::IntegrationDiverged { step: 0 })
    }
}

/// Observer task: which system, which variables, and how much signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Task {
    pub system: SystemId,
    pub input_var: Var,
    pub output_var: Var,
    /// Training samples.
    pub n_train: usize,
    /// Testing samples.
    pub n_test: usize,
    /// Samples integrated and dropped before recording.
    pub transient_discard: usize,
    pub ts: f64,
    /// RK4 steps per sample.
    pub substeps: usize,
    /// Oscillation period used to weight measurement noise. Estimated from
    /// the noise-free input when unset.
    pub period_t: Option<f64>,
    pub init_seed: u64,
}

impl Task {
    /// Task with the default observer layout: x drives, z is the target.
    pub fn new(system: SystemId) -> Self {
        Self {
            system,
            input_var: Var::X,
            output_var: Var::Z,
            n_train: 10_000,
            n_test: 5_000,
            transient_discard: 5_000,
            ts: DEFAULT_TS,
            substeps: 1,
            period_t: None,
            init_seed: 0,
        }
    }

    /// Sets `n_train` and keeps the testing window at half of it.
    pub fn with_train_len(mut self, n_train: usize) -> Self {
        self.n_train = n_train;
        self.n_test = n_train / 2;
        self
    }

    pub fn total_len(&self) -> usize {
        self.n_train + self.n_test
    }

    pub fn validate(&self) -> Result<()> {
        if self.input_var == self.output_var {
            return Err(invalid("input and output variables must differ"));
        }
        if self.n_train == 0 || self.n_test == 0 {
            return Err(invalid("n_train and n_test must be positive"));
        }
        if !(self.ts > 0.0 && self.ts.is_finite()) {
            return Err(invalid(format!("ts must be positive, got {}", self.ts)));
        }
        if self.substeps == 0 {
            return Err(invalid("substeps must be at least 1"));
        }
        if let Some(t) = self.period_t {
            if !(t > 0.0 && t.is_finite()) {
                return Err(invalid(format!("period_t must be positive, got {t}")));
            }
        }
        Ok(())
    }

    /// Resolves `period_t` by estimating it on this task's noise-free input.
    pub fn with_estimated_period(mut self) -> Result<Self> {
        if self.period_t.is_none() {
            let (input, _) = generate_task_signals(&self)?;
            self.period_t = Some(estimate_period(&input.series)?);
        }
        Ok(self)
    }
}

/// Integrates the task's system from a seeded random initial condition and
/// returns the recorded on-attractor states, one per sample.
pub fn integrate(task: &Task) -> Result<Vec<State3>> {
    task.validate()?;
    let (center, half) = task.system.initial_box();
    let mut rng = seed::rng_from(task.init_seed, &[0x1c]);
    let mut s = State3::new(
        center.x + rng.random_range(-half..=half),
        center.y + rng.random_range(-half..=half),
        center.z + rng.random_range(-half..=half),
    );
    let dt = task.ts / task.substeps as f64;
    let total = task.transient_discard + task.total_len();
    let mut out = Vec::with_capacity(task.total_len());
    for step in 0..total {
        for _ in 0..task.substeps {
            s = rk4(|u| derivative(task.system, u), s, dt);
        }
        if !s.is_finite() {
            return Err(Error::IntegrationDiverged { step });
        }
        if step >= task.transient_discard {
            out.push(s);
        }
    }
    Ok(out)
}

/// Zero-mean, unit-variance signal with the constants that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedSignal {
    pub series: TimeSeries,
    pub mean: f64,
    pub std: f64,
}

pub fn normalize(series: &TimeSeries) -> Result<NormalizedSignal> {
    let v = series.values();
    let m = mean(v);
    let s = std_dev(v);
    if !(s > 1e-12 * m.abs().max(1.0)) {
        return Err(Error::ZeroVariance);
    }
    let values = v.iter().map(|x| (x - m) / s).collect();
    Ok(NormalizedSignal {
        series: TimeSeries::from_parts(values, series.ts()),
        mean: m,
        std: s,
    })
}

/// Noise-free input and target signals over the train+test window, each
/// normalized over that whole window.
pub fn generate_task_signals(task: &Task) -> Result<(NormalizedSignal, NormalizedSignal)> {
    let states = integrate(task)?;
    let pick = |var: Var| TimeSeries::from_parts(states.iter().map(|s| s.get(var)).collect(), task.ts);
    let input = normalize(&pick(task.input_var))?;
    let output = normalize(&pick(task.output_var))?;
    Ok((input, output))
}

/// Characteristic oscillation period `1 / f̄`, where `f̄` is the
/// power-weighted mean frequency of the periodogram.
///
/// The spectral centroid is used instead of the arg-max bin because chaotic
/// signals such as Lorenz `x(t)` carry broad low-frequency power from
/// irregular lobe switching, which makes the arg-max jump between runs.
pub fn estimate_period(series: &TimeSeries) -> Result<f64> {
    if series.len() < 64 {
        return Err(Error::Estimation {
            what: "period",
            reason: format!("need at least 64 samples, got {}", series.len()),
        });
    }
    let spec = signal::power_spectrum(series);
    let (num, den) = spec
        .freqs
        .iter()
        .zip(&spec.power)
        .skip(1)
        .fold((0.0, 0.0), |(n, d), (f, p)| (n + f * p, d + p));
    let total: f64 = spec.power.iter().sum();
    if !(den > 1e-300) || !(den > 1e-12 * total) {
        return Err(Error::Estimation {
            what: "period",
            reason: "spectrum has no power at nonzero frequencies".into(),
        });
    }
    Ok(den / num)
}
