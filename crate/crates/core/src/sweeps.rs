//! End-to-end observer runs and parameter-grid experiments.
//!
//! A realization's random inputs (initial condition, network, input weights
//! and the four noise streams) are seeded from the base seeds and the
//! realization index only. Every cell of a grid therefore sees the same
//! realizations, which makes cells directly comparable and keeps each
//! cell's result independent of which other cells are in the grid.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use rayon::prelude::*;

use crate::dynamics::{estimate_period, generate_task_signals, NormalizedSignal, SystemId, Task};
use crate::error::{invalid, Error, Result};
use crate::netgen::{
    erdos_renyi, input_weights_with, normalize_spectral, Adjacency, InputWeights, WIDE_INPUT_WEIGHT_MEAN,
    WIDE_INPUT_WEIGHT_STD,
};
use crate::readout::{fit_error, predict, ridge_fit, FitResult};
use crate::reservoir::{evolve, evolve_from, readout_matrix, ReservoirConfig};
use crate::seed;
use crate::series::TimeSeries;
use crate::signal::{lowpass, Channel, FilterSpec, NoiseLevels, NoiseSpec};

/// Coupling network parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetSpec {
    pub n: usize,
    pub p: f64,
    pub directed: bool,
}

impl Default for NetSpec {
    fn default() -> Self {
        Self {
            n: 100,
            p: 0.5,
            directed: false,
        }
    }
}

/// How the testing phase picks up the reservoir.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TestStart {
    /// Continue from the final training state.
    #[default]
    Continue,
    /// Restart from the configured initial state and apply the washout again.
    Fresh,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub task: Task,
    pub noise: NoiseLevels,
    pub filter: FilterSpec,
    pub net: NetSpec,
    pub rc: ReservoirConfig,
    pub beta: f64,
    pub realizations: usize,
    pub base_seed: u64,
    pub test_start: TestStart,
    pub w_mean: f64,
    pub w_std: f64,
}

impl RunSpec {
    /// Noise-free, unfiltered run on `system` with the task's tuned leakage
    /// rate, `β = 1e-8`, N = 100, p = 0.5, input weights drawn from
    /// N(0.01, 1) and ten realizations.
    pub fn for_system(system: SystemId) -> Self {
        let net = NetSpec::default();
        Self {
            task: Task::new(system),
            noise: NoiseLevels::default(),
            filter: FilterSpec::disabled(),
            net,
            rc: ReservoirConfig::new(net.n, system.default_alpha()),
            beta: 1e-8,
            realizations: 10,
            base_seed: 0,
            test_start: TestStart::Continue,
            w_mean: WIDE_INPUT_WEIGHT_MEAN,
            w_std: WIDE_INPUT_WEIGHT_STD,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.task.validate()?;
        self.noise.validate()?;
        self.filter.validate()?;
        self.rc.validate()?;
        if self.rc.n_nodes != self.net.n {
            return Err(Error::DimensionMismatch(format!(
                "reservoir has {} nodes but network has {}",
                self.rc.n_nodes, self.net.n
            )));
        }
        if self.net.n < 2 {
            return Err(invalid("network needs at least 2 nodes"));
        }
        if !(0.0..=1.0).contains(&self.net.p) {
            return Err(invalid(format!("p must lie in [0, 1], got {}", self.net.p)));
        }
        if !(self.beta >= 0.0 && self.beta.is_finite()) {
            return Err(invalid(format!("beta must be >= 0, got {}", self.beta)));
        }
        if self.realizations == 0 {
            return Err(invalid("realizations must be at least 1"));
        }
        if self.rc.washout >= self.task.n_train {
            return Err(Error::WashoutTooLarge {
                washout: self.rc.washout,
                rows: self.task.n_train,
            });
        }
        if self.test_start == TestStart::Fresh && self.rc.washout >= self.task.n_test {
            return Err(Error::WashoutTooLarge {
                washout: self.rc.washout,
                rows: self.task.n_test,
            });
        }
        if !(self.w_std >= 0.0 && self.w_mean.is_finite() && self.w_std.is_finite()) {
            return Err(invalid("input weight distribution needs finite mean and std >= 0"));
        }
        Ok(())
    }

    /// Resolves the task's noise-weighting period from its reference signal.
    pub fn with_estimated_period(mut self) -> Result<Self> {
        self.task = self.task.with_estimated_period()?;
        Ok(self)
    }
}

/// Signals of one realization: noise-free normalized input and target, and
/// the four noise-corrupted (unfiltered) channels.
#[derive(Debug, Clone)]
pub struct ObserverSignals {
    pub input: NormalizedSignal,
    pub output: NormalizedSignal,
    pub train_in: TimeSeries,
    pub test_in: TimeSeries,
    pub train_out: TimeSeries,
    pub test_out: TimeSeries,
    pub period_t: f64,
}

/// Task with the initial-condition seed of realization `r`.
pub fn realization_task(task: &Task, r: u64) -> Task {
    Task {
        init_seed: seed::derive_seed(task.init_seed, &[r]),
        ..task.clone()
    }
}

fn noise_seed(spec: &RunSpec, r: u64) -> u64 {
    seed::derive_seed(spec.base_seed, &[0xC, r])
}

pub fn observer_signals(spec: &RunSpec, realization: u64) -> Result<ObserverSignals> {
    let task = realization_task(&spec.task, realization);
    let (input, output) = generate_task_signals(&task)?;
    let period_t = match task.period_t {
        Some(t) => t,
        None => estimate_period(&input.series)?,
    };
    let noise = NoiseSpec {
        levels: spec.noise,
        period_t,
        ts: task.ts,
        seed: noise_seed(spec, realization),
    };
    noise.validate()?;
    let (s_tr, s_ts) = input.series.split_at(task.n_train)?;
    let (g_tr, g_ts) = output.series.split_at(task.n_train)?;
    Ok(ObserverSignals {
        train_in: noise.apply(&s_tr, Channel::TrainInput),
        test_in: noise.apply(&s_ts, Channel::TestInput),
        train_out: noise.apply(&g_tr, Channel::TrainOutput),
        test_out: noise.apply(&g_ts, Channel::TestOutput),
        input,
        output,
        period_t,
    })
}

fn filtered(filter: &FilterSpec, ch: Channel, s: TimeSeries) -> TimeSeries {
    match filter.cutoff(ch) {
        Some(a) => lowpass(&s, a, None),
        None => s,
    }
}

/// Spectrally normalized coupling matrix and input weights of realization
/// `r`.
pub fn realization_network(spec: &RunSpec, r: u64) -> Result<(Adjacency, InputWeights)> {
    let mut net_rng = seed::rng_from(spec.base_seed, &[0xA, r]);
    let raw = erdos_renyi(spec.net.n, spec.net.p, spec.net.directed, &mut net_rng)?;
    let a = normalize_spectral(&raw)?;
    let mut w_rng = seed::rng_from(spec.base_seed, &[0xB, r]);
    let w = input_weights_with(spec.net.n, spec.w_mean, spec.w_std, &mut w_rng)?;
    Ok((a, w))
}

/// Full observer pipeline for one realization, returning both fits.
pub fn run_observer_fit(spec: &RunSpec, realization: u64) -> Result<FitResult> {
    let wrap = |e: Error| Error::Run {
        realization,
        source: Box::new(e),
    };
    spec.validate().map_err(wrap)?;
    run_inner(spec, realization).map_err(wrap)
}

fn run_inner(spec: &RunSpec, realization: u64) -> Result<FitResult> {
    let sig = observer_signals(spec, realization)?;
    let f = &spec.filter;
    let train_in = filtered(f, Channel::TrainInput, sig.train_in);
    let test_in = filtered(f, Channel::TestInput, sig.test_in);
    let train_out = filtered(f, Channel::TrainOutput, sig.train_out);
    let test_out = filtered(f, Channel::TestOutput, sig.test_out);

    let (a, w) = realization_network(spec, realization)?;

    let washout = spec.rc.washout;
    let train_states = evolve(&spec.rc, &a, &w, &train_in)?;
    let omega = readout_matrix(&train_states, washout)?;
    let g_tr = &train_out.values()[washout..];
    let coeffs = ridge_fit(&omega, g_tr, spec.beta)?;
    let h = predict(&omega, &coeffs)?;
    let delta_tr = fit_error(&h, g_tr)?;

    let (test_states, test_washout) = match spec.test_start {
        TestStart::Continue => (
            evolve_from(spec.rc.alpha, &a, &w, &test_in, train_states.last_state())?,
            0,
        ),
        TestStart::Fresh => (evolve(&spec.rc, &a, &w, &test_in)?, washout),
    };
    let omega_check = readout_matrix(&test_states, test_washout)?;
    let g_ts = &test_out.values()[test_washout..];
    let h_check = predict(&omega_check, &coeffs)?;
    let delta_ts = fit_error(&h_check, g_ts)?;
    if !(delta_tr.is_finite() && delta_ts.is_finite()) {
        return Err(Error::SingularFit);
    }
    Ok(FitResult {
        h,
        h_check,
        delta_tr,
        delta_ts,
    })
}

/// Training and testing errors of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub delta_tr: f64,
    pub delta_ts: f64,
}

pub fn run_observer(spec: &RunSpec, realization: u64) -> Result<Outcome> {
    let fit = run_observer_fit(spec, realization)?;
    Ok(Outcome {
        delta_tr: fit.delta_tr,
        delta_ts: fit.delta_ts,
    })
}

/// Sweepable run parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Param {
    Eps1,
    Eps2,
    Eps3,
    Eps4,
    /// Sets ε₁ and ε₂ together.
    EpsInputs,
    Alpha,
    Beta,
    ATr,
    ATs,
    /// Sets both cutoffs.
    A,
    P,
    /// Nonzero means directed.
    Directed,
    /// Nonzero filters both input channels.
    FilterInputs,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::Eps1 => "eps1",
            Param::Eps2 => "eps2",
            Param::Eps3 => "eps3",
            Param::Eps4 => "eps4",
            Param::EpsInputs => "eps12",
            Param::Alpha => "alpha",
            Param::Beta => "beta",
            Param::ATr => "a_tr",
            Param::ATs => "a_ts",
            Param::A => "a",
            Param::P => "p",
            Param::Directed => "directed",
            Param::FilterInputs => "filter_inputs",
        }
    }

    /// Writes `value` into `spec`.
    pub fn apply(self, spec: &mut RunSpec, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(invalid(format!("{} must be finite", self.name())));
        }
        match self {
            Param::Eps1 => spec.noise.eps1 = value,
            Param::Eps2 => spec.noise.eps2 = value,
            Param::Eps3 => spec.noise.eps3 = value,
            Param::Eps4 => spec.noise.eps4 = value,
            Param::EpsInputs => {
                spec.noise.eps1 = value;
                spec.noise.eps2 = value;
            }
            Param::Alpha => spec.rc.alpha = value,
            Param::Beta => spec.beta = value,
            Param::ATr => spec.filter.a_tr = value,
            Param::ATs => spec.filter.a_ts = value,
            Param::A => {
                spec.filter.a_tr = value;
                spec.filter.a_ts = value;
            }
            Param::P => spec.net.p = value,
            Param::Directed => spec.net.directed = value != 0.0,
            Param::FilterInputs => {
                spec.filter.enabled_tr_in = value != 0.0;
                spec.filter.enabled_ts_in = value != 0.0;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Param {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "eps1" => Param::Eps1,
            "eps2" => Param::Eps2,
            "eps3" => Param::Eps3,
            "eps4" => Param::Eps4,
            "eps12" => Param::EpsInputs,
            "alpha" => Param::Alpha,
            "beta" => Param::Beta,
            "a_tr" | "a1" => Param::ATr,
            "a_ts" | "a2" => Param::ATs,
            "a" => Param::A,
            "p" => Param::P,
            "directed" => Param::Directed,
            "filter_inputs" => Param::FilterInputs,
            other => return Err(invalid(format!("unknown sweep parameter '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub param: Param,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(param: Param, values: impl Into<Vec<f64>>) -> Self {
        Self {
            param,
            values: values.into(),
        }
    }
}

/// Realization-averaged errors of one parameter setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellStats {
    pub mean_delta_tr: f64,
    pub mean_delta_ts: f64,
    pub n_ok: usize,
}

impl CellStats {
    pub fn is_valid(&self) -> bool {
        self.n_ok > 0
    }
}

/// A failed realization inside a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub cell: usize,
    pub error: Error,
}

/// Runs every spec's realizations as one flat parallel task set and
/// averages per spec. Failed realizations are left out of the mean; a spec
/// with no successful realization reports NaN.
pub fn sweep_cells(specs: &[RunSpec]) -> (Vec<CellStats>, Vec<CellFailure>) {
    let jobs: Vec<(usize, u64)> = specs
        .iter()
        .enumerate()
        .flat_map(|(c, s)| (0..s.realizations as u64).map(move |r| (c, r)))
        .collect();
    let outcomes: Vec<Result<Outcome>> = jobs.par_iter().map(|&(c, r)| run_observer(&specs[c], r)).collect();

    let mut sums = vec![(0.0, 0.0, 0usize); specs.len()];
    let mut failures = Vec::new();
    for (&(c, _), out) in jobs.iter().zip(outcomes) {
        match out {
            Ok(o) => {
                sums[c].0 += o.delta_tr;
                sums[c].1 += o.delta_ts;
                sums[c].2 += 1;
            }
            Err(error) => failures.push(CellFailure { cell: c, error }),
        }
    }
    let stats = sums
        .into_iter()
        .map(|(tr, ts, n)| CellStats {
            mean_delta_tr: if n > 0 { tr / n as f64 } else { f64::NAN },
            mean_delta_ts: if n > 0 { ts / n as f64 } else { f64::NAN },
            n_ok: n,
        })
        .collect();
    (stats, failures)
}

/// Averaged errors over a two-parameter grid, stored row-major with `axis1`
/// as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct GridResult {
    pub axis1_name: String,
    pub axis2_name: String,
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    pub mean_delta_tr: Vec<f64>,
    pub mean_delta_ts: Vec<f64>,
    pub n_ok: Vec<usize>,
    pub realizations: usize,
    pub failures: Vec<CellFailure>,
}

impl GridResult {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * self.axis2.len() + j
    }

    pub fn delta_ts(&self, i: usize, j: usize) -> f64 {
        self.mean_delta_ts[self.idx(i, j)]
    }

    pub fn delta_tr(&self, i: usize, j: usize) -> f64 {
        self.mean_delta_tr[self.idx(i, j)]
    }

    pub fn cell_ok(&self, i: usize, j: usize) -> usize {
        self.n_ok[self.idx(i, j)]
    }

    /// Indices of the valid cell with the lowest testing error.
    pub fn argmin_ts(&self) -> Option<(usize, usize)> {
        let n2 = self.axis2.len();
        self.mean_delta_ts
            .iter()
            .enumerate()
            .filter(|(k, v)| self.n_ok[*k] > 0 && v.is_finite())
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| (k / n2, k % n2))
    }

    /// Indices of the valid cell with the highest testing error.
    pub fn argmax_ts(&self) -> Option<(usize, usize)> {
        let n2 = self.axis2.len();
        self.mean_delta_ts
            .iter()
            .enumerate()
            .filter(|(k, v)| self.n_ok[*k] > 0 && v.is_finite())
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| (k / n2, k % n2))
    }

    /// Writes one row per cell: both axis values, mean errors and the count
    /// of successful realizations. Floats carry nine significant digits;
    /// failed cells print `NaN`.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(
            out,
            "{},{},delta_tr_mean,delta_ts_mean,n_ok",
            self.axis1_name, self.axis2_name
        )?;
        for (i, &a) in self.axis1.iter().enumerate() {
            for (j, &b) in self.axis2.iter().enumerate() {
                let k = self.idx(i, j);
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    fmt_sig9(a),
                    fmt_sig9(b),
                    fmt_sig9(self.mean_delta_tr[k]),
                    fmt_sig9(self.mean_delta_ts[k]),
                    self.n_ok[k]
                )?;
            }
        }
        Ok(())
    }

    /// Parses the output of [`GridResult::write_csv`]. The realization count
    /// is recovered as the largest `n_ok`; failure details are not stored.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| invalid("empty grid file"))?
            .map_err(|e| invalid(e.to_string()))?;
        let cols: Vec<&str> = header.trim_end().split(',').collect();
        if cols.len() != 5 || cols[2..] != ["delta_tr_mean", "delta_ts_mean", "n_ok"] {
            return Err(invalid(format!("unexpected grid header '{header}'")));
        }
        let mut rows = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line.map_err(|e| invalid(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let f: Vec<&str> = line.trim_end().split(',').collect();
            let bad = || invalid(format!("grid row {}: malformed '{line}'", lineno + 2));
            if f.len() != 5 {
                return Err(bad());
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
            rows.push((
                num(f[0])?,
                num(f[1])?,
                num(f[2])?,
                num(f[3])?,
                f[4].parse::<usize>().map_err(|_| bad())?,
            ));
        }
        let mut axis1: Vec<f64> = Vec::new();
        let mut axis2: Vec<f64> = Vec::new();
        for r in &rows {
            if axis1.last().is_none_or(|&v| v.to_bits() != r.0.to_bits()) {
                axis1.push(r.0);
            }
            if axis1.len() == 1 {
                axis2.push(r.1);
            }
        }
        if axis1.len() * axis2.len() != rows.len() {
            return Err(invalid("grid rows do not form a complete rectangular grid"));
        }
        Ok(Self {
            axis1_name: cols[0].to_string(),
            axis2_name: cols[1].to_string(),
            axis1,
            axis2,
            mean_delta_tr: rows.iter().map(|r| r.2).collect(),
            mean_delta_ts: rows.iter().map(|r| r.3).collect(),
            n_ok: rows.iter().map(|r| r.4).collect(),
            realizations: rows.iter().map(|r| r.4).max().unwrap_or(0),
            failures: Vec::new(),
        })
    }
}

/// Scientific notation with nine significant digits.
pub fn fmt_sig9(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.8e}")
    } else {
        "NaN".to_string()
    }
}

/// Runs `spec` at every point of `axis1 × axis2`.
pub fn grid_sweep(spec: &RunSpec, axis1: &Axis, axis2: &Axis) -> Result<GridResult> {
    let mut specs = Vec::with_capacity(axis1.values.len() * axis2.values.len());
    for &a in &axis1.values {
        for &b in &axis2.values {
            let mut s = spec.clone();
            axis1.param.apply(&mut s, a)?;
            axis2.param.apply(&mut s, b)?;
            s.validate()?;
            specs.push(s);
        }
    }
    let (stats, failures) = sweep_cells(&specs);
    Ok(GridResult {
        axis1_name: axis1.param.name().to_string(),
        axis2_name: axis2.param.name().to_string(),
        axis1: axis1.values.clone(),
        axis2: axis2.values.clone(),
        mean_delta_tr: stats.iter().map(|c| c.mean_delta_tr).collect(),
        mean_delta_ts: stats.iter().map(|c| c.mean_delta_ts).collect(),
        n_ok: stats.iter().map(|c| c.n_ok).collect(),
        realizations: spec.realizations,
        failures,
    })
}

/// Runs `spec` at every value of one parameter.
pub fn line_sweep(spec: &RunSpec, axis: &Axis) -> Result<Vec<(f64, CellStats)>> {
    let mut specs = Vec::with_capacity(axis.values.len());
    for &v in &axis.values {
        let mut s = spec.clone();
        axis.param.apply(&mut s, v)?;
        s.validate()?;
        specs.push(s);
    }
    let (stats, _) = sweep_cells(&specs);
    Ok(axis.values.iter().copied().zip(stats).collect())
}

/// Testing error versus a cutoff shared by both input filters.
pub fn cutoff_sweep(spec: &RunSpec, a_values: &[f64]) -> Result<Vec<(f64, f64)>> {
    if let Some(a) = a_values.iter().find(|a| !(**a > 0.0)) {
        return Err(invalid(format!("cutoff values must be positive, got {a}")));
    }
    let mut s = spec.clone();
    s.filter.enabled_tr_in = true;
    s.filter.enabled_ts_in = true;
    Ok(line_sweep(&s, &Axis::new(Param::A, a_values))?
        .into_iter()
        .map(|(a, c)| (a, c.mean_delta_ts))
        .collect())
}

/// Errors over connection probability × directedness, with and without
/// input noise.
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyResult {
    pub noise_free: GridResult,
    pub noisy: GridResult,
}

/// Input-noise strength used for the noisy half of the topology and
/// leakage-rate sweeps.
pub const STUDY_INPUT_NOISE: f64 = 5.0;

pub fn topology_sweep(spec: &RunSpec, p_values: &[f64], directed: &[bool]) -> Result<TopologyResult> {
    if let Some(p) = p_values.iter().find(|p| !(**p > 0.0 && **p <= 1.0)) {
        return Err(invalid(format!("p values must lie in (0, 1], got {p}")));
    }
    let p_axis = Axis::new(Param::P, p_values);
    let d_axis = Axis::new(
        Param::Directed,
        directed.iter().map(|&d| if d { 1.0 } else { 0.0 }).collect::<Vec<_>>(),
    );
    let run = |eps: f64| {
        let mut s = spec.clone();
        s.noise.eps1 = eps;
        s.noise.eps2 = eps;
        grid_sweep(&s, &p_axis, &d_axis)
    };
    Ok(TopologyResult {
        noise_free: run(0.0)?,
        noisy: run(STUDY_INPUT_NOISE)?,
    })
}

/// Testing error versus leakage rate, with and without input noise.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaSweep {
    pub noise_free: Vec<(f64, f64)>,
    pub noisy: Vec<(f64, f64)>,
}

impl AlphaSweep {
    fn argmin(curve: &[(f64, f64)]) -> Option<usize> {
        curve
            .iter()
            .enumerate()
            .filter(|(_, (_, e))| e.is_finite())
            .min_by(|a, b| a.1 .1.total_cmp(&b.1 .1))
            .map(|(i, _)| i)
    }

    pub fn argmin_noise_free(&self) -> Option<usize> {
        Self::argmin(&self.noise_free)
    }

    pub fn argmin_noisy(&self) -> Option<usize> {
        Self::argmin(&self.noisy)
    }
}

pub fn alpha_sweep(spec: &RunSpec, alpha_values: &[f64]) -> Result<AlphaSweep> {
    if let Some(a) = alpha_values.iter().find(|a| !(**a > 0.0 && **a <= 1.0)) {
        return Err(invalid(format!("alpha values must lie in (0, 1], got {a}")));
    }
    let axis = Axis::new(Param::Alpha, alpha_values);
    let run = |eps: f64| -> Result<Vec<(f64, f64)>> {
        let mut s = spec.clone();
        s.noise.eps1 = eps;
        s.noise.eps2 = eps;
        Ok(line_sweep(&s, &axis)?
            .into_iter()
            .map(|(a, c)| (a, c.mean_delta_ts))
            .collect())
    };
    Ok(AlphaSweep {
        noise_free: run(0.0)?,
        noisy: run(STUDY_INPUT_NOISE)?,
    })
}
