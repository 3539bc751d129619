//! Measurement noise, first-order low-pass filtering and spectral analysis.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};
use crate::fft;
use crate::seed;
use crate::series::{mean, TimeSeries};

/// Fraction of cumulative spectral magnitude that defines the cutoff.
pub const DEFAULT_CUTOFF_FRACTION: f64 = 0.88;

/// The four measurement-noise channels of an observer run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    TrainInput,
    TestInput,
    TrainOutput,
    TestOutput,
}

impl Channel {
    pub const ALL: [Channel; 4] = [
        Channel::TrainInput,
        Channel::TestInput,
        Channel::TrainOutput,
        Channel::TestOutput,
    ];

    fn label(self) -> u64 {
        match self {
            Channel::TrainInput => 1,
            Channel::TestInput => 2,
            Channel::TrainOutput => 3,
            Channel::TestOutput => 4,
        }
    }
}

/// Noise strengths: training input, testing input, training target,
/// testing target.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseLevels {
    pub eps1: f64,
    pub eps2: f64,
    pub eps3: f64,
    pub eps4: f64,
}

impl NoiseLevels {
    pub fn new(eps1: f64, eps2: f64, eps3: f64, eps4: f64) -> Self {
        Self { eps1, eps2, eps3, eps4 }
    }

    pub fn get(&self, ch: Channel) -> f64 {
        match ch {
            Channel::TrainInput => self.eps1,
            Channel::TestInput => self.eps2,
            Channel::TrainOutput => self.eps3,
            Channel::TestOutput => self.eps4,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for ch in Channel::ALL {
            let e = self.get(ch);
            if !(e >= 0.0 && e.is_finite()) {
                return Err(invalid(format!("noise strength must be >= 0, got {e}")));
            }
        }
        Ok(())
    }
}

/// Noise strengths together with the weighting constants and seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub levels: NoiseLevels,
    pub period_t: f64,
    pub ts: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn validate(&self) -> Result<()> {
        self.levels.validate()?;
        if !(self.period_t > 0.0 && self.period_t.is_finite()) {
            return Err(invalid(format!("period_t must be positive, got {}", self.period_t)));
        }
        if !(self.ts > 0.0) {
            return Err(invalid(format!("ts must be positive, got {}", self.ts)));
        }
        Ok(())
    }

    /// Independent RNG stream for one channel.
    pub fn stream(&self, ch: Channel) -> seed::Rng {
        seed::rng_from(self.seed, &[0x4e, ch.label()])
    }

    /// Per-sample standard deviation of the added noise.
    pub fn sigma(&self, ch: Channel) -> f64 {
        self.levels.get(ch) * (self.ts / self.period_t).sqrt()
    }

    /// Signal-to-noise ratio `T / (ts ε²)` of a channel on a unit-variance
    /// signal. Infinite for a noise-free channel.
    pub fn snr(&self, ch: Channel) -> f64 {
        let e = self.levels.get(ch);
        self.period_t / (self.ts * e * e)
    }

    /// Corrupts `series` with this spec's noise for channel `ch`.
    pub fn apply(&self, series: &TimeSeries, ch: Channel) -> TimeSeries {
        add_noise(series, self.levels.get(ch), self.period_t, &mut self.stream(ch))
    }
}

/// Adds i.i.d. Gaussian noise with standard deviation `eps * sqrt(ts / T)`.
pub fn add_noise<R: Rng + ?Sized>(series: &TimeSeries, eps: f64, period_t: f64, rng: &mut R) -> TimeSeries {
    if eps == 0.0 {
        return series.clone();
    }
    let sigma = eps * (series.ts() / period_t).sqrt();
    let values = series
        .values()
        .iter()
        .map(|&x| {
            let z: f64 = rng.sample(StandardNormal);
            x + sigma * z
        })
        .collect();
    TimeSeries::from_parts(values, series.ts())
}

/// Which signals pass through a low-pass filter, and at what cutoff.
/// Training channels use `a_tr`, testing channels use `a_ts`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FilterSpec {
    pub enabled_tr_in: bool,
    pub enabled_ts_in: bool,
    pub enabled_tr_out: bool,
    pub enabled_ts_out: bool,
    pub a_tr: f64,
    pub a_ts: f64,
}

impl Default for FilterSpec {
    fn default() -> Self {
        Self::disabled()
    }
}

impl FilterSpec {
    pub fn disabled() -> Self {
        Self {
            enabled_tr_in: false,
            enabled_ts_in: false,
            enabled_tr_out: false,
            enabled_ts_out: false,
            a_tr: 1.0,
            a_ts: 1.0,
        }
    }

    /// Both input channels filtered at cutoff `a`.
    pub fn inputs(a: f64) -> Self {
        Self {
            enabled_tr_in: true,
            enabled_ts_in: true,
            a_tr: a,
            a_ts: a,
            ..Self::disabled()
        }
    }

    /// Cutoff for `ch`, or `None` when that channel is unfiltered.
    pub fn cutoff(&self, ch: Channel) -> Option<f64> {
        match ch {
            Channel::TrainInput if self.enabled_tr_in => Some(self.a_tr),
            Channel::TestInput if self.enabled_ts_in => Some(self.a_ts),
            Channel::TrainOutput if self.enabled_tr_out => Some(self.a_tr),
            Channel::TestOutput if self.enabled_ts_out => Some(self.a_ts),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for ch in Channel::ALL {
            if let Some(a) = self.cutoff(ch) {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(invalid(format!("filter cutoff must be positive, got {a}")));
                }
            }
        }
        Ok(())
    }
}

/// First-order low-pass filter `x̂' = a (x̃ − x̂)` discretized exactly under a
/// zero-order hold on the input. `x0` defaults to the first input sample.
pub fn lowpass(series: &TimeSeries, a: f64, x0: Option<f64>) -> TimeSeries {
    let v = series.values();
    let gain = -(-a * series.ts()).exp_m1();
    let mut state = x0.unwrap_or(v[0]);
    let mut out = Vec::with_capacity(v.len());
    for &x in v {
        out.push(state);
        state += gain * (x - state);
    }
    TimeSeries::from_parts(out, series.ts())
}

/// One-sided periodogram.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Bin frequencies in cycles per time unit, `0..=1/(2 ts)`.
    pub freqs: Vec<f64>,
    pub power: Vec<f64>,
}

impl Spectrum {
    pub fn bin_width(&self) -> f64 {
        self.freqs.get(1).copied().unwrap_or(0.0)
    }

    /// Frequency of the strongest nonzero bin.
    pub fn peak_frequency(&self) -> Option<f64> {
        self.power
            .iter()
            .enumerate()
            .skip(1)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, _)| self.freqs[i])
    }
}

/// Hann window of length `n` (symmetric form).
pub fn hann(n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![1.0];
    }
    (0..n)
        .map(|i| 0.5 - 0.5 * (2.0 * PI * i as f64 / (n - 1) as f64).cos())
        .collect()
}

/// Mean-removed, Hann-windowed periodogram, zero-padded to the next power of
/// two. Bins are scaled so that their sum equals the energy of the windowed
/// signal.
pub fn power_spectrum(series: &TimeSeries) -> Spectrum {
    let v = series.values();
    let n = v.len().max(2);
    let nfft = n.next_power_of_two();
    let m = mean(v);
    let window = hann(v.len());
    let mut re = vec![0.0; nfft];
    let mut im = vec![0.0; nfft];
    for (i, (&x, &w)) in v.iter().zip(&window).enumerate() {
        re[i] = (x - m) * w;
    }
    fft::fft_in_place(&mut re, &mut im);
    let half = nfft / 2;
    let scale = 1.0 / nfft as f64;
    let power = (0..=half)
        .map(|k| {
            let p = (re[k] * re[k] + im[k] * im[k]) * scale;
            if k == 0 || k == half {
                p
            } else {
                2.0 * p
            }
        })
        .collect();
    let df = 1.0 / (nfft as f64 * series.ts());
    let freqs = (0..=half).map(|k| k as f64 * df).collect();
    Spectrum { freqs, power }
}

/// Smallest bin frequency (cycles per time unit) at which the cumulative
/// spectral magnitude reaches `fraction` of its total.
pub fn cutoff_frequency(spec: &Spectrum, fraction: f64) -> Result<f64> {
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(invalid(format!("fraction must lie in (0, 1), got {fraction}")));
    }
    let mags: Vec<f64> = spec.power.iter().map(|p| p.max(0.0).sqrt()).collect();
    let total: f64 = mags.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Estimation {
            what: "cutoff",
            reason: "spectrum has zero total power".into(),
        });
    }
    let goal = fraction * total;
    let mut acc = 0.0;
    for (f, m) in spec.freqs.iter().zip(&mags) {
        acc += m;
        if acc >= goal {
            return Ok(*f);
        }
    }
    Ok(*spec.freqs.last().expect("non-empty spectrum"))
}

/// Low-pass cutoff `a` (inverse time units, the coefficient of the filter
/// ODE) matched to the spectrum: `2π` times [`cutoff_frequency`].
pub fn estimate_cutoff(spec: &Spectrum, fraction: f64) -> Result<f64> {
    Ok(2.0 * PI * cutoff_frequency(spec, fraction)?)
}
