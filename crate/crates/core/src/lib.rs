//! Reservoir observers under measurement noise.
//!
//! The pipeline: integrate a chaotic system ([`dynamics`]), corrupt the
//! normalized input and target with white noise and optionally low-pass
//! filter them ([`signal`]), drive a leaky-tanh echo-state reservoir built
//! on a spectrally normalized Erdős–Rényi network ([`netgen`],
//! [`reservoir`]), fit a ridge readout ([`readout`]) and report normalized
//! training/testing errors. [`sweeps`] runs that pipeline over parameter
//! grids.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dynamics;
pub mod error;
mod fft;
pub mod linalg;
pub mod netgen;
pub mod readout;
pub mod reservoir;
pub mod seed;
mod series;
pub mod signal;
pub mod sweeps;

pub use dynamics::{SystemId, Task, Var};
pub use error::{Error, Result};
pub use fft::fft_in_place;
pub use series::TimeSeries;
pub use signal::{FilterSpec, NoiseLevels, NoiseSpec};
pub use sweeps::{Axis, GridResult, Param, RunSpec};
