//! Leaky-tanh reservoir driven by a scalar signal.

use crate::error::{invalid, Error, Result};
use crate::linalg::Matrix;
use crate::netgen::{Adjacency, InputWeights};
use crate::series::TimeSeries;

/// Starting state of the reservoir.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum InitialState {
    #[default]
    Zero,
    Given(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReservoirConfig {
    pub n_nodes: usize,
    /// Leakage rate in `[0, 1]`.
    pub alpha: f64,
    /// Leading training rows dropped before the readout fit.
    pub washout: usize,
    pub r0: InitialState,
}

impl ReservoirConfig {
    pub fn new(n_nodes: usize, alpha: f64) -> Self {
        Self {
            n_nodes,
            alpha,
            washout: 1000,
            r0: InitialState::Zero,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_nodes == 0 {
            return Err(invalid("reservoir needs at least one node"));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(invalid(format!("alpha must lie in [0, 1], got {}", self.alpha)));
        }
        if let InitialState::Given(r) = &self.r0 {
            if r.len() != self.n_nodes {
                return Err(Error::DimensionMismatch(format!(
                    "initial state has {} entries for {} nodes",
                    r.len(),
                    self.n_nodes
                )));
            }
        }
        Ok(())
    }

    fn initial_vector(&self) -> Vec<f64> {
        match &self.r0 {
            InitialState::Zero => vec![0.0; self.n_nodes],
            InitialState::Given(r) => r.clone(),
        }
    }
}

/// Reservoir trajectory, one row per driven step: row `t` holds `r(t + 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateMatrix(pub Matrix);

impl StateMatrix {
    pub fn steps(&self) -> usize {
        self.0.rows()
    }

    pub fn last_state(&self) -> &[f64] {
        self.0.row(self.0.rows() - 1)
    }
}

/// Reservoir states plus a trailing all-ones bias column.
#[derive(Debug, Clone, PartialEq)]
pub struct ReadoutMatrix(pub Matrix);

impl std::ops::Deref for ReadoutMatrix {
    type Target = Matrix;
    fn deref(&self) -> &Matrix {
        &self.0
    }
}

/// Iterates `r ← (1−α) r + α tanh(A r + w s)` once per drive sample.
pub fn evolve(cfg: &ReservoirConfig, a: &Adjacency, w: &InputWeights, drive: &TimeSeries) -> Result<StateMatrix> {
    cfg.validate()?;
    evolve_from(cfg.alpha, a, w, drive, &cfg.initial_vector())
}

/// [`evolve`] from an explicit starting state, e.g. the last training state
/// when testing continues straight after training.
pub fn evolve_from(alpha: f64, a: &Adjacency, w: &InputWeights, drive: &TimeSeries, r0: &[f64]) -> Result<StateMatrix> {
    let n = a.n();
    if w.len() != n || r0.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "network has {n} nodes, input weights {}, initial state {}",
            w.len(),
            r0.len()
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(invalid(format!("alpha must lie in [0, 1], got {alpha}")));
    }
    let m = a.matrix();
    let w = w.as_slice();
    let keep = 1.0 - alpha;
    let mut out = Matrix::zeros(drive.len(), n);
    let mut r = r0.to_vec();
    let mut pre = vec![0.0; n];
    for (t, &s) in drive.values().iter().enumerate() {
        m.matvec_into(&r, &mut pre);
        for ((ri, &p), &wi) in r.iter_mut().zip(&pre).zip(w) {
            *ri = keep * *ri + alpha * (p + wi * s).tanh();
        }
        out.row_mut(t).copy_from_slice(&r);
    }
    Ok(StateMatrix(out))
}

/// Drops the first `washout` rows and appends the bias column.
pub fn readout_matrix(states: &StateMatrix, washout: usize) -> Result<ReadoutMatrix> {
    let rows = states.steps();
    if washout >= rows {
        return Err(Error::WashoutTooLarge { washout, rows });
    }
    let n = states.0.cols();
    let mut out = Matrix::zeros(rows - washout, n + 1);
    for (i, t) in (washout..rows).enumerate() {
        let row = out.row_mut(i);
        row[..n].copy_from_slice(states.0.row(t));
        row[n] = 1.0;
    }
    Ok(ReadoutMatrix(out))
}
