//! Reservoir coupling networks and input weights.

use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{invalid, Error, Result};
use crate::linalg::{norm2, Matrix};
use crate::seed;

/// Restarts from a fresh random vector before giving up on power iteration.
const MAX_RESTARTS: u64 = 20;

/// Square coupling matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjacency {
    matrix: Matrix,
}

impl Adjacency {
    pub fn from_matrix(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "adjacency must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if (0..matrix.rows()).any(|i| matrix[(i, i)] != 0.0) {
            return Err(invalid("adjacency diagonal must be zero"));
        }
        Ok(Self { matrix })
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..i).all(|j| self.matrix[(i, j)] == self.matrix[(j, i)]))
    }

    /// Nonzero off-diagonal entries (each unordered pair counted once when
    /// symmetric).
    pub fn edge_count(&self) -> usize {
        let nnz = self.matrix.as_slice().iter().filter(|&&v| v != 0.0).count();
        if self.is_symmetric() {
            nnz / 2
        } else {
            nnz
        }
    }

    /// Nonzero entries as `(row, col, weight)`, row-major.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| {
            (0..n).filter_map(move |j| {
                let w = self.matrix[(i, j)];
                (w != 0.0).then_some((i, j, w))
            })
        })
    }
}

/// Erdős–Rényi G(n, p) adjacency. Undirected graphs draw each unordered pair
/// once; directed graphs draw every ordered pair.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, directed: bool, rng: &mut R) -> Result<Adjacency> {
    if n < 2 {
        return Err(invalid(format!("network needs at least 2 nodes, got {n}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("connection probability must lie in [0, 1], got {p}")));
    }
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i == j || (!directed && j < i) {
                continue;
            }
            if rng.random::<f64>() < p {
                m[(i, j)] = 1.0;
                if !directed {
                    m[(j, i)] = 1.0;
                }
            }
        }
    }
    Adjacency::from_matrix(m)
}

/// Dominant eigenvalue modulus of a square matrix by power iteration.
///
/// Each round applies the matrix twice to a normalized vector and reads the
/// estimate off `‖M y‖`, which also settles when the dominant eigenvalues
/// come as a `±λ` pair. Converged when successive estimates differ by less
/// than `tol` (relative). A stagnating run restarts from a new random
/// vector.
pub fn spectral_radius_of(m: &Matrix, tol: f64, max_iter: usize) -> Result<f64> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::DimensionMismatch(
            "spectral radius of a non-square matrix".into(),
        ));
    }
    if m.as_slice().iter().all(|&v| v == 0.0) {
        return Err(Error::DegenerateNetwork("matrix is identically zero".into()));
    }
    let n = m.rows();
    let mut y = vec![0.0; n];
    let mut z = vec![0.0; n];
    for restart in 0..MAX_RESTARTS {
        let mut rng = seed::rng_from(0x5ad1, &[restart]);
        y.iter_mut().for_each(|v| *v = rng.random_range(0.5..1.5));
        if restart > 0 {
            // mixed signs reach eigenvectors orthogonal to the positive cone
            y.iter_mut()
                .for_each(|v| *v *= if rng.random::<bool>() { 1.0 } else { -1.0 });
        }
        let ny = norm2(&y);
        y.iter_mut().for_each(|v| *v /= ny);

        let mut prev = f64::NAN;
        for _ in 0..max_iter {
            m.matvec_into(&y, &mut z);
            let est = norm2(&z);
            if est == 0.0 {
                break;
            }
            if (est - prev).abs() <= tol * est {
                return Ok(est);
            }
            prev = est;
            // second application keeps a ±λ pair from flipping the vector
            z.iter_mut().for_each(|v| *v /= est);
            m.matvec_into(&z, &mut y);
            let ny = norm2(&y);
            if ny == 0.0 {
                break;
            }
            y.iter_mut().for_each(|v| *v /= ny);
        }
    }
    Err(Error::Estimation {
        what: "spectral radius",
        reason: format!("power iteration did not converge after {MAX_RESTARTS} restarts"),
    })
}

pub fn spectral_radius(a: &Adjacency, tol: f64, max_iter: usize) -> Result<f64> {
    spectral_radius_of(a.matrix(), tol, max_iter)
}

/// Divides every entry by the spectral radius.
pub fn normalize_spectral(a: &Adjacency) -> Result<Adjacency> {
    let rho = spectral_radius(a, 1e-13, 100_000)?;
    if !(rho > 0.0) {
        return Err(Error::DegenerateNetwork("spectral radius is zero".into()));
    }
    let mut m = a.matrix().clone();
    m.scale(1.0 / rho);
    Ok(Adjacency { matrix: m })
}

/// Input coupling vector.
#[derive(Debug, Clone, PartialEq)]
pub struct InputWeights(pub Vec<f64>);

impl InputWeights {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

pub const INPUT_WEIGHT_MEAN: f64 = 1.0;
pub const INPUT_WEIGHT_STD: f64 = 0.1;

/// Input weight distribution used by observer runs. The narrow draw above
/// drives all nodes almost identically and leaves the readout fit badly
/// conditioned.
pub const WIDE_INPUT_WEIGHT_MEAN: f64 = 0.01;
pub const WIDE_INPUT_WEIGHT_STD: f64 = 1.0;

/// I.i.d. Gaussian input weights with mean 1 and standard deviation 0.1.
pub fn input_weights<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<InputWeights> {
    input_weights_with(n, INPUT_WEIGHT_MEAN, INPUT_WEIGHT_STD, rng)
}

pub fn input_weights_with<R: Rng + ?Sized>(n: usize, mean: f64, std: f64, rng: &mut R) -> Result<InputWeights> {
    if n == 0 {
        return Err(invalid("input weight vector needs at least one entry"));
    }
    let dist = Normal::new(mean, std).map_err(|e| invalid(format!("input weight distribution: {e}")))?;
    Ok(InputWeights((0..n).map(|_| dist.sample(rng)).collect()))
}
