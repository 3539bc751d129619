//! Ridge-regression readout and normalized fit errors.

use crate::error::{invalid, Error, Result};
use crate::linalg::{cholesky, cholesky_solve, Matrix};
use crate::series::std_dev;

/// Fitted readout weights, bias last.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients {
    pub kappa: Vec<f64>,
    pub beta: f64,
}

/// Training and testing fits of one observer run.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub h: Vec<f64>,
    pub h_check: Vec<f64>,
    pub delta_tr: f64,
    pub delta_ts: f64,
}

/// Solves `(ΩᵀΩ + βI) κ = Ωᵀ g` by Cholesky factorization. The bias
/// coefficient is penalized like every other.
pub fn ridge_fit(omega: &Matrix, target: &[f64], beta: f64) -> Result<Coefficients> {
    if omega.rows() != target.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} readout rows against {} target samples",
            omega.rows(),
            target.len()
        )));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(invalid(format!("beta must be >= 0, got {beta}")));
    }
    let mut gram = omega.gram();
    for i in 0..gram.rows() {
        gram[(i, i)] += beta;
    }
    let rhs = omega.transpose_matvec(target)?;
    let l = cholesky(&gram)?;
    let kappa = cholesky_solve(&l, &rhs);
    if kappa.iter().any(|k| !k.is_finite()) {
        return Err(Error::SingularFit);
    }
    Ok(Coefficients { kappa, beta })
}

/// `Ω κ`.
pub fn predict(omega: &Matrix, coeffs: &Coefficients) -> Result<Vec<f64>> {
    omega.matvec(&coeffs.kappa)
}

/// `std(h − g) / std(g)`.
pub fn fit_error(h: &[f64], g: &[f64]) -> Result<f64> {
    if h.len() != g.len() {
        return Err(Error::DimensionMismatch(format!(
            "fit of length {} against target of length {}",
            h.len(),
            g.len()
        )));
    }
    if g.len() < 2 {
        return Err(invalid("fit error needs at least two samples"));
    }
    let sg = std_dev(g);
    if !(sg > 0.0) {
        return Err(Error::ZeroVariance);
    }
    let diff: Vec<f64> = h.iter().zip(g).map(|(a, b)| a - b).collect();
    Ok(std_dev(&diff) / sg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_with_unit_ridge() {
        let c = ridge_fit(&Matrix::identity(2), &[1.0, 1.0], 1.0).unwrap();
        assert!(c.kappa.iter().all(|k| (k - 0.5).abs() < 1e-15));
    }

    #[test]
    fn exact_interpolation_without_ridge() {
        let om = Matrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        let g = [0.4, -1.1];
        let c = ridge_fit(&om, &g, 0.0).unwrap();
        let h = predict(&om, &c).unwrap();
        for (a, b) in h.iter().zip(g) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(fit_error(&h, &g).unwrap() < 1e-12);
    }

    #[test]
    fn rank_deficient_without_ridge_fails() {
        let om = Matrix::from_rows(&[vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]]).unwrap();
        assert_eq!(ridge_fit(&om, &[1.0, 2.0, 3.0], 0.0), Err(Error::SingularFit));
        assert!(ridge_fit(&om, &[1.0, 2.0, 3.0], 1e-6).is_ok());
    }

    #[test]
    fn predict_special_coefficients() {
        let om = Matrix::from_rows(&[vec![0.3, 1.0], vec![-0.7, 1.0]]).unwrap();
        let zero = Coefficients {
            kappa: vec![0.0, 0.0],
            beta: 0.0,
        };
        assert_eq!(predict(&om, &zero).unwrap(), vec![0.0, 0.0]);
        let bias = Coefficients {
            kappa: vec![0.0, 1.0],
            beta: 0.0,
        };
        assert_eq!(predict(&om, &bias).unwrap(), vec![1.0, 1.0]);
        let bad = Coefficients {
            kappa: vec![1.0],
            beta: 0.0,
        };
        assert!(predict(&om, &bad).is_err());
    }

    #[test]
    fn fit_error_examples() {
        let g = [1.0, -1.0, 2.0, -2.0];
        assert_eq!(fit_error(&g, &g).unwrap(), 0.0);
        let shifted: Vec<f64> = g.iter().map(|v| v + 3.0).collect();
        assert!(fit_error(&shifted, &g).unwrap() < 1e-15);
        let doubled: Vec<f64> = g.iter().map(|v| 2.0 * v).collect();
        assert!((fit_error(&doubled, &g).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(fit_error(&g, &[1.0; 4]), Err(Error::ZeroVariance));
        assert!(fit_error(&g[..1], &g[..1]).is_err());
    }
}
