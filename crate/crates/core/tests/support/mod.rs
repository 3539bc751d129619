//! Reference implementations and brute-force checks shared by the oracle
//! tests and the acceptance suite. Each check panics on mismatch.

#![allow(dead_code, clippy::needless_range_loop)]

use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;

use rcobs::dynamics::{rk4, State3};
use rcobs::linalg::Matrix;
use rcobs::netgen::{erdos_renyi, spectral_radius, spectral_radius_of};
use rcobs::readout::ridge_fit;
use rcobs::seed;
use rcobs::signal::{add_noise, hann, power_spectrum};
use rcobs::{fft_in_place, TimeSeries};

pub fn rng(s: u64) -> seed::Rng {
    seed::Rng::seed_from_u64(s)
}

pub fn gauss(rng: &mut seed::Rng) -> f64 {
    rng.sample(StandardNormal)
}

/// Gaussian elimination with partial pivoting on a dense copy.
fn gauss_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
            b[r] -= f * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let s: f64 = (r + 1..n).map(|c| a[r][c] * x[c]).sum();
        x[r] = (b[r] - s) / a[r][r];
    }
    x
}

pub fn check_ridge() {
    let mut r = rng(11);
    for case in 0..20 {
        let m = r.random_range(20..80);
        let k = r.random_range(2..12);
        let beta = [0.0, 1e-8, 1e-3, 1.0][case % 4];
        let rows: Vec<Vec<f64>> = (0..m).map(|_| (0..k).map(|_| gauss(&mut r)).collect()).collect();
        let g: Vec<f64> = (0..m).map(|_| gauss(&mut r)).collect();
        let omega = Matrix::from_rows(&rows).unwrap();
        let got = ridge_fit(&omega, &g, beta).unwrap().kappa;

        let mut normal = vec![vec![0.0; k]; k];
        let mut rhs = vec![0.0; k];
        for (row, gi) in rows.iter().zip(&g) {
            for i in 0..k {
                rhs[i] += row[i] * gi;
                for j in 0..k {
                    normal[i][j] += row[i] * row[j];
                }
            }
        }
        for (i, row) in normal.iter_mut().enumerate() {
            row[i] += beta;
        }
        let want = gauss_solve(normal, rhs);
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() <= 1e-9, "case {case}: {a} vs {b}");
        }
    }
}

fn naive_dft(re: &[f64], im: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = re.len();
    let mut out_re = vec![0.0; n];
    let mut out_im = vec![0.0; n];
    for k in 0..n {
        for t in 0..n {
            let ang = -2.0 * std::f64::consts::PI * (k * t % n) as f64 / n as f64;
            out_re[k] += re[t] * ang.cos() - im[t] * ang.sin();
            out_im[k] += re[t] * ang.sin() + im[t] * ang.cos();
        }
    }
    (out_re, out_im)
}

pub fn check_fft() {
    let mut r = rng(5);
    for n in [1usize, 2, 4, 8, 64, 256] {
        let re: Vec<f64> = (0..n).map(|_| gauss(&mut r)).collect();
        let im: Vec<f64> = (0..n).map(|_| gauss(&mut r)).collect();
        let (wr, wi) = naive_dft(&re, &im);
        let (mut fr, mut fi) = (re.clone(), im.clone());
        fft_in_place(&mut fr, &mut fi);
        for k in 0..n {
            assert!(
                (fr[k] - wr[k]).abs() < 1e-9 && (fi[k] - wi[k]).abs() < 1e-9,
                "n={n} k={k}"
            );
        }
    }
}

pub fn check_periodogram() {
    let mut r = rng(6);
    for n in [2usize, 17, 100, 128, 256] {
        let v: Vec<f64> = (0..n).map(|_| gauss(&mut r)).collect();
        let spec = power_spectrum(&TimeSeries::new(v.clone(), 0.01).unwrap());

        let nfft = n.next_power_of_two();
        let mean = v.iter().sum::<f64>() / n as f64;
        let w = hann(n);
        let mut re = vec![0.0; nfft];
        for i in 0..n {
            re[i] = (v[i] - mean) * w[i];
        }
        let energy: f64 = re.iter().map(|x| x * x).sum();
        let (dr, di) = naive_dft(&re, &vec![0.0; nfft]);
        for k in 0..=nfft / 2 {
            let mut p = (dr[k] * dr[k] + di[k] * di[k]) / nfft as f64;
            if k != 0 && k != nfft / 2 {
                p *= 2.0;
            }
            assert!((spec.power[k] - p).abs() < 1e-9, "n={n} k={k}");
        }
        let total: f64 = spec.power.iter().sum();
        assert!((total - energy).abs() <= 1e-9 * energy.max(1e-300), "parseval n={n}");
    }
}

/// Characteristic polynomial coefficients by Faddeev–LeVerrier, highest
/// degree first.
fn char_poly(a: &[Vec<f64>]) -> Vec<f64> {
    let n = a.len();
    let matmul = |x: &[Vec<f64>], y: &[Vec<f64>]| -> Vec<Vec<f64>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum()).collect())
            .collect()
    };
    let mut coeffs = vec![1.0];
    let mut m = vec![vec![0.0; n]; n];
    for k in 1..=n {
        let mut am = matmul(a, &m);
        let c_prev = *coeffs.last().unwrap();
        for (i, row) in am.iter_mut().enumerate() {
            row[i] += c_prev;
        }
        m = am;
        let trace: f64 = (0..n).map(|i| matmul(a, &m)[i][i]).sum();
        coeffs.push(-trace / k as f64);
    }
    coeffs
}

fn real_roots(coeffs: &[f64], bound: f64) -> Vec<f64> {
    let p = |x: f64| coeffs.iter().fold(0.0, |acc, c| acc * x + c);
    let steps = 200_000;
    let h = 2.0 * bound / steps as f64;
    let mut roots = Vec::new();
    let mut lo = -bound;
    for i in 1..=steps {
        let hi = -bound + i as f64 * h;
        if p(lo) == 0.0 {
            roots.push(lo);
        } else if p(lo).signum() != p(hi).signum() && p(hi) != 0.0 {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if p(a).signum() == p(mid).signum() {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
        lo = hi;
    }
    roots
}

pub fn check_power_iteration_roots() {
    let mut r = rng(21);
    for case in 0..10 {
        let n = 5;
        let mut a = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..=i {
                let v = gauss(&mut r);
                a[i][j] = v;
                a[j][i] = v;
            }
        }
        let bound = a
            .iter()
            .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
            + 1.0;
        let roots = real_roots(&char_poly(&a), bound);
        assert_eq!(roots.len(), n, "case {case}: {roots:?}");
        let want = roots.iter().map(|x| x.abs()).fold(0.0, f64::max);
        let got = spectral_radius_of(&Matrix::from_rows(&a).unwrap(), 1e-13, 200_000).unwrap();
        assert!((got - want).abs() <= 1e-6 * want, "case {case}: {got} vs {want}");
    }
}

pub fn check_complete_graphs() {
    for n in [2usize, 3, 10] {
        let k = erdos_renyi(n, 1.0, false, &mut rng(0)).unwrap();
        let got = spectral_radius(&k, 1e-13, 100_000).unwrap();
        assert!((got - (n - 1) as f64).abs() < 1e-6, "K{n}: {got}");
    }
}

pub fn check_rk4_order() {
    let decay = |s: State3| State3::new(-s.x, 0.0, 0.0);
    let err = |dt: f64| {
        let steps = (1.0 / dt).round() as usize;
        let mut s = State3::new(1.0, 0.0, 0.0);
        for _ in 0..steps {
            s = rk4(decay, s, dt);
        }
        (s.x - (-1.0f64).exp()).abs()
    };
    let e = [err(0.1), err(0.05), err(0.025)];
    for w in e.windows(2) {
        let ratio = w[0] / w[1];
        assert!((8.0..=32.0).contains(&ratio), "ratio {ratio}");
    }
}

pub fn check_noise_std() {
    let n = 1_000_000;
    let x = TimeSeries::new(vec![0.0; n], 0.01).unwrap();
    let y = add_noise(&x, 5.0, 1.0, &mut rng(77));
    let v = y.values();
    let m = v.iter().sum::<f64>() / n as f64;
    let sd = (v.iter().map(|a| (a - m).powi(2)).sum::<f64>() / n as f64).sqrt();
    assert!((sd - 0.5).abs() <= 0.005 * 0.5, "std {sd}");
}
