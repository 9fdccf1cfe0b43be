//! Test-only oracles, independent of the library's numerical paths.
#![allow(dead_code, clippy::needless_range_loop)]

use moran_core::rng::substream;
use moran_core::Matrix;
use moran_core::Weights;
use rand::Rng;

/// Eigenvalues of a symmetric matrix, ascending: Householder reduction to
/// tridiagonal form, then bisection on the Sturm sequence count.
pub fn sturm_eigenvalues(a: &[Vec<f64>]) -> Vec<f64> {
    let (diag, off) = tridiagonalize(a);
    let n = diag.len();
    let radius = (0..n)
        .map(|i| {
            let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { off[i].abs() } else { 0.0 };
            (diag[i] - left - right)
                .abs()
                .max((diag[i] + left + right).abs())
        })
        .fold(0.0, f64::max)
        + 1.0;
    (0..n)
        .map(|k| {
            // smallest x with count_below(x) > k
            let (mut lo, mut hi) = (-radius, radius);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count_below(&diag, &off, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo < 1e-15 * radius {
                    break;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

fn count_below(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..diag.len() {
        let b2 = if i > 0 { off[i - 1] * off[i - 1] } else { 0.0 };
        q = diag[i] - x - if i > 0 { b2 / q } else { 0.0 };
        if q == 0.0 {
            q = -1e-300;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn tridiagonalize(a: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let n = a.len();
    let mut a: Vec<Vec<f64>> = a.to_vec();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<f64> = (k + 1..n).map(|i| a[i][k]).collect();
        let alpha = -x[0].signum() * x.iter().map(|v| v * v).sum::<f64>().sqrt();
        if alpha == 0.0 {
            continue;
        }
        let mut v = x.clone();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        // P = I − 2 v vᵀ / vᵀv acting on rows/cols k+1..n
        let m = n - k - 1;
        let mut full = vec![vec![0.0; n]; n];
        for i in 0..n {
            full[i][i] = 1.0;
        }
        for i in 0..m {
            for j in 0..m {
                full[k + 1 + i][k + 1 + j] -= 2.0 * v[i] * v[j] / vnorm2;
            }
        }
        a = mul(&mul(&full, &a), &full);
    }
    let diag = (0..n).map(|i| a[i][i]).collect();
    let off = (0..n.saturating_sub(1)).map(|i| a[i + 1][i]).collect();
    (diag, off)
}

fn mul(x: &[Vec<f64>], y: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = x.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| x[i][k] * y[k][j]).sum())
                .collect()
        })
        .collect()
}

/// Moran's I evaluated term by term on an arbitrary (possibly asymmetric) raw matrix.
pub fn moran_brute(y: &[f64], raw: &[Vec<f64>]) -> f64 {
    let n = y.len();
    let mean = y.iter().sum::<f64>() / n as f64;
    let mut num = 0.0;
    let mut s0 = 0.0;
    for i in 0..n {
        for j in 0..n {
            num += raw[i][j] * (y[i] - mean) * (y[j] - mean);
            s0 += raw[i][j];
        }
    }
    let den: f64 = y.iter().map(|v| (v - mean) * (v - mean)).sum();
    n as f64 * num / (s0 * den)
}

/// Random asymmetric nonnegative raw weights with zero diagonal and roughly
/// half the off-diagonal cells zero; always has at least one positive weight.
pub fn random_raw(n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = substream(seed, 0xfeed);
    let mut raw = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(0.5) {
                raw[i][j] = rng.random_range(0.0..3.0);
            }
        }
    }
    raw[0][1] += 1.0;
    raw
}

pub fn random_weights(n: usize, seed: u64) -> Weights {
    Weights::from_rows(&random_raw(n, seed)).unwrap()
}

pub fn random_y(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = substream(seed, 0xbeef);
    (0..n).map(|_| rng.random_range(-5.0..5.0)).collect()
}

pub fn random_symmetric(m: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = substream(seed, 0x5eed);
    let mut a = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i..m {
            let x = rng.random_range(-2.0..2.0);
            a[i][j] = x;
            a[j][i] = x;
        }
    }
    a
}

pub fn to_matrix(a: &[Vec<f64>]) -> Matrix {
    Matrix::from_rows(a).unwrap()
}

pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
