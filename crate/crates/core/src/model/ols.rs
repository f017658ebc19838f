//! Dense least squares via Householder QR. Sized for a handful of columns and a few dozen rows.

use crate::error::{Error, Result};

/// Relative threshold on a diagonal of R, scaled by the original column norm, below which the
/// column is treated as a linear combination of earlier ones.
const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct OlsFit {
    pub coefficients: Vec<f64>,
    pub residuals: Vec<f64>,
    pub rss: f64,
}

/// Solves `min ||X b - y||` for column-major `columns` (each of length `y.len()`).
pub fn least_squares(columns: &[Vec<f64>], y: &[f64]) -> Result<OlsFit> {
    let n = y.len();
    let p = columns.len();
    if n < p || p == 0 {
        return Err(Error::TooFewRows { needed: p.max(1), got: n });
    }
    assert!(columns.iter().all(|c| c.len() == n), "ragged design matrix");

    let mut a: Vec<Vec<f64>> = columns.to_vec();
    let mut qty = y.to_vec();
    let norms: Vec<f64> = columns.iter().map(|c| norm(c)).collect();

    for k in 0..p {
        let alpha = {
            let s = norm(&a[k][k..]);
            if a[k][k] > 0.0 {
                -s
            } else {
                s
            }
        };
        if alpha.abs() <= RANK_TOL * norms[k].max(f64::MIN_POSITIVE) {
            return Err(Error::RankDeficientDesign { column: k });
        }
        // v = x - alpha e1, stored in place of column k below the diagonal
        let mut v: Vec<f64> = a[k][k..].to_vec();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        a[k][k] = alpha;
        for x in a[k][k + 1..].iter_mut() {
            *x = 0.0;
        }
        if vnorm2 == 0.0 {
            continue;
        }
        for col in a.iter_mut().skip(k + 1) {
            reflect(&v, vnorm2, &mut col[k..]);
        }
        reflect(&v, vnorm2, &mut qty[k..]);
    }

    let mut b = vec![0.0; p];
    for i in (0..p).rev() {
        let s: f64 = (i + 1..p).map(|j| a[j][i] * b[j]).sum();
        b[i] = (qty[i] - s) / a[i][i];
    }

    let residuals: Vec<f64> = (0..n)
        .map(|r| y[r] - columns.iter().zip(&b).map(|(c, bj)| c[r] * bj).sum::<f64>())
        .collect();
    let rss = residuals.iter().map(|e| e * e).sum();
    Ok(OlsFit {
        coefficients: b,
        residuals,
        rss,
    })
}

fn reflect(v: &[f64], vnorm2: f64, x: &mut [f64]) {
    let dot: f64 = v.iter().zip(x.iter()).map(|(a, b)| a * b).sum();
    let f = 2.0 * dot / vnorm2;
    for (xi, vi) in x.iter_mut().zip(v) {
        *xi -= f * vi;
    }
}

fn norm(x: &[f64]) -> f64 {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return 0.0;
    }
    scale * x.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt()
}
