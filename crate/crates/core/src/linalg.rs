//! Small dense helpers: exact determinants and nonnegative spectral radii.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Determinant by fraction-free Gaussian elimination (Bareiss).
pub(crate) fn det_bareiss(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Spectral radius of a nonnegative square matrix.
///
/// Power iteration runs on `M + I`, whose positive diagonal keeps the iterate
/// strictly positive, so the Collatz–Wielandt quotients bracket the radius at
/// every step. Iteration stops once the bracket is narrower than `tol`
/// relative to the radius.
pub(crate) fn nonneg_spectral_radius(m: &[Vec<f64>], tol: f64, max_iter: usize) -> Result<f64> {
    let n = m.len();
    if n == 0 {
        return Ok(0.0);
    }
    let mut x = vec![1.0f64; n];
    let mut y = vec![0.0f64; n];
    let mut gap = f64::INFINITY;
    let mut hi = 0.0;
    for _ in 0..max_iter {
        for (i, row) in m.iter().enumerate() {
            y[i] = x[i] + row.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>();
        }
        let mut lo = f64::INFINITY;
        hi = 0.0f64;
        for i in 0..n {
            let q = y[i] / x[i];
            lo = lo.min(q);
            hi = hi.max(q);
        }
        gap = hi - lo;
        if gap <= tol * hi {
            return Ok(0.5 * (hi + lo) - 1.0);
        }
        let scale = y.iter().cloned().fold(0.0f64, f64::max);
        for i in 0..n {
            x[i] = y[i] / scale;
        }
    }
    Err(Error::numeric(
        format!("power iteration did not converge (radius estimate {})", hi - 1.0),
        gap,
    ))
}
