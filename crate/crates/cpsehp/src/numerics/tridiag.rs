//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
//! smallest eigenvalues, inverse iteration for eigenvectors.

use crate::error::{Error, Result};

const PIVOT_GUARD: f64 = 1e-300;

/// Number of eigenvalues strictly below `lambda`, counted as negative
/// pivots of the LDLT factorization of `T - lambda I`.
pub fn sturm_count(diag: &[f64], offdiag: &[f64], lambda: f64) -> usize {
    let n = diag.len();
    if n == 0 {
        return 0;
    }
    let mut count = 0;
    let mut q = diag[0] - lambda;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < PIVOT_GUARD {
            if q >= 0.0 {
                PIVOT_GUARD
            } else {
                -PIVOT_GUARD
            }
        } else {
            q
        };
        q = (diag[i] - lambda) - offdiag[i - 1] * offdiag[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues, ascending, by bisection on the Sturm count.
///
/// Absolute tolerance 1e-12 relative to the Gershgorin scale of the matrix.
pub fn tridiag_smallest_eigen(diag: &[f64], offdiag: &[f64], k: usize) -> Result<Vec<f64>> {
    let n = diag.len();
    if offdiag.len() + 1 != n {
        return Err(Error::Dimension(format!(
            "offdiag length {} must be diag length {} minus one",
            offdiag.len(),
            n
        )));
    }
    if k == 0 || k > n {
        return Err(Error::Dimension(format!(
            "requested {k} eigenvalues of a {n}x{n} matrix"
        )));
    }

    // Gershgorin bounds
    let mut lo = f64::MAX;
    let mut hi = f64::MIN;
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    let scale = lo.abs().max(hi.abs()).max(1.0);
    let tol = 1e-12 * scale;

    let mut out = Vec::with_capacity(k);
    for idx in 0..k {
        let (mut a, mut b) = (lo, hi);
        // shrink using already-found eigenvalues
        if let Some(&prev) = out.last() {
            a = prev;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if b - a <= tol.max(2.0 * f64::EPSILON * mid.abs()) {
                break;
            }
            if sturm_count(diag, offdiag, mid) <= idx {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    Ok(out)
}

/// Eigenvector for an isolated eigenvalue by inverse iteration on a
/// slightly shifted system; returned normalized to unit Euclidean norm.
pub fn tridiag_eigenvector(diag: &[f64], offdiag: &[f64], eigenvalue: f64) -> Result<Vec<f64>> {
    let n = diag.len();
    if offdiag.len() + 1 != n {
        return Err(Error::Dimension("offdiag length must be n - 1".into()));
    }
    let scale = diag.iter().chain(offdiag.iter()).fold(1.0f64, |m, &x| m.max(x.abs()));
    let shift = eigenvalue + 1e-11 * scale;

    // deterministic start vector
    let mut v: Vec<f64> = (0..n)
        .map(|i| 1.0 / ((i % 7 + 1) as f64))
        .collect();
    normalize(&mut v);
    for _ in 0..4 {
        let mut w = solve_shifted(diag, offdiag, shift, &v)?;
        normalize(&mut w);
        v = w;
    }
    Ok(v)
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}

// (T - shift I) x = b via LU with partial pivoting on the tridiagonal band.
fn solve_shifted(diag: &[f64], offdiag: &[f64], shift: f64, b: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d: Vec<f64> = diag.iter().map(|&x| x - shift).collect();
    let mut du: Vec<f64> = offdiag.to_vec();
    let mut du2 = vec![0.0; n.saturating_sub(2)];
    let dl: Vec<f64> = offdiag.to_vec();
    let mut x = b.to_vec();
    // forward elimination with row swaps (dgttrf-style)
    for i in 0..n - 1 {
        if dl[i].abs() <= d[i].abs() {
            let pivot = if d[i].abs() < PIVOT_GUARD {
                PIVOT_GUARD.copysign(d[i])
            } else {
                d[i]
            };
            let m = dl[i] / pivot;
            d[i + 1] -= m * du[i];
            // no fill-in without a swap
            x[i + 1] -= m * x[i];
        } else {
            // pivot on row i+1; the swap creates a du2 fill-in
            let m = d[i] / dl[i];
            d[i] = dl[i];
            let old_d1 = d[i + 1];
            d[i + 1] = du[i] - m * old_d1;
            if i + 1 < n - 1 {
                du2[i] = du[i + 1];
                du[i + 1] = -m * du2[i];
            }
            du[i] = old_d1;
            x.swap(i, i + 1);
            x[i + 1] -= m * x[i];
        }
    }
    // back substitution
    let last = n - 1;
    let pivot = if d[last].abs() < PIVOT_GUARD {
        PIVOT_GUARD.copysign(d[last])
    } else {
        d[last]
    };
    x[last] /= pivot;
    if n >= 2 {
        let i = n - 2;
        let pivot = if d[i].abs() < PIVOT_GUARD {
            PIVOT_GUARD.copysign(d[i])
        } else {
            d[i]
        };
        x[i] = (x[i] - du[i] * x[i + 1]) / pivot;
        for i in (0..n - 2).rev() {
            let pivot = if d[i].abs() < PIVOT_GUARD {
                PIVOT_GUARD.copysign(d[i])
            } else {
                d[i]
            };
            x[i] = (x[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / pivot;
        }
    }
    Ok(x)
}
