//! Jacobi polynomials P_n^(a,b) by the standard three-term recurrence.

use crate::error::{Error, Result};

fn check_params(a: f64, b: f64, x: f64) -> Result<()> {
    if !(a > -1.0) || !(b > -1.0) {
        return Err(Error::Domain(format!(
            "jacobi requires a > -1 and b > -1, got a = {a}, b = {b}"
        )));
    }
    if !(-1.0 - 1e-12..=1.0 + 1e-12).contains(&x) {
        return Err(Error::Domain(format!("jacobi requires x in [-1, 1], got {x}")));
    }
    Ok(())
}

/// P_n^(a,b)(x). Exact at n = 0 and n = 1 by construction.
pub fn jacobi(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    check_params(a, b, x)?;
    if n == 0 {
        return Ok(1.0);
    }
    let p1 = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    if n == 1 {
        return Ok(p1);
    }
    let mut pm1 = 1.0;
    let mut p = p1;
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + a + b;
        let a1 = 2.0 * k * (k + a + b) * (c - 2.0);
        let a2 = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let a3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        let next = (a2 * p - a3 * pm1) / a1;
        pm1 = p;
        p = next;
    }
    Ok(p)
}

/// d/dx P_n^(a,b)(x) = (n + a + b + 1)/2 * P_(n-1)^(a+1,b+1)(x).
pub fn jacobi_deriv(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    check_params(a, b, x)?;
    if n == 0 {
        return Ok(0.0);
    }
    Ok(0.5 * (n as f64 + a + b + 1.0) * jacobi(n - 1, a + 1.0, b + 1.0, x)?)
}

/// Second derivative, one more step down the same ladder.
pub fn jacobi_deriv2(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    check_params(a, b, x)?;
    if n < 2 {
        return Ok(0.0);
    }
    let n_f = n as f64;
    Ok(0.25
        * (n_f + a + b + 1.0)
        * (n_f + a + b + 2.0)
        * jacobi(n - 2, a + 2.0, b + 2.0, x)?)
}
