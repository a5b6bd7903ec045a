//! Richardson-extrapolated central differences.

/// First derivative of `f` at `x`.
///
/// `richardson_levels = 0` is the plain O(h^2) central difference; each
/// extra level eliminates the next error order.
pub fn central_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64, richardson_levels: usize) -> f64 {
    let levels = richardson_levels + 1;
    let mut table = vec![0.0; levels];
    for (k, slot) in table.iter_mut().enumerate() {
        let hk = h / 2f64.powi(k as i32);
        *slot = (f(x + hk) - f(x - hk)) / (2.0 * hk);
    }
    richardson(&mut table)
}

/// Second derivative of `f` at `x`, same extrapolation scheme on the
/// three-point stencil.
pub fn second_diff<F: Fn(f64) -> f64>(f: F, x: f64, h: f64, richardson_levels: usize) -> f64 {
    let levels = richardson_levels + 1;
    let mut table = vec![0.0; levels];
    for (k, slot) in table.iter_mut().enumerate() {
        let hk = h / 2f64.powi(k as i32);
        *slot = (f(x + hk) - 2.0 * f(x) + f(x - hk)) / (hk * hk);
    }
    richardson(&mut table)
}

fn richardson(column: &mut [f64]) -> f64 {
    let n = column.len();
    for j in 1..n {
        let factor = 4f64.powi(j as i32);
        for i in (j..n).rev() {
            column[i] = (factor * column[i] - column[i - 1]) / (factor - 1.0);
        }
    }
    column[n - 1]
}
