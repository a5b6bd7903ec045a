//! Vibrational-band thermodynamics in the classical limit.
//!
//! The normative path is quadrature of the Boltzmann weight over the band
//! variable rho = n + delta,
//!
//! ```text
//! Z(beta) = integral_delta^(lambda+delta) exp(-beta E(rho)) d rho,
//! ```
//!
//! with properties from Richardson differences of ln Z. The erf/erfi
//! closed form of the same integral is carried as a cross-check; note the
//! complete antiderivative needs both square completions
//! (rho -+ Q3/rho)^2, one damped by exp(-2|beta|Q2 Q3) and one amplified,
//! so both appear below. Boltzmann constant k = 1 throughout.

use crate::error::{Error, Result};
use crate::numerics::{central_diff, erf, erfi, integrate, second_diff};
use crate::nu::ThermoReduction;
use crate::PropertyCurve;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// One sampled point of the thermodynamic property set (k = 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub beta_t: f64,
    pub z: f64,
    pub u: f64,
    pub s: f64,
    pub f: f64,
    pub c: f64,
}

/// Symbols of the printed specific-heat auxiliary display that are
/// well-defined for beta Q2 < 0. The printed aleph4..aleph8 reference an
/// undefined Lambda8 and are not representable.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(missing_docs)]
pub struct ClosedFormAux {
    pub aleph: f64,
    pub aleph0: f64,
    pub aleph1: f64,
    pub aleph2: f64,
    pub aleph3: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub lambda4: f64,
    pub lambda5: f64,
    pub lambda6: f64,
}

/// Closed-form property evaluation next to its quadrature twin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormComparison {
    pub point: ThermoPoint,
    pub aux: Option<ClosedFormAux>,
    pub quadrature_z: f64,
    pub z_rel_delta: f64,
}

fn band(reduction: &ThermoReduction) -> Result<(f64, f64)> {
    match reduction.lambda {
        Some(lambda) => Ok((reduction.delta, lambda + reduction.delta)),
        None => Err(Error::Domain(
            "partition function needs a band edge: Q3 must be positive".into(),
        )),
    }
}

/// Band partition function by adaptive quadrature (relative tolerance
/// 1e-10); defined for every finite beta, Z(0) = lambda.
pub fn partition(reduction: &ThermoReduction, beta_t: f64) -> Result<f64> {
    let (lo, hi) = band(reduction)?;
    if !beta_t.is_finite() {
        return Err(Error::Domain(format!("beta must be finite, got {beta_t}")));
    }
    Ok(integrate(
        |rho| (-beta_t * reduction.energy_of_rho(rho)).exp(),
        lo,
        hi,
        1e-10,
    )?
    .value)
}

/// Diagnostic level sum over the band, Z = sum_n exp(-beta E_n) for
/// n = 0..floor(lambda).
pub fn partition_level_sum(reduction: &ThermoReduction, beta_t: f64) -> Result<f64> {
    let lambda = band(reduction)?.1 - reduction.delta;
    let top = lambda.floor().max(0.0) as u32;
    Ok((0..=top)
        .map(|n| (-beta_t * reduction.energy_of_rho(reduction.rho(n))).exp())
        .sum())
}

// Antiderivative of exp(beta Q2 (rho^2 + c^2/rho^2)) evaluated between the
// band ends, split on the sign of beta Q2.
fn boltzmann_band_integral(reduction: &ThermoReduction, beta_t: f64) -> Result<f64> {
    let (lo, hi) = band(reduction)?;
    let c = reduction.q3;
    let minus = |rho: f64| rho - c / rho;
    let plus = |rho: f64| rho + c / rho;
    let scale = beta_t * reduction.q2;
    if scale < 0.0 {
        // damped Gaussian: plain error functions
        let g = (-scale).sqrt();
        let t1 = (2.0 * scale * c).exp() * (erf(g * minus(hi)) - erf(g * minus(lo)));
        let t2 = (-2.0 * scale * c).exp() * (erf(g * plus(hi)) - erf(g * plus(lo)));
        Ok(SQRT_PI / (4.0 * g) * (t1 + t2))
    } else {
        // growing exponential: imaginary error function, result still real
        let g = scale.sqrt();
        let t1 = (2.0 * scale * c).exp() * (erfi(g * minus(hi)) - erfi(g * minus(lo)));
        let t2 = (-2.0 * scale * c).exp() * (erfi(g * plus(hi)) - erfi(g * plus(lo)));
        Ok(SQRT_PI / (4.0 * g) * (t1 + t2))
    }
}

/// Closed-form partition function; cross-checked against quadrature and
/// rejected as `Numerical` if they disagree beyond 1e-6 relative.
pub fn closed_form_partition(reduction: &ThermoReduction, beta_t: f64) -> Result<f64> {
    if beta_t == 0.0 {
        return Err(Error::Domain(
            "closed form is written for beta != 0; Z(0) = lambda".into(),
        ));
    }
    let prefactor = (beta_t * (2.0 * reduction.q2 * reduction.q3 - reduction.q1)).exp();
    let z = prefactor * boltzmann_band_integral(reduction, beta_t)?;
    let quad = partition(reduction, beta_t)?;
    if !z.is_finite() || (z / quad - 1.0).abs() > 1e-6 {
        return Err(Error::Numerical(format!(
            "closed-form partition {z:.12e} disagrees with quadrature {quad:.12e}"
        )));
    }
    Ok(z)
}

/// Thermodynamic properties on a grid of nonzero inverse temperatures.
///
/// U = -d ln Z/d beta and C = beta^2 d^2 ln Z/d beta^2 by Richardson
/// central differences with h = 1e-4 max(1, |beta|); S and F follow from
/// their defining identities.
pub fn properties(reduction: &ThermoReduction, beta_grid: &[f64]) -> Result<Vec<ThermoPoint>> {
    beta_grid
        .iter()
        .map(|&beta_t| point_at(reduction, beta_t))
        .collect()
}

/// Differentiation step for ln Z in beta.
///
/// ln Z varies on the reciprocal band-energy scale, so the nominal
/// 1e-4 max(1, |beta|) is widened by 1/E_char when the band energies are
/// small; otherwise the second difference drowns in rounding noise long
/// before it reaches the requested 1e-4 accuracy.
pub(crate) fn beta_step(reduction: &ThermoReduction, beta_t: f64) -> f64 {
    let (lo, hi) = band(reduction).unwrap_or((reduction.delta, reduction.delta + 1.0));
    let interior = reduction.q3.max(0.0).sqrt().clamp(lo, hi);
    let e_char = reduction
        .energy_of_rho(lo)
        .abs()
        .max(reduction.energy_of_rho(hi).abs())
        .max(reduction.energy_of_rho(interior).abs())
        .clamp(1e-12, 1.0);
    1e-4 * beta_t.abs().max(1.0) / e_char
}

fn point_at(reduction: &ThermoReduction, beta_t: f64) -> Result<ThermoPoint> {
    if beta_t == 0.0 {
        return Err(Error::Domain(
            "beta = 0 excluded from property grids (F undefined there)".into(),
        ));
    }
    let z = partition(reduction, beta_t)?;
    let red = *reduction;
    let ln_z = move |b: f64| partition(&red, b).expect("band integrand is finite").ln();
    let h = beta_step(reduction, beta_t);
    let u = -central_diff(ln_z, beta_t, h, 1);
    let c = beta_t * beta_t * second_diff(ln_z, beta_t, h, 1);
    Ok(ThermoPoint {
        beta_t,
        z,
        u,
        s: z.ln() + beta_t * u,
        f: -z.ln() / beta_t,
        c,
    })
}

/// Closed-form property set next to the quadrature value of Z.
///
/// The printed property displays mix up their own auxiliary symbols, so
/// U and C are produced by differentiating the closed-form ln Z itself;
/// S and F use their defining identities. Report-only.
pub fn closed_form_properties(
    reduction: &ThermoReduction,
    beta_t: f64,
) -> Result<ClosedFormComparison> {
    let z = closed_form_partition(reduction, beta_t)?;
    let red = *reduction;
    let ln_z_closed = move |b: f64| {
        let pre = (b * (2.0 * red.q2 * red.q3 - red.q1)).exp();
        (pre * boltzmann_band_integral(&red, b).expect("band defined")).ln()
    };
    let h = beta_step(reduction, beta_t);
    let u = -central_diff(ln_z_closed, beta_t, h, 1);
    let c = beta_t * beta_t * second_diff(ln_z_closed, beta_t, h, 1);
    let quadrature_z = partition(reduction, beta_t)?;
    Ok(ClosedFormComparison {
        point: ThermoPoint {
            beta_t,
            z,
            u,
            s: z.ln() + beta_t * u,
            f: -z.ln() / beta_t,
            c,
        },
        aux: closed_form_aux(reduction, beta_t),
        quadrature_z,
        z_rel_delta: (z / quadrature_z - 1.0).abs(),
    })
}

/// The printed auxiliary symbols, defined only on the damped branch
/// (beta Q2 < 0).
pub fn closed_form_aux(reduction: &ThermoReduction, beta_t: f64) -> Option<ClosedFormAux> {
    let (delta, lambda) = (reduction.delta, reduction.lambda?);
    let scale = -beta_t * reduction.q2;
    if scale <= 0.0 {
        return None;
    }
    let g = scale.sqrt();
    let aleph = (scale * reduction.q3 * reduction.q3).sqrt();
    let aleph0 = g * delta;
    let aleph1 = g * (lambda + delta);
    let aleph2 = aleph0 * delta + 2.0 * delta * lambda * g
        + (lambda * lambda * g + aleph) / (lambda + delta);
    let aleph3 = 2.0 * aleph * (2.0 * aleph * g).exp() * SQRT_PI;
    let q2 = reduction.q2;
    let q3 = reduction.q3;
    let lambda5 = (beta_t * q2 * (delta.powi(4) + q3 * q3) / (delta * delta)).exp() * delta;
    let lambda6 = (beta_t * q2 * ((delta + lambda).powi(4) + q3 * q3)
        / ((delta + lambda) * (delta + lambda)))
        .exp()
        * delta;
    Some(ClosedFormAux {
        aleph,
        aleph0,
        aleph1,
        aleph2,
        aleph3,
        lambda1: aleph0 - aleph / delta,
        lambda2: aleph0 + aleph / delta,
        lambda3: aleph1 - aleph / (lambda + delta),
        lambda4: aleph1 + aleph / (lambda + delta),
        lambda5,
        lambda6,
    })
}

/// Plot-ready curves for Z, U, S, F, C over a beta grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoCurves {
    pub z: PropertyCurve,
    pub u: PropertyCurve,
    pub s: PropertyCurve,
    pub f: PropertyCurve,
    pub c: PropertyCurve,
}

pub fn thermo_curve(reduction: &ThermoReduction, beta_grid: &[f64]) -> Result<ThermoCurves> {
    let points = properties(reduction, beta_grid)?;
    let mut curves = ThermoCurves {
        z: PropertyCurve::new("beta", "Z"),
        u: PropertyCurve::new("beta", "U"),
        s: PropertyCurve::new("beta", "S"),
        f: PropertyCurve::new("beta", "F"),
        c: PropertyCurve::new("beta", "C"),
    };
    for p in &points {
        curves.z.push(p.beta_t, p.z);
        curves.u.push(p.beta_t, p.u);
        curves.s.push(p.beta_t, p.s);
        curves.f.push(p.beta_t, p.f);
        curves.c.push(p.beta_t, p.c);
    }
    Ok(curves)
}
