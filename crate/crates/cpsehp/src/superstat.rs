//! Deformed-Boltzmann superstatistics over the vibrational band.
//!
//! The generalized weight is B(E) = exp(-beta E) (1 + q/2 beta^2 E^2);
//! q = 0 recovers ordinary statistics exactly. Integration runs over the
//! band by default; the printed semi-infinite variant is kept as an
//! option for beta Q2 < 0, where its integrand decays.

use crate::error::{Error, Result};
use crate::numerics::{central_diff, integrate, integrate_to_infinity, second_diff};
use crate::nu::ThermoReduction;
use crate::thermo::ThermoPoint;

const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Upper limit convention for the superstatistics integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpperMode {
    /// rho in [delta, lambda + delta]; defined for all finite beta.
    #[default]
    Band,
    /// rho in [delta, infinity); converges only for beta Q2 < 0.
    SemiInfinite,
}

/// Deformation strength, inverse temperature and integration mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuperstatParams {
    pub q: f64,
    pub beta_t: f64,
    pub upper_mode: UpperMode,
}

impl SuperstatParams {
    pub fn band(q: f64, beta_t: f64) -> Self {
        SuperstatParams {
            q,
            beta_t,
            upper_mode: UpperMode::Band,
        }
    }

    pub fn semi_infinite(q: f64, beta_t: f64) -> Self {
        SuperstatParams {
            q,
            beta_t,
            upper_mode: UpperMode::SemiInfinite,
        }
    }
}

/// Generalized Boltzmann factor exp(-beta E)(1 + q beta^2 E^2 / 2).
pub fn deformed_boltzmann(e: f64, beta_t: f64, q: f64) -> f64 {
    (-beta_t * e).exp() * (1.0 + 0.5 * q * beta_t * beta_t * e * e)
}

/// Superstatistics partition function by adaptive quadrature
/// (relative tolerance 1e-10).
pub fn superstat_partition(reduction: &ThermoReduction, ss: &SuperstatParams) -> Result<f64> {
    let delta = reduction.delta;
    let weight = |rho: f64| deformed_boltzmann(reduction.energy_of_rho(rho), ss.beta_t, ss.q);
    match ss.upper_mode {
        UpperMode::Band => {
            let lambda = reduction.lambda.ok_or_else(|| {
                Error::Domain("band mode needs a band edge: Q3 must be positive".into())
            })?;
            Ok(integrate(weight, delta, lambda + delta, 1e-10)?.value)
        }
        UpperMode::SemiInfinite => {
            if ss.beta_t * reduction.q2 >= 0.0 {
                return Err(Error::Domain(format!(
                    "semi-infinite integral diverges for beta Q2 = {} >= 0",
                    ss.beta_t * reduction.q2
                )));
            }
            let gaussian_scale = 1.0 / (-ss.beta_t * reduction.q2).sqrt();
            Ok(integrate_to_infinity(weight, delta, 1e-10, gaussian_scale.max(1.0))?.value)
        }
    }
}

/// The printed closed form of the semi-infinite partition function,
/// evaluated literally for beta Q2 < 0. Report-only: its integration
/// bounds do not match any convergent reading of the integral, so callers
/// compare it against quadrature instead of asserting on it.
pub fn closed_form_superstat_partition(
    reduction: &ThermoReduction,
    beta_t: f64,
    q: f64,
) -> Result<f64> {
    let (q1, q2, q3) = (reduction.q1, reduction.q2, reduction.q3);
    let minus_bq2 = -beta_t * q2;
    if minus_bq2 <= 0.0 {
        return Err(Error::Domain(format!(
            "printed closed form needs beta Q2 < 0, got beta Q2 = {}",
            beta_t * q2
        )));
    }
    let g = minus_bq2.sqrt();
    let aleph = (minus_bq2 * q3 * q3).sqrt();
    let bracket = -32.0 * q * beta_t.powi(3) * q2.powi(3) * q3.powi(3)
        + (8.0 + 3.0 * q + 4.0 * q * beta_t * q1 + 4.0 * q * beta_t * beta_t * q1 * q1)
            * g
            * aleph
        + 8.0 * q * (1.0 + 2.0 * beta_t * q1) * minus_bq2.powf(1.5) * q3 * aleph
        + 8.0 * q * q * beta_t * beta_t * q2 * q2 * q3 * q3
            * (1.0 + 2.0 * beta_t * q1 + 4.0 * g * aleph);
    let value = (-beta_t * q1 + 2.0 * beta_t * q2 * q3 - 2.0 * g * aleph).exp() * SQRT_PI
        * bracket
        / (16.0 * aleph * beta_t * q2);
    if !value.is_finite() {
        return Err(Error::Numerical(
            "printed superstatistics closed form overflowed".into(),
        ));
    }
    Ok(value)
}

/// U_s, S_s, F_s, C_s at each grid point from Richardson differences of
/// ln Z_s in beta, holding that point's q and mode fixed.
pub fn superstat_properties(
    reduction: &ThermoReduction,
    grid: &[SuperstatParams],
) -> Result<Vec<ThermoPoint>> {
    grid.iter()
        .map(|ss| {
            if ss.beta_t == 0.0 {
                return Err(Error::Domain(
                    "beta = 0 excluded from property grids (F undefined there)".into(),
                ));
            }
            let z = superstat_partition(reduction, ss)?;
            let red = *reduction;
            let (q, mode) = (ss.q, ss.upper_mode);
            let ln_z = move |b: f64| {
                superstat_partition(
                    &red,
                    &SuperstatParams {
                        q,
                        beta_t: b,
                        upper_mode: mode,
                    },
                )
                .expect("grid point inside domain")
                .ln()
            };
            let h = crate::thermo::beta_step(reduction, ss.beta_t);
            let u = -central_diff(ln_z, ss.beta_t, h, 1);
            let c = ss.beta_t * ss.beta_t * second_diff(ln_z, ss.beta_t, h, 1);
            Ok(ThermoPoint {
                beta_t: ss.beta_t,
                z,
                u,
                s: z.ln() + ss.beta_t * u,
                f: -z.ln() / ss.beta_t,
                c,
            })
        })
        .collect()
}
