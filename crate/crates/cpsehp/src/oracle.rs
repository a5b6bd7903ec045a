//! Independent direct solvers for the radial problem: three-point
//! finite-difference diagonalization on a uniform grid with Dirichlet
//! ends, plus quadrature expectation values over the closed-form states.
//!
//! These are the ground truth the closed forms are judged against.

use crate::error::{Error, Result};
use crate::model::ValidatedParams;
use crate::numerics::{integrate, tridiag_eigenvector, tridiag_smallest_eigen};
use crate::nu::QuantumNumbers;
use crate::wavefun::Wavefunction;

/// Which Hamiltonian the solver discretizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialPotential {
    /// The bare potential plus the exact centrifugal term.
    Exact,
    /// Every 1/r and 1/r^2 replaced by the screened approximants (the
    /// Hamiltonian the closed forms belong to).
    Approximated,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Refinement {
    Single,
    /// Solve at n and 2n points and extrapolate the order-2 scheme.
    RichardsonPair,
}

/// Uniform radial grid description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub n_points: usize,
    pub refinement: Refinement,
}

impl GridConfig {
    /// Defaults: r_min = 1e-6 of the screening length, r_max from the
    /// decay exponent when known (tail below 1e-10), else 80 screening
    /// lengths.
    pub fn default_for(params: &ValidatedParams, beta_wf: Option<f64>) -> GridConfig {
        let alpha = params.alpha();
        let screening_length = if alpha > 0.0 { 1.0 / alpha } else { 1.0 };
        let r_max = match beta_wf {
            Some(beta) if beta > 0.0 && alpha > 0.0 => 23.03 / (alpha * beta),
            _ => 80.0 * screening_length,
        };
        GridConfig {
            r_min: 1e-6 * screening_length,
            r_max,
            n_points: 4000,
            refinement: Refinement::RichardsonPair,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.r_min < self.r_max) || !(self.r_min > 0.0) {
            return Err(Error::Grid(format!(
                "need 0 < r_min < r_max, got [{}, {}]",
                self.r_min, self.r_max
            )));
        }
        if self.n_points < 100 {
            return Err(Error::Dimension(format!(
                "grid needs at least 100 points, got {}",
                self.n_points
            )));
        }
        Ok(())
    }
}

fn effective_potential(
    which: RadialPotential,
    params: &ValidatedParams,
    l: u32,
    r: f64,
) -> Result<f64> {
    match which {
        RadialPotential::Exact => {
            let l = l as f64;
            let centrifugal =
                params.hbar() * params.hbar() * l * (l + 1.0) / (2.0 * params.mu() * r * r);
            Ok(params.potential_exact(r)? + centrifugal)
        }
        RadialPotential::Approximated => params.potential_approximated(l, r),
    }
}

fn assemble_and_solve(
    which: RadialPotential,
    params: &ValidatedParams,
    l: u32,
    r_min: f64,
    r_max: f64,
    n_points: usize,
    k: usize,
) -> Result<Vec<f64>> {
    let h = (r_max - r_min) / (n_points as f64 - 1.0);
    let interior = n_points - 2;
    let kinetic = params.hbar() * params.hbar() / (params.mu() * h * h);
    let mut diag = Vec::with_capacity(interior);
    for i in 1..=interior {
        let r = r_min + i as f64 * h;
        diag.push(kinetic + effective_potential(which, params, l, r)?);
    }
    let off = vec![-0.5 * kinetic; interior - 1];
    tridiag_smallest_eigen(&diag, &off, k)
}

/// `k` lowest eigenvalues of the chosen radial Hamiltonian.
pub fn solve_radial(
    which: RadialPotential,
    params: &ValidatedParams,
    l: u32,
    grid: &GridConfig,
    k: usize,
) -> Result<Vec<f64>> {
    grid.validate()?;
    let coarse = assemble_and_solve(which, params, l, grid.r_min, grid.r_max, grid.n_points, k)?;
    match grid.refinement {
        Refinement::Single => Ok(coarse),
        Refinement::RichardsonPair => {
            let fine = assemble_and_solve(
                which,
                params,
                l,
                grid.r_min,
                grid.r_max,
                2 * grid.n_points,
                k,
            )?;
            Ok(coarse
                .iter()
                .zip(&fine)
                .map(|(c, f)| (4.0 * f - c) / 3.0)
                .collect())
        }
    }
}

/// Eigenpairs at a single resolution.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialStates {
    pub eigenvalues: Vec<f64>,
    /// One vector per eigenvalue, on the interior grid points.
    pub eigenvectors: Vec<Vec<f64>>,
    /// The interior grid radii the vectors live on.
    pub radii: Vec<f64>,
}

/// Eigenvalues plus eigenvectors (single resolution, no extrapolation),
/// with the interior grid radii for node inspection.
pub fn solve_radial_states(
    which: RadialPotential,
    params: &ValidatedParams,
    l: u32,
    grid: &GridConfig,
    k: usize,
) -> Result<RadialStates> {
    grid.validate()?;
    let h = (grid.r_max - grid.r_min) / (grid.n_points as f64 - 1.0);
    let interior = grid.n_points - 2;
    let kinetic = params.hbar() * params.hbar() / (params.mu() * h * h);
    let mut diag = Vec::with_capacity(interior);
    let mut radii = Vec::with_capacity(interior);
    for i in 1..=interior {
        let r = grid.r_min + i as f64 * h;
        radii.push(r);
        diag.push(kinetic + effective_potential(which, params, l, r)?);
    }
    let off = vec![-0.5 * kinetic; interior - 1];
    let eigenvalues = tridiag_smallest_eigen(&diag, &off, k)?;
    let eigenvectors = eigenvalues
        .iter()
        .map(|&ev| tridiag_eigenvector(&diag, &off, ev))
        .collect::<Result<Vec<_>>>()?;
    Ok(RadialStates {
        eigenvalues,
        eigenvectors,
        radii,
    })
}

/// Quadrature moment of a closed-form state: integral of R^2 observable(r).
pub fn expectation_numeric<F: Fn(f64) -> f64>(
    params: &ValidatedParams,
    qn: QuantumNumbers,
    e: f64,
    observable: F,
) -> Result<f64> {
    let wf = Wavefunction::with_energy(params, qn, e)?;
    let hi = wf.tail_cutoff();
    Ok(integrate(
        |r| {
            let v = wf.eval(r).expect("r >= 0 on the integration range");
            v * v * observable(r)
        },
        1e-12,
        hi,
        1e-8,
    )?
    .value)
}

/// One row of a grid-refinement study.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n_points: usize,
    pub eigenvalue: f64,
}

/// Ground-eigenvalue refinement table with an empirical order estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// log2 of successive error ratios; near 2 for the base scheme on
    /// smooth states. None with fewer than three doubling grids.
    pub order_estimate: Option<f64>,
    /// Richardson value from the two finest grids.
    pub extrapolated: f64,
}

pub fn convergence_report(
    params: &ValidatedParams,
    l: u32,
    grids: &[GridConfig],
) -> Result<ConvergenceReport> {
    if grids.is_empty() {
        return Err(Error::Dimension("need at least one grid".into()));
    }
    let mut rows = Vec::with_capacity(grids.len());
    for g in grids {
        g.validate()?;
        let val = assemble_and_solve(
            RadialPotential::Approximated,
            params,
            l,
            g.r_min,
            g.r_max,
            g.n_points,
            1,
        )?[0];
        rows.push(ConvergenceRow {
            n_points: g.n_points,
            eigenvalue: val,
        });
    }
    let order_estimate = if rows.len() >= 3 {
        let e = &rows[rows.len() - 3..];
        let d1 = (e[0].eigenvalue - e[1].eigenvalue).abs();
        let d2 = (e[1].eigenvalue - e[2].eigenvalue).abs();
        (d2 > 0.0).then(|| (d1 / d2).log2())
    } else {
        None
    };
    let extrapolated = if rows.len() >= 2 {
        let a = rows[rows.len() - 2].eigenvalue;
        let b = rows[rows.len() - 1].eigenvalue;
        (4.0 * b - a) / 3.0
    } else {
        rows[0].eigenvalue
    };
    Ok(ConvergenceReport {
        rows,
        order_estimate,
        extrapolated,
    })
}
