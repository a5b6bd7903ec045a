//! Bound states, expectation values, thermodynamics and superstatistics
//! for the Coulomb plus screened exponential hyperbolic potential family
//!
//! ```text
//! V(r) = -v1/r + (B/r - v2 cosh(alpha)/r^2) exp(-alpha r)
//! ```
//!
//! and its named reductions (Hellmann, Yukawa, screened-hyperbolic,
//! Coulomb). The closed-form level spectrum, wavefunctions and band
//! thermodynamics are paired throughout with independent numerical
//! routes (direct diagonalization, quadrature, finite differences); the
//! `oracle` module is the ground truth, never the closed forms.

// negated comparisons are NaN-rejecting guards; frozen reference values
// keep their full printed precision
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod hft;
pub mod model;
pub mod nu;
pub mod numerics;
pub mod oracle;
pub mod superstat;
pub mod thermo;
pub mod wavefun;

pub use error::{Error, Result};
pub use model::{validate, PotentialKind, PotentialParams, ValidatedParams};
pub use nu::{BoundState, QuantumNumbers};

/// A sampled (abscissa, value) sequence ready for file emission.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyCurve {
    pub x_label: String,
    pub y_label: String,
    pub points: Vec<(f64, f64)>,
}

impl PropertyCurve {
    pub fn new(x_label: &str, y_label: &str) -> Self {
        PropertyCurve {
            x_label: x_label.to_string(),
            y_label: y_label.to_string(),
            points: Vec::new(),
        }
    }

    pub fn push(&mut self, x: f64, y: f64) {
        self.points.push((x, y));
    }
}
