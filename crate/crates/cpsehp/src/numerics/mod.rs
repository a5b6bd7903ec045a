//! Self-contained numerical kernels: special functions, Jacobi polynomials,
//! adaptive quadrature, finite differences and a tridiagonal eigensolver.

mod diff;
mod jacobi;
mod quad;
mod special;
mod tridiag;

pub use diff::{central_diff, second_diff};
pub use jacobi::{jacobi, jacobi_deriv, jacobi_deriv2};
pub use quad::{integrate, integrate_to_infinity, QuadratureResult};
pub use special::{dawson, erf, erfc, erfi, log_gamma};
pub use tridiag::{sturm_count, tridiag_eigenvector, tridiag_smallest_eigen};
