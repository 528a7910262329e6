//! Mittag-Leffler functions of scalar and matrix arguments.
//!
//! The crate evaluates E_{α,β}(z) and its derivatives of arbitrary order for
//! complex scalars by three complementary methods (truncated series, numerical
//! inversion of the Laplace transform on parabolic contours, and summation
//! formulas with derivatives balancing), lifts the evaluation to dense matrix
//! arguments through a Schur-Parlett engine, estimates the conditioning of the
//! matrix evaluation, and solves linear and multiterm fractional differential
//! equations in closed form through matrix Mittag-Leffler evaluations.
//!
//! Entry points:
//!
//! * [`ml_derivative`] — scalar E_{α,β} and derivatives with method dispatch
//! * [`ml_matrix`] — E_{α,β}(A) for dense complex matrices
//! * [`cond_estimate`] — condition numbers of the matrix evaluation
//! * [`fde`] — linear / multiterm FDE solvers and Gramians
//!
//! The `mlfun` binary exposes the same functionality on the command line.

pub mod conditioning;
pub mod error;
pub mod fde;
pub mod funm;
pub mod gallery;
pub mod matrix_ml;
pub mod gamma;
pub mod io;
pub mod linalg;
pub mod ml_scalar;
pub mod params;
pub mod quad;

pub use conditioning::{cond_estimate, frechet_apply, CondReport, NormKind};
pub use error::{MlError, Result};
pub use matrix_ml::{ml_matrix, MatrixMLRequest, MatrixMLResult, DEFAULT_DELTA};
pub use gamma::{gamma_fn, rgamma};
pub use ml_scalar::{ml_derivative, DerivEval, Method, SeriesBounds, DEFAULT_TAU};
pub use params::MLParams;
