//! Fractional calculus on uniform grids: Mittag-Leffler functions, Abel
//! integrals, Caputo derivatives, fractional ODE solvers and executable
//! checks of the comparison, dissipation and Laplace results built on them.
//!
//! ```
//! use fracode::fode::{step_solve, FodeProblem};
//! use fracode::mittag_leffler::{ml, ml_e};
//!
//! // E_{2,1}(-4) = cos 2
//! let c = ml(2.0, 1.0, -4.0)?;
//! assert!((c - 2f64.cos()).abs() < 1e-12);
//!
//! // D^{1/2} v = -v, v(0) = 1, against E_{1/2}(-t^{1/2})
//! let p = FodeProblem::scalar(0.5, |_, v| -v, 1.0)?;
//! let r = step_solve(&p, 1.0 / 1024.0, 1.0)?;
//! let err = r.solution[0].max_error(|t| ml_e(0.5, -1.0, t).unwrap());
//! assert!(err < 5e-3);
//! # Ok::<(), fracode::Error>(())
//! ```

// `!(x > 0.0)` is used deliberately so that NaN fails range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

mod dd;

pub mod analysis;
pub mod catalog;
pub mod error;
pub mod fode;
pub mod fraccalc;
pub mod gamma;
pub mod grid;
pub mod mittag_leffler;
pub mod suite;

pub use error::{Error, Result};
pub use grid::GridFunction;
