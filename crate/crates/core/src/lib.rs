//! High-order WENO reconstruction on nonuniform grids.
//!
//! * [`grid`]: algebraic test stencils, Wichmann-Hill perturbed grids and
//!   geometric grids.
//! * [`reconstruct`]: linear Lagrange reconstruction from point values and
//!   cell averages.
//! * [`weno`]: smoothness indicators, nonlinear weights, the final
//!   reconstruction.
//! * [`fvm`]: semidiscrete finite-volume operator and TVD Runge-Kutta steps.
//! * [`problems`]: the scalar and Euler test problems.
//! * [`experiments`]: convergence studies and benchmarks.
//! * [`cli`]: the `nuweno` command line tool.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod fvm;
pub mod grid;
pub mod problems;
pub mod reconstruct;
pub mod scalar;
pub mod weno;

pub use error::{Error, Result};
pub use grid::{CellGrid, Framework, StencilGeometry};
#[cfg(feature = "high-precision")]
pub use scalar::Mp;
pub use scalar::Real;
pub use weno::{reconstruct, weno_params, WenoOptions, WenoOutput, WenoParams, WenoStencil};
