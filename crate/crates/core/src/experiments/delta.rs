//! Scalar law whose solution concentrates into a point mass.

use super::orders;
use crate::error::Result;
use crate::fvm::{integrate, uniform_steps, DtPolicy, FiniteVolume, FvmOptions, StateField, StepRule, TimeScheme};
use crate::grid::{geometric_delta_grid, CellGrid};
use crate::problems::{delta, error_norms};

/// Steps are `T / N` with `N` the smallest count keeping
/// `dt / min dx <= 0.8`.
pub const DELTA_CFL: f64 = 0.8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaGrid {
    Uniform(usize),
    /// `2m` cells refined geometrically towards `pi` with ratio `kappa`.
    Geometric { m: usize, kappa: f64 },
}

impl DeltaGrid {
    pub fn build(&self) -> Result<CellGrid> {
        match *self {
            DeltaGrid::Uniform(n) => CellGrid::uniform(0.0, 2.0 * std::f64::consts::PI, n),
            DeltaGrid::Geometric { m, kappa } => geometric_delta_grid(m, kappa, false),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            DeltaGrid::Uniform(n) => format!("uniform-{n}"),
            DeltaGrid::Geometric { m, kappa } => format!("geometric-{}-{kappa}", 2 * m),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaRecord {
    pub grid: DeltaGrid,
    pub n: usize,
    pub h_min: f64,
    pub steps: usize,
    pub error: f64,
    /// Between consecutive uniform grids only.
    pub order: Option<f64>,
}

/// Solves to `T = 8` with RK2 and returns the grid, state and step count.
pub fn solve_delta(grid: &DeltaGrid, fvm: FvmOptions) -> Result<(CellGrid, StateField, usize)> {
    let problem = delta();
    let cells = grid.build()?;
    let (steps, dt) = uniform_steps(problem.final_time, DELTA_CFL * cells.min_width());
    let op = FiniteVolume::new(cells.clone(), problem.flux.clone(), problem.bc.clone(), fvm)?;
    let u0 = problem.initial_averages(&cells);
    let rule = StepRule::Policy(DtPolicy::Fixed(dt));
    let (u, taken) = integrate(&op, u0, problem.final_time, TimeScheme::Rk2, rule, |_| Ok(()))?;
    debug_assert_eq!(taken, steps);
    Ok((cells, u, taken))
}

/// Width-weighted L1 distance to the exact cell averages at `T = 8`.
pub fn run_delta(grids: &[DeltaGrid], fvm: FvmOptions) -> Result<Vec<DeltaRecord>> {
    let problem = delta();
    let mut out: Vec<DeltaRecord> = Vec::with_capacity(grids.len());
    for g in grids {
        let (cells, u, steps) = solve_delta(g, fvm)?;
        let exact = problem.exact_averages(&cells, problem.final_time)?;
        let (error, _) = error_norms(&cells, &exact, u.values())?;
        let order = match (out.last(), g) {
            (Some(prev), DeltaGrid::Uniform(_)) if matches!(prev.grid, DeltaGrid::Uniform(_)) => {
                orders(&[prev.error, error])[1]
            }
            _ => None,
        };
        out.push(DeltaRecord { grid: *g, n: cells.len(), h_min: cells.min_width(), steps, error, order });
    }
    Ok(out)
}
