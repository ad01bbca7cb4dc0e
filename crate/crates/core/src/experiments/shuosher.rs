//! Shock and entropy-wave interaction for the Euler equations.

use super::orders;
use crate::error::{Error, Result};
use crate::fvm::{integrate, FiniteVolume, FvmOptions, StateField, StepRule, TimeScheme};
use crate::grid::{perturbed_grid, CellGrid, Perturbation, WichmannHill};
use crate::problems::{shu_osher, EulerState};

pub const SHU_OSHER_CFL: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShuOsherOptions {
    pub xi: f64,
    pub perturbation: Perturbation,
    pub fvm: FvmOptions,
}

impl Default for ShuOsherOptions {
    fn default() -> Self {
        ShuOsherOptions { xi: 0.1, perturbation: Perturbation::AsPrinted, fvm: FvmOptions::default() }
    }
}

#[derive(Debug, Clone)]
pub struct EulerRun {
    pub grid: CellGrid,
    pub state: StateField,
    pub steps: usize,
    /// Smallest density and pressure over every cell of every accepted step,
    /// the initial data included.
    pub min_density: f64,
    pub min_pressure: f64,
}

impl EulerRun {
    pub fn density(&self) -> Vec<f64> {
        self.state.component(0)
    }
}

fn extremes(field: &StateField, rho: &mut f64, p: &mut f64) {
    for i in 0..field.cells() {
        let s = EulerState::from_conserved(field.cell(i));
        *rho = rho.min(s.density);
        *p = p.min(s.pressure);
    }
}

pub fn solve_euler(grid: CellGrid, fvm: FvmOptions) -> Result<EulerRun> {
    let problem = shu_osher();
    let op = FiniteVolume::new(grid.clone(), problem.flux.clone(), problem.bc.clone(), fvm)?;
    let u0 = problem.initial_averages(&grid);
    let (mut rho, mut p) = (f64::INFINITY, f64::INFINITY);
    extremes(&u0, &mut rho, &mut p);
    let rule = StepRule::AdaptiveCfl(SHU_OSHER_CFL);
    let (state, steps) = integrate(&op, u0, problem.final_time, TimeScheme::Rk3, rule, |u| {
        extremes(u, &mut rho, &mut p);
        Ok(())
    })?;
    Ok(EulerRun { grid, state, steps, min_density: rho, min_pressure: p })
}

pub fn uniform_grid(n: usize) -> Result<CellGrid> {
    CellGrid::uniform(-5.0, 5.0, n)
}

/// Perturbed grid built on `(-1, 1)` from the default seeds, then mapped
/// affinely onto the domain.
pub fn perturbed_euler_grid(n: usize, opts: &ShuOsherOptions) -> Result<CellGrid> {
    let (grid, _) = perturbed_grid(n, opts.xi, WichmannHill::default(), opts.perturbation)?;
    grid.mapped_to(-5.0, 5.0)
}

#[derive(Debug, Clone)]
pub struct ShuOsherRuns {
    pub uniform: EulerRun,
    pub perturbed: EulerRun,
}

pub fn run_shuosher(n: usize, opts: &ShuOsherOptions) -> Result<ShuOsherRuns> {
    if n < 16 {
        return Err(Error::InvalidArgument(format!("need at least 16 cells, got {n}")));
    }
    Ok(ShuOsherRuns {
        uniform: solve_euler(uniform_grid(n)?, opts.fvm)?,
        perturbed: solve_euler(perturbed_euler_grid(n, opts)?, opts.fvm)?,
    })
}

/// Averages of `fine` over the cells of a uniform grid `factor` times
/// coarser.
pub fn restrict_uniform(fine: &[f64], factor: usize) -> Result<Vec<f64>> {
    if factor == 0 || fine.len() % factor != 0 {
        return Err(Error::InvalidArgument(format!("{} cells do not coarsen by {factor}", fine.len())));
    }
    Ok(fine.chunks(factor).map(|c| c.iter().sum::<f64>() / factor as f64).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfConvergenceRecord {
    pub n: usize,
    /// `sum dx |rho - rho_ref|` against the reference restricted to the grid.
    pub l1: f64,
    pub order: Option<f64>,
}

/// Density errors of uniform runs against a uniform reference run.
pub fn self_convergence(reference: &EulerRun, runs: &[&EulerRun]) -> Result<Vec<SelfConvergenceRecord>> {
    let fine = reference.density();
    let mut errors = Vec::with_capacity(runs.len());
    for run in runs {
        let n = run.grid.len();
        if fine.len() % n != 0 {
            return Err(Error::InvalidArgument(format!("reference of {} cells does not coarsen to {n}", fine.len())));
        }
        let coarse = restrict_uniform(&fine, fine.len() / n)?;
        let dx = run.grid.widths();
        let l1 = run.density().iter().zip(&coarse).zip(&dx).map(|((a, b), w)| w * (a - b).abs()).sum();
        errors.push((n, l1));
    }
    let o = orders(&errors.iter().map(|e| e.1).collect::<Vec<_>>());
    Ok(errors.into_iter().zip(o).map(|((n, l1), order)| SelfConvergenceRecord { n, l1, order }).collect())
}
