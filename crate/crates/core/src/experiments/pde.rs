//! Convergence studies and profiles for the scalar test problems.

use super::orders;
use crate::error::Result;
use crate::fvm::{integrate, DtPolicy, FiniteVolume, FvmOptions, StateField, StepRule, TimeScheme};
use crate::grid::{perturbed_grid, CellGrid, Perturbation, WichmannHill};
use crate::problems::{advection, burgers, error_norms, InitialShape, ProblemDef};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdeProblem {
    Advection,
    Burgers,
}

impl PdeProblem {
    pub fn definition(self, shape: InitialShape) -> ProblemDef {
        match self {
            PdeProblem::Advection => advection(shape),
            PdeProblem::Burgers => burgers(shape),
        }
    }

    /// `dt = (min dx)^(5/3)` for smooth data, scaled by `1 / max|u0|` for
    /// Burgers; `0.9 min dx` for the step.
    pub fn dt_policy(self, shape: InitialShape) -> DtPolicy {
        match (self, shape) {
            (PdeProblem::Advection, InitialShape::Smooth) => DtPolicy::PowerLaw { exponent: 5.0 / 3.0, factor: 1.0 },
            (PdeProblem::Burgers, InitialShape::Smooth) => {
                DtPolicy::PowerLaw { exponent: 5.0 / 3.0, factor: 1.0 / 0.75 }
            }
            (_, InitialShape::Step) => DtPolicy::CflSpeed { cfl: 0.9, alpha: 1.0 },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PdeOptions {
    pub xi: f64,
    pub perturbation: Perturbation,
    pub fvm: FvmOptions,
    /// Generator state for the first grid; later grids continue from it.
    pub seeds: WichmannHill,
}

impl Default for PdeOptions {
    fn default() -> Self {
        PdeOptions {
            xi: 0.1,
            perturbation: Perturbation::AsPrinted,
            fvm: FvmOptions::default(),
            seeds: WichmannHill::default(),
        }
    }
}

/// One row of a PDE convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct PdeRecord {
    pub n: usize,
    pub h_min: f64,
    /// `sum dx |e|` divided by the domain length.
    pub l1: f64,
    pub l1_order: Option<f64>,
    pub linf: f64,
    pub linf_order: Option<f64>,
}

/// Final state of one run with RK3.
pub fn solve(problem: &ProblemDef, grid: &CellGrid, policy: DtPolicy, fvm: FvmOptions) -> Result<StateField> {
    let op = FiniteVolume::new(grid.clone(), problem.flux.clone(), problem.bc.clone(), fvm)?;
    let u0 = problem.initial_averages(grid);
    let (u, _) = integrate(&op, u0, problem.final_time, TimeScheme::Rk3, StepRule::Policy(policy), |_| Ok(()))?;
    Ok(u)
}

/// Smooth-data errors on perturbed grids of `n_list` cells. The generator
/// state carries over from each grid to the next.
pub fn run_pde_convergence(problem: PdeProblem, n_list: &[usize], opts: &PdeOptions) -> Result<Vec<PdeRecord>> {
    let def = problem.definition(InitialShape::Smooth);
    let policy = problem.dt_policy(InitialShape::Smooth);
    let mut state = opts.seeds;
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let (grid, next) = perturbed_grid(n, opts.xi, state, opts.perturbation)?;
        state = next;
        let u = solve(&def, &grid, policy, opts.fvm)?;
        let exact = def.exact_averages(&grid, def.final_time)?;
        let (l1, linf) = error_norms(&grid, &exact, u.values())?;
        let length = def.domain.1 - def.domain.0;
        rows.push((n, grid.min_width(), l1 / length, linf));
    }
    let l1_orders = orders(&rows.iter().map(|r| r.2).collect::<Vec<_>>());
    let linf_orders = orders(&rows.iter().map(|r| r.3).collect::<Vec<_>>());
    Ok(rows
        .into_iter()
        .zip(l1_orders.into_iter().zip(linf_orders))
        .map(|((n, h_min, l1, linf), (l1_order, linf_order))| PdeRecord { n, h_min, l1, l1_order, linf, linf_order })
        .collect())
}

/// Step-data run on a perturbed grid from the default seeds.
pub fn run_step_profile(problem: PdeProblem, n: usize, xi: f64, opts: &PdeOptions) -> Result<(CellGrid, StateField)> {
    let def = problem.definition(InitialShape::Step);
    let (grid, _) = perturbed_grid(n, xi, opts.seeds, opts.perturbation)?;
    let u = solve(&def, &grid, problem.dt_policy(InitialShape::Step), opts.fvm)?;
    Ok((grid, u))
}
