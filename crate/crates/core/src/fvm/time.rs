use crate::error::{Error, Result};

use crate::grid::CellGrid;

use super::{FiniteVolume, StateField};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeScheme {
    Rk2,
    Rk3,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DtPolicy {
    /// `cfl * min dx / alpha`.
    CflSpeed { cfl: f64, alpha: f64 },
    /// `factor * (min dx)^exponent`.
    PowerLaw { exponent: f64, factor: f64 },
    Fixed(f64),
}

pub fn compute_dt(grid: &CellGrid, policy: DtPolicy) -> Result<f64> {
    let h = grid.min_width();
    let dt = match policy {
        DtPolicy::CflSpeed { cfl, alpha } => cfl * h / alpha,
        DtPolicy::PowerLaw { exponent, factor } => factor * h.powf(exponent),
        DtPolicy::Fixed(dt) => dt,
    };
    if !(dt > 0.0 && dt.is_finite()) || !(h > 0.0) {
        return Err(Error::InvalidArgument(format!("time step must be positive, got {dt}")));
    }
    Ok(dt)
}

/// `N = ceil(T / max_dt)` equal steps; returns `(N, T / N)`.
pub fn uniform_steps(final_time: f64, max_dt: f64) -> (usize, f64) {
    let n = (final_time / max_dt).ceil().max(1.0) as usize;
    (n, final_time / n as f64)
}

/// Two-stage TVD Runge-Kutta step for `du/dt = rhs(u)`.
pub fn tvd_rk2_step(
    u: &StateField,
    dt: f64,
    mut rhs: impl FnMut(&StateField) -> Result<StateField>,
) -> Result<StateField> {
    let u1 = u.combine(1.0, &rhs(u)?, dt);
    let l1 = rhs(&u1)?;
    Ok(u.combine(0.5, &u1.combine(1.0, &l1, dt), 0.5))
}

/// Three-stage TVD Runge-Kutta step for `du/dt = rhs(u)`.
pub fn tvd_rk3_step(
    u: &StateField,
    dt: f64,
    mut rhs: impl FnMut(&StateField) -> Result<StateField>,
) -> Result<StateField> {
    let u1 = u.combine(1.0, &rhs(u)?, dt);
    let u2 = u.combine(0.75, &u1.combine(1.0, &rhs(&u1)?, dt), 0.25);
    Ok(u.combine(1.0 / 3.0, &u2.combine(1.0, &rhs(&u2)?, dt), 2.0 / 3.0))
}

/// Step size for the next step, given the current state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepRule {
    Policy(DtPolicy),
    /// `CflSpeed` with `alpha` taken from the law at every step.
    AdaptiveCfl(f64),
}

impl StepRule {
    pub fn dt(&self, op: &FiniteVolume, field: &StateField) -> Result<f64> {
        match *self {
            StepRule::Policy(p) => compute_dt(op.grid(), p),
            StepRule::AdaptiveCfl(cfl) => {
                let alpha = op.flux().law.max_wavespeed(field);
                if !alpha.is_finite() {
                    return Err(Error::NonFiniteState { steps: 0 });
                }
                compute_dt(op.grid(), DtPolicy::CflSpeed { cfl, alpha })
            }
        }
    }
}

/// Advances `u0` to `final_time`, shortening the last step to land on it.
/// `observe` sees every accepted state. Returns the final state and the
/// number of steps taken.
pub fn integrate(
    op: &FiniteVolume,
    u0: StateField,
    final_time: f64,
    scheme: TimeScheme,
    rule: StepRule,
    mut observe: impl FnMut(&StateField) -> Result<()>,
) -> Result<(StateField, usize)> {
    let tol = 1e-12 * final_time.abs().max(1.0);
    let mut u = u0;
    let mut t = 0.0;
    let mut steps = 0;
    while final_time - t > tol {
        let dt = rule.dt(op, &u).map_err(|e| match e {
            Error::NonFiniteState { .. } => Error::NonFiniteState { steps },
            e => e,
        })?;
        let dt = dt.min(final_time - t);
        u = match scheme {
            TimeScheme::Rk2 => tvd_rk2_step(&u, dt, |v| op.rhs(v))?,
            TimeScheme::Rk3 => tvd_rk3_step(&u, dt, |v| op.rhs(v))?,
        };
        steps += 1;
        if !u.is_finite() {
            return Err(Error::NonFiniteState { steps });
        }
        t += dt;
        observe(&u)?;
    }
    Ok((u, steps))
}
