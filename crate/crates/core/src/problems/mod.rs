//! Model problems: laws, initial data, boundary handling and exact
//! solutions where they are known.

mod laws;

use std::f64::consts::PI;
use std::sync::Arc;

pub use laws::{Advection, Burgers, Euler, EulerState, NonautonomousLinear, GAMMA};

use crate::error::{Error, Result};
use crate::fvm::{BoundarySpec, FluxKind, FluxSpec, StateField};
use crate::grid::CellGrid;

pub type InitialFn = Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>;
pub type ExactFn = Arc<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>;
pub type AntiderivativeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
pub type JumpsFn = Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

/// Exact solution of a scalar problem.
#[derive(Clone)]
pub struct ExactSolution {
    pub value: ExactFn,
    /// Closed-form `x -> int^x u(., t)`, used in place of quadrature.
    pub antiderivative: Option<AntiderivativeFn>,
    /// Discontinuity locations at time `t`.
    pub jumps: JumpsFn,
}

impl ExactSolution {
    pub fn cell_averages(&self, grid: &CellGrid, t: f64) -> Result<Vec<f64>> {
        let x = grid.interfaces();
        if let Some(prim) = &self.antiderivative {
            return Ok(x.windows(2).map(|w| (prim(w[1], t) - prim(w[0], t)) / (w[1] - w[0])).collect());
        }
        let jumps = (self.jumps)(t);
        let mut out = Vec::with_capacity(grid.len());
        for w in x.windows(2) {
            let mut total = 0.0;
            for (a, b) in split_at_jumps(w[0], w[1], &jumps) {
                let mut err = None;
                total += gauss5(a, b, |y| match (self.value)(y, t) {
                    Ok(v) => v,
                    Err(e) => {
                        err.get_or_insert(e);
                        f64::NAN
                    }
                });
                if let Some(e) = err {
                    return Err(e);
                }
            }
            out.push(total / (w[1] - w[0]));
        }
        Ok(out)
    }
}

impl std::fmt::Debug for ExactSolution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExactSolution").field("closed_form_average", &self.antiderivative.is_some()).finish()
    }
}

#[derive(Clone)]
pub struct ProblemDef {
    pub name: &'static str,
    pub flux: FluxSpec,
    pub bc: BoundarySpec,
    pub domain: (f64, f64),
    pub final_time: f64,
    pub initial: InitialFn,
    /// Discontinuities of the initial data, for quadrature splitting.
    pub initial_jumps: Vec<f64>,
    pub exact: Option<ExactSolution>,
}

impl std::fmt::Debug for ProblemDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProblemDef")
            .field("name", &self.name)
            .field("flux", &self.flux)
            .field("bc", &self.bc)
            .field("domain", &self.domain)
            .field("final_time", &self.final_time)
            .field("exact", &self.exact)
            .finish()
    }
}

impl ProblemDef {
    pub fn components(&self) -> usize {
        self.flux.law.components()
    }

    pub fn initial_averages(&self, grid: &CellGrid) -> StateField {
        init_cell_averages(grid, self.components(), &*self.initial, &self.initial_jumps)
    }

    pub fn exact_averages(&self, grid: &CellGrid, t: f64) -> Result<Vec<f64>> {
        match &self.exact {
            Some(e) => e.cell_averages(grid, t),
            None => Err(Error::InvalidArgument(format!("{} has no exact solution", self.name))),
        }
    }
}

const GAUSS5_NODES: [f64; 5] =
    [-0.906_179_845_938_664, -0.538_469_310_105_683, 0.0, 0.538_469_310_105_683, 0.906_179_845_938_664];
const GAUSS5_WEIGHTS: [f64; 5] =
    [0.236_926_885_056_189_1, 0.478_628_670_499_366_5, 0.568_888_888_888_888_9, 0.478_628_670_499_366_5, 0.236_926_885_056_189_1];

/// Five-point Gauss-Legendre rule on `[a, b]`.
pub fn gauss5(a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    GAUSS5_NODES.iter().zip(GAUSS5_WEIGHTS).map(|(t, w)| w * f(mid + half * t)).sum::<f64>() * half
}

fn split_at_jumps(a: f64, b: f64, jumps: &[f64]) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = jumps.iter().copied().filter(|&x| x > a && x < b).collect();
    cuts.sort_by(f64::total_cmp);
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut lo = a;
    for c in cuts {
        out.push((lo, c));
        lo = c;
    }
    out.push((lo, b));
    out
}

/// Cell averages of `f` by Gauss-Legendre quadrature, splitting cells at
/// the given discontinuities.
pub fn init_cell_averages(grid: &CellGrid, ncomp: usize, f: &dyn Fn(f64) -> Vec<f64>, jumps: &[f64]) -> StateField {
    let mut field = StateField::zeros(ncomp, grid.len());
    for (i, w) in grid.interfaces().windows(2).enumerate() {
        let cell = field.cell_mut(i);
        for (a, b) in split_at_jumps(w[0], w[1], jumps) {
            for k in 0..ncomp {
                cell[k] += gauss5(a, b, |y| f(y)[k]);
            }
        }
        for v in cell.iter_mut() {
            *v /= w[1] - w[0];
        }
    }
    field
}

/// `(L1, Linf)` of `approx - exact`, the former weighted by cell widths.
pub fn error_norms(grid: &CellGrid, exact: &[f64], approx: &[f64]) -> Result<(f64, f64)> {
    if exact.len() != grid.len() || approx.len() != grid.len() {
        return Err(Error::Shape { expected: grid.len(), got: exact.len().min(approx.len()) });
    }
    let mut l1 = 0.0;
    let mut linf: f64 = 0.0;
    for ((dx, e), a) in grid.widths().into_iter().zip(exact).zip(approx) {
        let d = (e - a).abs();
        l1 += dx * d;
        linf = linf.max(d);
    }
    Ok((l1, linf))
}

/// Shape of the initial data for the scalar tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitialShape {
    Smooth,
    Step,
}

/// Reduces `x` into `(-1, 1]`.
fn wrap_periodic(x: f64) -> f64 {
    let y = (x + 1.0).rem_euclid(2.0) - 1.0;
    if y == -1.0 {
        1.0
    } else {
        y
    }
}

fn sine_wave(x: f64) -> f64 {
    0.25 + 0.5 * (PI * x).sin()
}

fn step(x: f64) -> f64 {
    if x > 0.0 && x <= 1.0 {
        1.0
    } else {
        -0.25
    }
}

/// `u_t + u_x = 0` on `(-1, 1)`, periodic, up to `T = 1` (smooth) or
/// `T = 1.5` (step).
pub fn advection(shape: InitialShape) -> ProblemDef {
    match shape {
        InitialShape::Smooth => ProblemDef {
            name: "advection-smooth",
            flux: FluxSpec::new(Advection, FluxKind::UpwindLeft),
            bc: BoundarySpec::periodic(),
            domain: (-1.0, 1.0),
            final_time: 1.0,
            initial: Arc::new(|x| vec![sine_wave(x)]),
            initial_jumps: Vec::new(),
            exact: Some(ExactSolution {
                value: Arc::new(|x, t| Ok(sine_wave(x - t))),
                antiderivative: Some(Arc::new(|x, t| 0.25 * x - 0.5 * (PI * (x - t)).cos() / PI)),
                jumps: Arc::new(|_| Vec::new()),
            }),
        },
        InitialShape::Step => ProblemDef {
            name: "advection-step",
            flux: FluxSpec::new(Advection, FluxKind::UpwindLeft),
            bc: BoundarySpec::periodic(),
            domain: (-1.0, 1.0),
            final_time: 1.5,
            initial: Arc::new(|x| vec![step(x)]),
            initial_jumps: vec![0.0],
            exact: Some(ExactSolution {
                value: Arc::new(|x, t| Ok(step(wrap_periodic(x - t)))),
                antiderivative: None,
                jumps: Arc::new(|t| vec![wrap_periodic(t), wrap_periodic(1.0 + t)]),
            }),
        },
    }
}

/// Smooth Burgers solution `u = 1/4 + 1/2 sin(pi (x - u t))` by Newton
/// iteration, with bisection on the range of the data as a fallback.
pub fn burgers_smooth_exact(x: f64, t: f64) -> Result<f64> {
    let g = |u: f64| u - 0.25 - 0.5 * (PI * (x - u * t)).sin();
    let dg = |u: f64| 1.0 + 0.5 * PI * t * (PI * (x - u * t)).cos();
    let mut u = 0.25 + 0.5 * (PI * x).sin();
    for _ in 0..50 {
        let d = dg(u);
        if d.abs() < 1e-12 {
            break;
        }
        let next = u - g(u) / d;
        if (next - u).abs() <= 1e-14 {
            return Ok(next);
        }
        u = next;
    }
    // g(-1/4) <= 0 <= g(3/4) always holds, so bisect.
    let (mut lo, mut hi) = (-0.25, 0.75);
    if g(lo) > 0.0 || g(hi) < 0.0 {
        return Err(Error::NoConvergence { x, t });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `u_t + (u^2/2)_x = 0` on `(-1, 1)`, periodic, up to `T = 0.3` (smooth,
/// before the shock forms) or `T = 1` (step).
pub fn burgers(shape: InitialShape) -> ProblemDef {
    let flux = FluxSpec::new(Burgers, FluxKind::LocalLaxFriedrichs);
    match shape {
        InitialShape::Smooth => ProblemDef {
            name: "burgers-smooth",
            flux,
            bc: BoundarySpec::periodic(),
            domain: (-1.0, 1.0),
            final_time: 0.3,
            initial: Arc::new(|x| vec![sine_wave(x)]),
            initial_jumps: Vec::new(),
            exact: Some(ExactSolution {
                value: Arc::new(burgers_smooth_exact),
                antiderivative: None,
                jumps: Arc::new(|_| Vec::new()),
            }),
        },
        InitialShape::Step => ProblemDef {
            name: "burgers-step",
            flux,
            bc: BoundarySpec::periodic(),
            domain: (-1.0, 1.0),
            final_time: 1.0,
            initial: Arc::new(|x| vec![step(x)]),
            initial_jumps: vec![0.0],
            exact: None,
        },
    }
}

/// Exact solution of `u_t + (sin(x) u)_x = 0`, `u(x, 0) = 1`.
pub fn delta_exact(x: f64, t: f64) -> f64 {
    let e = t.exp();
    2.0 * e / (1.0 - x.cos() + (1.0 + x.cos()) * e * e)
}

/// Antiderivative of [`delta_exact`], continuous on `[0, 2 pi]`.
pub fn delta_antiderivative(x: f64, t: f64) -> f64 {
    let half = 0.5 * x;
    2.0 * (half.sin() * (-t).exp()).atan2(half.cos())
}

/// `u_t + (sin(x) u)_x = 0` on `(0, 2 pi)`, periodic; mass concentrates
/// at `x = pi` as `t` grows. `T = 8`.
pub fn delta() -> ProblemDef {
    ProblemDef {
        name: "delta",
        flux: FluxSpec::new(NonautonomousLinear, FluxKind::LocalLaxFriedrichs),
        bc: BoundarySpec::periodic(),
        domain: (0.0, 2.0 * PI),
        final_time: 8.0,
        initial: Arc::new(|_| vec![1.0]),
        initial_jumps: Vec::new(),
        exact: Some(ExactSolution {
            value: Arc::new(|x, t| Ok(delta_exact(x, t))),
            antiderivative: Some(Arc::new(delta_antiderivative)),
            jumps: Arc::new(|_| Vec::new()),
        }),
    }
}

/// Post-shock state `(27/7, 4 sqrt(35)/9, 31/3)`.
pub fn shu_osher_left() -> EulerState {
    EulerState::primitive(27.0 / 7.0, 4.0 * 35f64.sqrt() / 9.0, 31.0 / 3.0)
}

pub fn shu_osher_initial(x: f64) -> EulerState {
    if x <= -4.0 {
        shu_osher_left()
    } else {
        EulerState::primitive(1.0 + 0.2 * (5.0 * x).sin(), 0.0, 1.0)
    }
}

/// Mach 3 shock running into a sinusoidal density field on `(-5, 5)`,
/// `T = 1.8`.
pub fn shu_osher() -> ProblemDef {
    ProblemDef {
        name: "shu-osher",
        flux: FluxSpec::new(Euler, FluxKind::LocalLaxFriedrichs),
        bc: BoundarySpec::inflow_outflow(shu_osher_left().conserved().to_vec()),
        domain: (-5.0, 5.0),
        final_time: 1.8,
        initial: Arc::new(|x| shu_osher_initial(x).conserved().to_vec()),
        initial_jumps: vec![-4.0],
        exact: None,
    }
}
