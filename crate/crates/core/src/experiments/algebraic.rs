//! Reconstruction accuracy on fixed stencils under uniform refinement.

use crate::error::{Error, Result};
use crate::grid::{algebraic_test_stencil, AlgebraicTest, Framework, StencilGeometry};
use crate::scalar::Real;
use crate::weno::{weno_params, WenoOptions, WenoStencil};

use super::{orders, ConvergenceRecord};

/// Coarsest scale; level `n` uses `h = H0 / 2^n`.
pub const H0: f64 = 0.2;

/// Functions sampled by the algebraic experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunction {
    /// `x e^x`.
    Smooth,
    /// `x e^x` for `x <= 0`, `2 x e^x + 1` for `x > 0`.
    Jump,
}

impl TestFunction {
    pub fn for_test(test: AlgebraicTest) -> Self {
        match test {
            AlgebraicTest::Test1 => TestFunction::Smooth,
            AlgebraicTest::Test2 => TestFunction::Jump,
        }
    }

    pub fn eval<S: Real>(&self, x: &S) -> S {
        let left = x.clone() * x.exp();
        match self {
            TestFunction::Jump if *x > S::zero() => S::from_f64(2.0) * left + S::one(),
            _ => left,
        }
    }

    /// Exact integral over `[a, b]` from the antiderivatives `(x-1) e^x`
    /// and `2 (x-1) e^x + x`, split at the jump.
    pub fn integral<S: Real>(&self, a: &S, b: &S) -> S {
        let left_prim = |x: &S| (x.clone() - S::one()) * x.exp();
        let right_prim = |x: &S| S::from_f64(2.0) * left_prim(x) + x;
        match self {
            TestFunction::Smooth => left_prim(b) - left_prim(a),
            TestFunction::Jump => {
                let zero = S::zero();
                if *b <= zero {
                    left_prim(b) - left_prim(a)
                } else if *a >= zero {
                    right_prim(b) - right_prim(a)
                } else {
                    (left_prim(&zero) - left_prim(a)) + (right_prim(b) - right_prim(&zero))
                }
            }
        }
    }

    pub fn average<S: Real>(&self, a: &S, b: &S) -> S {
        self.integral(a, b) / (b.clone() - a)
    }
}

#[derive(Debug, Clone)]
pub struct AlgebraicOptions<S> {
    /// Overrides the backend's default regularisation.
    pub epsilon: Option<S>,
    pub weno: WenoOptions,
    /// Collect one diagnostic line per level.
    pub dump_weights: bool,
    /// Drop levels whose error is at roundoff level for the backend.
    pub clamp_to_roundoff: bool,
}

impl<S> Default for AlgebraicOptions<S> {
    fn default() -> Self {
        AlgebraicOptions { epsilon: None, weno: WenoOptions::default(), dump_weights: false, clamp_to_roundoff: false }
    }
}

#[derive(Debug, Clone)]
pub struct AlgebraicRun {
    pub records: Vec<ConvergenceRecord>,
    /// First level dropped by roundoff clamping, if any.
    pub truncated_at: Option<usize>,
    pub dump: Vec<String>,
}

/// Samples `f` on `geom` (nodes or interfaces) in the given framework.
pub fn sample<S: Real>(f: TestFunction, geom: &StencilGeometry<S>, framework: Framework) -> Vec<S> {
    let x = geom.positions();
    match framework {
        Framework::PointValues => x.iter().map(|xi| f.eval(xi)).collect(),
        Framework::CellAverages => x.windows(2).map(|w| f.average(&w[0], &w[1])).collect(),
    }
}

/// Runs `levels` refinements of a normalized stencil.
pub fn run_algebraic_on<S: Real>(
    base: &StencilGeometry<S>,
    framework: Framework,
    f: TestFunction,
    levels: usize,
    opts: &AlgebraicOptions<S>,
) -> Result<AlgebraicRun> {
    if levels < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 levels, got {levels}")));
    }
    let stencil_size = match framework {
        Framework::PointValues => base.c.len(),
        Framework::CellAverages => base.c.len().saturating_sub(1),
    };
    let eps = opts.epsilon.clone().unwrap_or_else(S::default_weno_epsilon);
    let params = weno_params(stencil_size, eps)?;
    // Geometry-dependent coefficients are scale-free, so one build serves all levels.
    let stencil = WenoStencil::new(base, framework, params, opts.weno)?;

    let mut errors = Vec::with_capacity(levels);
    let mut hs = Vec::with_capacity(levels);
    let mut dump = Vec::new();
    let mut truncated_at = None;
    let mut h = S::from_f64(H0);
    for level in 0..levels {
        let geom = base.with_scale(h.clone())?;
        let data = sample(f, &geom, framework);
        let out = stencil.reconstruct(&data)?;
        let exact = f.eval(&geom.x_star());
        let err = (out.value.clone() - &exact).abs();
        if !err.is_finite() {
            return Err(Error::NonFiniteState { steps: level });
        }
        if err.to_f64() == 0.0 && !err.is_zero() {
            return Err(Error::Underflow { level });
        }
        if opts.clamp_to_roundoff {
            let scale = data.iter().chain(std::iter::once(&exact)).fold(S::zero(), |m, v| {
                let a = v.abs();
                if a > m {
                    a
                } else {
                    m
                }
            });
            let floor = S::from_f64(1e3) * S::machine_epsilon() * scale;
            if err <= floor {
                truncated_at = Some(level);
                break;
            }
        }
        if opts.dump_weights {
            dump.push(out.dump_line(&geom.x_star()));
        }
        errors.push(err.to_f64());
        hs.push(h.to_f64());
        h = h / S::from_f64(2.0);
    }
    let ords = orders(&errors);
    let records = errors
        .iter()
        .zip(&hs)
        .zip(ords)
        .enumerate()
        .map(|(level, ((&error, &h), order))| ConvergenceRecord { level, h, error, order })
        .collect();
    Ok(AlgebraicRun { records, truncated_at, dump })
}

/// One of the two tabulated experiments on its hard-coded stencil.
pub fn run_algebraic<S: Real>(
    test: AlgebraicTest,
    framework: Framework,
    levels: usize,
    opts: &AlgebraicOptions<S>,
) -> Result<AlgebraicRun> {
    let base = algebraic_test_stencil::<S>(test, framework);
    run_algebraic_on(&base, framework, TestFunction::for_test(test), levels, opts)
}
