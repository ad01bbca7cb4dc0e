//! Stencil and cell-grid geometry.

mod table;
mod wichmann_hill;

use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::sync::OnceLock;

pub use wichmann_hill::{wichmann_hill_next, WichmannHill};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Whether samples are point values at nodes or averages over cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Framework {
    PointValues,
    CellAverages,
}

/// One of the two algebraic accuracy experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AlgebraicTest {
    /// Smooth data.
    Test1,
    /// Data with a jump at the origin.
    Test2,
}

/// A stencil in normalized coordinates: node (or interface) `i` sits at
/// `z + c[i] * h`, and the reconstruction is wanted at `z + c_star * h`.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilGeometry<S> {
    pub z: S,
    pub h: S,
    pub c: Vec<S>,
    pub c_star: S,
}

impl<S: Real> StencilGeometry<S> {
    pub fn new(z: S, h: S, c: Vec<S>, c_star: S) -> Result<Self> {
        if !(h > S::zero()) {
            return Err(Error::InvalidArgument(format!("stencil scale must be positive, got {h}")));
        }
        check_increasing(&c)?;
        Ok(StencilGeometry { z, h, c, c_star })
    }

    /// Stencil anchored at the origin with unit scale.
    pub fn normalized(c: Vec<S>, c_star: S) -> Result<Self> {
        Self::new(S::zero(), S::one(), c, c_star)
    }

    /// Absolute positions `z + c_i h`.
    pub fn positions(&self) -> Vec<S> {
        self.c.iter().map(|ci| self.z.clone() + ci.clone() * &self.h).collect()
    }

    pub fn x_star(&self) -> S {
        self.z.clone() + self.c_star.clone() * &self.h
    }

    pub fn with_scale(&self, h: S) -> Result<Self> {
        Self::new(self.z.clone(), h, self.c.clone(), self.c_star.clone())
    }
}

pub(crate) fn check_increasing<S: PartialOrd>(c: &[S]) -> Result<()> {
    for (i, w) in c.windows(2).enumerate() {
        if !(w[0] < w[1]) {
            return Err(Error::NotIncreasing { index: i + 1 });
        }
    }
    Ok(())
}

fn algebraic_columns() -> &'static [Vec<&'static str>; 4] {
    static COLUMNS: OnceLock<[Vec<&'static str>; 4]> = OnceLock::new();
    COLUMNS.get_or_init(|| [table::column(0), table::column(1), table::column(2), table::column(3)])
}

/// The hard-coded stencils of the algebraic experiments, with `z = 0` and
/// `h = 1`; callers rescale with [`StencilGeometry::with_scale`].
pub fn algebraic_test_stencil<S: Real>(test: AlgebraicTest, framework: Framework) -> StencilGeometry<S> {
    let col = match (test, framework) {
        (AlgebraicTest::Test1, Framework::PointValues) => 0,
        (AlgebraicTest::Test1, Framework::CellAverages) => 1,
        (AlgebraicTest::Test2, Framework::PointValues) => 2,
        (AlgebraicTest::Test2, Framework::CellAverages) => 3,
    };
    let c = algebraic_columns()[col]
        .iter()
        .map(|v| S::from_decimal(v).expect("embedded table is valid"))
        .collect();
    let c_star = S::from_decimal(table::C_STAR[col]).expect("embedded table is valid");
    StencilGeometry::normalized(c, c_star).expect("embedded table is increasing")
}

/// Strictly increasing cell interfaces of a 1D finite-volume partition.
#[derive(Debug, Clone, PartialEq)]
pub struct CellGrid {
    interfaces: Vec<f64>,
}

impl CellGrid {
    pub fn new(interfaces: Vec<f64>) -> Result<Self> {
        if interfaces.len() < 2 {
            return Err(Error::InvalidArgument("a grid needs at least one cell".into()));
        }
        if interfaces.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite interface coordinate".into()));
        }
        check_increasing(&interfaces)?;
        Ok(CellGrid { interfaces })
    }

    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if n == 0 || !(b > a) {
            return Err(Error::InvalidArgument(format!("bad uniform grid [{a}, {b}] with {n} cells")));
        }
        let len = b - a;
        let mut x: Vec<f64> = (0..=n).map(|j| a + len * j as f64 / n as f64).collect();
        x[n] = b;
        Self::new(x)
    }

    pub fn interfaces(&self) -> &[f64] {
        &self.interfaces
    }

    pub fn len(&self) -> usize {
        self.interfaces.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn left(&self) -> f64 {
        self.interfaces[0]
    }

    pub fn right(&self) -> f64 {
        self.interfaces[self.len()]
    }

    pub fn centers(&self) -> Vec<f64> {
        self.interfaces.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect()
    }

    pub fn widths(&self) -> Vec<f64> {
        self.interfaces.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn min_width(&self) -> f64 {
        self.widths().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max_width(&self) -> f64 {
        self.widths().into_iter().fold(0.0, f64::max)
    }

    /// Maps the grid affinely onto `[a, b]`.
    pub fn mapped_to(&self, a: f64, b: f64) -> Result<Self> {
        let (l, r) = (self.left(), self.right());
        let scale = (b - a) / (r - l);
        let n = self.len();
        let mut x: Vec<f64> = self.interfaces.iter().map(|xi| a + (xi - l) * scale).collect();
        x[0] = a;
        x[n] = b;
        Self::new(x)
    }

    /// Two-column text: interface index and coordinate, 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (j, x) in self.interfaces.iter().enumerate() {
            let _ = writeln!(out, "{j} {x:.16e}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut x = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split_whitespace();
            let idx: usize = cols
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: bad index", lineno + 1)))?;
            if idx != x.len() {
                return Err(Error::Parse(format!("line {}: expected index {}", lineno + 1, x.len())));
            }
            let v: f64 = cols
                .next()
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: bad coordinate", lineno + 1)))?;
            x.push(v);
        }
        Self::new(x)
    }
}

/// Sign convention of the interface fluctuation in [`perturbed_grid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Perturbation {
    /// `R(j) = -xi - 2 xi r`, fluctuations in `[-3 xi, -xi]`.
    #[default]
    AsPrinted,
    /// `R(j) = -xi + 2 xi r`, fluctuations in `[-xi, xi]`.
    Centered,
}

/// Quasi-uniform grid on `[-1, 1]` whose interior interfaces are displaced
/// by Wichmann-Hill draws.
///
/// Consumes exactly `n - 1` draws and returns the advanced generator, so a
/// refinement study can continue the same stream at the next resolution.
pub fn perturbed_grid(
    n: usize,
    xi: f64,
    state: WichmannHill,
    perturbation: Perturbation,
) -> Result<(CellGrid, WichmannHill)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("perturbed grid needs n >= 2, got {n}")));
    }
    if !(0.0..0.5).contains(&xi) {
        return Err(Error::InvalidArgument(format!("fluctuation must lie in [0, 1/2), got {xi}")));
    }
    let mut rng = state;
    let nf = n as f64;
    let mut x = Vec::with_capacity(n + 1);
    x.push(-1.0);
    for j in 1..n {
        let r = rng.next_value();
        let fluct = match perturbation {
            Perturbation::AsPrinted => -xi - 2.0 * xi * r,
            Perturbation::Centered => -xi + 2.0 * xi * r,
        };
        x.push(-1.0 + 2.0 * j as f64 / nf + 2.0 / nf * fluct);
    }
    x.push(1.0);
    Ok((CellGrid::new(x)?, rng))
}

/// Symmetric grid on `[0, 2 pi]` with `2m` cells whose widths shrink
/// geometrically (ratio `1/kappa`) towards `pi`.
///
/// `kappa == 1` yields the uniform grid, but only when `allow_uniform` is
/// set; otherwise `kappa` must exceed one.
pub fn geometric_delta_grid(m: usize, kappa: f64, allow_uniform: bool) -> Result<CellGrid> {
    if m == 0 {
        return Err(Error::InvalidArgument("geometric grid needs m >= 1".into()));
    }
    if kappa == 1.0 && allow_uniform {
        return CellGrid::uniform(0.0, TAU, 2 * m);
    }
    if !(kappa > 1.0) || !kappa.is_finite() {
        return Err(Error::InvalidArgument(format!("grid ratio must exceed 1, got {kappa}")));
    }
    let ratio = 1.0 / kappa;
    let series: f64 = (0..m).map(|k| ratio.powi(k as i32)).sum();
    let first = PI / series;
    let mut x = vec![0.0; 2 * m + 1];
    for k in 1..m {
        x[k] = x[k - 1] + first * ratio.powi(k as i32 - 1);
    }
    x[m] = PI;
    for j in 1..=m {
        x[m + j] = TAU - x[m - j];
    }
    CellGrid::new(x)
}
