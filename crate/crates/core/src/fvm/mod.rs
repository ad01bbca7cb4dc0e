//! Semidiscrete finite-volume operator on nonuniform 1D grids.
//!
//! Interface values come from cell-average WENO reconstructions with five
//! cells, left-biased for `q-` and right-biased for `q+`. Geometry-dependent
//! coefficients are built once per grid, so each right-hand side costs
//! `O(n)` reconstructions of fixed size.

mod fast;
mod flux;
mod time;

pub use flux::{llf_flux, ConservationLaw, FluxKind, FluxSpec};
pub use time::{compute_dt, integrate, tvd_rk2_step, tvd_rk3_step, uniform_steps, DtPolicy, StepRule, TimeScheme};

use crate::error::{Error, Result};
use crate::grid::{CellGrid, Framework, StencilGeometry};
use crate::weno::{weno_params, LocationCheck, WenoOptions, WenoStencil};

use fast::Weno5;

/// Cells per interface reconstruction.
pub const STENCIL_CELLS: usize = 5;

/// Cell averages of an `ncomp`-component state, stored cell-major.
#[derive(Debug, Clone, PartialEq)]
pub struct StateField {
    ncomp: usize,
    values: Vec<f64>,
}

impl StateField {
    pub fn new(ncomp: usize, values: Vec<f64>) -> Result<Self> {
        if ncomp == 0 || values.len() % ncomp != 0 {
            return Err(Error::InvalidArgument(format!(
                "{} values do not split into {ncomp}-component states",
                values.len()
            )));
        }
        Ok(StateField { ncomp, values })
    }

    pub fn scalar(values: Vec<f64>) -> Self {
        StateField { ncomp: 1, values }
    }

    pub fn zeros(ncomp: usize, cells: usize) -> Self {
        StateField { ncomp, values: vec![0.0; ncomp * cells] }
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    pub fn cells(&self) -> usize {
        self.values.len() / self.ncomp
    }

    pub fn cell(&self, i: usize) -> &[f64] {
        &self.values[i * self.ncomp..(i + 1) * self.ncomp]
    }

    pub fn cell_mut(&mut self, i: usize) -> &mut [f64] {
        &mut self.values[i * self.ncomp..(i + 1) * self.ncomp]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn component(&self, k: usize) -> Vec<f64> {
        self.values.iter().skip(k).step_by(self.ncomp).copied().collect()
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// `sum_i u_i dx_i` per component.
    pub fn integral(&self, grid: &CellGrid) -> Vec<f64> {
        let mut out = vec![0.0; self.ncomp];
        for (i, dx) in grid.widths().into_iter().enumerate() {
            for (o, v) in out.iter_mut().zip(self.cell(i)) {
                *o += v * dx;
            }
        }
        out
    }

    /// `a * self + b * other`, elementwise.
    pub fn combine(&self, a: f64, other: &StateField, b: f64) -> StateField {
        debug_assert_eq!(self.values.len(), other.values.len());
        let values = self.values.iter().zip(&other.values).map(|(x, y)| a * x + b * y).collect();
        StateField { ncomp: self.ncomp, values }
    }

    /// One row per cell: `x_i, dx_i, components...`, 17 significant digits.
    pub fn snapshot(&self, grid: &CellGrid) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        for (i, (x, dx)) in grid.centers().into_iter().zip(grid.widths()).enumerate() {
            let _ = write!(out, "{x:.16e},{dx:.16e}");
            for v in self.cell(i) {
                let _ = write!(out, ",{v:.16e}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    Periodic,
    /// Ghosts on the left hold a fixed inflow state, ghosts on the right
    /// copy the last interior cell.
    InflowOutflow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec {
    pub kind: BoundaryKind,
    pub left_state: Vec<f64>,
}

impl BoundarySpec {
    pub fn periodic() -> Self {
        BoundarySpec { kind: BoundaryKind::Periodic, left_state: Vec::new() }
    }

    pub fn inflow_outflow(left_state: Vec<f64>) -> Self {
        BoundarySpec { kind: BoundaryKind::InflowOutflow, left_state }
    }
}

/// Cell window of the left-biased reconstruction at `x_{i+1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BiasedWindow {
    /// Cells `i-2 ..= i+2`.
    #[default]
    Standard,
    /// Cells `i-3 ..= i+1`; puts the target outside the admissible window.
    Wide,
}

/// Dissipation coefficient of the Lax-Friedrichs flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dissipation {
    /// `max |df/du|` over the states of the whole field, evaluated at the
    /// interface position; one field scan per right-hand side.
    #[default]
    Field,
    /// `max |df/du|` over the two reconstructed states at each interface.
    Interface,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FvmOptions {
    pub epsilon: f64,
    pub window: BiasedWindow,
    pub dissipation: Dissipation,
    pub weno: WenoOptions,
}

impl Default for FvmOptions {
    fn default() -> Self {
        FvmOptions {
            epsilon: 1e-100,
            window: BiasedWindow::Standard,
            dissipation: Dissipation::Field,
            weno: WenoOptions::default(),
        }
    }
}

/// Spatial operator `L(u)` with `du_i/dt = -(F_{i+1/2} - F_{i-1/2}) / dx_i`.
#[derive(Debug, Clone)]
pub struct FiniteVolume {
    grid: CellGrid,
    widths: Vec<f64>,
    flux: FluxSpec,
    bc: BoundarySpec,
    dissipation: Dissipation,
    ghosts: usize,
    minus_offset: usize,
    /// Left-biased reconstructions, one per interface `0..=n`.
    minus: Vec<Weno5>,
    /// Right-biased reconstructions, one per interface `0..=n`.
    plus: Vec<Weno5>,
}

fn stencil_at(ext: &[f64], first_cell: usize, x_star: f64, options: &FvmOptions) -> Result<Weno5> {
    let x = &ext[first_cell..=first_cell + STENCIL_CELLS];
    let h = (x[STENCIL_CELLS] - x[0]) / STENCIL_CELLS as f64;
    let c = x.iter().map(|xi| (xi - x_star) / h).collect();
    let geom = StencilGeometry::normalized(c, 0.0)?;
    let params = weno_params(STENCIL_CELLS, options.epsilon)?;
    let st = WenoStencil::new(&geom, Framework::CellAverages, params, options.weno)?;
    Ok(Weno5::from_stencil(&st))
}

impl FiniteVolume {
    pub fn new(grid: CellGrid, flux: FluxSpec, bc: BoundarySpec, options: FvmOptions) -> Result<Self> {
        let n = grid.len();
        if n < STENCIL_CELLS {
            return Err(Error::InvalidArgument(format!("need at least {STENCIL_CELLS} cells, got {n}")));
        }
        if flux.kind == FluxKind::UpwindLeft && !flux.law.supports_left_upwind() {
            return Err(Error::InvalidArgument(
                "left upwinding requires nonnegative characteristic speeds".into(),
            ));
        }
        if bc.kind == BoundaryKind::InflowOutflow && bc.left_state.len() != flux.law.components() {
            return Err(Error::Shape { expected: flux.law.components(), got: bc.left_state.len() });
        }
        let (ghosts, minus_offset, options) = match options.window {
            BiasedWindow::Standard => (3, 3, options),
            BiasedWindow::Wide => {
                let weno = WenoOptions { location: LocationCheck::WarnOnly, ..options.weno };
                (4, 4, FvmOptions { weno, ..options })
            }
        };
        let widths = grid.widths();
        let x = grid.interfaces();
        let ghost_width = |m: usize, left: bool| match (bc.kind, left) {
            (BoundaryKind::Periodic, true) => widths[n - m],
            (BoundaryKind::Periodic, false) => widths[m - 1],
            (BoundaryKind::InflowOutflow, true) => widths[m - 1],
            (BoundaryKind::InflowOutflow, false) => widths[n - m],
        };
        // Extended interfaces: ext[ghosts + k] = x_k.
        let mut ext = vec![0.0; n + 2 * ghosts + 1];
        ext[ghosts..=ghosts + n].copy_from_slice(x);
        for m in 1..=ghosts {
            ext[ghosts - m] = ext[ghosts - m + 1] - ghost_width(m, true);
            ext[ghosts + n + m] = ext[ghosts + n + m - 1] + ghost_width(m, false);
        }
        let mut minus = Vec::with_capacity(n + 1);
        let mut plus = Vec::with_capacity(n + 1);
        for k in 0..=n {
            // Extended cell index of physical cell j is j + ghosts.
            minus.push(stencil_at(&ext, k + ghosts - minus_offset, x[k], &options)?);
            plus.push(stencil_at(&ext, k + ghosts - 2, x[k], &options)?);
        }
        let dissipation = options.dissipation;
        Ok(FiniteVolume { grid, widths, flux, bc, dissipation, ghosts, minus_offset, minus, plus })
    }

    pub fn grid(&self) -> &CellGrid {
        &self.grid
    }

    pub fn flux(&self) -> &FluxSpec {
        &self.flux
    }

    pub fn boundary(&self) -> &BoundarySpec {
        &self.bc
    }

    /// Component `k` of the field padded with ghost cells.
    fn extended_component(&self, field: &StateField, k: usize, out: &mut Vec<f64>) {
        let n = self.grid.len();
        let g = self.ghosts;
        let nc = field.ncomp;
        out.clear();
        out.resize(n + 2 * g, 0.0);
        for (i, v) in out[g..g + n].iter_mut().enumerate() {
            *v = field.values[i * nc + k];
        }
        for m in 1..=g {
            let (left, right) = match self.bc.kind {
                BoundaryKind::Periodic => (field.values[(n - m) * nc + k], field.values[(m - 1) * nc + k]),
                BoundaryKind::InflowOutflow => (self.bc.left_state[k], field.values[(n - 1) * nc + k]),
            };
            out[g - m] = left;
            out[g + n + m - 1] = right;
        }
    }

    fn check_field(&self, field: &StateField) -> Result<()> {
        if field.ncomp != self.flux.law.components() {
            return Err(Error::Shape { expected: self.flux.law.components(), got: field.ncomp });
        }
        if field.cells() != self.grid.len() {
            return Err(Error::Shape { expected: self.grid.len(), got: field.cells() });
        }
        Ok(())
    }

    /// Reconstructed `(q-, q+)` at every interface, interface-major with
    /// `ncomp` entries each.
    pub fn interface_states(&self, field: &StateField) -> Result<(Vec<f64>, Vec<f64>)> {
        self.check_field(field)?;
        let mut qm = Vec::new();
        let mut qp = Vec::new();
        self.reconstruct_states(field, &mut qm, Some(&mut qp));
        Ok((qm, qp))
    }

    fn reconstruct_states(&self, field: &StateField, qm: &mut Vec<f64>, mut qp: Option<&mut Vec<f64>>) {
        let n = self.grid.len();
        let nc = field.ncomp;
        let g = self.ghosts;
        qm.clear();
        qm.resize((n + 1) * nc, 0.0);
        if let Some(qp) = qp.as_deref_mut() {
            qp.clear();
            qp.resize((n + 1) * nc, 0.0);
        }
        let mut ext = Vec::new();
        for k in 0..nc {
            self.extended_component(field, k, &mut ext);
            for j in 0..=n {
                let lo = j + g - self.minus_offset;
                qm[j * nc + k] = self.minus[j].value(&ext[lo..lo + STENCIL_CELLS]);
            }
            if let Some(qp) = qp.as_deref_mut() {
                for j in 0..=n {
                    let lo = j + g - 2;
                    qp[j * nc + k] = self.plus[j].value(&ext[lo..lo + STENCIL_CELLS]);
                }
            }
        }
    }

    /// Numerical fluxes at interfaces `0..=n`.
    pub fn numerical_fluxes(&self, field: &StateField) -> Result<Vec<f64>> {
        self.check_field(field)?;
        let n = self.grid.len();
        let nc = field.ncomp;
        let x = self.grid.interfaces();
        let law = &*self.flux.law;
        let periodic = self.bc.kind == BoundaryKind::Periodic;
        let mut fluxes = vec![0.0; (n + 1) * nc];
        match self.flux.kind {
            FluxKind::UpwindLeft => {
                let mut qm = Vec::new();
                self.reconstruct_states(field, &mut qm, None);
                let last = if periodic { n - 1 } else { n };
                for j in 0..=last {
                    law.flux(x[j], &qm[j * nc..(j + 1) * nc], &mut fluxes[j * nc..(j + 1) * nc]);
                }
            }
            FluxKind::LocalLaxFriedrichs => {
                let bound = match self.dissipation {
                    Dissipation::Field => law.max_wavespeed(field),
                    Dissipation::Interface => 0.0,
                };
                if !bound.is_finite() {
                    return Err(Error::NonFiniteState { steps: 0 });
                }
                let (qm, qp) = self.interface_states(field)?;
                let mut fm = vec![0.0; nc];
                let mut fp = vec![0.0; nc];
                let last = if periodic { n - 1 } else { n };
                for j in 0..=last {
                    let (a, b) = (&qm[j * nc..(j + 1) * nc], &qp[j * nc..(j + 1) * nc]);
                    law.flux(x[j], a, &mut fm);
                    law.flux(x[j], b, &mut fp);
                    let alpha = match self.dissipation {
                        Dissipation::Field => law.dissipation_at(x[j], bound),
                        Dissipation::Interface => law.interface_wavespeed(x[j], a, b),
                    };
                    llf_flux(&fm, &fp, a, b, alpha, &mut fluxes[j * nc..(j + 1) * nc]);
                }
            }
        }
        if periodic {
            // Both ends are the same physical interface.
            let (head, tail) = fluxes.split_at_mut(n * nc);
            tail.copy_from_slice(&head[..nc]);
        }
        if let Some(pos) = fluxes.iter().position(|f| !f.is_finite()) {
            return Err(Error::NonFiniteFlux { interface: pos / nc });
        }
        Ok(fluxes)
    }

    /// `du/dt` for every cell.
    pub fn rhs(&self, field: &StateField) -> Result<StateField> {
        let fluxes = self.numerical_fluxes(field)?;
        let nc = field.ncomp;
        let mut out = StateField::zeros(nc, self.grid.len());
        for (i, dx) in self.widths.iter().enumerate() {
            for k in 0..nc {
                out.values[i * nc + k] = -(fluxes[(i + 1) * nc + k] - fluxes[i * nc + k]) / dx;
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests;
