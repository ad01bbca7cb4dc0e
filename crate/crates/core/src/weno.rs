//! Nonlinear WENO reconstruction on nonuniform stencils.
//!
//! A stencil of `R` nodes (or `R` cells) is split into `r' + 1` overlapping
//! substencils of `r + 1` samples. Each substencil gets a simplified
//! smoothness indicator (a sum of `r` squared first differences) and the
//! whole stencil a global smoothness measure `d` (the squared, scaled
//! leading coefficient of the full interpolant). Weights built from these
//! blend the full-stencil value with a convex combination of substencil
//! values: optimal order `R` on smooth data, order `r + 1` across a jump.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grid::{Framework, StencilGeometry};
use crate::reconstruct::{cell_leading_weights, cell_weights, dot, point_leading_weights, point_weights, DScaling};
use crate::scalar::Real;

/// Size parameters of one reconstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct WenoParams<S> {
    /// Number of nodes (point values) or cells (cell averages), `R >= 3`.
    pub stencil_size: usize,
    /// `floor((R-1)/2)`: substencils hold `r + 1` samples.
    pub r: usize,
    /// `ceil((R-1)/2)`: there are `r' + 1` substencils.
    pub r_prime: usize,
    /// Exponent of the weights, `ceil((r+1)/2)`.
    pub s: u32,
    pub epsilon: S,
}

pub fn weno_params<S: Real>(stencil_size: usize, epsilon: S) -> Result<WenoParams<S>> {
    if stencil_size < 3 {
        return Err(Error::InvalidArgument(format!("stencil size must be at least 3, got {stencil_size}")));
    }
    if !(epsilon > S::zero()) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    let r = (stencil_size - 1) / 2;
    let r_prime = stencil_size / 2;
    let s = (r as u32 + 2) / 2;
    Ok(WenoParams { stencil_size, r, r_prime, s, epsilon })
}

impl<S: Real> WenoParams<S> {
    pub fn with_default_epsilon(stencil_size: usize) -> Result<Self> {
        weno_params(stencil_size, S::default_weno_epsilon())
    }

    pub fn substencils(&self) -> usize {
        self.r_prime + 1
    }
}

/// What to do when `c_star` falls outside the admissible window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LocationCheck {
    #[default]
    Enforce,
    /// Build anyway; the violation is available from [`WenoStencil::location_warning`].
    WarnOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct WenoOptions {
    pub scaling: DScaling,
    /// Drop the abscissa denominators from the smoothness indicators.
    pub omit_indicator_denominators: bool,
    pub location: LocationCheck,
}

/// Samples on a stencil, tagged with their interpretation.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleData<S> {
    pub framework: Framework,
    pub values: Vec<S>,
}

impl<S> SampleData<S> {
    pub fn point_values(values: Vec<S>) -> Self {
        SampleData { framework: Framework::PointValues, values }
    }

    pub fn cell_averages(values: Vec<S>) -> Self {
        SampleData { framework: Framework::CellAverages, values }
    }
}

/// Nonlinear weights and the quantities they are built from.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSet<S> {
    pub omega: Vec<S>,
    pub omega_global: S,
    pub j: S,
}

/// Result of one reconstruction with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct WenoOutput<S> {
    pub value: S,
    pub substencil_values: Vec<S>,
    pub full_value: S,
    pub indicators: Vec<S>,
    pub d: S,
    pub j: S,
    pub omega: Vec<S>,
    pub omega_global: S,
}

impl<S: Real> WenoOutput<S> {
    /// One comma-separated line: `c*, q, omega_global, omega_0.., I_0..`.
    pub fn dump_line(&self, c_star: &S) -> String {
        let mut line = String::new();
        let mut push = |v: &S| {
            if !line.is_empty() {
                line.push(',');
            }
            let _ = write!(line, "{:.16e}", v.to_f64());
        };
        push(c_star);
        push(&self.value);
        push(&self.omega_global);
        self.omega.iter().for_each(&mut push);
        self.indicators.iter().for_each(&mut push);
        line
    }
}

/// Reusable buffers for [`WenoStencil::value`].
#[derive(Debug, Clone)]
pub struct WenoScratch<S> {
    diffs: Vec<S>,
    prefix: Vec<S>,
    suffix: Vec<S>,
    indicators: Vec<S>,
    omega: Vec<S>,
}

impl<S: Real> WenoScratch<S> {
    pub fn new(params: &WenoParams<S>) -> Self {
        let gaps = params.stencil_size - 1;
        WenoScratch {
            diffs: vec![S::zero(); gaps],
            prefix: vec![S::zero(); gaps],
            suffix: vec![S::zero(); gaps],
            indicators: vec![S::zero(); params.substencils()],
            omega: vec![S::zero(); params.substencils()],
        }
    }
}

/// Admissible interval for `c_star`, as indices into `c`.
fn location_window(framework: Framework, stencil_size: usize) -> (usize, usize) {
    let rr = stencil_size;
    match framework {
        Framework::PointValues if rr % 2 == 0 => (rr / 2 - 1, rr / 2),
        Framework::PointValues => ((rr - 1) / 2 - 1, (rr - 1) / 2 + 1),
        Framework::CellAverages if rr % 2 == 1 => ((rr + 1) / 2 - 1, (rr + 1) / 2),
        Framework::CellAverages => (rr / 2 - 1, rr / 2 + 1),
    }
}

/// Geometry-dependent coefficients for one `(stencil, c_star)` pair.
///
/// Building costs `O(R^3)`; every subsequent reconstruction is linear in `R`
/// apart from the substencil dot products. Immutable once built.
#[derive(Debug, Clone)]
pub struct WenoStencil<S> {
    framework: Framework,
    params: WenoParams<S>,
    options: WenoOptions,
    c_star: S,
    /// Substencil weights, `r + 1` per substencil, substencil-major.
    sub: Vec<S>,
    full: Vec<S>,
    lead: Vec<S>,
    /// Reciprocal gaps between consecutive indicator abscissae.
    inv_gaps: Vec<S>,
    location_warning: Option<Error>,
}

impl<S: Real> WenoStencil<S> {
    pub fn new(
        geom: &StencilGeometry<S>,
        framework: Framework,
        params: WenoParams<S>,
        options: WenoOptions,
    ) -> Result<Self> {
        let rr = params.stencil_size;
        let expected = match framework {
            Framework::PointValues => rr,
            Framework::CellAverages => rr + 1,
        };
        if geom.c.len() != expected {
            return Err(Error::Shape { expected, got: geom.c.len() });
        }
        crate::grid::check_increasing(&geom.c)?;
        let c = &geom.c;
        let c_star = &geom.c_star;

        let (lo, hi) = location_window(framework, rr);
        let location_warning = if *c_star < c[lo] || *c_star > c[hi] {
            let err = Error::LocationConstraint {
                c_star: c_star.to_f64(),
                lo: c[lo].to_f64(),
                hi: c[hi].to_f64(),
            };
            match options.location {
                LocationCheck::Enforce => return Err(err),
                LocationCheck::WarnOnly => Some(err),
            }
        } else {
            None
        };

        let r = params.r;
        let mut sub = Vec::with_capacity(params.substencils() * (r + 1));
        for i in 0..params.substencils() {
            let w = match framework {
                Framework::PointValues => point_weights(&c[i..=i + r], c_star)?,
                Framework::CellAverages => cell_weights(&c[i..=i + r + 1], c_star)?,
            };
            sub.extend(w.0);
        }
        let (full, lead) = match framework {
            Framework::PointValues => (point_weights(c, c_star)?, point_leading_weights(c, options.scaling)?),
            Framework::CellAverages => (cell_weights(c, c_star)?, cell_leading_weights(c, options.scaling)?),
        };

        let abscissae: Vec<S> = match framework {
            Framework::PointValues => c.clone(),
            Framework::CellAverages => c
                .windows(2)
                .map(|w| (w[0].clone() + &w[1]) / S::from_f64(2.0))
                .collect(),
        };
        let inv_gaps = abscissae
            .windows(2)
            .map(|w| {
                if options.omit_indicator_denominators {
                    S::one()
                } else {
                    S::one() / (w[1].clone() - &w[0])
                }
            })
            .collect();

        Ok(WenoStencil {
            framework,
            params,
            options,
            c_star: c_star.clone(),
            sub,
            full: full.0,
            lead: lead.0,
            inv_gaps,
            location_warning,
        })
    }

    pub fn framework(&self) -> Framework {
        self.framework
    }

    pub fn params(&self) -> &WenoParams<S> {
        &self.params
    }

    pub fn options(&self) -> &WenoOptions {
        &self.options
    }

    pub fn c_star(&self) -> &S {
        &self.c_star
    }

    pub fn location_warning(&self) -> Option<&Error> {
        self.location_warning.as_ref()
    }

    /// `(substencil, full, leading, inverse gap)` coefficients.
    pub(crate) fn coefficients(&self) -> (&[S], &[S], &[S], &[S]) {
        (&self.sub, &self.full, &self.lead, &self.inv_gaps)
    }

    pub fn scratch(&self) -> WenoScratch<S> {
        WenoScratch::new(&self.params)
    }

    fn check_len(&self, data: &[S]) -> Result<()> {
        if data.len() != self.params.stencil_size {
            return Err(Error::Shape { expected: self.params.stencil_size, got: data.len() });
        }
        Ok(())
    }

    /// Smoothness indicators `I_i = sum_{j=i}^{i+r-1} t_j` with
    /// `t_j = ((f_{j+1} - f_j) / (a_{j+1} - a_j))^2`.
    ///
    /// The `R - 1` terms are computed once and every window sum is read off
    /// per-block prefix and suffix sums (block length `r`), so the whole set
    /// costs `O(R)` and involves only additions of nonnegative terms.
    fn indicators_with(&self, data: &[S], scratch: &mut WenoScratch<S>) {
        let gaps = self.params.stencil_size - 1;
        let r = self.params.r;
        let WenoScratch { diffs, prefix, suffix, indicators, .. } = scratch;
        for j in 0..gaps {
            let q = (data[j + 1].clone() - &data[j]) * &self.inv_gaps[j];
            diffs[j] = q.clone() * q;
        }
        for j in 0..gaps {
            prefix[j] = if j % r == 0 { diffs[j].clone() } else { prefix[j - 1].clone() + &diffs[j] };
        }
        for j in (0..gaps).rev() {
            suffix[j] = if (j + 1) % r == 0 || j + 1 == gaps {
                diffs[j].clone()
            } else {
                suffix[j + 1].clone() + &diffs[j]
            };
        }
        for (i, out) in indicators.iter_mut().enumerate() {
            let end = i + r - 1;
            *out = if i % r == 0 { prefix[end].clone() } else { suffix[i].clone() + &prefix[end] };
        }
    }

    /// Indicators into a caller-provided slice of length `r' + 1`.
    pub fn indicators_into(&self, data: &[S], scratch: &mut WenoScratch<S>, out: &mut [S]) -> Result<()> {
        self.check_len(data)?;
        if out.len() != self.params.substencils() {
            return Err(Error::Shape { expected: self.params.substencils(), got: out.len() });
        }
        self.indicators_with(data, scratch);
        out.clone_from_slice(&scratch.indicators);
        Ok(())
    }

    pub fn indicators(&self, data: &[S]) -> Result<Vec<S>> {
        let mut scratch = self.scratch();
        let mut out = vec![S::zero(); self.params.substencils()];
        self.indicators_into(data, &mut scratch, &mut out)?;
        Ok(out)
    }

    pub fn global_smoothness(&self, data: &[S]) -> Result<S> {
        self.check_len(data)?;
        let lead = dot(&self.lead, data);
        Ok(lead.clone() * lead)
    }

    fn substencil_value(&self, i: usize, data: &[S]) -> S {
        let w = self.params.r + 1;
        dot(&self.sub[i * w..(i + 1) * w], &data[i..i + w])
    }

    /// Full pipeline with all diagnostics.
    pub fn reconstruct(&self, data: &[S]) -> Result<WenoOutput<S>> {
        self.check_len(data)?;
        let mut scratch = self.scratch();
        self.indicators_with(data, &mut scratch);
        let indicators = scratch.indicators.clone();
        let d = self.global_smoothness(data)?;
        let ws = weights_unchecked(&indicators, &d, &self.params);
        let substencil_values: Vec<S> = (0..self.params.substencils()).map(|i| self.substencil_value(i, data)).collect();
        let full_value = dot(&self.full, data);
        let q_tilde = dot(&ws.omega, &substencil_values);
        let value = blend(&ws.omega_global, &full_value, &q_tilde);
        Ok(WenoOutput {
            value,
            substencil_values,
            full_value,
            indicators,
            d,
            j: ws.j,
            omega: ws.omega,
            omega_global: ws.omega_global,
        })
    }

    /// Reconstructed value only; allocation-free hot path for solvers.
    ///
    /// `data` must hold exactly `R` samples (checked in debug builds).
    pub fn value(&self, data: &[S], scratch: &mut WenoScratch<S>) -> S {
        debug_assert_eq!(data.len(), self.params.stencil_size);
        self.indicators_with(data, scratch);
        let lead = dot(&self.lead, data);
        let d = lead.clone() * lead;
        let omega_global = weights_into(&scratch.indicators, &d, &self.params, &mut scratch.omega);
        let mut q_tilde = S::zero();
        for i in 0..self.params.substencils() {
            q_tilde += scratch.omega[i].clone() * self.substencil_value(i, data);
        }
        let full_value = dot(&self.full, data);
        blend(&omega_global, &full_value, &q_tilde)
    }
}

fn blend<S: Real>(omega_global: &S, full: &S, q_tilde: &S) -> S {
    omega_global.clone() * full + (S::one() - omega_global) * q_tilde
}

/// Writes `omega` and returns `(omega_global, J)`.
///
/// `alpha_i = (1 + d^s / (I_i^s + eps)) / (r'+1)`; the common factor
/// cancels in the normalisation. For `d^s > 1` the numerators are divided
/// by `d^s` first, which keeps every intermediate finite.
fn weights_core<S: Real>(indicators: &[S], d: &S, params: &WenoParams<S>, omega: &mut [S]) -> (S, S) {
    let ds = d.powi(params.s);
    let mut j = S::zero();
    for (w, ind) in omega.iter_mut().zip(indicators) {
        *w = S::one() / (ind.powi(params.s) + &params.epsilon);
        j += &*w;
    }
    let large = ds > S::one();
    let inv_ds = if large { S::one() / &ds } else { S::zero() };
    let mut total = S::zero();
    for w in omega.iter_mut() {
        *w = if large { inv_ds.clone() + &*w } else { S::one() + ds.clone() * &*w };
        total += &*w;
    }
    for w in omega.iter_mut() {
        *w = w.clone() / &total;
    }
    let prod = ds * &j;
    let omega_global = if prod.is_finite() { S::one() / (S::one() + prod) } else { S::zero() };
    (omega_global, j)
}

fn weights_into<S: Real>(indicators: &[S], d: &S, params: &WenoParams<S>, omega: &mut [S]) -> S {
    weights_core(indicators, d, params, omega).0
}

fn weights_unchecked<S: Real>(indicators: &[S], d: &S, params: &WenoParams<S>) -> WeightSet<S> {
    let mut omega = vec![S::zero(); indicators.len()];
    let (omega_global, j) = weights_core(indicators, d, params, &mut omega);
    WeightSet { omega, omega_global, j }
}

/// Nonlinear weights from indicators and the global smoothness measure.
pub fn weights<S: Real>(indicators: &[S], d: &S, params: &WenoParams<S>) -> Result<WeightSet<S>> {
    if indicators.len() != params.substencils() {
        return Err(Error::Shape { expected: params.substencils(), got: indicators.len() });
    }
    if indicators.iter().any(|i| !(*i >= S::zero())) || !(*d >= S::zero()) {
        return Err(Error::InvalidArgument("indicators and d must be nonnegative".into()));
    }
    Ok(weights_unchecked(indicators, d, params))
}

fn stencil_for<S: Real>(
    geom: &StencilGeometry<S>,
    data: &SampleData<S>,
    params: &WenoParams<S>,
    location: LocationCheck,
) -> Result<WenoStencil<S>> {
    if data.values.len() != params.stencil_size {
        return Err(Error::Shape { expected: params.stencil_size, got: data.values.len() });
    }
    let options = WenoOptions { location, ..WenoOptions::default() };
    WenoStencil::new(geom, data.framework, params.clone(), options)
}

pub fn smoothness_indicators<S: Real>(
    geom: &StencilGeometry<S>,
    data: &SampleData<S>,
    params: &WenoParams<S>,
) -> Result<Vec<S>> {
    stencil_for(geom, data, params, LocationCheck::WarnOnly)?.indicators(&data.values)
}

pub fn global_smoothness<S: Real>(geom: &StencilGeometry<S>, data: &SampleData<S>, params: &WenoParams<S>) -> Result<S> {
    stencil_for(geom, data, params, LocationCheck::WarnOnly)?.global_smoothness(&data.values)
}

/// One-shot reconstruction with default options; `c_star` must satisfy the
/// location constraint.
pub fn reconstruct<S: Real>(
    geom: &StencilGeometry<S>,
    data: &SampleData<S>,
    params: &WenoParams<S>,
) -> Result<WenoOutput<S>> {
    stencil_for(geom, data, params, LocationCheck::Enforce)?.reconstruct(&data.values)
}
