use std::fmt::Debug;
use std::sync::Arc;

use super::StateField;

/// `u_t + f(x, u)_x = 0` for an `m`-component state.
pub trait ConservationLaw: Debug + Send + Sync {
    fn components(&self) -> usize;

    fn flux(&self, x: f64, u: &[f64], out: &mut [f64]);

    /// Bound on the characteristic speeds over the field, used as the
    /// dissipation coefficient of the Lax-Friedrichs flux and for CFL.
    fn max_wavespeed(&self, field: &StateField) -> f64;

    /// `max_u |df/du (x, u)|` given the field bound from
    /// [`max_wavespeed`](Self::max_wavespeed). Only fluxes that depend on
    /// `x` need to override this.
    fn dissipation_at(&self, _x: f64, field_bound: f64) -> f64 {
        field_bound
    }

    /// Bound on the characteristic speeds between two states at `x`.
    fn interface_wavespeed(&self, x: f64, a: &[f64], b: &[f64]) -> f64;

    /// True when every characteristic speed is nonnegative, so that the
    /// left state alone determines the interface flux.
    fn supports_left_upwind(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FluxKind {
    UpwindLeft,
    LocalLaxFriedrichs,
}

#[derive(Debug, Clone)]
pub struct FluxSpec {
    pub law: Arc<dyn ConservationLaw>,
    pub kind: FluxKind,
}

impl FluxSpec {
    pub fn new(law: impl ConservationLaw + 'static, kind: FluxKind) -> Self {
        FluxSpec { law: Arc::new(law), kind }
    }
}

/// `0.5 (f(b) + f(a) - alpha (b - a))` for left state `a`, right state
/// `b`, given their physical fluxes `fa`, `fb`.
pub fn llf_flux(fa: &[f64], fb: &[f64], a: &[f64], b: &[f64], alpha: f64, out: &mut [f64]) {
    for k in 0..out.len() {
        out[k] = 0.5 * (fb[k] + fa[k] - alpha * (b[k] - a[k]));
    }
}
