use crate::fvm::{ConservationLaw, StateField};

pub const GAMMA: f64 = 1.4;

/// `f(u) = u`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Advection;

impl ConservationLaw for Advection {
    fn components(&self) -> usize {
        1
    }

    fn flux(&self, _x: f64, u: &[f64], out: &mut [f64]) {
        out[0] = u[0];
    }

    fn max_wavespeed(&self, _field: &StateField) -> f64 {
        1.0
    }

    fn interface_wavespeed(&self, _x: f64, _a: &[f64], _b: &[f64]) -> f64 {
        1.0
    }

    fn supports_left_upwind(&self) -> bool {
        true
    }
}

/// `f(u) = u^2 / 2`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Burgers;

impl ConservationLaw for Burgers {
    fn components(&self) -> usize {
        1
    }

    fn flux(&self, _x: f64, u: &[f64], out: &mut [f64]) {
        out[0] = 0.5 * u[0] * u[0];
    }

    fn max_wavespeed(&self, field: &StateField) -> f64 {
        field.values().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    fn interface_wavespeed(&self, _x: f64, a: &[f64], b: &[f64]) -> f64 {
        a[0].abs().max(b[0].abs())
    }
}

/// `f(x, u) = sin(x) u`.
#[derive(Debug, Clone, Copy, Default)]
pub struct NonautonomousLinear;

impl ConservationLaw for NonautonomousLinear {
    fn components(&self) -> usize {
        1
    }

    fn flux(&self, x: f64, u: &[f64], out: &mut [f64]) {
        out[0] = x.sin() * u[0];
    }

    fn max_wavespeed(&self, _field: &StateField) -> f64 {
        1.0
    }

    fn dissipation_at(&self, x: f64, _field_bound: f64) -> f64 {
        x.sin().abs()
    }

    fn interface_wavespeed(&self, x: f64, _a: &[f64], _b: &[f64]) -> f64 {
        x.sin().abs()
    }
}

/// Primitive variables of an ideal gas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerState {
    pub density: f64,
    pub velocity: f64,
    pub pressure: f64,
}

impl EulerState {
    pub fn primitive(density: f64, velocity: f64, pressure: f64) -> Self {
        EulerState { density, velocity, pressure }
    }

    /// From `(rho, rho v, E)`.
    pub fn from_conserved(u: &[f64]) -> Self {
        let density = u[0];
        let velocity = u[1] / density;
        EulerState { density, velocity, pressure: pressure(u) }
    }

    /// `(rho, rho v, E)` with `E = p / (gamma - 1) + rho v^2 / 2`.
    pub fn conserved(&self) -> [f64; 3] {
        let mom = self.density * self.velocity;
        [self.density, mom, self.pressure / (GAMMA - 1.0) + 0.5 * mom * self.velocity]
    }

    pub fn sound_speed(&self) -> f64 {
        (GAMMA * self.pressure / self.density).sqrt()
    }

    pub fn is_admissible(&self) -> bool {
        self.density > 0.0 && self.pressure > 0.0
    }
}

fn pressure(u: &[f64]) -> f64 {
    (GAMMA - 1.0) * (u[2] - 0.5 * u[1] * u[1] / u[0])
}

/// 1D Euler equations of gas dynamics.
#[derive(Debug, Clone, Copy, Default)]
pub struct Euler;

impl ConservationLaw for Euler {
    fn components(&self) -> usize {
        3
    }

    fn flux(&self, _x: f64, u: &[f64], out: &mut [f64]) {
        let v = u[1] / u[0];
        let p = pressure(u);
        out[0] = u[1];
        out[1] = u[1] * v + p;
        out[2] = v * (u[2] + p);
    }

    /// `max |v| + c`; NaN if some cell has nonpositive density or pressure.
    fn max_wavespeed(&self, field: &StateField) -> f64 {
        let mut best: f64 = 0.0;
        for i in 0..field.cells() {
            let s = EulerState::from_conserved(field.cell(i));
            if !s.is_admissible() {
                return f64::NAN;
            }
            best = best.max(s.velocity.abs() + s.sound_speed());
        }
        best
    }

    fn interface_wavespeed(&self, _x: f64, a: &[f64], b: &[f64]) -> f64 {
        let speed = |u: &[f64]| {
            let s = EulerState::from_conserved(u);
            s.velocity.abs() + s.sound_speed()
        };
        speed(a).max(speed(b))
    }
}
