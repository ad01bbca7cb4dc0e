//! Wichmann-Hill combined multiplicative congruential generator.

use crate::error::{Error, Result};

const M1: u32 = 30269;
const M2: u32 = 30307;
const M3: u32 = 30323;

/// Seeds of the three component generators.
///
/// A value type: callers thread it through grid constructors explicitly so
/// that successive refinements continue one uninterrupted stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WichmannHill {
    pub s1: u32,
    pub s2: u32,
    pub s3: u32,
}

impl WichmannHill {
    /// Starting seeds used by every experiment in this crate.
    pub const DEFAULT_SEEDS: WichmannHill = WichmannHill { s1: 874, s2: 1421, s3: 957 };

    pub fn new(s1: u32, s2: u32, s3: u32) -> Result<Self> {
        if s1 >= M1 || s2 >= M2 || s3 >= M3 {
            return Err(Error::InvalidArgument(format!(
                "Wichmann-Hill seeds ({s1}, {s2}, {s3}) out of range"
            )));
        }
        Ok(WichmannHill { s1, s2, s3 })
    }

    /// Advances the three recurrences and returns the combined draw in [0, 1).
    pub fn next_value(&mut self) -> f64 {
        self.s1 = 171 * self.s1 % M1;
        self.s2 = 172 * self.s2 % M2;
        self.s3 = 170 * self.s3 % M3;
        (self.s1 as f64 / M1 as f64 + self.s2 as f64 / M2 as f64 + self.s3 as f64 / M3 as f64).fract()
    }
}

impl Default for WichmannHill {
    fn default() -> Self {
        Self::DEFAULT_SEEDS
    }
}

/// Functional form of [`WichmannHill::next_value`].
pub fn wichmann_hill_next(state: WichmannHill) -> (f64, WichmannHill) {
    let mut next = state;
    let value = next.next_value();
    (value, next)
}
