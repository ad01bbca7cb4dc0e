//! Experiment drivers behind the `nuweno` command line tool.

pub mod algebraic;
pub mod bench;
pub mod csv;
pub mod delta;
pub mod pde;
pub mod shuosher;

pub use algebraic::AlgebraicRun;

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRecord {
    pub level: usize,
    pub h: f64,
    pub error: f64,
    /// `log2(E_{n-1} / E_n)`; absent at the first level.
    pub order: Option<f64>,
}

/// Observed orders between consecutive errors.
pub fn orders(errors: &[f64]) -> Vec<Option<f64>> {
    let mut out = Vec::with_capacity(errors.len());
    for (i, &e) in errors.iter().enumerate() {
        let o = if i == 0 {
            None
        } else {
            let prev = errors[i - 1];
            (prev > 0.0 && e > 0.0).then(|| (prev / e).log2())
        };
        out.push(o);
    }
    out
}
