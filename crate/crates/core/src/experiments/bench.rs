//! Timing of the smoothness indicators against stencil size.

use std::hint::black_box;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::grid::{Framework, StencilGeometry, WichmannHill};
use crate::weno::{weno_params, WenoOptions, WenoStencil};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub stencil_size: usize,
    /// Mean seconds per full set of indicators.
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Least-squares slope of `log(time)` against `log(R)`.
    pub exponent: f64,
}

/// Slope of the least-squares line through `(x, y)`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(Error::InvalidArgument("need at least two points to fit".into()));
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("stencil sizes must differ".into()));
    }
    Ok(sxy / sxx)
}

/// Times `repetitions` indicator evaluations per stencil size on
/// pseudo-random nonuniform stencils and data.
pub fn bench_indicators(sizes: &[usize], repetitions: usize) -> Result<BenchReport> {
    if sizes.len() < 2 {
        return Err(Error::InvalidArgument("need at least two stencil sizes".into()));
    }
    let mut rng = WichmannHill::default();
    let mut rows = Vec::with_capacity(sizes.len());
    for &rr in sizes {
        let params = weno_params(rr, 1e-100)?;
        let mut c = Vec::with_capacity(rr);
        let mut x = 0.0;
        for _ in 0..rr {
            c.push(x);
            x += 0.5 + rng.next_value();
        }
        let c_star = c[(rr - 1) / 2];
        let geom = StencilGeometry::normalized(c, c_star)?;
        let st = WenoStencil::new(&geom, Framework::PointValues, params, WenoOptions::default())?;
        // A pool of inputs keeps the loop from being hoisted.
        let pool: Vec<Vec<f64>> = (0..64).map(|_| (0..rr).map(|_| rng.next_value()).collect()).collect();
        let mut scratch = st.scratch();
        let mut out = vec![0.0; st.params().substencils()];
        let mut run = |reps: usize| -> Result<f64> {
            let start = Instant::now();
            for k in 0..reps {
                st.indicators_into(black_box(&pool[k % pool.len()]), &mut scratch, &mut out)?;
                black_box(&out);
            }
            Ok(start.elapsed().as_secs_f64())
        };
        run(repetitions / 10 + 1)?;
        let seconds = run(repetitions)? / repetitions.max(1) as f64;
        rows.push(BenchRow { stencil_size: rr, seconds });
    }
    let lx: Vec<f64> = rows.iter().map(|r| (r.stencil_size as f64).ln()).collect();
    let ly: Vec<f64> = rows.iter().map(|r| r.seconds.max(f64::MIN_POSITIVE).ln()).collect();
    let exponent = fit_slope(&lx, &ly)?;
    Ok(BenchReport { rows, exponent })
}
