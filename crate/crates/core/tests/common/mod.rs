#![allow(dead_code)]

use nuweno::{Framework, StencilGeometry};
use rand::Rng;

/// Normalized stencil with gap ratios at most `max_ratio` and a target
/// drawn from the admissible window.
pub fn random_stencil(rng: &mut impl Rng, size: usize, framework: Framework, max_ratio: f64) -> StencilGeometry<f64> {
    let points = match framework {
        Framework::PointValues => size,
        Framework::CellAverages => size + 1,
    };
    let mut c = vec![0.0];
    for _ in 1..points {
        let gap = rng.gen_range(1.0..max_ratio);
        c.push(c.last().unwrap() + gap);
    }
    let span = *c.last().unwrap();
    for v in &mut c {
        *v /= span;
    }
    let (lo, hi) = window(framework, size);
    let c_star = rng.gen_range(c[lo]..=c[hi]);
    StencilGeometry::normalized(c, c_star).unwrap()
}

/// Index bounds of the admissible target interval.
pub fn window(framework: Framework, size: usize) -> (usize, usize) {
    match framework {
        Framework::PointValues if size % 2 == 0 => (size / 2 - 1, size / 2),
        Framework::PointValues => ((size - 1) / 2 - 1, (size - 1) / 2 + 1),
        Framework::CellAverages if size % 2 == 1 => ((size + 1) / 2 - 1, (size + 1) / 2),
        Framework::CellAverages => (size / 2 - 1, size / 2 + 1),
    }
}

pub fn poly_eval(coef: &[f64], x: f64) -> f64 {
    coef.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

/// Average of the polynomial over `[a, b]` from its antiderivative.
pub fn poly_average(coef: &[f64], a: f64, b: f64) -> f64 {
    let prim: Vec<f64> = std::iter::once(0.0)
        .chain(coef.iter().enumerate().map(|(k, c)| c / (k + 1) as f64))
        .collect();
    (poly_eval(&prim, b) - poly_eval(&prim, a)) / (b - a)
}

pub fn poly_samples(coef: &[f64], c: &[f64], framework: Framework) -> Vec<f64> {
    match framework {
        Framework::PointValues => c.iter().map(|&x| poly_eval(coef, x)).collect(),
        Framework::CellAverages => c.windows(2).map(|w| poly_average(coef, w[0], w[1])).collect(),
    }
}
