//! Exit criteria. Each check prints one PASS/FAIL line; the process exits
//! nonzero if any check fails.

mod common;

use std::process::ExitCode;
use std::thread;
use std::time::Instant;

use nuweno::experiments::algebraic::{run_algebraic, run_algebraic_on, AlgebraicOptions, TestFunction};
use nuweno::experiments::bench::bench_indicators;
use nuweno::experiments::delta::{run_delta, DeltaGrid};
use nuweno::experiments::pde::{run_pde_convergence, PdeOptions, PdeProblem};
use nuweno::experiments::shuosher::{run_shuosher, self_convergence, solve_euler, uniform_grid, ShuOsherOptions};
use nuweno::fvm::{compute_dt, tvd_rk3_step, FiniteVolume, FvmOptions};
use nuweno::grid::{algebraic_test_stencil, perturbed_grid, AlgebraicTest, Perturbation, WichmannHill};
use nuweno::problems::{burgers, InitialShape};
use nuweno::weno::weights;
use nuweno::{weno_params, Framework, StencilGeometry, WenoOptions, WenoStencil};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{poly_samples, random_stencil};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within_factor(value: f64, target: f64, factor: f64) -> bool {
    value >= target / factor && value <= target * factor
}

fn fmt_orders(o: &[f64]) -> String {
    o.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(", ")
}

// Polynomial exactness on random nonuniform stencils.
fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_full = 0.0f64;
    let mut worst_sub = 0.0f64;
    for size in 3..=8 {
        for framework in [Framework::PointValues, Framework::CellAverages] {
            let params = weno_params(size, 1e-100).unwrap();
            for _ in 0..100 {
                let geom = random_stencil(&mut rng, size, framework, 10.0);
                let st = WenoStencil::new(&geom, framework, params.clone(), WenoOptions::default()).unwrap();
                for degree in 0..=size - 2 {
                    let coef: Vec<f64> = (0..=degree).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let data = poly_samples(&coef, &geom.c, framework);
                    let exact = common::poly_eval(&coef, geom.c_star);
                    let scale = data.iter().fold(exact.abs(), |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
                    let out = st.reconstruct(&data).unwrap();
                    worst_full = worst_full.max((out.value - exact).abs() / scale);
                    if degree <= params.r {
                        // A large global smoothness pushes all weight onto the substencils.
                        let ws = weights(&out.indicators, &1e6, &params).unwrap();
                        let tilde: f64 = ws.omega.iter().zip(&out.substencil_values).map(|(w, q)| w * q).sum();
                        let forced = ws.omega_global * out.full_value + (1.0 - ws.omega_global) * tilde;
                        worst_sub = worst_sub.max((forced - exact).abs() / scale);
                    }
                }
            }
        }
    }
    check(
        worst_full <= 1e-12 && worst_sub <= 1e-12,
        format!("max relative error {worst_full:.2e} (degree <= R-2), {worst_sub:.2e} (degree <= r, large d)"),
    )
}

// Weight bounds and normalisation.
fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut failures = 0;
    let mut worst_sum = 0.0f64;
    for trial in 0..10_000 {
        let size = rng.gen_range(3..=12);
        let framework = if trial % 2 == 0 { Framework::PointValues } else { Framework::CellAverages };
        let params = weno_params(size, 1e-100).unwrap();
        let geom = random_stencil(&mut rng, size, framework, 10.0);
        let st = WenoStencil::new(&geom, framework, params.clone(), WenoOptions::default()).unwrap();
        let scale = 10f64.powi(rng.gen_range(-6..=6));
        let mut data: Vec<f64> = (0..size).map(|_| scale * rng.gen_range(-1.0..1.0)).collect();
        if trial % 3 == 0 {
            let at = rng.gen_range(0..size);
            data[at] += 100.0 * scale;
        }
        let out = st.reconstruct(&data).unwrap();
        let sum: f64 = out.omega.iter().sum();
        worst_sum = worst_sum.max((sum - 1.0).abs());
        let ok = out.omega.iter().all(|w| (0.0..=1.0).contains(w))
            && (sum - 1.0).abs() <= 10.0 * f64::EPSILON
            && out.omega_global > 0.0
            && out.omega_global <= 1.0;
        let zero = weights(&out.indicators, &0.0, &params).unwrap();
        let uniform = 1.0 / params.substencils() as f64;
        let zero_ok = zero.omega_global == 1.0 && zero.omega.iter().all(|w| (w - uniform).abs() <= 4.0 * f64::EPSILON);
        if !(ok && zero_ok) {
            failures += 1;
        }
    }
    check(failures == 0, format!("{failures} of 10000 inputs violate the contract; max |sum - 1| = {worst_sum:.2e}"))
}

/// Orders `log2(E_{n-1}/E_n)` whose two errors both lie in `[lo, hi]`.
fn windowed_orders(errors: &[f64], lo: f64, hi: f64) -> Vec<f64> {
    errors
        .windows(2)
        .filter(|w| w.iter().all(|e| (lo..=hi).contains(e)))
        .map(|w| (w[0] / w[1]).log2())
        .collect()
}

// Binary64 algebraic convergence.
fn criterion_3() -> Outcome {
    let full = algebraic_test_stencil::<f64>(AlgebraicTest::Test1, Framework::PointValues);
    let opts = AlgebraicOptions::default();
    let mut detail = Vec::new();
    let mut ok = true;
    // 5-node windows of the Test 1 stencil whose admissible interval holds the target.
    for k in 0..=full.c.len() - 5 {
        let c = full.c[k..k + 5].to_vec();
        if !(full.c_star >= c[1] && full.c_star <= c[3]) {
            continue;
        }
        let geom = StencilGeometry::normalized(c, full.c_star).unwrap();
        let run = run_algebraic_on(&geom, Framework::PointValues, TestFunction::Smooth, 12, &opts).unwrap();
        let errors: Vec<f64> = run.records.iter().map(|r| r.error).collect();
        let o = windowed_orders(&errors, 1e-11, 1e-3);
        ok &= !o.is_empty() && o.iter().all(|v| (v - 5.0).abs() <= 0.3);
        detail.push(format!("Test 1 R=5 window {k}: [{}]", fmt_orders(&o)));
    }
    let run = run_algebraic::<f64>(AlgebraicTest::Test2, Framework::PointValues, 12, &opts).unwrap();
    let errors: Vec<f64> = run.records.iter().map(|r| r.error).collect();
    let o = windowed_orders(&errors, 1e-11, 1e-1);
    ok &= !o.is_empty() && o.iter().all(|v| (v - 6.0).abs() <= 0.3);
    detail.push(format!("Test 2 R=11: [{}]", fmt_orders(&o)));
    check(ok, detail.join("; "))
}

#[cfg(feature = "high-precision")]
fn criterion_4() -> Outcome {
    use nuweno::Mp;

    const TEST1_POINT: [f64; 10] =
        [12.0416, 12.0183, 12.0085, 12.0041, 12.0020, 12.0010, 12.0005, 12.0002, 12.0001, 12.0001];
    const TEST1_CELL: [f64; 10] =
        [10.9667, 10.9813, 10.9902, 10.9950, 10.9974, 10.9987, 10.9994, 10.9997, 10.9998, 10.9999];
    const TEST2_POINT: [f64; 19] = [
        6.8396, 7.6466, 6.9429, 6.5002, 6.2574, 6.1306, 6.0658, 6.0330, 6.0165, 6.0083, 6.0041, 6.0021, 6.0010, 6.0005,
        6.0003, 6.0001, 6.0001, 6.0000, 6.0000,
    ];
    const TEST2_CELL: [f64; 19] = [
        7.5188, 7.2566, 6.6442, 6.3241, 6.1623, 6.0812, 6.0406, 6.0203, 6.0102, 6.0051, 6.0025, 6.0013, 6.0006, 6.0003,
        6.0002, 6.0001, 6.0000, 6.0000, 6.0000,
    ];

    Mp::set_precision(332);
    let opts = AlgebraicOptions::<Mp>::default();
    let cases: [(AlgebraicTest, Framework, &[f64], f64); 4] = [
        (AlgebraicTest::Test1, Framework::PointValues, &TEST1_POINT, 0.01),
        (AlgebraicTest::Test1, Framework::CellAverages, &TEST1_CELL, 0.01),
        (AlgebraicTest::Test2, Framework::PointValues, &TEST2_POINT, 0.05),
        (AlgebraicTest::Test2, Framework::CellAverages, &TEST2_CELL, 0.05),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (test, framework, expected, tol) in cases {
        let run = run_algebraic::<Mp>(test, framework, expected.len() + 1, &opts).unwrap();
        let got: Vec<f64> = run.records.iter().skip(1).map(|r| r.order.unwrap_or(f64::NAN)).collect();
        let worst = got.iter().zip(expected).map(|(g, e)| (g - e).abs()).fold(0.0f64, |m, d| m.max(d));
        ok &= got.len() == expected.len() && worst <= tol;
        detail.push(format!("{test:?}/{framework:?} max |dev| {worst:.5}"));
    }
    check(ok, detail.join("; "))
}

#[cfg(not(feature = "high-precision"))]
fn criterion_4() -> Outcome {
    Ok("high-precision backend not built; criterion 3 governs".into())
}

// Linear advection on perturbed grids.
fn criterion_5() -> Outcome {
    let rows = run_pde_convergence(PdeProblem::Advection, &[20, 40, 80, 160], &PdeOptions::default()).unwrap();
    let l1 = [5.55e-5, 1.79e-6, 5.63e-8, 1.77e-9];
    let ord = [4.96, 4.99, 4.99];
    let errors_ok = rows.iter().zip(l1).all(|(r, t)| within_factor(r.l1, t, 2.0));
    let got: Vec<f64> = rows.iter().skip(1).map(|r| r.l1_order.unwrap()).collect();
    let orders_ok = got.iter().zip(ord).all(|(g, t)| (g - t).abs() <= 0.2);
    let errs: Vec<String> = rows.iter().map(|r| format!("{:.3e}", r.l1)).collect();
    check(errors_ok && orders_ok, format!("L1 [{}], orders [{}]", errs.join(", "), fmt_orders(&got)))
}

// Burgers with smooth data on perturbed grids.
fn criterion_6() -> Outcome {
    let rows = run_pde_convergence(PdeProblem::Burgers, &[40, 80, 160, 320, 640], &PdeOptions::default()).unwrap();
    let target = [4.86, 5.17, 5.07, 4.99];
    let got: Vec<f64> = rows.iter().skip(1).map(|r| r.l1_order.unwrap()).collect();
    let ok = got.len() == 4 && got.iter().zip(target).all(|(g, t)| (g - t).abs() <= 0.3);
    check(ok, format!("L1 orders n=80..640 [{}], expected [4.86, 5.17, 5.07, 4.99] +- 0.3", fmt_orders(&got)))
}

// Point-mass formation.
fn criterion_7() -> Outcome {
    let grids = [
        DeltaGrid::Geometric { m: 99, kappa: 1.1 },
        DeltaGrid::Uniform(3199),
        DeltaGrid::Uniform(6399),
        DeltaGrid::Uniform(12799),
    ];
    let rows = run_delta(&grids, FvmOptions::default()).unwrap();
    let geometric = rows[0].error;
    let uniform: Vec<f64> = rows[1..].iter().map(|r| r.error).collect();
    let geo_ok = within_factor(geometric, 2.87e-2, 3.0);
    let n6399_ok = within_factor(uniform[1], 3.47e-1, 2.0);
    let monotone = uniform.windows(2).all(|w| w[1] < w[0]);
    check(
        geo_ok && n6399_ok && monotone,
        format!(
            "geometric(198, 1.1) {geometric:.3e} vs 2.87e-2 x/3 [{}]; uniform 6399 {:.3e} vs 3.47e-1 x/2 [{}]; \
             uniform 3199/6399/12799 [{:.3e}, {:.3e}, {:.3e}] decreasing [{}]",
            if geo_ok { "ok" } else { "out" },
            uniform[1],
            if n6399_ok { "ok" } else { "out" },
            uniform[0],
            uniform[1],
            uniform[2],
            if monotone { "ok" } else { "out" },
        ),
    )
}

// Shock/entropy-wave interaction: positivity and self-convergence.
fn criterion_8() -> Outcome {
    let opts = ShuOsherOptions::default();
    let runs = run_shuosher(256, &opts).unwrap();
    let positive = [&runs.uniform, &runs.perturbed].iter().all(|r| r.min_density > 0.0 && r.min_pressure > 0.0);
    let reference = solve_euler(uniform_grid(8192).unwrap(), opts.fvm).unwrap();
    let r512 = solve_euler(uniform_grid(512).unwrap(), opts.fvm).unwrap();
    let r1024 = solve_euler(uniform_grid(1024).unwrap(), opts.fvm).unwrap();
    let sc = self_convergence(&reference, &[&runs.uniform, &r512, &r1024]).unwrap();
    let l1: Vec<f64> = sc.iter().map(|r| r.l1).collect();
    let monotone = l1.windows(2).all(|w| w[1] < w[0]);
    check(
        positive && monotone,
        format!(
            "min rho/p uniform {:.4}/{:.4}, perturbed {:.4}/{:.4}; L1 vs 8192 at 256/512/1024 [{:.3e}, {:.3e}, {:.3e}]",
            runs.uniform.min_density,
            runs.uniform.min_pressure,
            runs.perturbed.min_density,
            runs.perturbed.min_pressure,
            l1[0],
            l1[1],
            l1[2]
        ),
    )
}

// Indicator cost against stencil size.
fn criterion_9() -> Outcome {
    let report = bench_indicators(&[5, 9, 13, 17, 21], 200_000).unwrap();
    check(report.exponent <= 1.3, format!("fitted exponent {:.3}", report.exponent))
}

// Mass conservation of periodic Burgers with step data.
fn criterion_10() -> Outcome {
    let problem = burgers(InitialShape::Step);
    let (grid, _) = perturbed_grid(100, 0.1, WichmannHill::default(), Perturbation::AsPrinted).unwrap();
    let op = FiniteVolume::new(grid.clone(), problem.flux.clone(), problem.bc.clone(), FvmOptions::default()).unwrap();
    let dt = compute_dt(&grid, PdeProblem::Burgers.dt_policy(InitialShape::Step)).unwrap();
    let mut u = problem.initial_averages(&grid);
    let m0 = u.integral(&grid)[0];
    for _ in 0..1000 {
        u = tvd_rk3_step(&u, dt, |v| op.rhs(v)).unwrap();
    }
    let drift = ((u.integral(&grid)[0] - m0) / m0).abs();
    check(drift <= 1e-12, format!("relative mass drift {drift:.2e} after 1000 steps"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 polynomial exactness", criterion_1),
        ("2 weight contract", criterion_2),
        ("3 binary64 algebraic orders", criterion_3),
        ("4 high-precision algebraic orders", criterion_4),
        ("5 advection table", criterion_5),
        ("6 Burgers orders", criterion_6),
        ("7 point-mass errors", criterion_7),
        ("8 Euler positivity and self-convergence", criterion_8),
        ("9 indicator cost linearity", criterion_9),
        ("10 periodic conservation", criterion_10),
    ];
    let results = thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != 8)
            .map(|(i, (_, f))| {
                (
                    i,
                    s.spawn(move || {
                        let t = Instant::now();
                        (f(), t.elapsed().as_secs_f64())
                    }),
                )
            })
            .collect();
        let mut results: Vec<(usize, Outcome, f64)> = handles
            .into_iter()
            .map(|(i, h)| {
                let (o, secs) = h.join().unwrap_or_else(|_| (Err("panicked".into()), 0.0));
                (i, o, secs)
            })
            .collect();
        // Timing runs alone.
        let t = Instant::now();
        let o = criteria[8].1();
        results.push((8, o, t.elapsed().as_secs_f64()));
        results.sort_by_key(|r| r.0);
        results
    });
    let mut failed = 0;
    for (i, outcome, secs) in &results {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {tag} ({secs:.1}s) {detail}", criteria[*i].0);
    }
    println!("{} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
