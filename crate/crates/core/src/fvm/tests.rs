use super::*;
use crate::grid::{perturbed_grid, Perturbation, WichmannHill};
use crate::problems::{Advection, Burgers, Euler, EulerState};

fn perturbed(n: usize) -> CellGrid {
    perturbed_grid(n, 0.25, WichmannHill::default(), Perturbation::AsPrinted).unwrap().0
}

fn averages(grid: &CellGrid, prim: impl Fn(f64) -> f64) -> Vec<f64> {
    grid.interfaces().windows(2).map(|w| (prim(w[1]) - prim(w[0])) / (w[1] - w[0])).collect()
}

fn op(grid: CellGrid, law: impl ConservationLaw + 'static, kind: FluxKind) -> FiniteVolume {
    FiniteVolume::new(grid, FluxSpec::new(law, kind), BoundarySpec::periodic(), FvmOptions::default()).unwrap()
}

#[test]
fn constant_field_reconstructs_exactly() {
    let fv = op(perturbed(20), Burgers, FluxKind::LocalLaxFriedrichs);
    let field = StateField::scalar(vec![0.7; 20]);
    let (qm, qp) = fv.interface_states(&field).unwrap();
    assert!(qm.iter().chain(&qp).all(|q| (q - 0.7).abs() < 1e-15));
    assert!(fv.rhs(&field).unwrap().values().iter().all(|v| v.abs() < 1e-13));
}

#[test]
fn cubic_is_reproduced_at_interior_interfaces() {
    let grid = perturbed(24);
    let cubic = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x * x;
    let prim = |x: f64| x - x * x + 0.125 * x.powi(4);
    let fv = op(grid.clone(), Burgers, FluxKind::LocalLaxFriedrichs);
    let (qm, qp) = fv.interface_states(&StateField::scalar(averages(&grid, prim))).unwrap();
    let x = grid.interfaces();
    for k in 3..=grid.len() - 3 {
        let exact = cubic(x[k]);
        assert!((qm[k] - exact).abs() < 1e-12 * exact.abs().max(1.0), "q- at {k}");
        assert!((qp[k] - exact).abs() < 1e-12 * exact.abs().max(1.0), "q+ at {k}");
    }
}

#[test]
fn llf_examples() {
    let mut out = [0.0];
    llf_flux(&[0.0], &[2.0], &[0.0], &[2.0], 2.0, &mut out);
    assert_eq!(out[0], -1.0);
    // Equal states give the physical flux for any alpha.
    llf_flux(&[0.3], &[0.3], &[1.1], &[1.1], 7.0, &mut out);
    assert_eq!(out[0], 0.3);
    llf_flux(&[1.0], &[3.0], &[5.0], &[9.0], 0.0, &mut out);
    assert_eq!(out[0], 2.0);
}

#[test]
fn periodic_rhs_is_conservative() {
    let grid = perturbed(40);
    let data: Vec<f64> = grid.centers().iter().map(|x| if *x > 0.1 { 1.0 } else { -0.25 + x.sin() }).collect();
    let field = StateField::scalar(data);
    for kind in [FluxKind::UpwindLeft, FluxKind::LocalLaxFriedrichs] {
        let fv = op(grid.clone(), Advection, kind);
        let total: f64 = fv.rhs(&field).unwrap().integral(&grid)[0];
        assert!(total.abs() < 1e-13, "{kind:?}: {total}");
    }
}

// Interface values are fifth order. Dividing flux differences by a cell
// width costs one power of h on an irregular grid, where the interface
// errors do not cancel.
#[test]
fn advection_rhs_convergence() {
    let mut errors = Vec::new();
    let mut interface_errors = Vec::new();
    for n in [40, 80, 160, 320] {
        let grid = perturbed(n);
        let pi = std::f64::consts::PI;
        let fv = op(grid.clone(), Advection, FluxKind::UpwindLeft);
        let field = StateField::scalar(averages(&grid, |x| -(pi * x).cos() / pi));
        let rhs = fv.rhs(&field).unwrap();
        let exact = averages(&grid, |x| -(pi * x).sin());
        let err: f64 = rhs.values().iter().zip(&exact).zip(grid.widths()).map(|((a, b), w)| w * (a - b).abs()).sum();
        errors.push(err);
        let (qm, _) = fv.interface_states(&field).unwrap();
        let worst = qm.iter().zip(grid.interfaces()).map(|(q, x)| (q - (pi * x).sin()).abs()).fold(0.0, f64::max);
        interface_errors.push(worst);
    }
    for (e, floor) in [(&errors, 3.7), (&interface_errors, 4.5)] {
        for w in e.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!(order > floor, "order {order} in {e:?}");
        }
    }
}

#[test]
fn rk_steps() {
    let u = StateField::scalar(vec![1.0, -2.0]);
    let zero = |v: &StateField| Ok(StateField::zeros(1, v.cells()));
    assert_eq!(tvd_rk2_step(&u, 0.1, zero).unwrap(), u);
    assert_eq!(tvd_rk3_step(&u, 0.1, zero).unwrap(), u);

    let lambda = -1.3;
    let lin = |v: &StateField| Ok(v.combine(lambda, v, 0.0));
    let err = |dt: f64| {
        let one = StateField::scalar(vec![1.0]);
        (tvd_rk3_step(&one, dt, lin).unwrap().values()[0] - (lambda * dt).exp()).abs()
    };
    let ratio = err(0.02) / err(0.01);
    assert!((ratio.log2() - 4.0).abs() < 0.1, "local order {}", ratio.log2());

    let scaled = tvd_rk3_step(&u.combine(3.0, &u, 0.0), 0.1, lin).unwrap();
    let base = tvd_rk3_step(&u, 0.1, lin).unwrap();
    for (a, b) in scaled.values().iter().zip(base.values()) {
        assert!((a - 3.0 * b).abs() < 1e-15);
    }
}

#[test]
fn dt_policies() {
    let grid = CellGrid::uniform(0.0, 1.0, 100).unwrap();
    let dt = compute_dt(&grid, DtPolicy::CflSpeed { cfl: 0.8, alpha: 1.0 }).unwrap();
    assert!((dt - 0.008).abs() < 1e-15);
    let grid = CellGrid::uniform(0.0, 1.0, 25).unwrap();
    let dt = compute_dt(&grid, DtPolicy::PowerLaw { exponent: 5.0 / 3.0, factor: 1.0 }).unwrap();
    assert!((dt - 0.04f64.powf(5.0 / 3.0)).abs() < 1e-15);
    assert!(compute_dt(&grid, DtPolicy::Fixed(0.0)).is_err());
    assert!(compute_dt(&grid, DtPolicy::CflSpeed { cfl: 0.5, alpha: 0.0 }).is_err());
    assert_eq!(uniform_steps(8.0, 0.8 * 0.01), (1000, 0.008));
}

#[test]
fn integrate_lands_on_final_time() {
    let grid = CellGrid::uniform(-1.0, 1.0, 20).unwrap();
    let fv = op(grid.clone(), Advection, FluxKind::UpwindLeft);
    let u0 = StateField::scalar(grid.centers().iter().map(|x| x.sin()).collect());
    let mass = u0.integral(&grid)[0];
    let mut seen = 0;
    let rule = StepRule::Policy(DtPolicy::Fixed(0.03));
    let (u, steps) = integrate(&fv, u0, 0.1, TimeScheme::Rk3, rule, |_| {
        seen += 1;
        Ok(())
    })
    .unwrap();
    assert_eq!(steps, 4);
    assert_eq!(seen, 4);
    assert!((u.integral(&grid)[0] - mass).abs() < 1e-14);
}

#[test]
fn rejects_bad_setups() {
    let small = CellGrid::uniform(0.0, 1.0, 4).unwrap();
    let spec = FluxSpec::new(Advection, FluxKind::UpwindLeft);
    assert!(FiniteVolume::new(small, spec.clone(), BoundarySpec::periodic(), FvmOptions::default()).is_err());
    let grid = CellGrid::uniform(0.0, 1.0, 10).unwrap();
    let burgers = FluxSpec::new(Burgers, FluxKind::UpwindLeft);
    assert!(FiniteVolume::new(grid.clone(), burgers, BoundarySpec::periodic(), FvmOptions::default()).is_err());
    let euler = FluxSpec::new(Euler, FluxKind::LocalLaxFriedrichs);
    let bc = BoundarySpec::inflow_outflow(vec![1.0]);
    assert!(FiniteVolume::new(grid.clone(), euler, bc, FvmOptions::default()).is_err());

    let fv = op(grid, Advection, FluxKind::UpwindLeft);
    assert!(matches!(fv.rhs(&StateField::scalar(vec![0.0; 9])), Err(Error::Shape { .. })));
    let mut bad = vec![0.0; 10];
    bad[4] = f64::NAN;
    assert!(matches!(fv.rhs(&StateField::scalar(bad)), Err(Error::NonFiniteFlux { .. })));
}

#[test]
fn wide_window_runs_with_warnings_only() {
    let grid = perturbed(20);
    let opts = FvmOptions { window: BiasedWindow::Wide, ..Default::default() };
    let fv = FiniteVolume::new(grid, FluxSpec::new(Advection, FluxKind::UpwindLeft), BoundarySpec::periodic(), opts)
        .unwrap();
    let field = StateField::scalar(vec![2.0; 20]);
    let (qm, _) = fv.interface_states(&field).unwrap();
    assert!(qm.iter().all(|q| (q - 2.0).abs() < 1e-14));
}

#[test]
fn inflow_ghosts_hold_left_state() {
    let grid = CellGrid::uniform(-5.0, 5.0, 10).unwrap();
    let left = EulerState::primitive(2.0, 1.0, 3.0).conserved().to_vec();
    let spec = FluxSpec::new(Euler, FluxKind::LocalLaxFriedrichs);
    let fv = FiniteVolume::new(grid, spec, BoundarySpec::inflow_outflow(left.clone()), FvmOptions::default()).unwrap();
    let field = StateField::new(3, left.repeat(10)).unwrap();
    let rhs = fv.rhs(&field).unwrap();
    assert!(rhs.values().iter().all(|v| v.abs() < 1e-13));
}

#[test]
fn snapshot_rows() {
    let grid = CellGrid::uniform(0.0, 1.0, 2).unwrap();
    let s = StateField::new(2, vec![1.0, 2.0, 3.0, 4.0]).unwrap().snapshot(&grid);
    let rows: Vec<&str> = s.lines().collect();
    assert_eq!(rows.len(), 2);
    let cols: Vec<f64> = rows[1].split(',').map(|c| c.parse().unwrap()).collect();
    assert_eq!(cols, vec![0.75, 0.5, 3.0, 4.0]);
}
