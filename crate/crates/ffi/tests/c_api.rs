use std::ffi::CStr;
use std::path::Path;
use std::process::Command;
use std::ptr;

use nuweno_ffi::*;

fn last_error() -> String {
    let p = nuweno_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn uniform_stencil_reproduces_quadratic() {
    // Point values at 0, 1/4, .., 1 and target 1/2: a 5-point rule is exact on quadratics.
    let c = [0.0, 0.25, 0.5, 0.75, 1.0];
    let mut st = ptr::null_mut();
    let s = unsafe { nuweno_stencil_new(c.as_ptr(), 5, 0.4, NuwenoFramework::PointValues, 0.0, &mut st) };
    assert_eq!(s, NuwenoStatus::Ok);
    unsafe {
        assert_eq!(nuweno_stencil_size(st), 5);
        assert_eq!(nuweno_stencil_substencils(st), 3);
        let data: Vec<f64> = c.iter().map(|x| 1.0 + 2.0 * x - x * x).collect();
        let mut v = f64::NAN;
        assert_eq!(nuweno_stencil_reconstruct(st, data.as_ptr(), 5, &mut v), NuwenoStatus::Ok);
        assert!((v - (1.0 + 0.8 - 0.16)).abs() < 1e-13, "{v}");

        let mut omega = [0.0; 3];
        let mut ind = [0.0; 3];
        let mut g = 0.0;
        let s = nuweno_stencil_weights(st, data.as_ptr(), 5, &mut v, &mut g, omega.as_mut_ptr(), ind.as_mut_ptr(), 3);
        assert_eq!(s, NuwenoStatus::Ok);
        assert!((omega.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!((0.0..=1.0).contains(&g));
        assert!(omega.iter().all(|w| *w >= 0.0));
        nuweno_stencil_free(st);
    }
}

#[test]
fn cell_average_stencil() {
    let c = [0.0, 0.2, 0.4, 0.6, 0.8, 1.0];
    let mut st = ptr::null_mut();
    let s = unsafe { nuweno_stencil_new(c.as_ptr(), 6, 0.6, NuwenoFramework::CellAverages, 1e-40, &mut st) };
    assert_eq!(s, NuwenoStatus::Ok);
    let data = [3.0; 5];
    let mut v = 0.0;
    unsafe {
        assert_eq!(nuweno_stencil_reconstruct(st, data.as_ptr(), 5, &mut v), NuwenoStatus::Ok);
        nuweno_stencil_free(st);
    }
    assert!((v - 3.0).abs() < 1e-14);
}

#[test]
fn errors_are_reported() {
    let mut st = ptr::null_mut();
    let c = [0.0, 0.5, 0.4, 1.0];
    let s = unsafe { nuweno_stencil_new(c.as_ptr(), 4, 0.5, NuwenoFramework::PointValues, 0.0, &mut st) };
    assert_eq!(s, NuwenoStatus::NotIncreasing);
    assert!(st.is_null());
    assert!(!last_error().is_empty());

    let s = unsafe { nuweno_stencil_new(ptr::null(), 4, 0.5, NuwenoFramework::PointValues, 0.0, &mut st) };
    assert_eq!(s, NuwenoStatus::NullPointer);

    let c = [0.0, 0.5, 1.0];
    let s = unsafe { nuweno_stencil_new(c.as_ptr(), 2, 0.5, NuwenoFramework::PointValues, 0.0, &mut st) };
    assert_ne!(s, NuwenoStatus::Ok);

    let c = [0.0, 0.25, 0.5, 0.75, 1.0];
    unsafe {
        assert_eq!(nuweno_stencil_new(c.as_ptr(), 5, 0.5, NuwenoFramework::PointValues, 0.0, &mut st), NuwenoStatus::Ok);
        let mut v = 0.0;
        assert_eq!(nuweno_stencil_reconstruct(st, c.as_ptr(), 4, &mut v), NuwenoStatus::Shape);
        let mut w = [0.0; 2];
        let s = nuweno_stencil_weights(st, c.as_ptr(), 5, &mut v, ptr::null_mut(), w.as_mut_ptr(), ptr::null_mut(), 2);
        assert_eq!(s, NuwenoStatus::Shape);
        assert_eq!(nuweno_stencil_reconstruct(ptr::null(), c.as_ptr(), 5, &mut v), NuwenoStatus::NullPointer);
        nuweno_stencil_free(st);
        nuweno_stencil_free(ptr::null_mut());
    }
}

#[test]
fn grids() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(nuweno_grid_uniform(-1.0, 1.0, 4, &mut g), NuwenoStatus::Ok);
        assert_eq!(nuweno_grid_cells(g), 4);
        let mut x = [0.0; 5];
        assert_eq!(nuweno_grid_interfaces(g, x.as_mut_ptr(), 5), NuwenoStatus::Ok);
        assert_eq!(x, [-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert_eq!(nuweno_grid_interfaces(g, x.as_mut_ptr(), 4), NuwenoStatus::Shape);
        nuweno_grid_free(g);

        assert_eq!(nuweno_grid_perturbed(40, 0.1, 0, &mut g), NuwenoStatus::Ok);
        let n = nuweno_grid_cells(g);
        let mut x = vec![0.0; n + 1];
        assert_eq!(nuweno_grid_interfaces(g, x.as_mut_ptr(), n + 1), NuwenoStatus::Ok);
        assert!((x[0] + 1.0).abs() < 1e-15 && (x[n] - 1.0).abs() < 1e-15);
        assert!(x.windows(2).all(|w| w[1] > w[0]));
        nuweno_grid_free(g);

        assert_eq!(nuweno_grid_uniform(1.0, -1.0, 4, &mut g), NuwenoStatus::InvalidArgument);
        assert_eq!(nuweno_grid_uniform(0.0, 1.0, 4, ptr::null_mut()), NuwenoStatus::NullPointer);
    }
}

#[test]
fn header_is_valid_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let header = dir.join("nuweno.h");
    let text = std::fs::read_to_string(&header).expect("header generated by build script");
    for name in ["nuweno_stencil_new", "nuweno_stencil_weights", "nuweno_grid_perturbed", "NUWENO_STATUS_OK"] {
        assert!(text.contains(name), "{name} missing from header");
    }
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c"]).arg(&header).output() else {
        eprintln!("no C compiler, skipping syntax check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
