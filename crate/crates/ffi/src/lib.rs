//! C interface to `nuweno`.
//!
//! Every function returns a [`NuwenoStatus`]; on failure a description is
//! kept per thread and can be read with [`nuweno_last_error`]. Objects are
//! opaque and must be released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use nuweno::grid::{perturbed_grid, Perturbation, WichmannHill};
use nuweno::weno::{weno_params, WenoOptions, WenoStencil};
use nuweno::{CellGrid, Error, Framework, StencilGeometry};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuwenoStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Shape = 3,
    NotIncreasing = 4,
    LocationConstraint = 5,
    NonFinite = 6,
    NoConvergence = 7,
    Underflow = 8,
    Parse = 9,
    Io = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuwenoFramework {
    PointValues = 0,
    CellAverages = 1,
}

/// Precomputed WENO reconstruction on one nonuniform stencil.
pub struct NuwenoStencil {
    inner: WenoStencil<f64>,
}

/// Cell interfaces of a 1D grid.
pub struct NuwenoGrid {
    inner: CellGrid,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> NuwenoStatus {
    match e {
        Error::InvalidArgument(_) => NuwenoStatus::InvalidArgument,
        Error::Shape { .. } => NuwenoStatus::Shape,
        Error::NotIncreasing { .. } => NuwenoStatus::NotIncreasing,
        Error::LocationConstraint { .. } => NuwenoStatus::LocationConstraint,
        Error::NonFiniteFlux { .. } | Error::NonFiniteState { .. } => NuwenoStatus::NonFinite,
        Error::NoConvergence { .. } => NuwenoStatus::NoConvergence,
        Error::Underflow { .. } => NuwenoStatus::Underflow,
        Error::Parse(_) => NuwenoStatus::Parse,
        Error::Io(_) => NuwenoStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (NuwenoStatus, String)>) -> NuwenoStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NuwenoStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            NuwenoStatus::Panic
        }
    }
}

fn lift<T>(r: nuweno::Result<T>) -> Result<T, (NuwenoStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (NuwenoStatus, String) {
    (NuwenoStatus::NullPointer, "null pointer argument".into())
}

unsafe fn input<'a>(data: *const f64, len: usize) -> Result<&'a [f64], (NuwenoStatus, String)> {
    if data.is_null() {
        return if len == 0 { Ok(&[]) } else { Err(null()) };
    }
    Ok(slice::from_raw_parts(data, len))
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nuweno_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a reconstruction from normalized positions `c` (nodes for point
/// values, `len = R`; cell interfaces for cell averages, `len = R + 1`) and
/// target `c_star`. `epsilon <= 0` selects the default.
///
/// # Safety
/// `c` must point to `len` doubles and `out` to writable storage.
#[no_mangle]
pub unsafe extern "C" fn nuweno_stencil_new(
    c: *const f64,
    len: usize,
    c_star: f64,
    framework: NuwenoFramework,
    epsilon: f64,
    out: *mut *mut NuwenoStencil,
) -> NuwenoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let c = input(c, len)?.to_vec();
        let framework = match framework {
            NuwenoFramework::PointValues => Framework::PointValues,
            NuwenoFramework::CellAverages => Framework::CellAverages,
        };
        let size = match framework {
            Framework::PointValues => len,
            Framework::CellAverages => len.saturating_sub(1),
        };
        let eps = if epsilon > 0.0 { epsilon } else { 1e-100 };
        let geom = lift(StencilGeometry::normalized(c, c_star))?;
        let params = lift(weno_params(size, eps))?;
        let inner = lift(WenoStencil::new(&geom, framework, params, WenoOptions::default()))?;
        *out = Box::into_raw(Box::new(NuwenoStencil { inner }));
        Ok(())
    })
}

/// Number of samples the stencil expects.
///
/// # Safety
/// `stencil` must come from [`nuweno_stencil_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn nuweno_stencil_size(stencil: *const NuwenoStencil) -> usize {
    stencil.as_ref().map_or(0, |s| s.inner.params().stencil_size)
}

/// Number of substencils, i.e. the length of the weight arrays.
///
/// # Safety
/// `stencil` must come from [`nuweno_stencil_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn nuweno_stencil_substencils(stencil: *const NuwenoStencil) -> usize {
    stencil.as_ref().map_or(0, |s| s.inner.params().substencils())
}

/// Reconstructed value from `len` samples.
///
/// # Safety
/// Pointers must be valid; `data` holds `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nuweno_stencil_reconstruct(
    stencil: *const NuwenoStencil,
    data: *const f64,
    len: usize,
    value: *mut f64,
) -> NuwenoStatus {
    guard(|| {
        let st = stencil.as_ref().ok_or_else(null)?;
        if value.is_null() {
            return Err(null());
        }
        let out = lift(st.inner.reconstruct(input(data, len)?))?;
        *value = out.value;
        Ok(())
    })
}

/// Value plus weights: `omega` and `indicators` receive one entry per
/// substencil (`weights_len` must equal [`nuweno_stencil_substencils`]).
/// Any output pointer may be null to skip it.
///
/// # Safety
/// Non-null pointers must be valid for the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn nuweno_stencil_weights(
    stencil: *const NuwenoStencil,
    data: *const f64,
    len: usize,
    value: *mut f64,
    omega_global: *mut f64,
    omega: *mut f64,
    indicators: *mut f64,
    weights_len: usize,
) -> NuwenoStatus {
    guard(|| {
        let st = stencil.as_ref().ok_or_else(null)?;
        let out = lift(st.inner.reconstruct(input(data, len)?))?;
        if weights_len != out.omega.len() && (!omega.is_null() || !indicators.is_null()) {
            return lift(Err(Error::Shape { expected: out.omega.len(), got: weights_len }));
        }
        if let Some(v) = value.as_mut() {
            *v = out.value;
        }
        if let Some(g) = omega_global.as_mut() {
            *g = out.omega_global;
        }
        if !omega.is_null() {
            slice::from_raw_parts_mut(omega, weights_len).copy_from_slice(&out.omega);
        }
        if !indicators.is_null() {
            slice::from_raw_parts_mut(indicators, weights_len).copy_from_slice(&out.indicators);
        }
        Ok(())
    })
}

/// # Safety
/// `stencil` must come from [`nuweno_stencil_new`] or be null; it must not
/// be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nuweno_stencil_free(stencil: *mut NuwenoStencil) {
    if !stencil.is_null() {
        drop(Box::from_raw(stencil));
    }
}

/// `n` equal cells on `[a, b]`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nuweno_grid_uniform(a: f64, b: f64, n: usize, out: *mut *mut NuwenoGrid) -> NuwenoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let inner = lift(CellGrid::uniform(a, b, n))?;
        *out = Box::into_raw(Box::new(NuwenoGrid { inner }));
        Ok(())
    })
}

/// Randomly perturbed grid of `n` cells on `[-1, 1]` from the default
/// Wichmann-Hill seeds; `centered != 0` perturbs symmetrically.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nuweno_grid_perturbed(
    n: usize,
    xi: f64,
    centered: i32,
    out: *mut *mut NuwenoGrid,
) -> NuwenoStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let p = if centered != 0 { Perturbation::Centered } else { Perturbation::AsPrinted };
        let (inner, _) = lift(perturbed_grid(n, xi, WichmannHill::default(), p))?;
        *out = Box::into_raw(Box::new(NuwenoGrid { inner }));
        Ok(())
    })
}

/// Number of cells.
///
/// # Safety
/// `grid` must come from a grid constructor or be null.
#[no_mangle]
pub unsafe extern "C" fn nuweno_grid_cells(grid: *const NuwenoGrid) -> usize {
    grid.as_ref().map_or(0, |g| g.inner.len())
}

/// Copies the `cells + 1` interfaces into `out`.
///
/// # Safety
/// `out` must hold `len` doubles.
#[no_mangle]
pub unsafe extern "C" fn nuweno_grid_interfaces(grid: *const NuwenoGrid, out: *mut f64, len: usize) -> NuwenoStatus {
    guard(|| {
        let g = grid.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let x = g.inner.interfaces();
        if len != x.len() {
            return lift(Err(Error::Shape { expected: x.len(), got: len }));
        }
        slice::from_raw_parts_mut(out, len).copy_from_slice(x);
        Ok(())
    })
}

/// # Safety
/// `grid` must come from a grid constructor or be null; it must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nuweno_grid_free(grid: *mut NuwenoGrid) {
    if !grid.is_null() {
        drop(Box::from_raw(grid));
    }
}
