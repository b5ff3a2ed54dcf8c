//! C ABI over the landscan core: opaque handles plus error codes.
//!
//! Every function returns an [`LsStatus`]; results come back through out
//! pointers. Handles must be released with the matching `_free` function.

use std::ffi::c_char;
use std::os::raw::c_double;

use landscan::collocation::CollocationSystem;
use landscan::config::{ProblemSpec, RunConfig};
use landscan::error::Error;
use landscan::landscape::{self, LandscapeScan};

/// Status codes for every C-ABI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsStatus {
    Ok = 0,
    /// Null pointer, bad UTF-8, or an out-of-range argument.
    InvalidArgument = 1,
    /// Configuration rejected by validation.
    InvalidConfig = 2,
    /// Numerical failure (no convergence, not positive definite, ...).
    NumericalFailure = 3,
    /// Output buffer too small; required size is written where documented.
    BufferTooSmall = 4,
}

fn status_of(e: &Error) -> LsStatus {
    match e {
        Error::InvalidConfig(_)
        | Error::InvalidSpan(_)
        | Error::ShapeMismatch(_)
        | Error::OutOfDomain(_)
        | Error::Io(_)
        | Error::Serde(_)
        | Error::Parse(_) => LsStatus::InvalidConfig,
        _ => LsStatus::NumericalFailure,
    }
}

/// Opaque assembled collocation system.
pub struct LsSystem {
    inner: CollocationSystem,
}

/// Opaque landscape scan result.
pub struct LsScan {
    inner: LandscapeScan,
}

fn build_system(
    problem: ProblemSpec,
    n_basis: usize,
    n_grid: usize,
    lo: c_double,
    hi: c_double,
    width_factor: c_double,
    out: *mut *mut LsSystem,
) -> LsStatus {
    if out.is_null() {
        return LsStatus::InvalidArgument;
    }
    let cfg = RunConfig {
        problem,
        n_basis,
        n_grid,
        span: (lo, hi),
        width_factor,
        alpha_window: (0.0, 1.0),
        k_points: 2,
        epsilon: 1.0,
        quantum: None,
        resources: None,
        output_dir: std::path::PathBuf::new(),
    };
    match cfg.validate().and_then(|_| cfg.build_system()) {
        Ok(sys) => {
            unsafe { *out = Box::into_raw(Box::new(LsSystem { inner: sys })) };
            LsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Build a harmonic-potential system. `out` receives an owned handle.
#[no_mangle]
pub extern "C" fn ls_system_new_harmonic(
    n_basis: usize,
    n_grid: usize,
    span_lo: c_double,
    span_hi: c_double,
    width_factor: c_double,
    out: *mut *mut LsSystem,
) -> LsStatus {
    build_system(
        ProblemSpec::Harmonic,
        n_basis,
        n_grid,
        span_lo,
        span_hi,
        width_factor,
        out,
    )
}

/// Build a Morse-potential system with well depth `d_e` and range `a`.
#[no_mangle]
pub extern "C" fn ls_system_new_morse(
    n_basis: usize,
    n_grid: usize,
    span_lo: c_double,
    span_hi: c_double,
    width_factor: c_double,
    d_e: c_double,
    a: c_double,
    out: *mut *mut LsSystem,
) -> LsStatus {
    build_system(
        ProblemSpec::Morse { d_e, a },
        n_basis,
        n_grid,
        span_lo,
        span_hi,
        width_factor,
        out,
    )
}

/// Build a system from a tabulated-potential CSV path (two columns `q,V`).
///
/// # Safety
/// `path` must be a NUL-terminated UTF-8 string.
#[no_mangle]
pub unsafe extern "C" fn ls_system_new_tabulated(
    n_basis: usize,
    n_grid: usize,
    span_lo: c_double,
    span_hi: c_double,
    width_factor: c_double,
    path: *const c_char,
    out: *mut *mut LsSystem,
) -> LsStatus {
    if path.is_null() {
        return LsStatus::InvalidArgument;
    }
    let cstr = std::ffi::CStr::from_ptr(path);
    let Ok(path) = cstr.to_str() else {
        return LsStatus::InvalidArgument;
    };
    build_system(
        ProblemSpec::Tabulated {
            path: std::path::PathBuf::from(path),
        },
        n_basis,
        n_grid,
        span_lo,
        span_hi,
        width_factor,
        out,
    )
}

/// Release a system handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn ls_system_free(sys: *mut LsSystem) {
    if !sys.is_null() {
        drop(unsafe { Box::from_raw(sys) });
    }
}

/// Condition number of the Gram matrix of the basis.
#[no_mangle]
pub extern "C" fn ls_system_gram_kappa(sys: *const LsSystem, out: *mut c_double) -> LsStatus {
    let (Some(sys), false) = (unsafe { sys.as_ref() }, out.is_null()) else {
        return LsStatus::InvalidArgument;
    };
    let gram = sys.inner.b.transpose() * &sys.inner.b;
    match landscan::linalg::cond2(&gram) {
        Ok(k) => {
            unsafe { *out = k };
            LsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Matrix-inverse solve. Writes up to `cap` energies to `energies`, the
/// count actually available to `n_energies`, and the Gram condition number
/// to `kappa`. Returns `BufferTooSmall` (with `n_energies` set) when `cap`
/// cannot hold all energies.
#[no_mangle]
pub extern "C" fn ls_inverse_solve(
    sys: *const LsSystem,
    energies: *mut c_double,
    cap: usize,
    n_energies: *mut usize,
    kappa: *mut c_double,
) -> LsStatus {
    let Some(sys) = (unsafe { sys.as_ref() }) else {
        return LsStatus::InvalidArgument;
    };
    if n_energies.is_null() || (energies.is_null() && cap > 0) {
        return LsStatus::InvalidArgument;
    }
    match landscan::invsolve::solve_by_inverse(&sys.inner) {
        Ok(report) => {
            unsafe { *n_energies = report.energies.len() };
            if !kappa.is_null() {
                unsafe { *kappa = report.kappa };
            }
            if report.energies.len() > cap {
                return LsStatus::BufferTooSmall;
            }
            for (i, e) in report.energies.iter().enumerate() {
                unsafe { *energies.add(i) = *e };
            }
            LsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Classical landscape scan over `[alpha_lo, alpha_hi]` with `k` grid
/// points. `out` receives an owned scan handle.
#[no_mangle]
pub extern "C" fn ls_scan_run(
    sys: *const LsSystem,
    alpha_lo: c_double,
    alpha_hi: c_double,
    k: usize,
    out: *mut *mut LsScan,
) -> LsStatus {
    let (Some(sys), false) = (unsafe { sys.as_ref() }, out.is_null()) else {
        return LsStatus::InvalidArgument;
    };
    let fam = match landscan::landscape::ResidueFamily::new(
        sys.inner.m0.clone(),
        sys.inner.b.clone(),
        alpha_lo,
        alpha_hi,
        k,
    ) {
        Ok(f) => f,
        Err(e) => return status_of(&e),
    };
    match landscape::scan(&fam) {
        Ok(scan) => {
            unsafe { *out = Box::into_raw(Box::new(LsScan { inner: scan })) };
            LsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// Release a scan handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn ls_scan_free(scan: *mut LsScan) {
    if !scan.is_null() {
        drop(unsafe { Box::from_raw(scan) });
    }
}

/// Number of grid points in a scan.
#[no_mangle]
pub extern "C" fn ls_scan_len(scan: *const LsScan) -> usize {
    unsafe { scan.as_ref() }.map_or(0, |s| s.inner.alpha_grid.len())
}

/// Read one scan point: alpha, raw sigma_min, detrended sigma_min.
#[no_mangle]
pub extern "C" fn ls_scan_point(
    scan: *const LsScan,
    index: usize,
    alpha: *mut c_double,
    sigma: *mut c_double,
    sigma_detrended: *mut c_double,
) -> LsStatus {
    let Some(s) = (unsafe { scan.as_ref() }) else {
        return LsStatus::InvalidArgument;
    };
    if index >= s.inner.alpha_grid.len() {
        return LsStatus::InvalidArgument;
    }
    if !alpha.is_null() {
        unsafe { *alpha = s.inner.alpha_grid[index] };
    }
    if !sigma.is_null() {
        unsafe { *sigma = s.inner.sigmas[index] };
    }
    if !sigma_detrended.is_null() {
        unsafe { *sigma_detrended = s.inner.sigmas_detrended[index] };
    }
    LsStatus::Ok
}

/// Detect dips below `threshold` (pass `threshold <= 0` for the default)
/// and write their positions. `n_dips` receives the total count; returns
/// `BufferTooSmall` when `cap` cannot hold them all.
#[no_mangle]
pub extern "C" fn ls_scan_dips(
    scan: *const LsScan,
    threshold: c_double,
    positions: *mut c_double,
    cap: usize,
    n_dips: *mut usize,
) -> LsStatus {
    let Some(s) = (unsafe { scan.as_ref() }) else {
        return LsStatus::InvalidArgument;
    };
    if n_dips.is_null() || (positions.is_null() && cap > 0) {
        return LsStatus::InvalidArgument;
    }
    let threshold = if threshold > 0.0 {
        threshold
    } else {
        landscape::default_threshold(&s.inner)
    };
    match landscape::detect_dips(&s.inner, threshold) {
        Ok(dips) => {
            unsafe { *n_dips = dips.dips.len() };
            if dips.dips.len() > cap {
                return LsStatus::BufferTooSmall;
            }
            for (i, d) in dips.dips.iter().enumerate() {
                unsafe { *positions.add(i) = d.alpha_star };
            }
            LsStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}
