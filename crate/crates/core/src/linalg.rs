//! Dense linear-algebra kernels with explicit numerical contracts.
//!
//! Everything here is a pure function of its inputs; no shared state.
//! Backed by `nalgebra` factorizations, with an iterative smallest-singular-
//! triplet path for large matrices.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dimension above which `svd_min` switches from a full SVD to the
/// iterative smallest-triplet kernel.
pub const SVD_ITERATIVE_THRESHOLD: usize = 512;

fn check_finite(a: &DMatrix<f64>) -> Result<()> {
    if a.is_empty() {
        return Err(Error::ShapeMismatch("empty matrix".into()));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

/// Smallest singular value and the corresponding unit right-singular vector.
///
/// Uses a full SVD below [`SVD_ITERATIVE_THRESHOLD`], otherwise inverse
/// iteration on `AᵀA`; on iteration failure it falls back to the full SVD.
pub fn svd_min(a: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    check_finite(a)?;
    if a.nrows().max(a.ncols()) < SVD_ITERATIVE_THRESHOLD {
        svd_min_full(a)
    } else {
        match svd_min_iterative(a) {
            Ok(res) => Ok(res),
            Err(Error::ConvergenceFailure(_)) => svd_min_full(a),
            Err(e) => Err(e),
        }
    }
}

/// Full-SVD route for the smallest singular triplet.
pub fn svd_min_full(a: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    check_finite(a)?;
    let svd = a.clone().svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::ConvergenceFailure("svd did not produce V".into()))?;
    let (mut idx, mut smallest) = (0usize, f64::INFINITY);
    for (i, s) in svd.singular_values.iter().enumerate() {
        if *s < smallest {
            smallest = *s;
            idx = i;
        }
    }
    let v = v_t.row(idx).transpose();
    Ok((smallest, v))
}

/// Iterative smallest singular triplet: inverse iteration on `AᵀA` through a
/// QR factorization of `A`. Intended for matrices too large for a routine
/// full SVD; must agree with [`svd_min_full`] to 1e-9 on overlap sizes.
pub fn svd_min_iterative(a: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    check_finite(a)?;
    let (m, n) = a.shape();
    if m < n {
        // wide matrices have a nontrivial kernel: sigma_min = 0 with a null
        // right-singular vector; the dense route resolves that directly
        return svd_min_full(a);
    }
    svd_min_iterative_tall(a)
}

fn svd_min_iterative_tall(a: &DMatrix<f64>) -> Result<(f64, DVector<f64>)> {
    let n = a.ncols();
    let qr = a.clone().qr();
    let r = qr.r();
    // Near-singular R means sigma_min is (numerically) zero; inverse
    // iteration would blow up, so let the dense route resolve it.
    let rmax = r.diagonal().iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if r.diagonal().iter().any(|d| d.abs() <= 1e-14 * rmax.max(1.0)) {
        return Err(Error::ConvergenceFailure("R nearly singular".into()));
    }
    let mut v = DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut sigma_prev = f64::INFINITY;
    for iter in 0..500 {
        // Solve RᵀR y = v
        let y1 = r
            .transpose()
            .solve_lower_triangular(&v)
            .ok_or_else(|| Error::ConvergenceFailure("triangular solve failed".into()))?;
        let y = r
            .solve_upper_triangular(&y1)
            .ok_or_else(|| Error::ConvergenceFailure("triangular solve failed".into()))?;
        let norm = y.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::ConvergenceFailure("inverse iteration degenerated".into()));
        }
        v = y / norm;
        let sigma = (a * &v).norm();
        if (sigma - sigma_prev).abs() <= 1e-14 * sigma.max(1.0) && iter > 2 {
            return Ok((sigma, v));
        }
        sigma_prev = sigma;
    }
    Err(Error::ConvergenceFailure("inverse iteration did not converge".into()))
}

/// Eigendecomposition of a (numerically) Hermitian real matrix.
///
/// Returns eigenvalues in nondecreasing order with matching orthonormal
/// eigenvector columns. Fails with `NotHermitian` if the symmetry defect
/// exceeds `assert_hermitian_tol`.
pub fn hermitian_eig(
    a: &DMatrix<f64>,
    assert_hermitian_tol: f64,
) -> Result<(DVector<f64>, DMatrix<f64>)> {
    check_finite(a)?;
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "hermitian_eig needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let defect = (a - a.transpose()).amax();
    if defect > assert_hermitian_tol {
        return Err(Error::NotHermitian {
            tol: assert_hermitian_tol,
            observed: defect,
        });
    }
    let sym = (a + a.transpose()) * 0.5;
    let eig = sym.symmetric_eigen();
    let n = a.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
    let mut vectors = DMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    Ok((values, vectors))
}

/// Complex eigenvalues of a general square real matrix (unordered multiset).
pub fn general_eig(a: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    check_finite(a)?;
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "general_eig needs a square matrix, got {}x{}",
            a.nrows(),
            a.ncols()
        )));
    }
    let schur = nalgebra::linalg::Schur::try_new(a.clone(), 1e-14, 0)
        .ok_or_else(|| Error::ConvergenceFailure("Schur iteration stalled".into()))?;
    let vals = schur
        .complex_eigenvalues()
        .iter()
        .map(|c| Complex64::new(c.re, c.im))
        .collect();
    Ok(vals)
}

/// Solve `G Y = X` for symmetric positive definite `G` via Cholesky.
pub fn solve_spd(g: &DMatrix<f64>, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_finite(g)?;
    check_finite(x)?;
    if !g.is_square() || g.nrows() != x.nrows() {
        return Err(Error::ShapeMismatch(format!(
            "solve_spd: G is {}x{}, X is {}x{}",
            g.nrows(),
            g.ncols(),
            x.nrows(),
            x.ncols()
        )));
    }
    let defect = (g - g.transpose()).amax();
    if defect > 1e-12 * g.amax().max(1.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let chol = nalgebra::linalg::Cholesky::new(g.clone()).ok_or(Error::NotPositiveDefinite)?;
    Ok(chol.solve(x))
}

/// Spectral condition number, `sigma_max / sigma_min`.
///
/// Returns `f64::INFINITY` when `sigma_min < 1e-300 * sigma_max`.
pub fn cond2(a: &DMatrix<f64>) -> Result<f64> {
    check_finite(a)?;
    let sv = a.clone().singular_values();
    let smax = sv.iter().fold(0.0f64, |acc, s| acc.max(*s));
    let smin = sv.iter().fold(f64::INFINITY, |acc, s| acc.min(*s));
    if smin < 1e-300 * smax {
        return Ok(f64::INFINITY);
    }
    if smax == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(smax / smin)
}

/// Hermitian dilation `[[0, Aᵀ], [A, 0]]` of a (possibly rectangular) matrix.
/// Its nonnegative eigenvalues are exactly the singular values of `A`.
pub fn hermitian_dilation(a: &DMatrix<f64>) -> DMatrix<f64> {
    let (m, n) = a.shape();
    let d = m + n;
    let mut out = DMatrix::zeros(d, d);
    out.view_mut((0, n), (n, m)).copy_from(&a.transpose());
    out.view_mut((n, 0), (m, n)).copy_from(a);
    out
}

/// Largest singular value (spectral norm).
pub fn sigma_max(a: &DMatrix<f64>) -> Result<f64> {
    check_finite(a)?;
    let sv = a.clone().singular_values();
    Ok(sv.iter().fold(0.0f64, |acc, s| acc.max(*s)))
}
