//! Extended operator over the alpha grid.
//!
//! The scan operator is block-diagonal over the alpha index: block `i` is
//! `A_i = sum_j alpha_i^j M_j` (square Hermitian mode) or the Hermitian
//! dilation of `A_i` (augmented rectangular mode). Blocks are materialized
//! on demand; the full operator is never densified.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtensionMode {
    SquareHermitian,
    AugmentedRectangular,
}

#[derive(Debug, Clone)]
pub struct ExtendedMatrix {
    /// `(power, matrix)` pairs of the series expansion in alpha.
    pub terms: Vec<(u32, DMatrix<f64>)>,
    pub alpha_grid: Vec<f64>,
    pub mode: ExtensionMode,
}

/// Square-Hermitian extension: each term must be Hermitian and share a size.
pub fn extend_square(terms: Vec<(u32, DMatrix<f64>)>, alpha_grid: Vec<f64>) -> Result<ExtendedMatrix> {
    if terms.is_empty() || alpha_grid.is_empty() {
        return Err(Error::InvalidConfig("extension needs terms and a nonempty grid".into()));
    }
    let shape = terms[0].1.shape();
    if shape.0 != shape.1 {
        return Err(Error::ShapeMismatch("square mode needs square terms".into()));
    }
    for (_, m) in &terms {
        if m.shape() != shape {
            return Err(Error::ShapeMismatch("all terms must share a shape".into()));
        }
        let defect = (m - m.transpose()).amax();
        let tol = 1e-12 * m.amax().max(1.0);
        if defect > tol {
            return Err(Error::NotHermitian {
                tol,
                observed: defect,
            });
        }
    }
    Ok(ExtendedMatrix {
        terms,
        alpha_grid,
        mode: ExtensionMode::SquareHermitian,
    })
}

/// Rectangular extension via per-block Hermitian dilation.
pub fn extend_rect(terms: Vec<(u32, DMatrix<f64>)>, alpha_grid: Vec<f64>) -> Result<ExtendedMatrix> {
    if terms.is_empty() || alpha_grid.is_empty() {
        return Err(Error::InvalidConfig("extension needs terms and a nonempty grid".into()));
    }
    let shape = terms[0].1.shape();
    for (_, m) in &terms {
        if m.shape() != shape {
            return Err(Error::ShapeMismatch("all terms must share a shape".into()));
        }
    }
    Ok(ExtendedMatrix {
        terms,
        alpha_grid,
        mode: ExtensionMode::AugmentedRectangular,
    })
}

impl ExtendedMatrix {
    pub fn k(&self) -> usize {
        self.alpha_grid.len()
    }

    /// Row/column count of one block operator.
    pub fn block_dim(&self) -> usize {
        let (rows, cols) = self.terms[0].1.shape();
        match self.mode {
            ExtensionMode::SquareHermitian => rows,
            ExtensionMode::AugmentedRectangular => rows + cols,
        }
    }

    /// Total dimension `K * block_dim`.
    pub fn dimension(&self) -> usize {
        self.k() * self.block_dim()
    }

    /// `A_i = sum_j alpha_i^j M_j` (pre-dilation in rectangular mode).
    pub fn block_family_matrix(&self, i: usize) -> DMatrix<f64> {
        let alpha = self.alpha_grid[i];
        let (rows, cols) = self.terms[0].1.shape();
        let mut acc = DMatrix::zeros(rows, cols);
        for (power, m) in &self.terms {
            acc += m * alpha.powi(*power as i32);
        }
        acc
    }

    /// The Hermitian operator of block `i`.
    pub fn block_operator(&self, i: usize) -> DMatrix<f64> {
        let a = self.block_family_matrix(i);
        match self.mode {
            ExtensionMode::SquareHermitian => a,
            ExtensionMode::AugmentedRectangular => linalg::hermitian_dilation(&a),
        }
    }

    /// Eigenvalues of block `i`, ascending.
    pub fn block_spectrum(&self, i: usize) -> Result<Vec<f64>> {
        let op = self.block_operator(i);
        let tol = 1e-10 * op.amax().max(1.0);
        let (vals, _) = linalg::hermitian_eig(&op, tol)?;
        Ok(vals.iter().copied().collect())
    }

    /// Multiset union of the block spectra (ascending).
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        let mut all = Vec::with_capacity(self.dimension());
        for i in 0..self.k() {
            all.extend(self.block_spectrum(i)?);
        }
        all.sort_by(f64::total_cmp);
        Ok(all)
    }

    /// Gershgorin bounds on the spectrum, over all blocks.
    pub fn spectral_bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.k() {
            let op = self.block_operator(i);
            for r in 0..op.nrows() {
                let diag = op[(r, r)];
                let radius: f64 = (0..op.ncols())
                    .filter(|&c| c != r)
                    .map(|c| op[(r, c)].abs())
                    .sum();
            lo = lo.min(diag - radius);
            hi = hi.max(diag + radius);
            }
        }
        (lo, hi)
    }
}

/// Affine spectrum rescaling `lambda -> scale * lambda + shift`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumScaling {
    pub scale: f64,
    pub shift: f64,
}

impl SpectrumScaling {
    /// Phase in `[0, 1)` for the phase-estimation register.
    pub fn phase(&self, lambda: f64) -> f64 {
        let mapped = (self.scale * lambda + self.shift) / (2.0 * std::f64::consts::PI);
        mapped.rem_euclid(1.0)
    }

    /// Inverse of [`Self::phase`] restricted to the principal window.
    pub fn decode(&self, phase: f64) -> f64 {
        (2.0 * std::f64::consts::PI * phase - self.shift) / self.scale
    }
}

/// Choose `(scale, shift)` so every eigenvalue of the rescaled operator lies
/// in `[iota*eps, 2*pi - iota*eps]`, with the largest admissible scale
/// (best phase resolution). Bounds come from Gershgorin disks.
pub fn rescale_spectrum(ext: &ExtendedMatrix, iota: f64, eps: f64) -> Result<SpectrumScaling> {
    if !(iota > 0.0 && iota < 0.5) {
        return Err(Error::InvalidConfig("iota must lie in (0, 1/2)".into()));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidConfig("epsilon must be positive".into()));
    }
    let (lo, hi) = ext.spectral_bounds();
    let margin = iota * eps;
    if 2.0 * margin >= 2.0 * std::f64::consts::PI {
        return Err(Error::InvalidConfig("iota * eps leaves no phase window".into()));
    }
    let width = hi - lo;
    if !(width > 0.0) {
        return Err(Error::DegenerateRange);
    }
    let scale = (2.0 * std::f64::consts::PI - 2.0 * margin) / width;
    let shift = margin - scale * lo;
    Ok(SpectrumScaling { scale, shift })
}
