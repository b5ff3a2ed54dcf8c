//! Collocation discretization of the 1-D Schrodinger equation.
//!
//! A basis of equal-width real Gaussians evaluated on a spatial grid yields
//! the collocation matrix `B`, the kinetic matrix `Bpp` (action of
//! `-d^2/dq^2` on each basis function) and the diagonal potential matrix
//! `Vdiag`. The Hamiltonian-side matrix is `M0 = Bpp + Vdiag * B`.

use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Equal-width Gaussian basis: `phi_n(x) = C exp(-(x - c_n)^2 / (2 w^2))`
/// with `C = (pi w^2)^(-1/4)` (unit L2 norm).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub centers: Vec<f64>,
    pub width: f64,
}

impl BasisSpec {
    pub fn new(centers: Vec<f64>, width: f64) -> Result<Self> {
        if centers.is_empty() {
            return Err(Error::InvalidConfig("basis needs at least one center".into()));
        }
        if !centers.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidConfig("basis centers must be strictly increasing".into()));
        }
        if !(width > 0.0) {
            return Err(Error::InvalidConfig("basis width must be positive".into()));
        }
        Ok(Self { centers, width })
    }

    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// Peak value `C = (pi w^2)^(-1/4)`.
    pub fn normalization(&self) -> f64 {
        (std::f64::consts::PI * self.width * self.width).powf(-0.25)
    }

    pub fn eval(&self, n: usize, x: f64) -> f64 {
        let w2 = self.width * self.width;
        let d = x - self.centers[n];
        self.normalization() * (-d * d / (2.0 * w2)).exp()
    }

    /// `(K phi_n)(x)` with `K = -d^2/dx^2` (analytic second derivative,
    /// sign flipped).
    pub fn eval_kinetic(&self, n: usize, x: f64) -> f64 {
        let w2 = self.width * self.width;
        let d = x - self.centers[n];
        self.normalization() * (1.0 / w2 - d * d / (w2 * w2)) * (-d * d / (2.0 * w2)).exp()
    }
}

/// Strictly increasing spatial grid points `q_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpatialGrid {
    pub points: Vec<f64>,
}

impl SpatialGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidConfig("grid needs at least one point".into()));
        }
        if !points.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidConfig("grid points must be strictly increasing".into()));
        }
        Ok(Self { points })
    }

    pub fn equidistant(count: usize, lo: f64, hi: f64) -> Result<Self> {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::InvalidSpan(format!("[{lo}, {hi}]")));
        }
        if count == 0 {
            return Err(Error::InvalidConfig("grid needs at least one point".into()));
        }
        if count == 1 {
            return Self::new(vec![0.5 * (lo + hi)]);
        }
        let step = (hi - lo) / (count as f64 - 1.0);
        Self::new((0..count).map(|k| lo + step * k as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// 1-D potential on the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Potential {
    /// `V(x) = x^2`
    Harmonic,
    /// `V(x) = d_e (1 - exp(-a x))^2`
    Morse { d_e: f64, a: f64 },
    /// Piecewise-linear interpolation of strictly increasing `(q, V)` samples.
    Tabulated { samples: Vec<(f64, f64)> },
}

impl Potential {
    pub fn morse(d_e: f64, a: f64) -> Result<Self> {
        if !(d_e > 0.0 && a > 0.0) {
            return Err(Error::InvalidConfig("Morse parameters must be positive".into()));
        }
        Ok(Potential::Morse { d_e, a })
    }

    /// Load a tabulated potential from a two-column CSV `q,V` with strictly
    /// increasing `q`. Lines starting with `#` are skipped.
    pub fn from_csv(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut samples = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split(',');
            let q: f64 = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: bad q", lineno + 1)))?;
            let v: f64 = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Parse(format!("line {}: bad V", lineno + 1)))?;
            samples.push((q, v));
        }
        if samples.len() < 2 {
            return Err(Error::Parse("tabulated potential needs at least two samples".into()));
        }
        if !samples.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::Parse("tabulated q values must be strictly increasing".into()));
        }
        Ok(Potential::Tabulated { samples })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            Potential::Harmonic => Ok(x * x),
            Potential::Morse { d_e, a } => {
                let t = 1.0 - (-a * x).exp();
                Ok(d_e * t * t)
            }
            Potential::Tabulated { samples } => {
                let first = samples.first().unwrap();
                let last = samples.last().unwrap();
                if x < first.0 || x > last.0 {
                    return Err(Error::OutOfDomain(x));
                }
                let idx = samples.partition_point(|(q, _)| *q <= x);
                if idx == 0 {
                    return Ok(first.1);
                }
                if idx == samples.len() {
                    return Ok(last.1);
                }
                let (q0, v0) = samples[idx - 1];
                let (q1, v1) = samples[idx];
                let t = (x - q0) / (q1 - q0);
                Ok(v0 + t * (v1 - v0))
            }
        }
    }
}

/// Assembled collocation system: basis, grid, potential and the matrices
/// `B`, `Bpp`, `Vdiag`, with `M0 = Bpp + Vdiag B` cached.
#[derive(Debug, Clone)]
pub struct CollocationSystem {
    pub basis: BasisSpec,
    pub grid: SpatialGrid,
    pub potential: Potential,
    pub b: DMatrix<f64>,
    pub bpp: DMatrix<f64>,
    pub vdiag: DMatrix<f64>,
    pub m0: DMatrix<f64>,
}

/// `N` equidistant Gaussian centers over `[x_lo, x_hi]` inclusive, with
/// width `width_factor * spacing`. A single center sits at the midpoint.
pub fn make_gaussian_basis(n: usize, span: (f64, f64), width_factor: f64) -> Result<BasisSpec> {
    let (lo, hi) = span;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidSpan(format!("[{lo}, {hi}]")));
    }
    if n == 0 {
        return Err(Error::InvalidConfig("basis needs at least one function".into()));
    }
    if !(width_factor > 0.0) {
        return Err(Error::InvalidConfig("width_factor must be positive".into()));
    }
    if n == 1 {
        // midpoint convention; "spacing" falls back to the half-span
        let spacing = 0.5 * (hi - lo);
        return BasisSpec::new(vec![0.5 * (lo + hi)], width_factor * spacing);
    }
    let spacing = (hi - lo) / (n as f64 - 1.0);
    let centers = (0..n).map(|i| lo + spacing * i as f64).collect();
    BasisSpec::new(centers, width_factor * spacing)
}

/// Collocation matrix `B_{kn} = phi_n(q_k)` (M x N).
pub fn build_b(basis: &BasisSpec, grid: &SpatialGrid) -> DMatrix<f64> {
    DMatrix::from_fn(grid.len(), basis.len(), |k, n| basis.eval(n, grid.points[k]))
}

/// Kinetic matrix `Bpp_{kn} = (K phi_n)(q_k) = -phi_n''(q_k)` (M x N).
pub fn build_bpp(basis: &BasisSpec, grid: &SpatialGrid) -> DMatrix<f64> {
    DMatrix::from_fn(grid.len(), basis.len(), |k, n| {
        basis.eval_kinetic(n, grid.points[k])
    })
}

/// Diagonal potential matrix with `V(q_k)` on the diagonal (M x M).
pub fn build_vdiag(potential: &Potential, grid: &SpatialGrid) -> Result<DMatrix<f64>> {
    let m = grid.len();
    let mut out = DMatrix::zeros(m, m);
    for k in 0..m {
        out[(k, k)] = potential.eval(grid.points[k])?;
    }
    Ok(out)
}

/// Build all three matrices and cache `M0 = Bpp + Vdiag B`.
pub fn assemble(
    basis: BasisSpec,
    grid: SpatialGrid,
    potential: Potential,
) -> Result<CollocationSystem> {
    let b = build_b(&basis, &grid);
    let bpp = build_bpp(&basis, &grid);
    let vdiag = build_vdiag(&potential, &grid)?;
    let m0 = &bpp + &vdiag * &b;
    Ok(CollocationSystem {
        basis,
        grid,
        potential,
        b,
        bpp,
        vdiag,
        m0,
    })
}
