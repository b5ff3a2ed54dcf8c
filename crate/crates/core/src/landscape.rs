//! Classical landscape scanning.
//!
//! Scans the minimum singular value of the residue family
//! `M(alpha) = M0 - alpha * M1` over an equidistant alpha grid, removes the
//! linear background trend, and detects dips below a threshold.

use std::io::Write;
use std::path::Path;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// One-parameter residue family `M(alpha) = M0 - alpha * M1` with its grid.
#[derive(Debug, Clone)]
pub struct ResidueFamily {
    pub m0: DMatrix<f64>,
    pub m1: DMatrix<f64>,
    pub alpha_grid: Vec<f64>,
}

impl ResidueFamily {
    pub fn new(m0: DMatrix<f64>, m1: DMatrix<f64>, a: f64, b: f64, k: usize) -> Result<Self> {
        if m0.shape() != m1.shape() {
            return Err(Error::ShapeMismatch(format!(
                "M0 is {:?}, M1 is {:?}",
                m0.shape(),
                m1.shape()
            )));
        }
        if k < 2 {
            return Err(Error::InvalidConfig("alpha grid needs K >= 2".into()));
        }
        if !(a < b) {
            return Err(Error::InvalidSpan(format!("[{a}, {b}]")));
        }
        let step = (b - a) / (k as f64 - 1.0);
        let alpha_grid = (0..k).map(|i| a + step * i as f64).collect();
        Ok(Self { m0, m1, alpha_grid })
    }

    pub fn k(&self) -> usize {
        self.alpha_grid.len()
    }

    /// Grid step `delta = (b - a) / (K - 1)`.
    pub fn step(&self) -> f64 {
        self.alpha_grid[1] - self.alpha_grid[0]
    }

    pub fn residue_at(&self, alpha: f64) -> DMatrix<f64> {
        &self.m0 - &self.m1 * alpha
    }
}

/// Scan result: raw and detrended minimum singular values per grid point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LandscapeScan {
    pub alpha_grid: Vec<f64>,
    pub sigmas: Vec<f64>,
    pub sigmas_detrended: Vec<f64>,
    pub slope: f64,
}

/// A detected dip: argmin of the detrended curve inside a maximal interval
/// below the threshold.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Dip {
    pub alpha_star: f64,
    pub sigma_value: f64,
    pub interval: (f64, f64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DipSet {
    pub dips: Vec<Dip>,
    pub threshold: f64,
}

/// Evaluate `sigma_min(M(alpha_i))` for every grid point (in parallel) and
/// fill in the detrended curve. Output is deterministic for a fixed family
/// regardless of worker count.
pub fn scan(fam: &ResidueFamily) -> Result<LandscapeScan> {
    let sigmas: Vec<f64> = fam
        .alpha_grid
        .par_iter()
        .map(|&alpha| linalg::svd_min(&fam.residue_at(alpha)).map(|(s, _)| s))
        .collect::<Result<Vec<_>>>()?;
    let (slope, sigmas_detrended) = remove_background(&sigmas, &fam.alpha_grid)?;
    Ok(LandscapeScan {
        alpha_grid: fam.alpha_grid.clone(),
        sigmas,
        sigmas_detrended,
        slope,
    })
}

/// Estimate the background slope near `alpha = 0` and subtract `s * alpha`.
///
/// The slope is a least-squares line through the first `max(5, K/100)` grid
/// points. A forward-difference estimate is computed as a cross-check; a
/// disagreement above 20% logs a warning (a dip near the window start can
/// bias either estimate).
pub fn remove_background(raw: &[f64], alpha_grid: &[f64]) -> Result<(f64, Vec<f64>)> {
    let k = raw.len();
    if k < 2 || alpha_grid.len() != k {
        return Err(Error::InvalidConfig("background removal needs K >= 2".into()));
    }
    let n_fit = (k / 100).max(5).min(k);
    let xs = &alpha_grid[..n_fit];
    let ys = &raw[..n_fit];
    let n = n_fit as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = if denom.abs() > 0.0 {
        (n * sxy - sx * sy) / denom
    } else {
        0.0
    };
    let forward = (raw[1] - raw[0]) / (alpha_grid[1] - alpha_grid[0]);
    let scale = slope.abs().max(forward.abs());
    if scale > 0.0 && (slope - forward).abs() > 0.2 * scale {
        log::warn!(
            "background slope estimates disagree: least-squares {slope:.6e} vs forward-difference {forward:.6e}"
        );
    }
    let detrended = raw
        .iter()
        .zip(alpha_grid)
        .map(|(y, x)| y - slope * x)
        .collect();
    Ok((slope, detrended))
}

/// Every maximal contiguous interval of the detrended curve below
/// `threshold`, with the per-interval argmin (ties broken toward smaller
/// alpha).
pub fn detect_dips(scan: &LandscapeScan, threshold: f64) -> Result<DipSet> {
    if !(threshold > 0.0) {
        return Err(Error::InvalidConfig("dip threshold must be positive".into()));
    }
    let mut dips = Vec::new();
    let mut run_start: Option<usize> = None;
    let k = scan.sigmas_detrended.len();
    for i in 0..=k {
        let below = i < k && scan.sigmas_detrended[i] < threshold;
        match (below, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(start)) => {
                let end = i - 1;
                let mut best = start;
                for j in start..=end {
                    if scan.sigmas_detrended[j] < scan.sigmas_detrended[best] {
                        best = j;
                    }
                }
                dips.push(Dip {
                    alpha_star: scan.alpha_grid[best],
                    sigma_value: scan.sigmas_detrended[best],
                    interval: (scan.alpha_grid[start], scan.alpha_grid[end]),
                });
                run_start = None;
            }
            _ => {}
        }
    }
    Ok(DipSet { dips, threshold })
}

/// Default dip threshold: half the median of the detrended curve.
///
/// Dips occupy a small fraction of the grid, so the median tracks the
/// background level; half of it sits safely below the background while
/// still catching well-resolved dips. Shallow dips need a hand-tuned
/// threshold.
pub fn default_threshold(scan: &LandscapeScan) -> f64 {
    let mut sorted = scan.sigmas_detrended.clone();
    sorted.sort_by(f64::total_cmp);
    (sorted[sorted.len() / 2] / 2.0).abs().max(f64::MIN_POSITIVE)
}

/// Histogram counts of values over `bins` equal-width bins spanning
/// `[lo, hi]`; values outside the window are ignored.
pub fn density_histogram(values: &[f64], bins: usize, lo: f64, hi: f64) -> Result<Vec<u64>> {
    if bins == 0 {
        return Err(Error::InvalidConfig("histogram needs at least one bin".into()));
    }
    if !(lo < hi) {
        return Err(Error::InvalidSpan(format!("[{lo}, {hi}]")));
    }
    let mut counts = vec![0u64; bins];
    let width = (hi - lo) / bins as f64;
    for &v in values {
        if v < lo || v > hi {
            continue;
        }
        let idx = (((v - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(counts)
}

/// Write the scan as CSV with columns `alpha,sigma_min,sigma_detrended`.
pub fn write_scan_csv(scan: &LandscapeScan, path: &Path) -> Result<()> {
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(f, "alpha,sigma_min,sigma_detrended")?;
    for i in 0..scan.alpha_grid.len() {
        writeln!(
            f,
            "{},{},{}",
            scan.alpha_grid[i], scan.sigmas[i], scan.sigmas_detrended[i]
        )?;
    }
    Ok(())
}

/// Read back a scan CSV written by [`write_scan_csv`].
pub fn read_scan_csv(path: &Path) -> Result<LandscapeScan> {
    let text = std::fs::read_to_string(path)?;
    let mut alpha_grid = Vec::new();
    let mut sigmas = Vec::new();
    let mut detrended = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            continue; // header
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(Error::Parse(format!("scan csv line {}: expected 3 columns", i + 1)));
        }
        alpha_grid.push(cols[0].parse().map_err(|e| Error::Parse(format!("{e}")))?);
        sigmas.push(cols[1].parse().map_err(|e| Error::Parse(format!("{e}")))?);
        detrended.push(cols[2].parse().map_err(|e| Error::Parse(format!("{e}")))?);
    }
    let slope = if alpha_grid.len() >= 2 {
        remove_background(&sigmas, &alpha_grid)?.0
    } else {
        0.0
    };
    Ok(LandscapeScan {
        alpha_grid,
        sigmas,
        sigmas_detrended: detrended,
        slope,
    })
}
