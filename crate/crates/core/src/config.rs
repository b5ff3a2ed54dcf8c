//! Run configuration for the command-line driver.
//!
//! A single JSON document describes the problem (potential, basis, grid),
//! the alpha window, and the optional quantum-scan and resource-estimate
//! sections. CLI flags override individual fields.

use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::collocation::{assemble, make_gaussian_basis, CollocationSystem, Potential, SpatialGrid};
use crate::error::{Error, Result};
use crate::landscape::ResidueFamily;
use crate::qsim::QuantumScanConfig;
use crate::resources::ResourceInputs;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemSpec {
    Harmonic,
    Morse { d_e: f64, a: f64 },
    Tabulated { path: PathBuf },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub problem: ProblemSpec,
    pub n_basis: usize,
    pub n_grid: usize,
    pub span: (f64, f64),
    pub width_factor: f64,
    pub alpha_window: (f64, f64),
    pub k_points: usize,
    /// Window half-width for dip counting and the quantum scan.
    pub epsilon: f64,
    #[serde(default)]
    pub quantum: Option<QuantumScanConfig>,
    #[serde(default)]
    pub resources: Option<ResourceInputs>,
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let cfg: RunConfig = serde_json::from_str(&text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.span.0 < self.span.1) {
            return Err(Error::InvalidSpan(format!("[{}, {}]", self.span.0, self.span.1)));
        }
        if !(self.alpha_window.0 < self.alpha_window.1) {
            return Err(Error::InvalidSpan(format!(
                "[{}, {}]",
                self.alpha_window.0, self.alpha_window.1
            )));
        }
        if self.n_basis == 0 || self.n_grid == 0 {
            return Err(Error::InvalidConfig("n_basis and n_grid must be positive".into()));
        }
        if self.k_points < 2 {
            return Err(Error::InvalidConfig("scanning needs k_points >= 2".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidConfig("epsilon must be positive".into()));
        }
        if let ProblemSpec::Tabulated { path } = &self.problem {
            if !path.exists() {
                return Err(Error::InvalidConfig(format!(
                    "tabulated potential file not found: {}",
                    path.display()
                )));
            }
        }
        if let Some(q) = &self.quantum {
            q.validate()?;
        }
        if let Some(r) = &self.resources {
            r.validate()?;
        }
        Ok(())
    }

    pub fn potential(&self) -> Result<Potential> {
        match &self.problem {
            ProblemSpec::Harmonic => Ok(Potential::Harmonic),
            ProblemSpec::Morse { d_e, a } => Potential::morse(*d_e, *a),
            ProblemSpec::Tabulated { path } => Potential::from_csv(path),
        }
    }

    pub fn build_system(&self) -> Result<CollocationSystem> {
        let basis = make_gaussian_basis(self.n_basis, self.span, self.width_factor)?;
        let grid = SpatialGrid::equidistant(self.n_grid, self.span.0, self.span.1)?;
        assemble(basis, grid, self.potential()?)
    }

    pub fn residue_family(&self, sys: &CollocationSystem) -> Result<ResidueFamily> {
        ResidueFamily::new(
            sys.m0.clone(),
            sys.b.clone(),
            self.alpha_window.0,
            self.alpha_window.1,
            self.k_points,
        )
    }
}

/// Write a dense matrix as plain CSV (one row per line, full precision).
pub fn write_matrix_csv(m: &DMatrix<f64>, path: &Path) -> Result<()> {
    use std::io::Write;
    let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols()).map(|c| format!("{:?}", m[(r, c)])).collect();
        writeln!(f, "{}", row.join(","))?;
    }
    Ok(())
}

/// Read a matrix written by [`write_matrix_csv`].
pub fn read_matrix_csv(path: &Path) -> Result<DMatrix<f64>> {
    let text = std::fs::read_to_string(path)?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for line in text.lines() {
        let row: std::result::Result<Vec<f64>, _> =
            line.split(',').map(|s| s.trim().parse::<f64>()).collect();
        let row = row.map_err(|e| Error::Parse(format!("{e}")))?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                return Err(Error::Parse("ragged matrix csv".into()));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix csv".into()));
    }
    let (nr, nc) = (rows.len(), rows[0].len());
    Ok(DMatrix::from_fn(nr, nc, |r, c| rows[r][c]))
}
