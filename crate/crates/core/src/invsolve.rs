//! Matrix-inverse route for the collocation equations.
//!
//! Forms `G = BᵀB` and `H1 = Bᵀ(Bpp + Vdiag B)`, solves `G Htilde = H1`
//! through Cholesky, and diagonalizes the resulting non-symmetric matrix.
//! The condition number of `G` is reported as a diagnostic; the route is
//! expected to break down when it approaches the double-precision limit.

use serde::{Deserialize, Serialize};

use crate::collocation::CollocationSystem;
use crate::error::{Error, Result};
use crate::linalg;

/// Condition number above which the report is flagged `IllConditioned`.
pub const ILL_CONDITIONED_KAPPA: f64 = 1e14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolveStatus {
    Ok,
    IllConditioned,
    Failed,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InverseSolveReport {
    /// Real-flagged eigenvalues, sorted ascending.
    pub energies: Vec<f64>,
    /// Number of eigenvalues discarded as complex.
    pub complex_count: usize,
    /// Condition number of `BᵀB`.
    pub kappa: f64,
    pub status: SolveStatus,
}

/// Realness threshold: `|Im| <= 1e-6 (1 + |Re|)`.
fn is_real(v: &num_complex::Complex64) -> bool {
    v.im.abs() <= 1e-6 * (1.0 + v.re.abs())
}

pub fn solve_by_inverse(sys: &CollocationSystem) -> Result<InverseSolveReport> {
    let n = sys.b.ncols();
    let m = sys.b.nrows();
    if n > m {
        return Err(Error::ShapeMismatch(format!(
            "inverse route needs N <= M, got N={n}, M={m}"
        )));
    }
    let gram = sys.b.transpose() * &sys.b;
    let kappa = linalg::cond2(&gram)?;
    let h1 = sys.b.transpose() * &sys.m0;
    let htilde = match linalg::solve_spd(&gram, &h1) {
        Ok(h) => h,
        Err(Error::NotPositiveDefinite) => {
            return Ok(InverseSolveReport {
                energies: Vec::new(),
                complex_count: 0,
                kappa,
                status: SolveStatus::Failed,
            });
        }
        Err(e) => return Err(e),
    };
    let eigvals = match linalg::general_eig(&htilde) {
        Ok(v) => v,
        Err(Error::ConvergenceFailure(_)) => {
            return Ok(InverseSolveReport {
                energies: Vec::new(),
                complex_count: 0,
                kappa,
                status: SolveStatus::Failed,
            });
        }
        Err(e) => return Err(e),
    };
    let mut energies: Vec<f64> = eigvals.iter().filter(|v| is_real(v)).map(|v| v.re).collect();
    energies.sort_by(f64::total_cmp);
    let complex_count = eigvals.len() - energies.len();
    let status = if kappa > ILL_CONDITIONED_KAPPA {
        SolveStatus::IllConditioned
    } else {
        SolveStatus::Ok
    };
    Ok(InverseSolveReport {
        energies,
        complex_count,
        kappa,
        status,
    })
}

/// Pair each computed energy with the nearest exact level and return the
/// absolute errors, in the order of the computed energies.
pub fn accuracy_table(energies: &[f64], exact: &[f64]) -> Vec<f64> {
    let mut sorted_exact: Vec<f64> = exact.to_vec();
    sorted_exact.sort_by(f64::total_cmp);
    energies
        .iter()
        .map(|e| {
            sorted_exact
                .iter()
                .map(|x| (e - x).abs())
                .fold(f64::INFINITY, f64::min)
        })
        .collect()
}
