//! Eigenvalue landscape toolkit for pseudospectral collocation problems.
//!
//! The crate assembles collocation matrices for 1-D Schrödinger operators
//! over Gaussian basis sets, solves the resulting generalized eigenvalue
//! problems by the matrix-inverse route, scans the smallest-singular-value
//! landscape classically, simulates a randomized amplitude-amplification
//! scan of the same landscape at desk scale, and evaluates leading-term
//! cost estimates for all routes.

pub mod collocation;
pub mod config;
pub mod error;
pub mod invsolve;
pub mod landscape;
pub mod linalg;
pub mod qsim;
pub mod resources;

pub use error::{Error, Result};
