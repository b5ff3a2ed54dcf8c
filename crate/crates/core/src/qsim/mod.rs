//! Desk-scale model of randomized amplitude-amplified landscape scanning.

pub mod extend;
pub mod grover;
pub mod qpe;
pub mod statevector;

pub use extend::{
    extend_rect, extend_square, rescale_spectrum, ExtendedMatrix, ExtensionMode, SpectrumScaling,
};
pub use grover::{
    average_rotation_success_prob, average_success_prob, collect_all, grover_success_prob,
    grover_success_prob_approx, rotation_success_prob, run_scan, ScanEngine, ScanOutcome,
    ScanSample,
};
pub use qpe::{
    qpe_median_sample, region_oracle, sinc_kernel_probabilities, QpeModel, QuantumScanConfig,
};
pub use statevector::{qubit_count, statevector_oracle, StatevectorSim};
