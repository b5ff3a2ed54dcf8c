//! Literal tiny-instance statevector simulation of the amplified scan.
//!
//! Works in the eigenbasis of the block-diagonal operator: the maximally
//! entangled preparation is Schmidt-diagonal there, so the simulated
//! registers are (eigenstate index, c phase registers, median, flag). The
//! flag and median registers are unitary functions of the phase registers,
//! so amplitudes are stored per (eigenstate, phase-vector) configuration.
//! This is an oracle for the closed-form probability model, not a gate
//! compiler.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::qsim::extend::{rescale_spectrum, ExtendedMatrix, SpectrumScaling};
use crate::qsim::grover::{ScanOutcome, ScanSample};
use crate::qsim::qpe::{region_oracle, QuantumScanConfig};

/// Hard ceiling on the simulated register width.
pub const MAX_QUBITS: u32 = 24;

fn ceil_log2(n: usize) -> u32 {
    (n.max(1) as f64).log2().ceil() as u32
}

/// Register width of the literal circuit: two index registers (state and
/// its entangled copy), c + 1 phase registers of b bits, one flag qubit.
pub fn qubit_count(ext: &ExtendedMatrix, cfg: &QuantumScanConfig) -> u32 {
    let n = ceil_log2(ext.block_dim());
    let k = ceil_log2(ext.k());
    2 * (n + k) + cfg.bits * (cfg.clock_rounds + 1) + 1
}

/// Exact b-bit QPE amplitude `A(j | phi) = 2^-b sum_x exp(2 pi i x (phi - j/2^b))`.
fn qpe_amplitude(phi: f64, j: u64, bits: u32) -> Complex64 {
    let size = 1u64 << bits;
    let delta = phi - j as f64 / size as f64;
    let tau = 2.0 * std::f64::consts::PI * delta;
    let x = delta * size as f64;
    if (x - x.round()).abs() < 1e-12 {
        // delta a multiple of 1/2^b: point mass on the representable code
        return if (delta - delta.round()).abs() < 1e-12 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
    }
    let numer = Complex64::new(0.0, tau * size as f64).exp() - 1.0;
    let denom = Complex64::new(0.0, tau).exp() - 1.0;
    numer / denom / size as f64
}

/// One basis configuration of the reduced register set.
struct Config {
    state: usize,
    /// Decoded eigenvalue estimate of the median phase code.
    lambda_tilde: f64,
    chi: u8,
}

pub struct StatevectorSim {
    amps: Vec<Complex64>,
    /// Post-preparation reference state |psi0> for the diffusion reflection.
    psi0: Vec<Complex64>,
    configs: Vec<Config>,
    lambdas: Vec<f64>,
    block_dim: usize,
    marked_exact: usize,
    scaling: SpectrumScaling,
    alpha_grid: Vec<f64>,
    lambda0: f64,
    epsilon: f64,
}

impl StatevectorSim {
    pub fn new(ext: &ExtendedMatrix, cfg: &QuantumScanConfig) -> Result<Self> {
        cfg.validate()?;
        let qubits = qubit_count(ext, cfg);
        if qubits > MAX_QUBITS {
            return Err(Error::TooLarge {
                qubits,
                limit: MAX_QUBITS,
            });
        }
        let scaling = match cfg.scaling_override() {
            Some(s) => s,
            None => rescale_spectrum(ext, cfg.iota, cfg.epsilon)?,
        };
        let mut lambdas = Vec::with_capacity(ext.dimension());
        for i in 0..ext.k() {
            lambdas.extend(ext.block_spectrum(i)?);
        }
        let dim = lambdas.len();
        let marked_exact = lambdas
            .iter()
            .filter(|l| (*l - cfg.lambda0).abs() < cfg.epsilon)
            .count();
        let size = 1u64 << cfg.bits;
        let phase_space = size.pow(cfg.clock_rounds) as usize;
        let mut amps = Vec::with_capacity(dim * phase_space);
        let mut configs = Vec::with_capacity(dim * phase_space);
        let norm = 1.0 / (dim as f64).sqrt();
        let mut codes = vec![0u64; cfg.clock_rounds as usize];
        for (s, lambda) in lambdas.iter().enumerate() {
            let phi = scaling.phase(*lambda);
            for t in 0..phase_space {
                let mut rest = t as u64;
                let mut amp = Complex64::new(norm, 0.0);
                for code in codes.iter_mut() {
                    *code = rest % size;
                    rest /= size;
                    amp *= qpe_amplitude(phi, *code, cfg.bits);
                }
                let mut sorted = codes.clone();
                sorted.sort_unstable();
                let median = sorted[sorted.len() / 2];
                let lambda_tilde = scaling.decode(median as f64 / size as f64);
                configs.push(Config {
                    state: s,
                    lambda_tilde,
                    chi: region_oracle(lambda_tilde, cfg.lambda0, cfg.epsilon),
                });
                amps.push(amp);
            }
        }
        let psi0 = amps.clone();
        Ok(Self {
            amps,
            psi0,
            configs,
            lambdas,
            block_dim: ext.block_dim(),
            marked_exact,
            scaling,
            alpha_grid: ext.alpha_grid.clone(),
            lambda0: cfg.lambda0,
            epsilon: cfg.epsilon,
        })
    }

    /// Current state vector, ordered by (eigenstate, phase-register code).
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn marked_exact(&self) -> usize {
        self.marked_exact
    }

    pub fn dimension(&self) -> usize {
        self.lambdas.len()
    }

    pub fn scaling(&self) -> SpectrumScaling {
        self.scaling
    }

    /// Flag-conditioned phase flip (the window reflection).
    pub fn apply_oracle_reflection(&mut self) {
        for (a, c) in self.amps.iter_mut().zip(&self.configs) {
            if c.chi == 1 {
                *a = -*a;
            }
        }
    }

    /// Diffusion `2|psi0><psi0| - I`.
    pub fn apply_diffusion(&mut self) {
        let overlap: Complex64 = self
            .psi0
            .iter()
            .zip(&self.amps)
            .map(|(p, a)| p.conj() * a)
            .sum();
        for (a, p) in self.amps.iter_mut().zip(&self.psi0) {
            *a = 2.0 * overlap * p - *a;
        }
    }

    /// One Grover iterate: oracle reflection then diffusion.
    pub fn apply_grover_iterate(&mut self) {
        self.apply_oracle_reflection();
        self.apply_diffusion();
    }

    /// Probability of measuring the flag as 1.
    pub fn chi_one_probability(&self) -> f64 {
        self.amps
            .iter()
            .zip(&self.configs)
            .filter(|(_, c)| c.chi == 1)
            .map(|(a, _)| a.norm_sqr())
            .sum()
    }

    pub fn total_probability(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Measure all registers `shots` times.
    pub fn measure(&self, shots: u64, xi: u64, rng: &mut ChaCha12Rng) -> Vec<ScanSample> {
        let weights: Vec<f64> = self.amps.iter().map(|a| a.norm_sqr()).collect();
        let total: f64 = weights.iter().sum();
        (0..shots)
            .map(|_| {
                let mut u: f64 = rng.gen::<f64>() * total;
                let mut idx = weights.len() - 1;
                for (i, w) in weights.iter().enumerate() {
                    if u < *w {
                        idx = i;
                        break;
                    }
                    u -= w;
                }
                let c = &self.configs[idx];
                let alpha_index = c.state / self.block_dim;
                ScanSample {
                    alpha_index,
                    alpha: self.alpha_grid[alpha_index],
                    lambda_tilde: c.lambda_tilde,
                    chi: c.chi,
                    xi,
                    marked: (self.lambdas[c.state] - self.lambda0).abs() < self.epsilon,
                }
            })
            .collect()
    }
}

/// Run the literal circuit with `xi` Grover iterations and measure `shots`
/// times. Validation oracle for the closed-form scan model.
pub fn statevector_oracle(
    ext: &ExtendedMatrix,
    cfg: &QuantumScanConfig,
    xi: u64,
    shots: u64,
) -> Result<ScanOutcome> {
    let mut sim = StatevectorSim::new(ext, cfg)?;
    for _ in 0..xi {
        sim.apply_grover_iterate();
    }
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let samples = sim.measure(shots, xi, &mut rng);
    Ok(ScanOutcome {
        marked_set_size: sim.marked_exact(),
        dimension: sim.dimension(),
        samples,
    })
}
