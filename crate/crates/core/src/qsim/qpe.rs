//! Phase-estimation outcome model with the median trick.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qsim::extend::SpectrumScaling;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QpeModel {
    /// Correct `round(2^b * phi)` with probability `1 - p_fail`, otherwise a
    /// uniformly random wrong outcome.
    IdealRounding,
    /// Outcomes drawn from the standard b-bit phase-estimation kernel
    /// `Pr(j) ~ sin^2(2^b pi d_j) / sin^2(pi d_j)` with `d_j = phi - j/2^b`.
    SincKernel,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantumScanConfig {
    /// Target value lambda_0.
    pub lambda0: f64,
    /// Window half-width.
    pub epsilon: f64,
    /// Eigenvalue register bits.
    pub bits: u32,
    /// Clock register count (odd, for the median).
    pub clock_rounds: u32,
    pub qpe_model: QpeModel,
    /// Failure probability per round in the `IdealRounding` model.
    pub p_fail: f64,
    /// Cap on Grover iterations; `None` means `floor(pi/4 sqrt(dim))`.
    pub max_grover: Option<u64>,
    pub seed: u64,
    /// Spectrum rescaling margin parameter.
    pub iota: f64,
    /// Explicit rescaling override (otherwise computed from the operator).
    #[serde(default)]
    pub scaling: Option<(f64, f64)>,
}

impl QuantumScanConfig {
    pub fn new(lambda0: f64, epsilon: f64, bits: u32, clock_rounds: u32, seed: u64) -> Result<Self> {
        let cfg = Self {
            lambda0,
            epsilon,
            bits,
            clock_rounds,
            qpe_model: QpeModel::IdealRounding,
            p_fail: 0.25,
            max_grover: None,
            seed,
            iota: 0.25,
            scaling: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.clock_rounds == 0 || self.clock_rounds % 2 == 0 {
            return Err(Error::InvalidConfig("clock_rounds must be odd".into()));
        }
        if self.bits == 0 {
            return Err(Error::InvalidConfig("bits must be >= 1".into()));
        }
        if self.bits > 24 {
            return Err(Error::InvalidConfig("bits > 24 is not supported".into()));
        }
        if !(self.epsilon > 0.0) {
            return Err(Error::InvalidConfig("epsilon must be positive".into()));
        }
        if !(0.0..1.0).contains(&self.p_fail) {
            return Err(Error::InvalidConfig("p_fail must lie in [0, 1)".into()));
        }
        if !(self.iota > 0.0 && self.iota < 0.5) {
            return Err(Error::InvalidConfig("iota must lie in (0, 1/2)".into()));
        }
        Ok(())
    }

    pub fn scaling_override(&self) -> Option<SpectrumScaling> {
        self.scaling.map(|(scale, shift)| SpectrumScaling { scale, shift })
    }
}

/// One raw QPE draw of a b-bit code for phase `phi` in [0, 1).
fn qpe_draw<R: Rng + ?Sized>(phi: f64, cfg: &QuantumScanConfig, rng: &mut R) -> u64 {
    let size = 1u64 << cfg.bits;
    match cfg.qpe_model {
        QpeModel::IdealRounding => {
            let correct = ((size as f64 * phi).round() as u64) % size;
            if size > 1 && rng.gen::<f64>() < cfg.p_fail {
                // uniform over the wrong codes
                let mut wrong = rng.gen_range(0..size - 1);
                if wrong >= correct {
                    wrong += 1;
                }
                wrong
            } else {
                correct
            }
        }
        QpeModel::SincKernel => {
            let probs = sinc_kernel_probabilities(phi, cfg.bits);
            let u: f64 = rng.gen();
            let mut acc = 0.0;
            for (j, p) in probs.iter().enumerate() {
                acc += p;
                if u < acc {
                    return j as u64;
                }
            }
            size - 1
        }
    }
}

/// Exact b-bit phase-estimation outcome distribution for phase `phi`.
pub fn sinc_kernel_probabilities(phi: f64, bits: u32) -> Vec<f64> {
    let size = 1usize << bits;
    let mut probs = vec![0.0; size];
    for (j, p) in probs.iter_mut().enumerate() {
        let delta = phi - j as f64 / size as f64;
        let denom = (std::f64::consts::PI * delta).sin();
        if denom.abs() < 1e-14 {
            *p = 1.0;
        } else {
            let numer = (size as f64 * std::f64::consts::PI * delta).sin();
            *p = (numer / denom).powi(2) / (size * size) as f64;
        }
    }
    let total: f64 = probs.iter().sum();
    for p in &mut probs {
        *p /= total;
    }
    probs
}

/// Draw `clock_rounds` QPE outcomes and return their median code.
pub fn qpe_median_sample<R: Rng + ?Sized>(
    phi: f64,
    cfg: &QuantumScanConfig,
    rng: &mut R,
) -> u64 {
    let mut draws: Vec<u64> = (0..cfg.clock_rounds)
        .map(|_| qpe_draw(phi, cfg, rng))
        .collect();
    draws.sort_unstable();
    draws[draws.len() / 2]
}

/// Region oracle: 1 iff `|lambda - lambda0| < eps` (strict).
pub fn region_oracle(lambda: f64, lambda0: f64, eps: f64) -> u8 {
    u8::from((lambda - lambda0).abs() < eps)
}
