//! Threshold photodiodes on coherent light.
//!
//! A coherent state `|β⟩` has Poissonian photon statistics with mean `|β|²`,
//! so a detector that only reports "at least one photon" fires with
//! probability `1 - e^{-|β|²}`.
//!
//! Sampling uses `ChaCha8Rng::seed_from_u64(seed)` and one uniform `f64` draw
//! per port in the order the ports are given; a port clicks iff the draw is
//! below its click probability. Batches of trials use the seed
//! `seed.wrapping_add(trial)` for trial `trial` (see [`trial_seed`]).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::AmplitudeVector;
use crate::error::{Error, Result};

/// One sampled detector outcome.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClickRecord {
    pub port: usize,
    pub clicked: bool,
    /// Probability the port had of clicking.
    pub probability: f64,
}

/// Imperfections of a threshold detector. The default is ideal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DetectorModel {
    /// Probability that an arriving photon is registered.
    pub efficiency: f64,
    /// Probability of a click with no light present.
    pub dark_count: f64,
}

impl Default for DetectorModel {
    fn default() -> Self {
        Self { efficiency: 1.0, dark_count: 0.0 }
    }
}

impl DetectorModel {
    pub fn new(efficiency: f64, dark_count: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&efficiency) || !(0.0..=1.0).contains(&dark_count) {
            return Err(Error::InvalidParameter(format!(
                "detector efficiency {efficiency} and dark count {dark_count} must lie in [0, 1]"
            )));
        }
        Ok(Self { efficiency, dark_count })
    }

    /// `1 - (1 - dark)·e^{-η|β|²}`
    pub fn click_probability(&self, beta: Complex64) -> f64 {
        let x = self.efficiency * beta.norm_sqr();
        if self.dark_count == 0.0 {
            -(-x).exp_m1()
        } else {
            1.0 - (1.0 - self.dark_count) * (-x).exp()
        }
    }

    pub fn sample<R: Rng + ?Sized>(
        &self,
        amps: &AmplitudeVector,
        ports: &[usize],
        rng: &mut R,
    ) -> Result<Vec<ClickRecord>> {
        let width = amps.width();
        if let Some(&bad) = ports.iter().find(|&&p| p >= width) {
            return Err(Error::ModeOutOfRange { mode: bad, width });
        }
        Ok(ports
            .iter()
            .map(|&port| {
                let probability = self.click_probability(amps.starred()[port]);
                let draw: f64 = rng.random();
                ClickRecord { port, clicked: draw < probability, probability }
            })
            .collect())
    }
}

/// Probability that an ideal threshold detector fires on `|β⟩`.
pub fn click_probability(beta: Complex64) -> f64 {
    DetectorModel::default().click_probability(beta)
}

/// Samples ideal detectors on `ports` with a fresh generator seeded by `seed`.
pub fn sample_clicks(amps: &AmplitudeVector, ports: &[usize], seed: u64) -> Result<Vec<ClickRecord>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DetectorModel::default().sample(amps, ports, &mut rng)
}

/// Seed used for trial `trial` of a batch started from `seed`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    seed.wrapping_add(trial)
}
