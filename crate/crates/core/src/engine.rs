//! Propagation of coherent-state amplitudes.
//!
//! The canonical state is the vector of starred amplitudes
//! `(α₁*, …, α_N*)`; the physical amplitudes are recovered with
//! [`AmplitudeVector::physical`]. Vectors are never normalised.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;
use crate::synthesis::Circuit;

/// Starred amplitudes of a product of coherent states, one entry per mode.
#[derive(Clone, Debug, PartialEq)]
pub struct AmplitudeVector {
    starred: Vec<Complex64>,
}

impl AmplitudeVector {
    /// Wraps starred amplitudes `α*`.
    pub fn from_starred(starred: Vec<Complex64>) -> Result<Self> {
        if starred.is_empty() {
            return Err(Error::Dimension("amplitude vector must have at least one mode".into()));
        }
        if starred.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { starred })
    }

    /// Builds the vector from physical amplitudes `α`, conjugating them.
    pub fn from_physical(physical: &[Complex64]) -> Result<Self> {
        Self::from_starred(physical.iter().map(|z| z.conj()).collect())
    }

    /// All modes dark.
    pub fn vacuum(width: usize) -> Result<Self> {
        Self::from_starred(vec![Complex64::new(0.0, 0.0); width])
    }

    pub fn width(&self) -> usize {
        self.starred.len()
    }

    pub fn starred(&self) -> &[Complex64] {
        &self.starred
    }

    pub fn physical(&self) -> Vec<Complex64> {
        self.starred.iter().map(|z| z.conj()).collect()
    }

    pub fn into_starred(self) -> Vec<Complex64> {
        self.starred
    }

    /// Sub-vector on the given ports, in the given order.
    pub fn select(&self, ports: &[usize]) -> Result<Self> {
        let mut out = Vec::with_capacity(ports.len());
        for &p in ports {
            let z = self
                .starred
                .get(p)
                .ok_or(Error::ModeOutOfRange { mode: p, width: self.width() })?;
            out.push(*z);
        }
        Self::from_starred(out)
    }

    /// Largest entrywise modulus of the difference; infinite on width mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.width() != other.width() {
            return f64::INFINITY;
        }
        self.starred.iter().zip(&other.starred).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// `β* = M·α*`.
pub fn apply_matrix(m: &ComplexMatrix, amps: &AmplitudeVector) -> Result<AmplitudeVector> {
    AmplitudeVector::from_starred(m.mul_vec(amps.starred())?)
}

/// Runs the amplitudes through the circuit one element at a time.
pub fn apply_circuit(circuit: &Circuit, amps: &AmplitudeVector) -> Result<AmplitudeVector> {
    if circuit.width() != amps.width() {
        return Err(Error::Dimension(format!(
            "circuit has width {} but amplitude vector has width {}",
            circuit.width(),
            amps.width()
        )));
    }
    let mut out = amps.starred.clone();
    circuit.propagate(&mut out);
    AmplitudeVector::from_starred(out)
}

/// Total mean photon number `Σ|α_i|²`.
pub fn mean_photon_number(amps: &AmplitudeVector) -> f64 {
    amps.starred.iter().map(|z| z.norm_sqr()).sum()
}

/// Appends dark modes up to `new_width`.
pub fn pad_vacuum(amps: &AmplitudeVector, new_width: usize) -> Result<AmplitudeVector> {
    if new_width < amps.width() {
        return Err(Error::Dimension(format!(
            "cannot pad width {} down to {new_width}",
            amps.width()
        )));
    }
    let mut out = amps.starred.clone();
    out.resize(new_width, Complex64::new(0.0, 0.0));
    AmplitudeVector::from_starred(out)
}
