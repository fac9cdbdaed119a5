//! Beamsplitters and phase shifters.
//!
//! Every matrix here acts on the vector of *starred* amplitudes
//! `(α₁*, …, α_N*)`. A beamsplitter uses the same 2×2 matrix for the
//! creation operators and for the starred amplitudes; a phase shifter that
//! multiplies the creation operator by `e^{iφ}` multiplies the starred
//! amplitude by `e^{-iφ}`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::ComplexMatrix;

/// One physical element of an interferometer. Mode indices are 0-based.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OpticalElement {
    /// Two-mode coupler with reflectivity `sin²θ` and relative phase `φ`.
    /// The first mode is the row/column of `cosθ` that picks up
    /// `i·e^{-iφ}·sinθ` from the second.
    BeamSplitter { modes: (usize, usize), theta: f64, phi: f64 },
    PhaseShifter { mode: usize, phi: f64 },
}

impl OpticalElement {
    pub fn beamsplitter(first: usize, second: usize, theta: f64, phi: f64) -> Self {
        OpticalElement::BeamSplitter { modes: (first, second), theta, phi }
    }

    pub fn phaseshifter(mode: usize, phi: f64) -> Self {
        OpticalElement::PhaseShifter { mode, phi }
    }

    pub fn is_beamsplitter(&self) -> bool {
        matches!(self, OpticalElement::BeamSplitter { .. })
    }

    /// Largest mode index touched by the element.
    pub fn max_mode(&self) -> usize {
        match *self {
            OpticalElement::BeamSplitter { modes: (a, b), .. } => a.max(b),
            OpticalElement::PhaseShifter { mode, .. } => mode,
        }
    }

    /// Checks mode bounds, mode distinctness and finite angles.
    pub fn validate(&self, width: usize) -> Result<()> {
        let mode = self.max_mode();
        if mode >= width {
            return Err(Error::ModeOutOfRange { mode, width });
        }
        match *self {
            OpticalElement::BeamSplitter { modes: (a, b), theta, phi } => {
                if a == b {
                    return Err(Error::RepeatedMode(a));
                }
                if !theta.is_finite() || !phi.is_finite() {
                    return Err(Error::InvalidParameter("beamsplitter angles must be finite".into()));
                }
            }
            OpticalElement::PhaseShifter { phi, .. } => {
                if !phi.is_finite() {
                    return Err(Error::InvalidParameter("phase must be finite".into()));
                }
            }
        }
        Ok(())
    }

    /// The element that undoes this one.
    pub fn inverse(&self) -> Self {
        match *self {
            OpticalElement::BeamSplitter { modes, theta, phi } => {
                OpticalElement::BeamSplitter { modes, theta: -theta, phi }
            }
            OpticalElement::PhaseShifter { mode, phi } => OpticalElement::PhaseShifter { mode, phi: -phi },
        }
    }

    /// Applies the element in place to a vector of starred amplitudes.
    ///
    /// Callers must have validated the element against the vector width.
    pub fn apply_in_place(&self, amps: &mut [Complex64]) {
        match *self {
            OpticalElement::BeamSplitter { modes: (a, b), theta, phi } => {
                let [[m00, m01], [m10, m11]] = beamsplitter_entries(theta, phi);
                let (x, y) = (amps[a], amps[b]);
                amps[a] = m00 * x + m01 * y;
                amps[b] = m10 * x + m11 * y;
            }
            OpticalElement::PhaseShifter { mode, phi } => {
                amps[mode] *= phaseshifter_factor(phi);
            }
        }
    }
}

fn beamsplitter_entries(theta: f64, phi: f64) -> [[Complex64; 2]; 2] {
    let (s, c) = theta.sin_cos();
    let i = Complex64::i();
    [
        [Complex64::new(c, 0.0), i * Complex64::from_polar(s, -phi)],
        [i * Complex64::from_polar(s, phi), Complex64::new(c, 0.0)],
    ]
}

/// `[[cosθ, i·e^{-iφ}·sinθ], [i·e^{iφ}·sinθ, cosθ]]`
pub fn beamsplitter_matrix(theta: f64, phi: f64) -> ComplexMatrix {
    let [r0, r1] = beamsplitter_entries(theta, phi);
    ComplexMatrix::new(2, 2, vec![r0[0], r0[1], r1[0], r1[1]]).expect("finite angles")
}

/// Factor `e^{-iφ}` applied to the starred amplitude by a phase shifter `φ`.
pub fn phaseshifter_factor(phi: f64) -> Complex64 {
    Complex64::from_polar(1.0, -phi)
}

/// The element's action as a `width`×`width` matrix: identity outside the
/// element's modes.
pub fn element_embedding(element: &OpticalElement, width: usize) -> Result<ComplexMatrix> {
    element.validate(width)?;
    let mut m = ComplexMatrix::identity(width);
    match *element {
        OpticalElement::BeamSplitter { modes: (a, b), theta, phi } => {
            let [[m00, m01], [m10, m11]] = beamsplitter_entries(theta, phi);
            m[(a, a)] = m00;
            m[(a, b)] = m01;
            m[(b, a)] = m10;
            m[(b, b)] = m11;
        }
        OpticalElement::PhaseShifter { mode, phi } => {
            m[(mode, mode)] = phaseshifter_factor(phi);
        }
    }
    Ok(m)
}
