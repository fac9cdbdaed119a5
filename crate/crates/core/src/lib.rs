//! Linear-optical circuits acting on products of coherent states.
//!
//! A product of coherent states `|α₁⟩⋯|α_N⟩` sent through a network of
//! beamsplitters and phase shifters leaves as another product `|β₁⟩⋯|β_M⟩`.
//! The starred amplitudes transform linearly, `β* = M·α*`, with `M` unitary
//! for a lossless interferometer or a contraction when only a subset of the
//! output ports of a larger (dilated) interferometer is kept.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: dense complex matrices, SVD, Hermitian square roots.
//! * [`elements`]: beamsplitter and phase shifter matrices.
//! * [`synthesis`]: circuits, triangular-mesh decomposition, unitary dilation.
//! * [`engine`]: amplitude vectors and their propagation.
//! * [`detection`]: threshold photodiodes and seeded click sampling.
//! * [`protocols`]: phase-state generation, restorable database search and
//!   Bell-cat feasibility.
//! * [`io`] and [`cli`]: text formats and the command-line front end.

pub mod cli;
pub mod detection;
pub mod elements;
pub mod engine;
pub mod error;
pub mod io;
pub mod numerics;
pub mod protocols;
pub mod synthesis;

pub use num_complex::Complex64;

pub use crate::detection::{click_probability, sample_clicks, ClickRecord, DetectorModel};
pub use crate::elements::{beamsplitter_matrix, element_embedding, phaseshifter_factor, OpticalElement};
pub use crate::engine::{apply_circuit, apply_matrix, mean_photon_number, pad_vacuum, AmplitudeVector};
pub use crate::error::{Error, Result};
pub use crate::numerics::{is_unitary, psd_sqrt, spectral_norm, svd, ComplexMatrix, Svd};
pub use crate::synthesis::{compile, dilate, invert, reck_decompose, reck_mesh, Circuit, Dilation};
