//! Circuits and their synthesis from target matrices.
//!
//! [`reck_decompose`] turns an `N`×`N` unitary into a triangular mesh of at
//! most `N(N-1)/2` beamsplitters followed by a layer of phase shifters.
//! [`dilate`] embeds a contraction `K` as the upper-left block of a unitary
//! twice its size, which can then be decomposed the same way.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::elements::{element_embedding, OpticalElement};
use crate::error::{Error, Result};
use crate::numerics::{svd, unitarity_residual, ComplexMatrix};

/// An interferometer: `width` modes and elements in the order light meets them.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    width: usize,
    elements: Vec<OpticalElement>,
}

impl Circuit {
    /// Empty circuit on `width` modes.
    pub fn new(width: usize) -> Result<Self> {
        if width == 0 {
            return Err(Error::Dimension("circuit width must be at least 1".into()));
        }
        Ok(Self { width, elements: Vec::new() })
    }

    pub fn with_elements(width: usize, elements: Vec<OpticalElement>) -> Result<Self> {
        let mut c = Self::new(width)?;
        for e in elements {
            c.push(e)?;
        }
        Ok(c)
    }

    /// Appends an element after validating it against the width.
    pub fn push(&mut self, element: OpticalElement) -> Result<()> {
        element.validate(self.width)?;
        self.elements.push(element);
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn elements(&self) -> &[OpticalElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn beamsplitter_count(&self) -> usize {
        self.elements.iter().filter(|e| e.is_beamsplitter()).count()
    }

    pub fn phaseshifter_count(&self) -> usize {
        self.len() - self.beamsplitter_count()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Circuit) -> Result<Circuit> {
        if self.width != next.width {
            return Err(Error::Dimension(format!(
                "cannot chain circuits of width {} and {}",
                self.width, next.width
            )));
        }
        let mut elements = self.elements.clone();
        elements.extend_from_slice(&next.elements);
        Ok(Circuit { width: self.width, elements })
    }

    /// Runs every element over a starred amplitude vector of matching width.
    pub(crate) fn propagate(&self, amps: &mut [Complex64]) {
        debug_assert_eq!(amps.len(), self.width);
        for e in &self.elements {
            e.apply_in_place(amps);
        }
    }
}

/// The circuit's matrix `E_k ⋯ E_2 · E_1`.
pub fn compile(circuit: &Circuit) -> ComplexMatrix {
    let n = circuit.width();
    let mut m = ComplexMatrix::zeros(n, n);
    let mut column = vec![Complex64::new(0.0, 0.0); n];
    for j in 0..n {
        column.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        column[j] = Complex64::new(1.0, 0.0);
        circuit.propagate(&mut column);
        for (i, z) in column.iter().enumerate() {
            m[(i, j)] = *z;
        }
    }
    m
}

/// Same as [`compile`], built by explicit products of element embeddings.
pub fn compile_by_embedding(circuit: &Circuit) -> ComplexMatrix {
    circuit.elements().iter().fold(ComplexMatrix::identity(circuit.width()), |acc, e| {
        &element_embedding(e, circuit.width()).expect("validated on push") * &acc
    })
}

/// Reverses the circuit and inverts each element, realising `compile(c)†`.
pub fn invert(circuit: &Circuit) -> Circuit {
    Circuit {
        width: circuit.width,
        elements: circuit.elements.iter().rev().map(OpticalElement::inverse).collect(),
    }
}

/// Decomposes a unitary into beamsplitters and a trailing phase layer.
///
/// The last row of the working matrix is cleared column by column by
/// right-multiplying with beamsplitters on modes `(j, N-1)`, leaving a unit
/// modulus entry in the corner; the procedure then recurses on the leading
/// `(N-1)`×`(N-1)` block. Entries already below `tol` are skipped. What
/// remains is diagonal and is emitted as phase shifters, including an overall
/// phase, so that `compile` of the result equals `u` itself.
pub fn reck_decompose(u: &ComplexMatrix, tol: f64) -> Result<Circuit> {
    reck(u, tol, false)
}

/// Like [`reck_decompose`], but every position of the triangular mesh gets a
/// beamsplitter: entries that are already zero are kept as `θ = 0` bars. An
/// `N`-mode unitary therefore always yields `N(N-1)/2` beamsplitters, which is
/// the layout of a fixed, programmable interferometer.
pub fn reck_mesh(u: &ComplexMatrix, tol: f64) -> Result<Circuit> {
    reck(u, tol, true)
}

fn reck(u: &ComplexMatrix, tol: f64, full_mesh: bool) -> Result<Circuit> {
    if !u.is_square() {
        return Err(Error::NotSquare { rows: u.rows(), cols: u.cols() });
    }
    let residual = unitarity_residual(u)?;
    if residual > tol {
        return Err(Error::NotUnitary { residual });
    }

    let n = u.rows();
    let mut work = u.clone();
    let mut eliminators = Vec::with_capacity(n * (n - 1) / 2);
    for last in (1..n).rev() {
        for col in 0..last {
            let x = work[(last, col)];
            if x.norm() <= tol {
                if full_mesh {
                    eliminators.push(OpticalElement::beamsplitter(col, last, 0.0, 0.0));
                }
                continue;
            }
            let y = work[(last, last)];
            let theta = x.norm().atan2(y.norm());
            let arg_y = if y.norm() > 0.0 { y.arg() } else { 0.0 };
            let phi = FRAC_PI_2 + x.arg() - arg_y;
            let bs = OpticalElement::beamsplitter(col, last, theta, phi);
            right_multiply(&mut work, &bs);
            eliminators.push(bs);
        }
    }

    // u · T_1 · T_2 ⋯ T_m = D, so u = D · T_m† ⋯ T_1†: T_1† is met first.
    let mut circuit = Circuit::new(n)?;
    for t in &eliminators {
        circuit.push(t.inverse())?;
    }
    for k in 0..n {
        let phi = -work[(k, k)].arg();
        if phi.abs() > tol {
            circuit.push(OpticalElement::phaseshifter(k, phi))?;
        }
    }
    Ok(circuit)
}

/// `work ← work · T` for a beamsplitter `T`; only two columns change.
fn right_multiply(work: &mut ComplexMatrix, bs: &OpticalElement) {
    let OpticalElement::BeamSplitter { modes: (a, b), theta, phi } = *bs else {
        unreachable!("only beamsplitters are used for elimination");
    };
    let t = crate::elements::beamsplitter_matrix(theta, phi);
    for r in 0..work.rows() {
        let (wa, wb) = (work[(r, a)], work[(r, b)]);
        work[(r, a)] = wa * t[(0, 0)] + wb * t[(1, 0)];
        work[(r, b)] = wa * t[(0, 1)] + wb * t[(1, 1)];
    }
}

/// A contraction embedded in a unitary on `2·max(M, N)` modes.
#[derive(Clone, Debug)]
pub struct Dilation {
    /// `[[K, -(I-KK†)^{1/2}], [(I-K†K)^{1/2}, K†]]` with `K` zero-padded to square.
    pub unitary: ComplexMatrix,
    /// Rows `M` of the original contraction.
    pub rows: usize,
    /// Columns `N` of the original contraction.
    pub cols: usize,
}

impl Dilation {
    /// Total number of modes of the dilated interferometer.
    pub fn width(&self) -> usize {
        self.unitary.rows()
    }

    /// Side length of the padded contraction block.
    pub fn block_size(&self) -> usize {
        self.width() / 2
    }

    /// Input ports fed with the `N` source amplitudes; the rest are dark.
    pub fn input_ports(&self) -> Vec<usize> {
        (0..self.cols).collect()
    }

    /// Output ports that carry the `M` components of `K·α*`.
    pub fn output_ports(&self) -> Vec<usize> {
        (0..self.rows).collect()
    }
}

/// Embeds a contraction `k` in a unitary of twice its (padded) size.
///
/// A non-square `k` is zero-padded to `max(M, N)` square with `k` in the
/// upper-left corner. Both square roots are built from one SVD of the padded
/// block, `K = V·D·W`, as `V·√(1-D²)·V†` and `W†·√(1-D²)·W`; this keeps the
/// off-diagonal blocks consistent even when singular values sit at 1.
pub fn dilate(k: &ComplexMatrix, tol: f64) -> Result<Dilation> {
    let size = k.rows().max(k.cols());
    let padded = k.zero_padded(size, size);
    let dec = svd(&padded)?;
    let norm = dec.singular_values[0];
    if norm > 1.0 + tol {
        return Err(Error::NotContraction { norm });
    }

    let defects: Vec<f64> =
        dec.singular_values.iter().map(|&d| (1.0 - d * d).max(0.0).sqrt()).collect();
    let defect = ComplexMatrix::from_real_diagonal(&defects);
    let (v, w) = (&dec.left, &dec.right);
    let row_defect = &(v * &defect) * &v.adjoint();
    let col_defect = &(&w.adjoint() * &defect) * w;

    let mut unitary = ComplexMatrix::zeros(2 * size, 2 * size);
    unitary.set_block(0, 0, &padded);
    unitary.set_block(0, size, &-&row_defect);
    unitary.set_block(size, 0, &col_defect);
    unitary.set_block(size, size, &padded.adjoint());
    Ok(Dilation { unitary, rows: k.rows(), cols: k.cols() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elements::beamsplitter_matrix;
    use crate::numerics::{is_unitary, psd_sqrt};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_4;

    fn comparison_n2(scale: f64) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            vec![0.0, 0.0, 0.0],
            vec![scale, -scale, 0.0],
            vec![scale, 0.0, -scale],
        ])
        .unwrap()
    }

    fn random_circuit(width: usize, len: usize, rng: &mut ChaCha8Rng) -> Circuit {
        let mut c = Circuit::new(width).unwrap();
        for _ in 0..len {
            let a = rng.random_range(0..width);
            if width > 1 && rng.random_bool(0.7) {
                let mut b = rng.random_range(0..width - 1);
                if b >= a {
                    b += 1;
                }
                c.push(OpticalElement::beamsplitter(a, b, rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)))
                    .unwrap();
            } else {
                c.push(OpticalElement::phaseshifter(a, rng.random_range(-3.0..3.0))).unwrap();
            }
        }
        c
    }

    #[test]
    fn compile_examples() {
        let c = Circuit::new(3).unwrap();
        assert_eq!(compile(&c), ComplexMatrix::identity(3));

        let c = Circuit::with_elements(2, vec![OpticalElement::beamsplitter(0, 1, FRAC_PI_4, 0.0)]).unwrap();
        assert!(compile(&c).max_abs_diff(&beamsplitter_matrix(FRAC_PI_4, 0.0)) < 1e-15);

        let c = Circuit::with_elements(
            2,
            vec![OpticalElement::phaseshifter(1, 0.8), OpticalElement::phaseshifter(1, -0.8)],
        )
        .unwrap();
        assert!(compile(&c).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);
    }

    #[test]
    fn push_validates() {
        let mut c = Circuit::new(2).unwrap();
        assert!(c.push(OpticalElement::phaseshifter(2, 0.0)).is_err());
        assert!(Circuit::new(0).is_err());
    }

    #[test]
    fn compile_matches_embedding_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = random_circuit(5, 30, &mut rng);
        assert!(compile(&c).max_abs_diff(&compile_by_embedding(&c)) < 1e-13);
    }

    #[test]
    fn compile_is_homomorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let c1 = random_circuit(4, 10, &mut rng);
        let c2 = random_circuit(4, 10, &mut rng);
        let joined = compile(&c1.then(&c2).unwrap());
        assert!(joined.max_abs_diff(&(&compile(&c2) * &compile(&c1))) < 1e-13);
        assert!(c1.then(&Circuit::new(3).unwrap()).is_err());
    }

    #[test]
    fn invert_examples() {
        let c = Circuit::with_elements(1, vec![OpticalElement::phaseshifter(0, 0.3)]).unwrap();
        assert_eq!(invert(&c).elements(), &[OpticalElement::phaseshifter(0, -0.3)]);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = random_circuit(4, 6, &mut rng);
        assert_eq!(invert(&invert(&c)), c);
        let prod = &compile(&invert(&c)) * &compile(&c);
        assert!(prod.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-10);
        assert!(compile(&invert(&c)).max_abs_diff(&compile(&c).adjoint()) < 1e-10);
    }

    #[test]
    fn reck_identity_has_no_elements() {
        for n in 1..6 {
            let c = reck_decompose(&ComplexMatrix::identity(n), 1e-10).unwrap();
            assert!(c.is_empty());
        }
    }

    #[test]
    fn full_mesh_fills_every_position() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..7 {
            let id = reck_mesh(&ComplexMatrix::identity(n), 1e-10).unwrap();
            assert_eq!(id.beamsplitter_count(), n * (n - 1) / 2);
            assert!(compile(&id).max_abs_diff(&ComplexMatrix::identity(n)) == 0.0);
            let u = ComplexMatrix::random_unitary(n, &mut rng);
            let c = reck_mesh(&u, 1e-10).unwrap();
            assert_eq!(c.beamsplitter_count(), n * (n - 1) / 2);
            assert!(compile(&c).max_abs_diff(&u) < 1e-10);
        }
    }

    #[test]
    fn reck_single_beamsplitter() {
        let target = beamsplitter_matrix(0.7, 1.1);
        let c = reck_decompose(&target, 1e-10).unwrap();
        assert_eq!(c.beamsplitter_count(), 1);
        assert!(compile(&c).max_abs_diff(&target) < 1e-12);
    }

    #[test]
    fn reck_random_8x8() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let u = ComplexMatrix::random_unitary(8, &mut rng);
        let c = reck_decompose(&u, 1e-10).unwrap();
        assert!(c.beamsplitter_count() <= 28);
        assert!(c.phaseshifter_count() <= 8);
        assert!(compile(&c).max_abs_diff(&u) < 1e-9);
    }

    #[test]
    fn reck_rejects_non_unitary() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, 0.5]);
        match reck_decompose(&m, 1e-10) {
            Err(Error::NotUnitary { residual }) => assert!((residual - 0.75).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(reck_decompose(&ComplexMatrix::zeros(2, 3), 1e-10), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn reck_round_trip_sizes_2_to_12() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for trial in 0..100 {
            let n = 2 + trial % 11;
            let u = ComplexMatrix::random_unitary(n, &mut rng);
            let c = reck_decompose(&u, 1e-10).unwrap();
            assert!(compile(&c).max_abs_diff(&u) <= 1e-9);
            assert!(c.beamsplitter_count() <= n * (n - 1) / 2);
        }
    }

    #[test]
    fn dilate_scalars() {
        let d = dilate(&ComplexMatrix::from_real_diagonal(&[1.0]), 1e-10).unwrap();
        assert!(d.unitary.max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);

        let cval = 0.6;
        let d = dilate(&ComplexMatrix::from_real_diagonal(&[cval]), 1e-10).unwrap();
        let s = (1.0 - cval * cval).sqrt();
        let expected = ComplexMatrix::from_real_rows(&[vec![cval, -s], vec![s, cval]]).unwrap();
        assert!(d.unitary.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn dilate_comparison_map() {
        let k = comparison_n2(1.0 / 3f64.sqrt());
        let d = dilate(&k, 1e-10).unwrap();
        assert_eq!(d.width(), 6);
        assert_eq!(d.unitary.block(0, 0, 3, 3), k);
        assert!(is_unitary(&d.unitary, 1e-10).unwrap());
        assert_eq!(d.output_ports(), vec![0, 1, 2]);

        match dilate(&comparison_n2(1.0), 1e-10) {
            Err(Error::NotContraction { norm }) => assert!((norm - 3f64.sqrt()).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dilate_rectangular_pads_with_zeros() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for (m, n) in [(2, 4), (4, 2), (1, 3)] {
            let g = ComplexMatrix::random_gaussian(m, n, &mut rng);
            let k = g.scale(Complex64::new(0.9 / crate::numerics::spectral_norm(&g).unwrap(), 0.0));
            let d = dilate(&k, 1e-10).unwrap();
            let s = m.max(n);
            assert_eq!(d.width(), 2 * s);
            assert_eq!(d.unitary.block(0, 0, m, n), k);
            assert!(d.unitary.block(0, 0, s, s).max_abs_diff(&k.zero_padded(s, s)) == 0.0);
            assert!(is_unitary(&d.unitary, 1e-10).unwrap());
            assert_eq!(d.input_ports().len(), n);
            assert_eq!(d.output_ports().len(), m);
        }
    }

    #[test]
    fn dilation_blocks_match_psd_square_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let n = rng.random_range(1..6);
            let g = ComplexMatrix::random_gaussian(n, n, &mut rng);
            let target = rng.random_range(0.1..0.95);
            let k = g.scale(Complex64::new(target / crate::numerics::spectral_norm(&g).unwrap(), 0.0));
            let d = dilate(&k, 1e-10).unwrap();
            let id = ComplexMatrix::identity(n);
            let row = psd_sqrt(&(&id - &(&k * &k.adjoint())), 1e-12).unwrap();
            let col = psd_sqrt(&(&id - &(&k.adjoint() * &k)), 1e-12).unwrap();
            assert!(d.unitary.block(0, n, n, n).max_abs_diff(&-&row) < 1e-10);
            assert!(d.unitary.block(n, 0, n, n).max_abs_diff(&col) < 1e-10);
            assert!(d.unitary.block(n, n, n, n).max_abs_diff(&k.adjoint()) < 1e-10);
        }
    }
}
