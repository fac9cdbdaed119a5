//! Dense complex linear algebra.
//!
//! [`ComplexMatrix`] is a thin value type over a `nalgebra` dense matrix that
//! enforces non-empty dimensions and finite entries. Singular value and
//! Hermitian eigen decompositions delegate to `nalgebra`; everything the rest
//! of the crate relies on (reconstruction, ordering, clipping) is pinned here.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Default tolerance for unitarity checks.
pub const UNITARY_TOL: f64 = 1e-10;
/// Default tolerance below which negative eigenvalues are clipped to zero.
pub const PSD_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Dense complex matrix with at least one row and one column.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("empty matrix {rows}x{cols}")));
        }
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { inner: DMatrix::from_row_slice(rows, cols, &entries) })
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let rows: Vec<Vec<Complex64>> =
            rows.iter().map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect()).collect();
        Self::from_rows(&rows)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "empty matrix");
        Self { inner: DMatrix::from_element(rows, cols, ZERO) }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n > 0, "empty matrix");
        Self { inner: DMatrix::identity(n, n) }
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<Complex64> = diag.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_diagonal(&d)
    }

    /// Wraps a `nalgebra` matrix, checking the same invariants as [`Self::new`].
    pub fn from_nalgebra(inner: DMatrix<Complex64>) -> Result<Self> {
        if inner.nrows() == 0 || inner.ncols() == 0 {
            return Err(Error::Dimension("empty matrix".into()));
        }
        if inner.iter().any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { inner })
    }

    pub fn as_nalgebra(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<Complex64> {
        self.inner.transpose().iter().copied().collect()
    }

    pub fn row(&self, i: usize) -> Vec<Complex64> {
        (0..self.cols()).map(|j| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.rows()).map(|i| self.row(i)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self { inner: self.inner.adjoint() }
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> Self {
        Self { inner: self.inner.map(|z| z.conj()) }
    }

    pub fn transpose(&self) -> Self {
        Self { inner: self.inner.transpose() }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self { inner: &self.inner * factor }
    }

    /// Matrix product, checking inner dimensions.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                rhs.rows(),
                rhs.cols()
            )));
        }
        Ok(Self { inner: &self.inner * &rhs.inner })
    }

    /// Matrix-vector product, checking dimensions.
    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if self.cols() != v.len() {
            return Err(Error::Dimension(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows(),
                self.cols(),
                v.len()
            )));
        }
        Ok((0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    /// Copy of the `nrows`×`ncols` block starting at `(row, col)`.
    pub fn block(&self, row: usize, col: usize, nrows: usize, ncols: usize) -> Self {
        Self { inner: self.inner.view((row, col), (nrows, ncols)).into_owned() }
    }

    /// Overwrites the block starting at `(row, col)` with `src`.
    pub fn set_block(&mut self, row: usize, col: usize, src: &Self) {
        self.inner.view_mut((row, col), (src.rows(), src.cols())).copy_from(&src.inner);
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows() != other.rows() || self.cols() != other.cols() {
            return f64::INFINITY;
        }
        self.inner.iter().zip(other.inner.iter()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Embeds `self` as the upper-left block of a zero matrix of the given shape.
    pub fn zero_padded(&self, rows: usize, cols: usize) -> Self {
        assert!(rows >= self.rows() && cols >= self.cols());
        let mut out = Self::zeros(rows, cols);
        out.set_block(0, 0, self);
        out
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows() + other.rows(), self.cols() + other.cols());
        out.set_block(0, 0, self);
        out.set_block(self.rows(), self.cols(), other);
        out
    }

    /// Haar-distributed random unitary from the QR decomposition of a complex
    /// Ginibre matrix, with the diagonal phases of `R` folded back into `Q`.
    pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let g = Self::random_gaussian(n, n, rng);
        let qr = g.inner.qr();
        let (mut q, r) = qr.unpack();
        for j in 0..n {
            let d = r[(j, j)];
            let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
        Self { inner: q }
    }

    /// Matrix with independent standard complex normal entries.
    pub fn random_gaussian<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Self {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        let inner = DMatrix::from_fn(rows, cols, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        });
        Self { inner }
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows(), cols: self.cols() })
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, idx: (usize, usize)) -> &Complex64 {
        &self.inner[idx]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, idx: (usize, usize)) -> &mut Complex64 {
        &mut self.inner[idx]
    }
}

/// Panics on dimension mismatch; use [`ComplexMatrix::matmul`] for a checked product.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner + &rhs.inner }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix { inner: &self.inner - &rhs.inner }
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        ComplexMatrix { inner: -&self.inner }
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows(), self.cols())?;
        for i in 0..self.rows() {
            write!(f, " ")?;
            for j in 0..self.cols() {
                let z = self[(i, j)];
                write!(f, " {:+.6}{:+.6}i", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// `max |M·M† - I|` for a square matrix.
pub fn unitarity_residual(m: &ComplexMatrix) -> Result<f64> {
    m.require_square()?;
    let prod = m * &m.adjoint();
    Ok(prod.max_abs_diff(&ComplexMatrix::identity(m.rows())))
}

/// True iff `max |M·M† - I| <= tol`.
pub fn is_unitary(m: &ComplexMatrix, tol: f64) -> Result<bool> {
    Ok(unitarity_residual(m)? <= tol)
}

/// `max |M - M†|` for a square matrix.
pub fn hermiticity_residual(m: &ComplexMatrix) -> Result<f64> {
    m.require_square()?;
    Ok(m.max_abs_diff(&m.adjoint()))
}

/// Singular value decomposition `M = left · diag(singular_values) · right`.
///
/// For an `m×n` input with `k = min(m, n)`, `left` is `m×k` with orthonormal
/// columns and `right` is `k×n` with orthonormal rows; both are unitary when
/// `M` is square. Singular values are sorted in descending order; ties keep
/// the order in which the Jacobi sweeps left them.
#[derive(Clone, Debug)]
pub struct Svd {
    pub left: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub right: ComplexMatrix,
}

impl Svd {
    pub fn reconstruct(&self) -> ComplexMatrix {
        let d = ComplexMatrix::from_real_diagonal(&self.singular_values);
        &(&self.left * &d) * &self.right
    }
}

const JACOBI_MAX_SWEEPS: usize = 100;

/// One-sided (Hestenes) Jacobi on the columns of a tall matrix: returns the
/// orthogonalised columns `W = A·V` and the accumulated unitary `V`.
fn one_sided_jacobi(a: &DMatrix<Complex64>) -> Result<(DMatrix<Complex64>, DMatrix<Complex64>)> {
    let (m, n) = a.shape();
    let mut w = a.clone();
    let mut v = DMatrix::<Complex64>::identity(n, n);
    // columns below this are numerically zero and left alone
    let null = (f64::EPSILON * a.norm()).powi(2);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for r in 0..m {
                    let (x, y) = (w[(r, p)], w[(r, q)]);
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * y;
                }
                let g = gamma.norm();
                if alpha <= null || beta <= null || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for mat in [&mut w, &mut v] {
                    for r in 0..mat.nrows() {
                        let x = mat[(r, p)];
                        let y = mat[(r, q)] * phase.conj();
                        mat[(r, p)] = x * c - y * s;
                        mat[(r, q)] = x * s + y * c;
                    }
                }
            }
        }
        if !rotated {
            return Ok((w, v));
        }
    }
    Err(Error::InvalidParameter("SVD failed to converge".into()))
}

/// Fills the columns of `u` not flagged in `known` so that all columns are
/// orthonormal.
fn complete_basis(u: &mut DMatrix<Complex64>, known: &[bool]) {
    let m = u.nrows();
    let mut candidates = 0..m;
    for j in 0..known.len() {
        if known[j] {
            continue;
        }
        loop {
            let e = candidates.next().expect("a full basis always exists");
            let mut x = DVector::<Complex64>::zeros(m);
            x[e] = Complex64::new(1.0, 0.0);
            // two Gram-Schmidt passes against everything filled so far
            for _ in 0..2 {
                for (k, &filled) in known.iter().enumerate() {
                    if filled || k < j {
                        let col = u.column(k);
                        let proj = col.dotc(&x);
                        x -= col * proj;
                    }
                }
            }
            let norm = x.norm();
            if norm > 0.5 {
                u.set_column(j, &(x / Complex64::new(norm, 0.0)));
                break;
            }
        }
    }
}

fn svd_tall(a: &DMatrix<Complex64>) -> Result<(DMatrix<Complex64>, Vec<f64>, DMatrix<Complex64>)> {
    let (m, n) = a.shape();
    let (w, v) = one_sided_jacobi(a)?;
    let norms: Vec<f64> = (0..n).map(|j| w.column(j).norm()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    // stable: ties keep column order
    order.sort_by(|&x, &y| norms[y].total_cmp(&norms[x]));
    let scale = norms.iter().cloned().fold(0.0, f64::max);
    let cutoff = scale * f64::EPSILON * (m.max(n) as f64);

    let mut u = DMatrix::<Complex64>::zeros(m, n);
    let mut known = vec![false; n];
    for (j, &i) in order.iter().enumerate() {
        if norms[i] > cutoff && norms[i] > 0.0 {
            u.set_column(j, &(w.column(i) / Complex64::new(norms[i], 0.0)));
            known[j] = true;
        }
    }
    let values: Vec<f64> = order.iter().map(|&i| norms[i]).collect();
    let v_sorted = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    if known.iter().any(|k| !k) {
        complete_basis(&mut u, &known);
    }
    Ok((u, values, v_sorted))
}

pub fn svd(m: &ComplexMatrix) -> Result<Svd> {
    let (left, singular_values, right) = if m.rows() >= m.cols() {
        let (u, s, v) = svd_tall(&m.inner)?;
        (u, s, v.adjoint())
    } else {
        // M† = U S V†  =>  M = V S U†
        let (u, s, v) = svd_tall(&m.inner.adjoint())?;
        (v, s, u.adjoint())
    };
    Ok(Svd {
        left: ComplexMatrix { inner: left },
        singular_values,
        right: ComplexMatrix { inner: right },
    })
}

/// Largest singular value.
pub fn spectral_norm(m: &ComplexMatrix) -> Result<f64> {
    Ok(svd(m)?.singular_values[0])
}

/// Cyclic complex Jacobi eigenvalue iteration on an exactly Hermitian matrix.
fn jacobi_eigen(mut a: DMatrix<Complex64>) -> Result<(Vec<f64>, DMatrix<Complex64>)> {
    let n = a.nrows();
    let mut v = DMatrix::<Complex64>::identity(n, n);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j)
            .map(|ij| a[ij].norm_sqr())
            .sum();
        let diag: f64 = (0..n).map(|i| a[(i, i)].norm_sqr()).sum();
        if off == 0.0 || off.sqrt() <= f64::EPSILON * 1e-2 * diag.sqrt() {
            let values = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok((values, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let g = apq.norm();
                if g == 0.0 {
                    continue;
                }
                // diag(1, e^{-i arg a_pq}) makes the pivot real, then a real rotation
                let phase = apq / g;
                let zeta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * g);
                let t = if zeta == 0.0 { 1.0 } else { zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt()) };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // columns: A ← A J, V ← V J
                for mat in [&mut a, &mut v] {
                    for r in 0..n {
                        let x = mat[(r, p)];
                        let y = mat[(r, q)] * phase.conj();
                        mat[(r, p)] = x * c - y * s;
                        mat[(r, q)] = x * s + y * c;
                    }
                }
                // rows: A ← J† A
                for col in 0..n {
                    let x = a[(p, col)];
                    let y = a[(q, col)] * phase;
                    a[(p, col)] = x * c - y * s;
                    a[(q, col)] = x * s + y * c;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
            }
        }
    }
    Err(Error::InvalidParameter("eigendecomposition failed to converge".into()))
}

/// Eigendecomposition of a Hermitian matrix: real eigenvalues in ascending
/// order and the matching orthonormal eigenvectors as columns.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: f64) -> Result<(Vec<f64>, ComplexMatrix)> {
    let residual = hermiticity_residual(m)?;
    if residual > tol {
        return Err(Error::NotHermitian { residual });
    }
    // symmetrise so the iteration sees an exactly Hermitian input
    let h = (&m.inner + m.inner.adjoint()) * Complex64::new(0.5, 0.0);
    let (eigenvalues, eigenvectors) = jacobi_eigen(h)?;
    let n = m.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]));
    let values = order.iter().map(|&i| eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eigenvectors[(r, order[c])]);
    Ok((values, ComplexMatrix { inner: vectors }))
}

/// Principal square root of a Hermitian positive semidefinite matrix.
///
/// Eigenvalues in `[-tol, 0)` are treated as zero; anything more negative is
/// rejected.
pub fn psd_sqrt(m: &ComplexMatrix, tol: f64) -> Result<ComplexMatrix> {
    let (values, vectors) = hermitian_eigen(m, tol.max(PSD_TOL))?;
    if let Some(&lowest) = values.first() {
        if lowest < -tol {
            return Err(Error::NotPsd { eigenvalue: lowest });
        }
    }
    let roots: Vec<f64> = values.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let d = ComplexMatrix::from_real_diagonal(&roots);
    let s = &(&vectors * &d) * &vectors.adjoint();
    // the product is Hermitian up to rounding; make it exact
    Ok(ComplexMatrix { inner: (&s.inner + s.inner.adjoint()) * Complex64::new(0.5, 0.0) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn comparison_n2(scale: f64) -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[
            vec![0.0, 0.0, 0.0],
            vec![scale, -scale, 0.0],
            vec![scale, 0.0, -scale],
        ])
        .unwrap()
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(matches!(ComplexMatrix::new(0, 2, vec![]), Err(Error::Dimension(_))));
        assert!(matches!(ComplexMatrix::new(2, 2, vec![c(1.0, 0.0); 3]), Err(Error::Dimension(_))));
        assert!(matches!(
            ComplexMatrix::new(1, 1, vec![c(f64::NAN, 0.0)]),
            Err(Error::NonFinite)
        ));
    }

    #[test]
    fn unitary_checks() {
        assert!(is_unitary(&ComplexMatrix::identity(4), 1e-12).unwrap());
        assert!(!is_unitary(&ComplexMatrix::from_real_diagonal(&[1.0, 0.5]), 1e-10).unwrap());
        let rect = ComplexMatrix::zeros(2, 3);
        assert!(matches!(is_unitary(&rect, 1e-10), Err(Error::NotSquare { rows: 2, cols: 3 })));
    }

    #[test]
    fn svd_examples() {
        let d = svd(&ComplexMatrix::from_real_diagonal(&[3.0, 1.0])).unwrap();
        assert!((d.singular_values[0] - 3.0).abs() < 1e-14);
        assert!((d.singular_values[1] - 1.0).abs() < 1e-14);

        // Gram matrix of rows (1,-1,0),(1,0,-1) is [[2,1],[1,2]]: eigenvalues 3, 1
        let d = svd(&comparison_n2(1.0)).unwrap();
        assert!((d.singular_values[0] - 3f64.sqrt()).abs() < 1e-12);
        assert!((d.singular_values[1] - 1.0).abs() < 1e-12);
        assert!(d.singular_values[2].abs() < 1e-12);

        let d = svd(&ComplexMatrix::new(1, 1, vec![c(0.0, -2.0)]).unwrap()).unwrap();
        assert!((d.singular_values[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn svd_rectangular_is_thin() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (r, cl) in [(2, 5), (5, 2), (3, 3)] {
            let m = ComplexMatrix::random_gaussian(r, cl, &mut rng);
            let d = svd(&m).unwrap();
            assert_eq!(d.singular_values.len(), r.min(cl));
            assert!(d.reconstruct().max_abs_diff(&m) < 1e-12);
            let gram = &d.left.adjoint() * &d.left;
            assert!(gram.max_abs_diff(&ComplexMatrix::identity(r.min(cl))) < 1e-12);
        }
    }

    #[test]
    fn spectral_norm_examples() {
        assert!((spectral_norm(&ComplexMatrix::identity(5)).unwrap() - 1.0).abs() < 1e-14);
        let k = comparison_n2(1.0 / 3f64.sqrt());
        assert!((spectral_norm(&k).unwrap() - 1.0).abs() < 1e-12);
        let k = ComplexMatrix::from_real_rows(&[vec![-1.0, 1.0], vec![-1.0, 1.0]]).unwrap();
        assert!((spectral_norm(&k).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn psd_sqrt_examples() {
        let z = ComplexMatrix::zeros(3, 3);
        assert!(psd_sqrt(&z, PSD_TOL).unwrap().max_abs() < 1e-15);

        let s = psd_sqrt(&ComplexMatrix::from_real_diagonal(&[4.0, 1.0]), PSD_TOL).unwrap();
        assert!(s.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[2.0, 1.0])) < 1e-14);

        let k = comparison_n2(1.0 / 3f64.sqrt());
        let m = &ComplexMatrix::identity(3) - &(&k * &k.adjoint());
        let s = psd_sqrt(&m, PSD_TOL).unwrap();
        assert!((&s * &s).max_abs_diff(&m) < 1e-11);
        assert!(hermiticity_residual(&s).unwrap() == 0.0);
    }

    #[test]
    fn psd_sqrt_rejects_negative_and_non_hermitian() {
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -1e-3]);
        assert!(matches!(psd_sqrt(&m, PSD_TOL), Err(Error::NotPsd { .. })));
        // within tolerance: clipped
        let m = ComplexMatrix::from_real_diagonal(&[1.0, -1e-13]);
        let s = psd_sqrt(&m, PSD_TOL).unwrap();
        assert_eq!(s[(1, 1)], c(0.0, 0.0));
        let m = ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(0.0, 1.0)], vec![c(0.0, 1.0), c(1.0, 0.0)]])
            .unwrap();
        assert!(matches!(psd_sqrt(&m, PSD_TOL), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..10 {
            let u = ComplexMatrix::random_unitary(n, &mut rng);
            let v = ComplexMatrix::random_unitary(n, &mut rng);
            assert!(is_unitary(&u, 1e-12).unwrap());
            assert!(is_unitary(&(&u * &v), 1e-12).unwrap());
        }
    }

    #[test]
    fn block_helpers() {
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let s = a.direct_sum(&ComplexMatrix::identity(1));
        assert_eq!(s.rows(), 3);
        assert_eq!(s[(2, 2)], c(1.0, 0.0));
        assert_eq!(s.block(0, 0, 2, 2), a);
        let p = a.zero_padded(2, 3);
        assert_eq!(p[(1, 2)], c(0.0, 0.0));
        assert_eq!(a.to_row_major()[1], c(2.0, 0.0));
    }
}
