//! Python bindings for `cohlin`.
//!
//! Matrices cross the boundary as lists of rows of Python `complex`;
//! amplitude vectors as flat lists. `Circuit.apply` works on starred
//! amplitudes, the protocol helpers return physical ones.

use cohlin::numerics::{self, ComplexMatrix, UNITARY_TOL};
use cohlin::protocols::{self, BellTarget, BellcatQuery, Identification, SearchMode, SearchSetup, SearchSpec};
use cohlin::{io, synthesis, AmplitudeVector, Complex64, OpticalElement};
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

type Rows = Vec<Vec<Complex64>>;

fn to_py(e: cohlin::Error) -> PyErr {
    match e {
        cohlin::Error::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn matrix(rows: Rows) -> PyResult<ComplexMatrix> {
    ComplexMatrix::from_rows(&rows).map_err(to_py)
}

fn pair(v: Vec<Complex64>, name: &str) -> PyResult<[Complex64; 2]> {
    match v.as_slice() {
        [a, b] => Ok([*a, *b]),
        _ => Err(PyValueError::new_err(format!("{name} must have exactly two entries"))),
    }
}

#[pyfunction]
fn beamsplitter_matrix(theta: f64, phi: f64) -> Rows {
    cohlin::beamsplitter_matrix(theta, phi).to_rows()
}

#[pyfunction]
fn dft_matrix(n: usize) -> PyResult<Rows> {
    Ok(protocols::dft_matrix(n).map_err(to_py)?.to_rows())
}

#[pyfunction]
fn comparison_map(n: usize, c: f64) -> PyResult<Rows> {
    Ok(protocols::comparison_map(n, c).map_err(to_py)?.to_rows())
}

#[pyfunction]
#[pyo3(signature = (m, tol = UNITARY_TOL))]
fn is_unitary(m: Rows, tol: f64) -> PyResult<bool> {
    numerics::is_unitary(&matrix(m)?, tol).map_err(to_py)
}

/// Returns `(left, singular_values, right)` with `m = left · diag(s) · right`.
#[pyfunction]
fn svd(m: Rows) -> PyResult<(Rows, Vec<f64>, Rows)> {
    let d = numerics::svd(&matrix(m)?).map_err(to_py)?;
    Ok((d.left.to_rows(), d.singular_values, d.right.to_rows()))
}

#[pyfunction]
fn spectral_norm(m: Rows) -> PyResult<f64> {
    numerics::spectral_norm(&matrix(m)?).map_err(to_py)
}

/// Unitary whose top-left block is `k` (zero-padded to square).
#[pyfunction]
#[pyo3(signature = (k, tol = UNITARY_TOL))]
fn dilate(k: Rows, tol: f64) -> PyResult<Rows> {
    Ok(synthesis::dilate(&matrix(k)?, tol).map_err(to_py)?.unitary.to_rows())
}

#[pyfunction]
#[pyo3(signature = (u, tol = UNITARY_TOL, full_mesh = false))]
fn reck_decompose(u: Rows, tol: f64, full_mesh: bool) -> PyResult<Circuit> {
    let u = matrix(u)?;
    let inner = if full_mesh { synthesis::reck_mesh(&u, tol) } else { synthesis::reck_decompose(&u, tol) };
    Ok(Circuit { inner: inner.map_err(to_py)? })
}

#[pyfunction]
fn success_probability(alpha1: Complex64, alpha2: Complex64) -> f64 {
    protocols::success_probability(alpha1, alpha2)
}

#[pyfunction]
fn click_probability(beta: Complex64) -> f64 {
    cohlin::click_probability(beta)
}

#[pyfunction]
fn generate_phase_states(n: usize, alpha: Complex64) -> PyResult<Vec<Complex64>> {
    Ok(protocols::generate_phase_states(n, alpha).map_err(to_py)?.physical())
}

#[pyfunction]
fn attenuation_ladder(n: usize, alpha: Complex64) -> PyResult<Vec<Complex64>> {
    Ok(protocols::attenuation_ladder(n, alpha).map_err(to_py)?.physical())
}

/// Verdict as a dict with keys `feasible`, `contraction`, `max_alpha`,
/// `linearly_dependent`, `norm`, `kernel_residual`, `necessary_condition`.
#[pyfunction]
#[pyo3(signature = (v1, v2, alpha, target = "B00"))]
fn bellcat_feasibility<'py>(
    py: Python<'py>,
    v1: Vec<Complex64>,
    v2: Vec<Complex64>,
    alpha: Complex64,
    target: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let query = BellcatQuery {
        v1: pair(v1, "v1")?,
        v2: pair(v2, "v2")?,
        alpha,
        target: target.parse::<BellTarget>().map_err(to_py)?,
    };
    let v = protocols::bellcat_feasibility(&query).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("feasible", v.feasible)?;
    d.set_item("contraction", v.contraction.map(|k| k.to_rows()))?;
    d.set_item("max_alpha", v.max_alpha)?;
    d.set_item("linearly_dependent", v.linearly_dependent)?;
    d.set_item("norm", v.norm)?;
    d.set_item("kernel_residual", v.kernel_residual)?;
    d.set_item("necessary_condition", v.necessary_condition)?;
    Ok(d)
}

/// One seeded search trial. `mode` is `"dilation"` or `"explicit"`.
#[pyfunction]
#[pyo3(signature = (references, data, seed, c = None, mode = "dilation"))]
fn run_search(references: Vec<Complex64>, data: Complex64, seed: u64, c: Option<f64>, mode: &str) -> PyResult<SearchOutcome> {
    let mode: SearchMode = mode.parse().map_err(to_py)?;
    let mut spec = SearchSpec::new(references, data).map_err(to_py)?.with_mode(mode).map_err(to_py)?;
    if let Some(c) = c {
        spec = spec.with_c(c).map_err(to_py)?;
    }
    let setup = SearchSetup::new(spec).map_err(to_py)?;
    let outcome = setup.trial(seed).map_err(to_py)?;
    Ok(SearchOutcome { setup, outcome })
}

/// An ordered list of beamsplitters and phase shifters on `width` modes.
#[pyclass(module = "cohlin_py")]
struct Circuit {
    inner: synthesis::Circuit,
}

#[pymethods]
impl Circuit {
    #[new]
    fn new(width: usize) -> PyResult<Self> {
        Ok(Self { inner: synthesis::Circuit::new(width).map_err(to_py)? })
    }

    /// Realises `u` exactly (including phases).
    #[staticmethod]
    #[pyo3(signature = (u, tol = UNITARY_TOL))]
    fn compile(u: Rows, tol: f64) -> PyResult<Self> {
        reck_decompose(u, tol, false)
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(Self { inner: io::parse_circuit(text).map_err(to_py)? })
    }

    fn to_text(&self) -> String {
        io::format_circuit(&self.inner)
    }

    fn add_beamsplitter(&mut self, i: usize, j: usize, theta: f64, phi: f64) -> PyResult<()> {
        self.inner.push(OpticalElement::beamsplitter(i, j, theta, phi)).map_err(to_py)
    }

    fn add_phaseshifter(&mut self, mode: usize, phi: f64) -> PyResult<()> {
        self.inner.push(OpticalElement::phaseshifter(mode, phi)).map_err(to_py)
    }

    #[getter]
    fn width(&self) -> usize {
        self.inner.width()
    }

    #[getter]
    fn beamsplitter_count(&self) -> usize {
        self.inner.beamsplitter_count()
    }

    #[getter]
    fn phaseshifter_count(&self) -> usize {
        self.inner.phaseshifter_count()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Circuit(width={}, beamsplitters={}, phaseshifters={})",
            self.inner.width(),
            self.inner.beamsplitter_count(),
            self.inner.phaseshifter_count()
        )
    }

    /// `("BS", i, j, theta, phi)` or `("PS", i, phi)` tuples in order.
    fn elements<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner
            .elements()
            .iter()
            .map(|e| match *e {
                OpticalElement::BeamSplitter { modes: (i, j), theta, phi } => {
                    Ok(("BS", i, j, theta, phi).into_pyobject(py)?.into_any())
                }
                OpticalElement::PhaseShifter { mode, phi } => Ok(("PS", mode, phi).into_pyobject(py)?.into_any()),
            })
            .collect()
    }

    /// The matrix the circuit applies to starred amplitudes.
    fn matrix(&self) -> Rows {
        synthesis::compile(&self.inner).to_rows()
    }

    fn inverse(&self) -> Self {
        Self { inner: synthesis::invert(&self.inner) }
    }

    fn apply(&self, starred: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        let amps = AmplitudeVector::from_starred(starred).map_err(to_py)?;
        Ok(cohlin::apply_circuit(&self.inner, &amps).map_err(to_py)?.into_starred())
    }
}

/// Result of [`run_search`]; keeps the interferometer so it can restore.
#[pyclass(module = "cohlin_py")]
struct SearchOutcome {
    setup: SearchSetup,
    outcome: protocols::SearchOutcome,
}

#[pymethods]
impl SearchOutcome {
    /// 0-based reference index, or `None` when inconclusive.
    #[getter]
    fn identified(&self) -> Option<usize> {
        match self.outcome.identified {
            Identification::Reference(k) => Some(k),
            Identification::Inconclusive => None,
        }
    }

    #[getter]
    fn clicked_ports(&self) -> Vec<usize> {
        self.outcome.clicked_ports()
    }

    /// `(port, clicked, probability)` per comparison port.
    #[getter]
    fn clicks(&self) -> Vec<(usize, bool, f64)> {
        self.outcome.clicks.iter().map(|r| (r.port, r.clicked, r.probability)).collect()
    }

    /// Starred amplitudes kept for the second pass.
    #[getter]
    fn retained(&self) -> Vec<Complex64> {
        self.outcome.retained.starred().to_vec()
    }

    #[getter]
    fn consumed_ports(&self) -> Vec<usize> {
        self.outcome.consumed_ports.clone()
    }

    #[getter]
    fn circuit(&self) -> Circuit {
        Circuit { inner: self.setup.circuit().clone() }
    }

    /// Physical amplitudes recovered at the input ports.
    fn restore(&self) -> PyResult<Vec<Complex64>> {
        Ok(self.setup.restore(&self.outcome).map_err(to_py)?.physical())
    }

    fn __repr__(&self) -> String {
        format!("SearchOutcome(identified={:?}, clicked_ports={:?})", self.identified(), self.clicked_ports())
    }
}

#[pymodule]
fn cohlin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(beamsplitter_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(dft_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(comparison_map, m)?)?;
    m.add_function(wrap_pyfunction!(is_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(svd, m)?)?;
    m.add_function(wrap_pyfunction!(spectral_norm, m)?)?;
    m.add_function(wrap_pyfunction!(dilate, m)?)?;
    m.add_function(wrap_pyfunction!(reck_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(success_probability, m)?)?;
    m.add_function(wrap_pyfunction!(click_probability, m)?)?;
    m.add_function(wrap_pyfunction!(generate_phase_states, m)?)?;
    m.add_function(wrap_pyfunction!(attenuation_ladder, m)?)?;
    m.add_function(wrap_pyfunction!(bellcat_feasibility, m)?)?;
    m.add_function(wrap_pyfunction!(run_search, m)?)?;
    m.add_class::<Circuit>()?;
    m.add_class::<SearchOutcome>()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn circuit_compiles_and_round_trips_text() {
        let u = beamsplitter_matrix(0.7, 1.1);
        let circuit = Circuit::compile(u.clone(), UNITARY_TOL).unwrap();
        let m = circuit.matrix();
        for (a, b) in m.iter().flatten().zip(u.iter().flatten()) {
            assert!((a - b).norm() < 1e-12);
        }
        let back = Circuit::from_text(&circuit.to_text()).unwrap();
        assert_eq!(back.inner, circuit.inner);
        let out = circuit.apply(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let undone = circuit.inverse().apply(out).unwrap();
        assert!((undone[0] - c(1.0, 0.0)).norm() < 1e-12 && undone[1].norm() < 1e-12);
    }

    #[test]
    fn errors_become_value_errors() {
        Python::initialize();
        Python::attach(|py| {
            let err = dilate(vec![vec![c(2.0, 0.0)]], UNITARY_TOL).unwrap_err();
            assert!(err.is_instance_of::<PyValueError>(py));
            assert!(Circuit::new(0).is_err());
            assert!(run_search(vec![c(1.0, 0.0)], c(1.0, 0.0), 0, None, "dilation").is_err());
        });
    }

    #[test]
    fn search_and_restore() {
        let refs = vec![c(1.0, 0.0), c(-1.0, 0.5)];
        let s = run_search(refs.clone(), refs[1], 3, None, "explicit").unwrap();
        assert!(matches!(s.identified(), None | Some(1)));
        let restored = s.restore().unwrap();
        assert!((restored[0] - refs[1]).norm() < 1e-10);
        assert!((restored[2] - refs[1]).norm() < 1e-10);
        assert_eq!(s.circuit().beamsplitter_count(), 15);
    }

    #[test]
    fn bellcat_dict() {
        Python::initialize();
        Python::attach(|py| {
            let d = bellcat_feasibility(py, vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)], c(0.6, 0.0), "B00")
                .unwrap();
            let feasible: bool = d.get_item("feasible").unwrap().unwrap().extract().unwrap();
            assert!(!feasible);
            assert!(bellcat_feasibility(py, vec![c(1.0, 0.0)], vec![], c(0.0, 0.0), "B00").is_err());
        });
    }
}
