//! Applications built on synthesis, propagation and detection.
//!
//! * Phase-encoded coherent states `|α·e^{2πik/N}⟩` from one bright input
//!   through a DFT interferometer, and an attenuation ladder `|α/√L⟩`.
//! * Restorable database search: an unknown `|α₀⟩` is compared against
//!   references `|α₁⟩…|α_N⟩` by a dilated contraction; half of the outputs
//!   (group A) are measured with threshold detectors, the other half
//!   (group B) are kept and later sent back through the inverse circuit,
//!   which returns every input state.
//! * Bell-cat feasibility: can a contraction map the two branches of
//!   `|v1⟩ + |v2⟩` onto the branches of a Bell-cat state?
//!
//! Matrices stated on physical amplitudes (the DFT) are conjugated before
//! they act on the engine's starred vectors. The comparison map is real and
//! acts on starred amplitudes directly.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::detection::{ClickRecord, DetectorModel};
use crate::engine::{apply_circuit, pad_vacuum, AmplitudeVector};
use crate::error::{Error, Result};
use crate::numerics::{spectral_norm, ComplexMatrix, UNITARY_TOL};
use crate::synthesis::{dilate, invert, reck_decompose, reck_mesh, Circuit};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Unitary DFT, `F[j][k] = ω^{jk}/√N` with `ω = e^{2πi/N}`.
pub fn dft_matrix(n: usize) -> Result<ComplexMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("DFT size must be at least 1".into()));
    }
    let norm = 1.0 / (n as f64).sqrt();
    let entries = (0..n * n)
        .map(|idx| {
            let (j, k) = (idx / n, idx % n);
            // reduce the exponent first so large N keeps full precision
            let e = (j * k) % n;
            Complex64::from_polar(norm, 2.0 * PI * e as f64 / n as f64)
        })
        .collect();
    ComplexMatrix::new(n, n, entries)
}

/// The phase states `α·ω^k`, `k = 0…N-1`, from `√N·α` entering port 1
/// (0-based) of a synthesized DFT circuit. For `N = 1` the only port is used.
pub fn generate_phase_states(n: usize, alpha: Complex64) -> Result<AmplitudeVector> {
    phase_states_from_port(n, alpha, if n > 1 { 1 } else { 0 })
}

/// Output of the DFT circuit when `√N·α` enters `port`; port 0 yields `N`
/// identical copies of `α`.
pub fn phase_states_from_port(n: usize, alpha: Complex64, port: usize) -> Result<AmplitudeVector> {
    let f = dft_matrix(n)?;
    if port >= n {
        return Err(Error::ModeOutOfRange { mode: port, width: n });
    }
    let circuit = reck_decompose(&f.conj(), UNITARY_TOL)?;
    let mut physical = vec![ZERO; n];
    physical[port] = alpha * (n as f64).sqrt();
    apply_circuit(&circuit, &AmplitudeVector::from_physical(&physical)?)
}

/// Sends `N` copies of `α` through the dilation of
/// `diag(1, 1/√2, …, 1/√N)`; output `k` is `α/√(k+1)`.
pub fn attenuation_ladder(n: usize, alpha: Complex64) -> Result<AmplitudeVector> {
    if n == 0 {
        return Err(Error::InvalidParameter("ladder length must be at least 1".into()));
    }
    let diag: Vec<f64> = (1..=n).map(|l| 1.0 / (l as f64).sqrt()).collect();
    let d = dilate(&ComplexMatrix::from_real_diagonal(&diag), UNITARY_TOL)?;
    let circuit = reck_decompose(&d.unitary, UNITARY_TOL)?;
    let input = pad_vacuum(&AmplitudeVector::from_physical(&vec![alpha; n])?, d.width())?;
    apply_circuit(&circuit, &input)?.select(&d.output_ports())
}

/// Largest admissible scale of the comparison map for `N` references.
///
/// The rows `e₀ - e_j` have Gram matrix `I + J`, whose top eigenvalue is
/// `N + 1`.
pub fn comparison_c_max(n: usize) -> f64 {
    1.0 / ((n + 1) as f64).sqrt()
}

/// `(N+1)`×`(N+1)` comparison map: row 0 zero, row `j` has `c` in column 0
/// and `-c` in column `j`.
pub fn comparison_map(n: usize, c: f64) -> Result<ComplexMatrix> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 references, got {n}")));
    }
    if !c.is_finite() {
        return Err(Error::InvalidParameter("comparison scale must be finite".into()));
    }
    let mut k = ComplexMatrix::zeros(n + 1, n + 1);
    for j in 1..=n {
        k[(j, 0)] = Complex64::new(c, 0.0);
        k[(j, j)] = Complex64::new(-c, 0.0);
    }
    Ok(k)
}

/// The explicit 6×6 identification unitary for two references. Its first
/// three rows act on `(α₀*, α₁*, α₂*)` as the comparison map with
/// `c = 1/√3`; rows 4–6 carry the retained outputs.
pub fn search_unitary_explicit() -> ComplexMatrix {
    let r3 = (1.0f64 / 3.0).sqrt();
    let r6 = (1.0f64 / 6.0).sqrt();
    let s6 = 6f64.sqrt();
    let third = 1.0 / 3.0;
    let p = (2.0 + s6) / 6.0;
    let m = (2.0 - s6) / 6.0;
    ComplexMatrix::from_real_rows(&[
        vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        vec![r3, -r3, 0.0, 0.0, r6, -r6],
        vec![r3, 0.0, -r3, 0.0, -r6, r6],
        vec![third, third, third, 0.0, -r3, -r3],
        vec![third, p, m, 0.0, r3, 0.0],
        vec![third, m, p, 0.0, 0.0, r3],
    ])
    .expect("finite constants")
}

/// Which interferometer realises the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// The explicit 6×6 unitary; two references and `c = 1/√3` only.
    Explicit,
    /// Unitary dilation of the comparison map; any `N ≥ 2`.
    Dilation,
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "explicit" => Ok(SearchMode::Explicit),
            "dilation" => Ok(SearchMode::Dilation),
            other => Err(Error::InvalidParameter(format!(
                "unknown search mode '{other}', expected 'explicit' or 'dilation'"
            ))),
        }
    }
}

/// Parameters of a database search. Amplitudes are physical (unstarred).
#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpec {
    pub references: Vec<Complex64>,
    pub data: Complex64,
    pub c: f64,
    pub mode: SearchMode,
}

impl SearchSpec {
    /// Dilation-mode search with the largest admissible comparison scale.
    pub fn new(references: Vec<Complex64>, data: Complex64) -> Result<Self> {
        let c = comparison_c_max(references.len());
        let spec = Self { references, data, c, mode: SearchMode::Dilation };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_c(mut self, c: f64) -> Result<Self> {
        self.c = c;
        self.validate()?;
        Ok(self)
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Result<Self> {
        self.mode = mode;
        self.validate()?;
        Ok(self)
    }

    /// Number of references `N`.
    pub fn n(&self) -> usize {
        self.references.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 references, got {n}")));
        }
        if self.references.iter().chain([&self.data]).any(|z| !z.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(Error::InvalidParameter(format!("comparison scale {} must be positive", self.c)));
        }
        let c_max = comparison_c_max(n);
        if self.c > c_max + 1e-12 {
            return Err(Error::NotContraction { norm: self.c / c_max });
        }
        if self.mode == SearchMode::Explicit {
            if n != 2 {
                return Err(Error::InvalidParameter(format!(
                    "explicit mode needs exactly 2 references, got {n}"
                )));
            }
            if (self.c - c_max).abs() > 1e-12 {
                return Err(Error::InvalidParameter(format!(
                    "explicit mode fixes c = 1/sqrt(3), got {}",
                    self.c
                )));
            }
        }
        Ok(())
    }

    /// Pairs of (0-based) references that coincide and so cannot be told apart.
    pub fn degenerate_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if (self.references[i] - self.references[j]).norm() <= 1e-12 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Index of the reference equal to the data, if any.
    pub fn matching_reference(&self) -> Option<usize> {
        self.references.iter().position(|r| (r - self.data).norm() <= 1e-12)
    }
}

/// Result of the identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Identification {
    /// 0-based index into the references.
    Reference(usize),
    Inconclusive,
}

/// One search trial.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub identified: Identification,
    /// Detector records on the comparison ports.
    pub clicks: Vec<ClickRecord>,
    /// Starred amplitudes of the group-B outputs, in port order.
    pub retained: AmplitudeVector,
    /// Group-A output ports, including the always-dark port 0.
    pub consumed_ports: Vec<usize>,
}

impl SearchOutcome {
    pub fn clicked_ports(&self) -> Vec<usize> {
        self.clicks.iter().filter(|r| r.clicked).map(|r| r.port).collect()
    }
}

/// A search interferometer prepared once and reused across trials.
#[derive(Clone, Debug)]
pub struct SearchSetup {
    spec: SearchSpec,
    unitary: ComplexMatrix,
    circuit: Circuit,
    forward: AmplitudeVector,
}

impl SearchSetup {
    pub fn new(spec: SearchSpec) -> Result<Self> {
        spec.validate()?;
        let unitary = match spec.mode {
            SearchMode::Explicit => search_unitary_explicit(),
            SearchMode::Dilation => dilate(&comparison_map(spec.n(), spec.c)?, UNITARY_TOL)?.unitary,
        };
        let circuit = reck_mesh(&unitary, UNITARY_TOL)?;
        let forward = apply_circuit(&circuit, &Self::input_for(&spec, spec.data)?)?;
        Ok(Self { spec, unitary, circuit, forward })
    }

    fn input_for(spec: &SearchSpec, data: Complex64) -> Result<AmplitudeVector> {
        let mut physical = Vec::with_capacity(2 * (spec.n() + 1));
        physical.push(data);
        physical.extend_from_slice(&spec.references);
        physical.resize(2 * (spec.n() + 1), ZERO);
        AmplitudeVector::from_physical(&physical)
    }

    pub fn spec(&self) -> &SearchSpec {
        &self.spec
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// `(α₀*, α₁*, …, α_N*, 0, …, 0)`
    pub fn input(&self) -> Result<AmplitudeVector> {
        Self::input_for(&self.spec, self.spec.data)
    }

    /// Output amplitudes of the forward pass.
    pub fn forward(&self) -> &AmplitudeVector {
        &self.forward
    }

    /// Ports `0..=N`, measured.
    pub fn group_a(&self) -> Vec<usize> {
        (0..=self.spec.n()).collect()
    }

    /// Ports `N+1..2N+2`, kept in delay lines.
    pub fn group_b(&self) -> Vec<usize> {
        (self.spec.n() + 1..2 * (self.spec.n() + 1)).collect()
    }

    /// Ports `1..=N`; port `j` carries `c·(α₀* - α_j*)`.
    pub fn comparison_ports(&self) -> Vec<usize> {
        (1..=self.spec.n()).collect()
    }

    /// One trial with ideal detectors and a generator seeded by `seed`.
    pub fn trial(&self, seed: u64) -> Result<SearchOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.trial_with(&DetectorModel::default(), &mut rng)
    }

    pub fn trial_with<R: Rng + ?Sized>(&self, detector: &DetectorModel, rng: &mut R) -> Result<SearchOutcome> {
        let clicks = detector.sample(&self.forward, &self.comparison_ports(), rng)?;
        Ok(SearchOutcome {
            identified: identify(&clicks),
            clicks,
            retained: self.forward.select(&self.group_b())?,
            consumed_ports: self.group_a(),
        })
    }

    /// Group-A amplitudes prepared afresh for the second pass: a forward pass
    /// of a copy of the identified reference in the data slot, or of the data
    /// itself when the trial was inconclusive.
    pub fn replenish(&self, identified: Identification) -> Result<AmplitudeVector> {
        let data = match identified {
            Identification::Reference(k) => *self.spec.references.get(k).ok_or_else(|| {
                Error::InvalidParameter(format!("identified reference {k} does not exist"))
            })?,
            Identification::Inconclusive => self.spec.data,
        };
        let fresh = apply_circuit(&self.circuit, &Self::input_for(&self.spec, data)?)?;
        fresh.select(&self.group_a())
    }

    /// Sends the retained group-B outputs and replenished group-A states
    /// back through the inverse circuit, returning the full input vector.
    pub fn restore(&self, outcome: &SearchOutcome) -> Result<AmplitudeVector> {
        let half = self.spec.n() + 1;
        if outcome.retained.width() != half {
            return Err(Error::Dimension(format!(
                "retained amplitudes have width {}, expected {half}",
                outcome.retained.width()
            )));
        }
        let mut full = self.replenish(outcome.identified)?.into_starred();
        full.extend_from_slice(outcome.retained.starred());
        apply_circuit(&invert(&self.circuit), &AmplitudeVector::from_starred(full)?)
    }

    /// Analytic probability of a correct identification when `α₀ = α_k`.
    pub fn identification_probability(&self, k: usize) -> f64 {
        identification_probability(&self.spec.references, self.spec.c, k)
    }
}

/// `α₀` is `α_k` when every comparison port except `k`'s clicked and port
/// `k` stayed dark. Anything else is inconclusive.
fn identify(clicks: &[ClickRecord]) -> Identification {
    let silent: Vec<usize> = clicks.iter().filter(|r| !r.clicked).map(|r| r.port).collect();
    match silent.as_slice() {
        [port] => Identification::Reference(port - 1),
        _ => Identification::Inconclusive,
    }
}

/// Builds the search interferometer and runs one seeded trial.
pub fn run_search(spec: &SearchSpec, seed: u64) -> Result<SearchOutcome> {
    SearchSetup::new(spec.clone())?.trial(seed)
}

/// Second pass of the search for a single outcome.
pub fn restore(outcome: &SearchOutcome, spec: &SearchSpec) -> Result<AmplitudeVector> {
    SearchSetup::new(spec.clone())?.restore(outcome)
}

/// `1 - e^{-|α₁-α₂|²/3}`, two references with equal priors.
pub fn success_probability(alpha1: Complex64, alpha2: Complex64) -> f64 {
    -(-(alpha1 - alpha2).norm_sqr() / 3.0).exp_m1()
}

/// Probability that `α₀ = α_k` is identified: every other comparison port
/// must click, `∏_{j≠k} (1 - e^{-c²|α_k-α_j|²})`.
pub fn identification_probability(references: &[Complex64], c: f64, k: usize) -> f64 {
    references
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != k)
        .map(|(_, r)| -(-c * c * (references[k] - r).norm_sqr()).exp_m1())
        .product()
}

/// Average of [`identification_probability`] over references drawn with
/// equal priors.
pub fn equal_prior_success_probability(references: &[Complex64], c: f64) -> f64 {
    let n = references.len();
    (0..n).map(|k| identification_probability(references, c, k)).sum::<f64>() / n as f64
}

/// The four Bell-cat states; the pair selects which coherent branches the
/// two input branches must map onto.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum BellTarget {
    /// Branches `(-α, -α)` and `(α, α)`.
    #[default]
    B00,
    /// Same branches as `B00`; the relative minus sign is carried by the input.
    B10,
    /// Branches `(-α, α)` and `(α, -α)`.
    B01,
    /// Same branches as `B01`, relative minus sign.
    B11,
}

impl BellTarget {
    /// Images `(t1, t2)` required of `v1` and `v2`.
    pub fn branches(self, alpha: Complex64) -> ([Complex64; 2], [Complex64; 2]) {
        match self {
            BellTarget::B00 | BellTarget::B10 => ([-alpha, -alpha], [alpha, alpha]),
            BellTarget::B01 | BellTarget::B11 => ([-alpha, alpha], [alpha, -alpha]),
        }
    }
}

impl std::str::FromStr for BellTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "B00" => Ok(BellTarget::B00),
            "B10" => Ok(BellTarget::B10),
            "B01" => Ok(BellTarget::B01),
            "B11" => Ok(BellTarget::B11),
            _ => Err(Error::InvalidParameter(format!("unknown Bell-cat target '{s}'"))),
        }
    }
}

/// Raw entangled input `|v1⟩ + |v2⟩` (physical two-mode amplitudes) and the
/// Bell-cat amplitude `α` to reach.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BellcatQuery {
    pub v1: [Complex64; 2],
    pub v2: [Complex64; 2],
    pub alpha: Complex64,
    pub target: BellTarget,
}

impl BellcatQuery {
    pub fn new(v1: [Complex64; 2], v2: [Complex64; 2], alpha: Complex64) -> Self {
        Self { v1, v2, alpha, target: BellTarget::B00 }
    }
}

#[derive(Clone, Debug)]
pub struct BellcatVerdict {
    pub feasible: bool,
    /// The candidate map on physical amplitudes: the unique solution when
    /// `v1`, `v2` are independent, the rank-one minimal-norm solution when
    /// they are antiparallel, absent when no linear map exists.
    pub contraction: Option<ComplexMatrix>,
    /// Largest `|α|` for which the same input still works.
    pub max_alpha: f64,
    pub linearly_dependent: bool,
    /// Spectral norm of the candidate map.
    pub norm: Option<f64>,
    /// `max |K·(v1+v2)|`, zero for any valid map.
    pub kernel_residual: Option<f64>,
    /// The necessary condition on the input alone: `v1 = -v2` when the
    /// vectors are dependent; otherwise a unitary `W` with
    /// `(W·v1)₁ = -(W·v2)₁` must exist, which in two modes always does.
    pub necessary_condition: bool,
}

/// Relative threshold under which `det[v1 v2]` counts as zero.
pub const DEPENDENCE_TOL: f64 = 1e-12;
/// Slack allowed on the spectral norm of a feasible map.
pub const CONTRACTION_SLACK: f64 = 1e-12;
const ANTIPARALLEL_TOL: f64 = 1e-10;

fn norm2(v: &[Complex64; 2]) -> f64 {
    (v[0].norm_sqr() + v[1].norm_sqr()).sqrt()
}

/// Decides whether a contraction `K` with `K·v1 = t1`, `K·v2 = t2` exists.
pub fn bellcat_feasibility(q: &BellcatQuery) -> Result<BellcatVerdict> {
    if q.v1.iter().chain(&q.v2).chain([&q.alpha]).any(|z| !z.is_finite()) {
        return Err(Error::NonFinite);
    }
    let (n1, n2) = (norm2(&q.v1), norm2(&q.v2));
    let det = q.v1[0] * q.v2[1] - q.v1[1] * q.v2[0];
    let dependent = n1 == 0.0 || n2 == 0.0 || det.norm() <= DEPENDENCE_TOL * n1 * n2;
    let alpha_zero = q.alpha == ZERO;

    if dependent {
        let sum = [q.v1[0] + q.v2[0], q.v1[1] + q.v2[1]];
        let antiparallel = n1 > 0.0 && norm2(&sum) <= ANTIPARALLEL_TOL * n1.max(n2);
        if antiparallel {
            let (t1, _) = q.target.branches(q.alpha);
            // K = t1·v1† / |v1|²
            let entries = (0..4)
                .map(|idx| t1[idx / 2] * q.v1[idx % 2].conj() / (n1 * n1))
                .collect();
            let k = ComplexMatrix::new(2, 2, entries)?;
            let norm = 2f64.sqrt() * q.alpha.norm() / n1;
            let residual = kernel_residual(&k, q)?;
            return Ok(BellcatVerdict {
                feasible: norm <= 1.0 + CONTRACTION_SLACK,
                contraction: Some(k),
                max_alpha: n1 / 2f64.sqrt(),
                linearly_dependent: true,
                norm: Some(norm),
                kernel_residual: Some(residual),
                necessary_condition: true,
            });
        }
        // v2 = λ·v1 with λ ≠ -1 (or a zero vector): only the zero map can
        // satisfy both equations, which needs α = 0.
        let k = alpha_zero.then(|| ComplexMatrix::zeros(2, 2));
        let residual = k.as_ref().map(|k| kernel_residual(k, q)).transpose()?;
        return Ok(BellcatVerdict {
            feasible: alpha_zero,
            norm: k.as_ref().map(|_| 0.0),
            contraction: k,
            max_alpha: 0.0,
            linearly_dependent: true,
            kernel_residual: residual,
            necessary_condition: false,
        });
    }

    // Independent: K = T·V⁻¹ is the only linear map.
    let v = ComplexMatrix::new(2, 2, vec![q.v1[0], q.v2[0], q.v1[1], q.v2[1]])?;
    let inv_det = Complex64::new(1.0, 0.0) / det;
    let v_inv = ComplexMatrix::new(
        2,
        2,
        vec![v[(1, 1)] * inv_det, -v[(0, 1)] * inv_det, -v[(1, 0)] * inv_det, v[(0, 0)] * inv_det],
    )?;
    let unit = {
        let (t1, t2) = q.target.branches(Complex64::new(1.0, 0.0));
        let t = ComplexMatrix::new(2, 2, vec![t1[0], t2[0], t1[1], t2[1]])?;
        &t * &v_inv
    };
    let unit_norm = spectral_norm(&unit)?;
    let (t1, t2) = q.target.branches(q.alpha);
    let t = ComplexMatrix::new(2, 2, vec![t1[0], t2[0], t1[1], t2[1]])?;
    let k = &t * &v_inv;
    let norm = unit_norm * q.alpha.norm();
    let residual = kernel_residual(&k, q)?;
    Ok(BellcatVerdict {
        feasible: norm <= 1.0 + CONTRACTION_SLACK,
        contraction: Some(k),
        max_alpha: 1.0 / unit_norm,
        linearly_dependent: false,
        norm: Some(norm),
        kernel_residual: Some(residual),
        necessary_condition: orthogonal_row_exists(q),
    })
}

fn kernel_residual(k: &ComplexMatrix, q: &BellcatQuery) -> Result<f64> {
    let out = k.mul_vec(&[q.v1[0] + q.v2[0], q.v1[1] + q.v2[1]])?;
    Ok(out.iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Builds a unitary `W` whose first row annihilates `v1 + v2` and checks it.
fn orthogonal_row_exists(q: &BellcatQuery) -> bool {
    let s = [q.v1[0] + q.v2[0], q.v1[1] + q.v2[1]];
    let ns = norm2(&s);
    if ns == 0.0 {
        return true;
    }
    // rows (s₂, -s₁)/|s| and (s₁*, s₂*)/|s| form a unitary
    let w0 = [s[1] / ns, -s[0] / ns];
    let w1 = [s[0].conj() / ns, s[1].conj() / ns];
    let w = ComplexMatrix::new(2, 2, vec![w0[0], w0[1], w1[0], w1[1]]).expect("finite");
    let wv1 = w.mul_vec(&q.v1).expect("2x2");
    let wv2 = w.mul_vec(&q.v2).expect("2x2");
    crate::numerics::is_unitary(&w, 1e-10).unwrap_or(false)
        && (wv1[0] + wv2[0]).norm() <= 1e-10 * norm2(&q.v1).max(norm2(&q.v2))
}
