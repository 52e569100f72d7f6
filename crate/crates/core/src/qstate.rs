//! States and operators on multi-qubit and coin ⊗ lattice Hilbert spaces.
//!
//! Density matrices are validated (Hermitian, unit trace, positive
//! semidefinite) whenever they cross a module boundary. All operations here
//! are pure; values are immutable after construction.

use crate::{C64, CMatrix, CVector, Error, Result};
use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Tolerances used when validating a density matrix.
#[derive(Debug, Clone, Copy)]
pub struct ValidationTols {
    /// Entrywise bound on |ρ − ρ†|.
    pub hermiticity: f64,
    /// Bound on |Tr ρ − 1|.
    pub trace: f64,
    /// Lower bound −tol on the minimum eigenvalue.
    pub positivity: f64,
}

impl ValidationTols {
    /// Boundary-crossing tolerances.
    pub const STRICT: Self = Self { hermiticity: 1e-9, trace: 1e-8, positivity: 1e-8 };
    /// Looser tolerances applied to states recorded along a trajectory.
    pub const TRAJECTORY: Self = Self { hermiticity: 1e-6, trace: 1e-6, positivity: 1e-6 };
}

/// A validated density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    dim: usize,
    matrix: CMatrix,
}

impl QuantumState {
    /// Validates at [`ValidationTols::STRICT`].
    pub fn new(matrix: CMatrix) -> Result<Self> {
        Self::with_tols(matrix, ValidationTols::STRICT)
    }

    pub fn with_tols(matrix: CMatrix, tols: ValidationTols) -> Result<Self> {
        validate_density(&matrix, tols)?;
        Ok(Self { dim: matrix.nrows(), matrix })
    }

    /// Pure-state density matrix |ψ⟩⟨ψ| / ⟨ψ|ψ⟩.
    pub fn from_ket(psi: &CVector) -> Self {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let m = psi * psi.adjoint() / C64::new(norm2, 0.0);
        Self { dim: psi.len(), matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// Tr ρ².
    pub fn purity(&self) -> f64 {
        trace_product(&self.matrix, &self.matrix).re
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Smallest eigenvalue of the hermitized matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.matrix)
    }
}

/// Checks the three density-matrix invariants.
pub fn validate_density(m: &CMatrix, tols: ValidationTols) -> Result<()> {
    if m.nrows() != m.ncols() || m.nrows() == 0 {
        return Err(Error::Dimension(format!("expected square matrix, got {}x{}", m.nrows(), m.ncols())));
    }
    let asym = hermiticity_residue(m);
    if asym > tols.hermiticity {
        return Err(Error::InvalidState(format!("hermiticity residue {asym:.3e} exceeds {:.1e}", tols.hermiticity)));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > tols.trace || tr.im.abs() > tols.trace {
        return Err(Error::InvalidState(format!("trace {tr} deviates from 1 beyond {:.1e}", tols.trace)));
    }
    let min_eig = min_eigenvalue(m);
    if min_eig < -tols.positivity {
        return Err(Error::InvalidState(format!("minimum eigenvalue {min_eig:.3e} below -{:.1e}", tols.positivity)));
    }
    Ok(())
}

/// Entrywise max |m − m†|.
pub fn hermiticity_residue(m: &CMatrix) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn min_eigenvalue(m: &CMatrix) -> f64 {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eigs = herm.symmetric_eigen().eigenvalues;
    eigs.iter().fold(f64::INFINITY, |a, &b| a.min(b))
}

/// Eigenvalues of the hermitized matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let herm = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let mut eigs: Vec<f64> = herm.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs
}

/// Tr(a·b) without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

// --- Pauli algebra ----------------------------------------------------------

pub fn pauli_i() -> CMatrix {
    CMatrix::identity(2, 2)
}

pub fn pauli_x() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
}

pub fn pauli_y() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)])
}

pub fn pauli_z() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(-1.0, 0.0)])
}

/// σ₊ = (σx + iσy)/2, maps |1⟩ → |0⟩.
pub fn sigma_plus() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)])
}

/// σ₋ = (σx − iσy)/2, maps |0⟩ → |1⟩.
pub fn sigma_minus() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
}

pub fn kron_all(factors: &[CMatrix]) -> CMatrix {
    assert!(!factors.is_empty());
    let mut acc = factors[0].clone();
    for f in &factors[1..] {
        acc = acc.kronecker(f);
    }
    acc
}

/// Embeds `op` at position `site` of a tensor-product space with the given
/// local dimensions: I ⊗ … ⊗ op ⊗ … ⊗ I.
pub fn tensor_embed(op: &CMatrix, site: usize, local_dims: &[usize]) -> Result<CMatrix> {
    if site >= local_dims.len() {
        return Err(Error::Dimension(format!("site {site} out of range for {} subsystems", local_dims.len())));
    }
    if op.nrows() != local_dims[site] || op.ncols() != local_dims[site] {
        return Err(Error::Dimension(format!(
            "operator is {}x{} but local dimension at site {site} is {}",
            op.nrows(),
            op.ncols(),
            local_dims[site]
        )));
    }
    let mut acc = if site == 0 { op.clone() } else { CMatrix::identity(local_dims[0], local_dims[0]) };
    for (k, &d) in local_dims.iter().enumerate().skip(1) {
        let factor = if k == site { op.clone() } else { CMatrix::identity(d, d) };
        acc = acc.kronecker(&factor);
    }
    Ok(acc)
}

/// Qubit-register shorthand for [`tensor_embed`].
pub fn embed_qubit(op: &CMatrix, site: usize, n_qubits: usize) -> Result<CMatrix> {
    tensor_embed(op, site, &vec![2; n_qubits])
}

/// Labels of the non-identity Pauli strings in lexicographic {I,X,Y,Z}^N order.
pub fn pauli_string_labels(n_qubits: usize) -> Vec<String> {
    let letters = ['I', 'X', 'Y', 'Z'];
    let total = 4usize.pow(n_qubits as u32);
    (1..total)
        .map(|mut idx| {
            let mut label = vec!['I'; n_qubits];
            for pos in (0..n_qubits).rev() {
                label[pos] = letters[idx % 4];
                idx /= 4;
            }
            label.into_iter().collect()
        })
        .filter(|s: &String| s.chars().any(|c| c != 'I'))
        .collect()
}

fn pauli_from_digit(digit: usize) -> CMatrix {
    match digit {
        0 => pauli_i(),
        1 => pauli_x(),
        2 => pauli_y(),
        _ => pauli_z(),
    }
}

/// Full-register Pauli string for a base-4 index (0 = I…I).
pub fn pauli_string_matrix(index: usize, n_qubits: usize) -> CMatrix {
    let mut digits = vec![0usize; n_qubits];
    let mut idx = index;
    for pos in (0..n_qubits).rev() {
        digits[pos] = idx % 4;
        idx /= 4;
    }
    let factors: Vec<CMatrix> = digits.into_iter().map(pauli_from_digit).collect();
    kron_all(&factors)
}

/// Expectation values Tr(ρ Pᵢ) over the 4^N − 1 non-identity Pauli strings,
/// in the order given by [`pauli_string_labels`].
pub fn pauli_expectations(rho: &QuantumState, n_qubits: usize) -> Result<DVector<f64>> {
    let dim = 1usize << n_qubits;
    if rho.dim() != dim {
        return Err(Error::Dimension(format!("state dim {} is not 2^{n_qubits}", rho.dim())));
    }
    let total = 4usize.pow(n_qubits as u32);
    let mut out = Vec::with_capacity(total - 1);
    for idx in 1..total {
        let p = pauli_string_matrix(idx, n_qubits);
        let val = trace_product(rho.matrix(), &p);
        if val.im.abs() > 1e-9 {
            return Err(Error::InvalidState(format!("Pauli expectation has imaginary residue {:.3e}", val.im)));
        }
        out.push(val.re);
    }
    Ok(DVector::from_vec(out))
}

// --- Initial states ---------------------------------------------------------

/// Single-qubit labels for the product initial states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum SeparableLabel {
    /// |00⟩
    #[serde(rename = "00")]
    ZeroZero,
    /// |+0⟩
    #[serde(rename = "+0")]
    PlusZero,
    /// |0+⟩
    #[serde(rename = "0+")]
    ZeroPlus,
    /// |++⟩
    #[serde(rename = "++")]
    PlusPlus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum BellKind {
    /// (|00⟩ + |11⟩)/√2
    #[serde(rename = "phi+")]
    PhiPlus,
    /// (|01⟩ + |10⟩)/√2
    #[serde(rename = "psi+")]
    PsiPlus,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialStateSpec {
    Separable { label: SeparableLabel },
    Bell { label: BellKind },
    Ghz { n: usize },
    /// (|0…0⟩ + |1…1⟩)/√2 + ε|δ⟩ with |δ⟩ a seeded random complex unit vector.
    PerturbedGhz { n: usize, epsilon: f64, seed: u64 },
}

fn ket0() -> CVector {
    CVector::from_vec(vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)])
}

fn ket_plus() -> CVector {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CVector::from_vec(vec![C64::new(s, 0.0), C64::new(s, 0.0)])
}

pub fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = CVector::zeros(a.len() * b.len());
    for i in 0..a.len() {
        for j in 0..b.len() {
            out[i * b.len() + j] = a[i] * b[j];
        }
    }
    out
}

/// Computational basis ket.
pub fn basis_ket(dim: usize, index: usize) -> CVector {
    let mut v = CVector::zeros(dim);
    v[index] = C64::new(1.0, 0.0);
    v
}

fn ghz_ket(n: usize) -> CVector {
    let dim = 1usize << n;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut v = CVector::zeros(dim);
    v[0] = C64::new(s, 0.0);
    v[dim - 1] = C64::new(s, 0.0);
    v
}

/// The ket underlying [`make_initial_state`]; all specs produce pure states.
pub fn initial_ket(spec: &InitialStateSpec) -> Result<CVector> {
    match spec {
        InitialStateSpec::Separable { label } => {
            let (a, b) = match label {
                SeparableLabel::ZeroZero => (ket0(), ket0()),
                SeparableLabel::PlusZero => (ket_plus(), ket0()),
                SeparableLabel::ZeroPlus => (ket0(), ket_plus()),
                SeparableLabel::PlusPlus => (ket_plus(), ket_plus()),
            };
            Ok(kron_vec(&a, &b))
        }
        InitialStateSpec::Bell { label } => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            let mut v = CVector::zeros(4);
            match label {
                BellKind::PhiPlus => {
                    v[0] = C64::new(s, 0.0);
                    v[3] = C64::new(s, 0.0);
                }
                BellKind::PsiPlus => {
                    v[1] = C64::new(s, 0.0);
                    v[2] = C64::new(s, 0.0);
                }
            }
            Ok(v)
        }
        InitialStateSpec::Ghz { n } => {
            if *n == 0 {
                return Err(Error::InvalidConfig("GHZ requires at least one qubit".into()));
            }
            Ok(ghz_ket(*n))
        }
        InitialStateSpec::PerturbedGhz { n, epsilon, seed } => {
            if *n == 0 {
                return Err(Error::InvalidConfig("GHZ requires at least one qubit".into()));
            }
            if *epsilon < 0.0 {
                return Err(Error::InvalidConfig(format!("perturbation ε = {epsilon} must be nonnegative")));
            }
            let mut psi = ghz_ket(*n);
            if *epsilon > 0.0 {
                let dim = psi.len();
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let mut delta = CVector::zeros(dim);
                for k in 0..dim {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    delta[k] = C64::new(re, im);
                }
                let norm: f64 = delta.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                psi += delta * C64::new(epsilon / norm, 0.0);
            }
            let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            Ok(psi / C64::new(norm, 0.0))
        }
    }
}

pub fn make_initial_state(spec: &InitialStateSpec) -> Result<QuantumState> {
    Ok(QuantumState::from_ket(&initial_ket(spec)?))
}

// --- Partial trace ----------------------------------------------------------

/// Traces out every subsystem not listed in `keep`; kept subsystems retain
/// their original order.
pub fn partial_trace_matrix(rho: &CMatrix, keep: &[usize], dims: &[usize]) -> Result<CMatrix> {
    let total: usize = dims.iter().product();
    if rho.nrows() != total || rho.ncols() != total {
        return Err(Error::Dimension(format!(
            "dims product {total} does not match matrix dimension {}",
            rho.nrows()
        )));
    }
    if keep.is_empty() {
        return Err(Error::Dimension("keep set must be nonempty".into()));
    }
    let mut keep_sorted = keep.to_vec();
    keep_sorted.sort_unstable();
    keep_sorted.dedup();
    if keep_sorted.len() != keep.len() || *keep_sorted.last().unwrap() >= dims.len() {
        return Err(Error::Dimension("keep set has duplicates or out-of-range indices".into()));
    }
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep_sorted.contains(k)).collect();
    let keep_dim: usize = keep_sorted.iter().map(|&k| dims[k]).product();
    let trace_dim: usize = traced.iter().map(|&k| dims[k]).product();

    // strides of each subsystem in the flat index (row-major tensor order)
    let mut strides = vec![1usize; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let flat_index = |subs: &[usize], multi: &[usize]| -> usize {
        subs.iter().zip(multi).map(|(&s, &m)| strides[s] * m).sum()
    };
    let decode = |mut idx: usize, subs: &[usize]| -> Vec<usize> {
        let mut multi = vec![0usize; subs.len()];
        for pos in (0..subs.len()).rev() {
            multi[pos] = idx % dims[subs[pos]];
            idx /= dims[subs[pos]];
        }
        multi
    };

    let mut out = CMatrix::zeros(keep_dim, keep_dim);
    for r in 0..keep_dim {
        let rm = decode(r, &keep_sorted);
        let rbase = flat_index(&keep_sorted, &rm);
        for c in 0..keep_dim {
            let cm = decode(c, &keep_sorted);
            let cbase = flat_index(&keep_sorted, &cm);
            let mut acc = C64::new(0.0, 0.0);
            for t in 0..trace_dim {
                let tm = decode(t, &traced);
                let offset = flat_index(&traced, &tm);
                acc += rho[(rbase + offset, cbase + offset)];
            }
            out[(r, c)] = acc;
        }
    }
    Ok(out)
}

pub fn partial_trace(rho: &QuantumState, keep: &[usize], dims: &[usize]) -> Result<QuantumState> {
    let reduced = partial_trace_matrix(rho.matrix(), keep, dims)?;
    QuantumState::with_tols(reduced, ValidationTols::TRAJECTORY)
}
