//! Dense operator and state containers.

use nalgebra::{DMatrix, DVector};

use crate::error::{QcaError, Result};
use crate::C64;

/// Tolerance used when an operation must reject a matrix that is not unitary.
pub const UNITARITY_REJECT_TOL: f64 = 1e-6;

/// A dense square complex matrix that is unitary up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix(DMatrix<C64>);

impl UnitaryMatrix {
    /// Wraps `m` after checking that it is square and `‖MM†−I‖_max ≤ 1e−6`.
    pub fn new(m: DMatrix<C64>) -> Result<Self> {
        if !m.is_square() {
            return Err(QcaError::invalid(format!(
                "matrix is {}x{}, expected square",
                m.nrows(),
                m.ncols()
            )));
        }
        let err = unitarity_error(&m);
        if !(err <= UNITARITY_REJECT_TOL) {
            return Err(QcaError::invalid(format!(
                "matrix is not unitary: max |UU†−I| = {err:.3e}"
            )));
        }
        Ok(UnitaryMatrix(m))
    }

    /// Wraps `m` without checking. Callers must guarantee unitarity; the
    /// spectral routines re-check before decomposing.
    pub fn new_unchecked(m: DMatrix<C64>) -> Self {
        UnitaryMatrix(m)
    }

    pub fn identity(dim: usize) -> Self {
        UnitaryMatrix(DMatrix::identity(dim, dim))
    }

    /// Diagonal unitary with the given phases `e^{iφ_k}`.
    pub fn from_phases(phases: &[f64]) -> Self {
        let diag = DVector::from_iterator(
            phases.len(),
            phases.iter().map(|&p| C64::from_polar(1.0, p)),
        );
        UnitaryMatrix(DMatrix::from_diagonal(&diag))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<C64> {
        self.0
    }

    /// `‖UU† − I‖_max`.
    pub fn unitarity_error(&self) -> f64 {
        unitarity_error(&self.0)
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        if self.dim() != rhs.dim() {
            return Err(QcaError::invalid(format!(
                "dimension mismatch: {} vs {}",
                self.dim(),
                rhs.dim()
            )));
        }
        Ok(UnitaryMatrix(&self.0 * &rhs.0))
    }

    pub fn adjoint(&self) -> UnitaryMatrix {
        UnitaryMatrix(self.0.adjoint())
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if self.dim() != state.dim() {
            return Err(QcaError::invalid(format!(
                "operator dimension {} does not match state dimension {}",
                self.dim(),
                state.dim()
            )));
        }
        Ok(StateVector(&self.0 * &state.0))
    }

    /// Largest element-wise deviation `max |A_ij − B_ij|`.
    pub fn max_abs_diff(&self, other: &UnitaryMatrix) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }
}

pub(crate) fn unitarity_error(m: &DMatrix<C64>) -> f64 {
    let prod = m * m.adjoint();
    let mut worst = 0.0f64;
    for (idx, z) in prod.iter().enumerate() {
        let (i, j) = (idx % prod.nrows(), idx / prod.nrows());
        let target = if i == j {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        };
        let d = (z - target).norm();
        if d.is_nan() {
            return f64::NAN;
        }
        worst = worst.max(d);
    }
    worst
}

pub(crate) fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// A pure state on `n` qubits. Qubit 1 is the most significant bit of the
/// basis-state index.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector(DVector<C64>);

impl StateVector {
    /// Wraps a vector of amplitudes; the length must be a power of two ≥ 2.
    /// Normalization is checked by the consumers that need it.
    pub fn new(amplitudes: DVector<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QcaError::invalid(format!(
                "state length {len} is not a power of two ≥ 2"
            )));
        }
        Ok(StateVector(amplitudes))
    }

    pub fn from_slice(amplitudes: &[C64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(amplitudes))
    }

    /// Computational basis state `|index⟩` on `n` qubits.
    pub fn basis(n: usize, index: usize) -> Result<Self> {
        let dim = 1usize
            .checked_shl(n as u32)
            .filter(|_| n >= 1 && n < usize::BITS as usize)
            .ok_or_else(|| QcaError::invalid(format!("unsupported qubit count {n}")))?;
        if index >= dim {
            return Err(QcaError::invalid(format!(
                "basis index {index} out of range for {n} qubits"
            )));
        }
        let mut v = DVector::zeros(dim);
        v[index] = C64::new(1.0, 0.0);
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn qubits(&self) -> usize {
        self.0.len().trailing_zeros() as usize
    }

    pub fn amplitudes(&self) -> &[C64] {
        self.0.as_slice()
    }

    pub fn as_vector(&self) -> &DVector<C64> {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.0.dotc(&other.0)
    }
}
