use num_complex::Complex64;

use super::matrix::{ComplexMatrix, ZERO};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Number of qubits for a Hilbert-space dimension that must be a power of two.
pub fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    if !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Normalized amplitude vector on an n-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Accepts amplitudes whose norm is 1 within `tol.norm`.
    pub fn new(amplitudes: Vec<Complex64>, tol: &Tolerances) -> Result<Self> {
        let state = Self::from_amplitudes_unchecked(amplitudes)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > tol.norm {
            return Err(Error::InvalidState(format!("state norm is {norm}, expected 1")));
        }
        Ok(state)
    }

    /// Rescales the amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::from_amplitudes_unchecked(amplitudes)?;
        let norm = state.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState(format!("cannot normalize vector of norm {norm}")));
        }
        Ok(Self {
            num_qubits: state.num_qubits,
            amplitudes: state.amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    /// Normalized state from real amplitudes.
    pub fn from_real(amplitudes: &[f64]) -> Result<Self> {
        Self::normalized(amplitudes.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// Keeps the amplitudes as given; only the length is checked.
    ///
    /// Used for datasets that are read from disk and validated afterwards.
    pub fn from_amplitudes_unchecked(amplitudes: Vec<Complex64>) -> Result<Self> {
        let num_qubits = qubits_for_dim(amplitudes.len())?;
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self {
            num_qubits,
            amplitudes,
        })
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|<self|other>|^2`.
    pub fn overlap(&self, other: &PureState) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr())
    }

    /// The operator `|self><self|`.
    pub fn projector_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            num_qubits: self.num_qubits,
            matrix: self.projector_matrix(),
        }
    }

    pub fn to_interleaved(&self) -> Vec<f64> {
        self.amplitudes.iter().flat_map(|z| [z.re, z.im]).collect()
    }

    pub fn from_interleaved_unchecked(values: &[f64]) -> Result<Self> {
        if !values.len().is_multiple_of(2) {
            return Err(Error::InvalidShape("odd number of interleaved values".into()));
        }
        Self::from_amplitudes_unchecked(
            values
                .chunks_exact(2)
                .map(|p| Complex64::new(p[0], p[1]))
                .collect(),
        )
    }
}

/// Positive semidefinite, unit-trace operator on an n-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity against `tol`.
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let rho = Self::from_matrix_unchecked(matrix)?;
        rho.validate(tol)?;
        Ok(rho)
    }

    /// Wraps a square power-of-two matrix without checking the state axioms.
    pub fn from_matrix_unchecked(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let num_qubits = qubits_for_dim(matrix.rows())?;
        Ok(Self { num_qubits, matrix })
    }

    /// `|0...0><0...0|`.
    pub fn zero_state(num_qubits: usize) -> Self {
        PureState::basis(num_qubits, 0)
            .expect("basis index 0 always exists")
            .to_density()
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        Self {
            num_qubits,
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let m = self.matrix.to_nalgebra();
        let herm = (&m + m.adjoint()) * Complex64::new(0.5, 0.0);
        herm.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Checks the density-matrix axioms.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        let dev = self.matrix.hermiticity_deviation();
        if dev > tol.hermitian {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > tol.trace || tr.im.abs() > tol.trace {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min_eig = self.min_eigenvalue();
        if min_eig < -tol.psd {
            return Err(Error::InvalidState(format!(
                "minimum eigenvalue {min_eig:e} is below -{:e}",
                tol.psd
            )));
        }
        Ok(())
    }

    /// Divides by the trace when it drifted from 1 by more than `threshold`.
    pub(crate) fn renormalize_if_drifted(&mut self, threshold: f64) {
        let tr = self.trace();
        if (tr - 1.0).abs() > threshold && tr > 0.0 {
            self.matrix = self.matrix.scale_real(1.0 / tr);
        }
    }
}

/// Hermitian operator on an n-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    num_qubits: usize,
    matrix: ComplexMatrix,
}

impl HermitianOperator {
    pub fn new(matrix: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let num_qubits = qubits_for_dim(matrix.rows())?;
        let deviation = matrix.hermiticity_deviation();
        if deviation > tol.hermitian {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { num_qubits, matrix })
    }

    pub fn zeros(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        Self {
            num_qubits,
            matrix: ComplexMatrix::zeros(dim, dim),
        }
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            num_qubits: self.num_qubits,
            matrix: self.matrix.scale_real(factor),
        }
    }
}
