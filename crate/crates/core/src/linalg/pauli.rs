use super::matrix::{pauli, ComplexMatrix};
use super::ops::tensor_product;
use super::state::HermitianOperator;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Real coefficients of a Hermitian operator in the Pauli-word basis.
///
/// Word index `w` encodes `(a_1, ..., a_n)` in base 4 with `a_1` most
/// significant and I, X, Y, Z = 0, 1, 2, 3.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliCoefficients {
    num_qubits: usize,
    coefficients: Vec<f64>,
}

impl PauliCoefficients {
    pub fn new(num_qubits: usize, coefficients: Vec<f64>) -> Result<Self> {
        let expected = 1usize << (2 * num_qubits);
        if coefficients.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coefficients.len(),
            });
        }
        Ok(Self {
            num_qubits,
            coefficients,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Coefficient of the word given as per-qubit indices.
    pub fn get(&self, word: &[usize]) -> f64 {
        self.coefficients[word_index(word)]
    }
}

pub fn word_index(word: &[usize]) -> usize {
    word.iter().fold(0, |acc, &a| acc * 4 + a)
}

fn word_digits(mut index: usize, num_qubits: usize) -> Vec<usize> {
    let mut digits = vec![0; num_qubits];
    for d in digits.iter_mut().rev() {
        *d = index % 4;
        index /= 4;
    }
    digits
}

/// `sigma^{a_1} ⊗ ... ⊗ sigma^{a_n}`.
pub fn pauli_word(word: &[usize]) -> ComplexMatrix {
    word.iter()
        .fold(ComplexMatrix::identity(1), |acc, &a| tensor_product(&acc, &pauli::by_index(a)))
}

/// Coefficients `tr(h * P_w) / 2^n` for every Pauli word `P_w`.
pub fn pauli_expand(h: &HermitianOperator, tol: &Tolerances) -> Result<PauliCoefficients> {
    let n = h.num_qubits();
    let dim = 1usize << n;
    let mut coefficients = Vec::with_capacity(1 << (2 * n));
    for w in 0..1usize << (2 * n) {
        let value = h.matrix().trace_product(&pauli_word(&word_digits(w, n))) / dim as f64;
        if value.im.abs() > tol.hermitian {
            return Err(Error::NotHermitian {
                deviation: value.im.abs(),
            });
        }
        coefficients.push(value.re);
    }
    PauliCoefficients::new(n, coefficients)
}

/// Inverse of [`pauli_expand`].
pub fn pauli_reconstruct(c: &PauliCoefficients) -> HermitianOperator {
    let n = c.num_qubits;
    let dim = 1usize << n;
    let mut acc = ComplexMatrix::zeros(dim, dim);
    for (w, &coef) in c.coefficients.iter().enumerate() {
        if coef != 0.0 {
            acc.add_scaled(&pauli_word(&word_digits(w, n)), coef.into())
                .expect("Pauli words share the operator dimension");
        }
    }
    HermitianOperator::new(acc, &Tolerances::default()).expect("real combination of Pauli words is Hermitian")
}
