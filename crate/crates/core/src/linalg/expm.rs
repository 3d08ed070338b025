use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use super::state::HermitianOperator;
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Eigenvalues (ascending order not guaranteed) and eigenvectors as columns.
pub fn hermitian_eigen(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let eig = nalgebra::SymmetricEigen::new(h.to_nalgebra());
    let values = eig.eigenvalues.iter().copied().collect();
    (values, ComplexMatrix::from_nalgebra(&eig.eigenvectors))
}

/// `exp(i * epsilon * k)` through the eigendecomposition of `k`.
pub fn herm_expm_unitary(k: &HermitianOperator, epsilon: f64) -> ComplexMatrix {
    let (values, vectors) = hermitian_eigen(k.matrix());
    let n = values.len();
    let mut scaled = vectors.clone();
    for (c, &value) in values.iter().enumerate() {
        let phase = Complex64::from_polar(1.0, epsilon * value);
        for r in 0..n {
            scaled.set(r, c, vectors.get(r, c) * phase);
        }
    }
    &scaled * &vectors.adjoint()
}

/// Like [`herm_expm_unitary`] but validates Hermiticity of a raw matrix first.
pub fn expm_i_hermitian(k: &ComplexMatrix, epsilon: f64, tol: &Tolerances) -> Result<ComplexMatrix> {
    let deviation = k.hermiticity_deviation();
    if deviation > tol.hermitian {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(herm_expm_unitary(&HermitianOperator::new(k.clone(), tol)?, epsilon))
}
