//! Multi-qubit operations on dense matrices.
//!
//! Qubit 0 is always the leftmost (slowest-varying) tensor factor: in an
//! n-qubit basis index, qubit `q` is bit `n - 1 - q`.

use std::collections::HashSet;

use super::matrix::{ComplexMatrix, ZERO};
use super::state::{qubits_for_dim, DensityMatrix, PureState};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Kronecker product `a ⊗ b`, with `a`'s index varying slowest.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (ar, ac, br, bc) = (a.rows(), a.cols(), b.rows(), b.cols());
    let mut out = ComplexMatrix::zeros(ar * br, ac * bc);
    let cols = ac * bc;
    let data = out.data_mut();
    for i in 0..ar {
        for j in 0..ac {
            let aij = a.get(i, j);
            if aij == ZERO {
                continue;
            }
            for k in 0..br {
                let row = (i * br + k) * cols + j * bc;
                for l in 0..bc {
                    data[row + l] = aij * b.get(k, l);
                }
            }
        }
    }
    out
}

/// Tensor product of pure states.
pub fn tensor_states(a: &PureState, b: &PureState) -> PureState {
    let amps = a
        .amplitudes()
        .iter()
        .flat_map(|&x| b.amplitudes().iter().map(move |&y| x * y))
        .collect();
    PureState::from_amplitudes_unchecked(amps).expect("product of power-of-two dimensions")
}

/// `ab - ba`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    Ok(&(a * b) - &(b * a))
}

fn check_qubit_list(qubits: &[usize], num_qubits: usize) -> Result<()> {
    let mut seen = HashSet::with_capacity(qubits.len());
    for &q in qubits {
        if q >= num_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits,
            });
        }
        if !seen.insert(q) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    Ok(())
}

/// Full-register index offsets for every assignment of the listed qubits,
/// the first listed qubit being the most significant bit of the assignment.
fn scatter_offsets(qubits: &[usize], num_qubits: usize) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|a| {
            qubits
                .iter()
                .enumerate()
                .filter(|(p, _)| a >> (k - 1 - p) & 1 == 1)
                .map(|(_, &q)| 1usize << (num_qubits - 1 - q))
                .sum()
        })
        .collect()
}

fn complement(qubits: &[usize], num_qubits: usize) -> Vec<usize> {
    (0..num_qubits).filter(|q| !qubits.contains(q)).collect()
}

/// Partial trace of an arbitrary square operator, keeping `keep` in the listed order.
pub fn partial_trace_matrix(m: &ComplexMatrix, keep: &[usize]) -> Result<ComplexMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = qubits_for_dim(m.rows())?;
    if keep.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    check_qubit_list(keep, n)?;
    let kept = scatter_offsets(keep, n);
    let traced = scatter_offsets(&complement(keep, n), n);
    let dim = kept.len();
    Ok(ComplexMatrix::from_fn(dim, dim, |a, b| {
        let (ra, rb) = (kept[a], kept[b]);
        traced.iter().map(|&t| m.get(ra + t, rb + t)).sum()
    }))
}

/// Reduced state on the qubits in `keep`, in the listed order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    DensityMatrix::from_matrix_unchecked(partial_trace_matrix(rho.matrix(), keep)?)
}

/// Embeds an operator acting on `targets` into a `total_qubits` register,
/// acting as the identity on every other qubit. No unitarity check.
pub fn embed_operator(op: &ComplexMatrix, total_qubits: usize, targets: &[usize]) -> Result<ComplexMatrix> {
    if !op.is_square() {
        return Err(Error::NotSquare {
            rows: op.rows(),
            cols: op.cols(),
        });
    }
    if targets.is_empty() {
        return Err(Error::EmptyKeepSet);
    }
    check_qubit_list(targets, total_qubits)?;
    let expected = 1usize << targets.len();
    if op.rows() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: op.rows(),
        });
    }
    let sub = scatter_offsets(targets, total_qubits);
    let rest = scatter_offsets(&complement(targets, total_qubits), total_qubits);
    let dim = 1usize << total_qubits;
    let mut out = ComplexMatrix::zeros(dim, dim);
    for &r in &rest {
        for (a, &sa) in sub.iter().enumerate() {
            for (b, &sb) in sub.iter().enumerate() {
                let v = op.get(a, b);
                if v != ZERO {
                    out.set(r + sa, r + sb, v);
                }
            }
        }
    }
    Ok(out)
}

/// Embeds a unitary acting on `targets` into a `total_qubits` register.
///
/// Rejects `u` if `max |u^dagger u - I|` exceeds `tol.unitary`.
pub fn embed_unitary(
    u: &ComplexMatrix,
    total_qubits: usize,
    targets: &[usize],
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let deviation = u.unitarity_deviation();
    if deviation > tol.unitary {
        return Err(Error::NotUnitary { deviation });
    }
    embed_operator(u, total_qubits, targets)
}

/// `x ⊗ |0...0><0...0|` with `ancilla_qubits` trailing ancillas.
pub fn tensor_zero_ancilla(x: &ComplexMatrix, ancilla_qubits: usize) -> ComplexMatrix {
    let (r, c) = (x.rows() << ancilla_qubits, x.cols() << ancilla_qubits);
    let mut out = ComplexMatrix::zeros(r, c);
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            out.set(i << ancilla_qubits, j << ancilla_qubits, x.get(i, j));
        }
    }
    out
}

/// `<0...0| y |0...0>` over the trailing `ancilla_qubits`.
pub fn ancilla_zero_block(y: &ComplexMatrix, ancilla_qubits: usize) -> ComplexMatrix {
    let (r, c) = (y.rows() >> ancilla_qubits, y.cols() >> ancilla_qubits);
    ComplexMatrix::from_fn(r, c, |i, j| y.get(i << ancilla_qubits, j << ancilla_qubits))
}

fn check_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// `<phi| rho |phi>`, clamped to `[0, 1]`.
pub fn fidelity_pure(phi: &PureState, rho: &DensityMatrix) -> Result<f64> {
    check_same_dim(rho.dim(), phi.dim())?;
    Ok(expectation(phi, rho.matrix()).clamp(0.0, 1.0))
}

/// Real part of `<phi| m |phi>`.
pub(crate) fn expectation(phi: &PureState, m: &ComplexMatrix) -> f64 {
    let amps = phi.amplitudes();
    let mut acc = ZERO;
    for (i, ai) in amps.iter().enumerate() {
        let mut row = ZERO;
        for (j, aj) in amps.iter().enumerate() {
            row += m.get(i, j) * aj;
        }
        acc += ai.conj() * row;
    }
    acc.re
}

/// Hilbert-Schmidt distance `tr((rho - sigma)^2)`.
pub fn hs_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_same_dim(rho.dim(), sigma.dim())?;
    let diff = rho.matrix() - sigma.matrix();
    Ok(diff.trace_product(&diff).re)
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::linalg::matrix::pauli;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn kronecker_examples() {
        let zero = PureState::basis(1, 0).unwrap();
        let both = tensor_states(&zero, &zero);
        assert_eq!(both.amplitudes(), &[c(1.0), c(0.0), c(0.0), c(0.0)]);

        let xz = tensor_product(&pauli::x(), &pauli::z());
        let expected = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(xz, expected);

        let eye = tensor_product(&ComplexMatrix::identity(2), &ComplexMatrix::identity(3));
        assert_eq!(eye, ComplexMatrix::identity(6));
    }

    #[test]
    fn bell_state_reduces_to_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::from_real(&[s, 0.0, 0.0, s]).unwrap().to_density();
        let reduced = partial_trace(&bell, &[0]).unwrap();
        assert!(reduced
            .matrix()
            .approx_eq(DensityMatrix::maximally_mixed(1).matrix(), 1e-15));
    }

    #[test]
    fn partial_trace_errors() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(partial_trace(&rho, &[]), Err(Error::EmptyKeepSet)));
        assert!(matches!(
            partial_trace(&rho, &[2]),
            Err(Error::QubitOutOfRange { index: 2, .. })
        ));
        assert!(matches!(partial_trace(&rho, &[1, 1]), Err(Error::DuplicateQubit(1))));
    }

    #[test]
    fn keep_order_permutes_factors() {
        let a = PureState::from_real(&[0.6, 0.8]).unwrap().to_density();
        let b = PureState::basis(1, 1).unwrap().to_density();
        let ab = DensityMatrix::from_matrix_unchecked(tensor_product(a.matrix(), b.matrix())).unwrap();
        let swapped = partial_trace(&ab, &[1, 0]).unwrap();
        assert!(swapped
            .matrix()
            .approx_eq(&tensor_product(b.matrix(), a.matrix()), 1e-15));
    }

    #[test]
    fn embed_examples() {
        let tol = Tolerances::default();
        let x1 = embed_unitary(&pauli::x(), 2, &[1], &tol).unwrap();
        assert_eq!(x1, tensor_product(&ComplexMatrix::identity(2), &pauli::x()));

        let id = embed_unitary(&ComplexMatrix::identity(4), 3, &[2, 0], &tol).unwrap();
        assert_eq!(id, ComplexMatrix::identity(8));

        let not_unitary = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(
            embed_unitary(&not_unitary, 2, &[0], &tol),
            Err(Error::NotUnitary { .. })
        ));
        assert!(matches!(
            embed_unitary(&ComplexMatrix::identity(4), 3, &[1, 1], &tol),
            Err(Error::DuplicateQubit(1))
        ));
    }

    #[test]
    fn embedded_swap_matches_basis_relabeling() {
        let swap = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ])
        .unwrap();
        let embedded = embed_unitary(&swap, 3, &[2, 0], &Tolerances::default()).unwrap();
        // Brute force: exchange bit values of qubit 0 (bit 2) and qubit 2 (bit 0).
        let oracle = ComplexMatrix::from_fn(8, 8, |r, col| {
            let q0 = col >> 2 & 1;
            let q2 = col & 1;
            let image = (col & 0b010) | (q2 << 2) | q0;
            if r == image {
                c(1.0)
            } else {
                c(0.0)
            }
        });
        assert_eq!(embedded, oracle);
    }

    #[test]
    fn fidelity_examples() {
        let phi = PureState::from_real(&[0.6, 0.8]).unwrap();
        assert!((fidelity_pure(&phi, &phi.to_density()).unwrap() - 1.0).abs() < 1e-12);
        let mixed = DensityMatrix::maximally_mixed(1);
        assert!((fidelity_pure(&phi, &mixed).unwrap() - 0.5).abs() < 1e-12);

        let zero = PureState::basis(1, 0).unwrap();
        let v2 = PureState::from_amplitudes_unchecked(vec![c(0.99), c(0.21)]).unwrap();
        let rho = DensityMatrix::from_matrix_unchecked(v2.projector_matrix()).unwrap();
        assert!((fidelity_pure(&zero, &rho).unwrap() - 0.9801).abs() < 1e-12);

        assert!(fidelity_pure(&zero, &DensityMatrix::maximally_mixed(2)).is_err());
    }

    #[test]
    fn hs_distance_examples() {
        let p0 = DensityMatrix::zero_state(1);
        let p1 = PureState::basis(1, 1).unwrap().to_density();
        let mixed = DensityMatrix::maximally_mixed(1);
        assert_eq!(hs_distance(&p0, &p0).unwrap(), 0.0);
        assert!((hs_distance(&p0, &p1).unwrap() - 2.0).abs() < 1e-12);
        assert!((hs_distance(&p0, &mixed).unwrap() - 0.5).abs() < 1e-12);
        assert!(hs_distance(&p0, &DensityMatrix::zero_state(2)).is_err());
    }

    #[test]
    fn commutator_examples() {
        let z = pauli::z();
        assert_eq!(commutator(&z, &z).unwrap().max_abs(), 0.0);
        let xy = commutator(&pauli::x(), &pauli::y()).unwrap();
        let expected = pauli::z().scale(Complex64::new(0.0, 2.0));
        assert!(xy.approx_eq(&expected, 1e-15));
        assert!(commutator(&z, &ComplexMatrix::identity(4)).is_err());
    }

    #[test]
    fn ancilla_helpers_are_inverse() {
        let x = pauli::y();
        let padded = tensor_zero_ancilla(&x, 2);
        assert_eq!(padded, tensor_product(&x, DensityMatrix::zero_state(2).matrix()));
        assert_eq!(ancilla_zero_block(&padded, 2), x);
    }
}
