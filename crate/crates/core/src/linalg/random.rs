use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::ComplexMatrix;
use super::state::{HermitianOperator, PureState};
use crate::error::{Error, Result};

fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of `R`'s diagonal folded back into `Q`.
pub fn haar_random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<ComplexMatrix> {
    if dim == 0 {
        return Err(Error::ZeroDimension);
    }
    let ginibre = nalgebra::DMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    let qr = ginibre.qr();
    let mut q = qr.q();
    let r = qr.r();
    for c in 0..dim {
        let d = r[(c, c)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for row in 0..dim {
            q[(row, c)] *= phase;
        }
    }
    Ok(ComplexMatrix::from_nalgebra(&q))
}

/// Pure state with i.i.d. complex standard-normal amplitudes, normalized.
pub fn random_pure_state<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> PureState {
    let amps = (0..1usize << num_qubits).map(|_| complex_normal(rng)).collect();
    PureState::normalized(amps).expect("a Gaussian vector is nonzero with probability one")
}

/// Random Hermitian matrix `(G + G^dagger) / 2` with Gaussian `G`; used by tests and diagnostics.
pub fn random_hermitian<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> HermitianOperator {
    let dim = 1usize << num_qubits;
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| complex_normal(rng));
    let h = (&g + &g.adjoint()).scale_real(0.5);
    HermitianOperator::new(h, &Default::default()).expect("symmetrized matrix is Hermitian")
}

/// Random mixed state: a uniformly weighted mixture of `rank` random pure states.
pub fn random_density<R: Rng + ?Sized>(num_qubits: usize, rank: usize, rng: &mut R) -> super::DensityMatrix {
    let dim = 1usize << num_qubits;
    let mut acc = ComplexMatrix::zeros(dim, dim);
    let rank = rank.max(1);
    for _ in 0..rank {
        let psi = random_pure_state(num_qubits, rng);
        acc.add_scaled(&psi.projector_matrix(), Complex64::new(1.0 / rank as f64, 0.0))
            .expect("same dimensions");
    }
    super::DensityMatrix::from_matrix_unchecked(acc).expect("square power-of-two matrix")
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    use super::*;

    #[test]
    fn dim_one_is_a_phase() {
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let u = haar_random_unitary(1, &mut rng).unwrap();
        assert!((u.get(0, 0).norm() - 1.0).abs() < 1e-12);
        assert!(matches!(haar_random_unitary(0, &mut rng), Err(Error::ZeroDimension)));
    }

    #[test]
    fn seeded_draws_repeat() {
        let a = haar_random_unitary(8, &mut ChaCha20Rng::seed_from_u64(5)).unwrap();
        let b = haar_random_unitary(8, &mut ChaCha20Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
        assert!(a.unitarity_deviation() < 1e-10);

        let s = random_pure_state(3, &mut ChaCha20Rng::seed_from_u64(9));
        let t = random_pure_state(3, &mut ChaCha20Rng::seed_from_u64(9));
        assert_eq!(s, t);
        assert!((s.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn haar_entry_second_moment() {
        let mut rng = ChaCha20Rng::seed_from_u64(2024);
        let samples = 10_000;
        let mean: f64 = (0..samples)
            .map(|_| haar_random_unitary(4, &mut rng).unwrap().get(1, 2).norm_sqr())
            .sum::<f64>()
            / samples as f64;
        assert!((mean - 0.25).abs() < 0.01, "mean |U_12|^2 = {mean}");
    }

    #[test]
    fn haar_is_phase_invariant_on_diagonal() {
        // Without phase correction, the diagonal of Q is biased toward the positive reals.
        let mut rng = ChaCha20Rng::seed_from_u64(77);
        let samples = 4_000;
        let mean_re: f64 = (0..samples)
            .map(|_| haar_random_unitary(2, &mut rng).unwrap().get(0, 0).re)
            .sum::<f64>()
            / samples as f64;
        assert!(mean_re.abs() < 0.03, "mean Re U_00 = {mean_re}");
    }

    #[test]
    fn single_qubit_states_are_unbiased() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let samples = 10_000;
        let mean: f64 = (0..samples)
            .map(|_| random_pure_state(1, &mut rng).amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / samples as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean |<0|psi>|^2 = {mean}");
    }
}
