use proptest::prelude::*;
use qnn_graphlearn::linalg::{
    expm_i_hermitian, fidelity_pure, haar_random_unitary, hs_distance, partial_trace, partial_trace_matrix,
    pauli_expand, pauli_reconstruct, random_density, random_hermitian, random_pure_state, tensor_product,
    DensityMatrix,
};
use qnn_graphlearn::Tolerances;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_trace_composes(seed in any::<u64>(), n in 3usize..=5) {
        let mut r = rng(seed);
        let rho = random_density(n, 3, &mut r);
        let keep: Vec<usize> = (0..n - 1).collect();
        let once = partial_trace_matrix(rho.matrix(), &[0, 1]).unwrap();
        let twice = partial_trace_matrix(&partial_trace_matrix(rho.matrix(), &keep).unwrap(), &[0, 1]).unwrap();
        prop_assert!(once.approx_eq(&twice, 1e-12));
        let reduced = partial_trace(&rho, &keep).unwrap();
        prop_assert!(reduced.validate(&Tolerances::default()).is_ok());
    }

    #[test]
    fn partial_trace_of_product_recovers_factor(seed in any::<u64>(), a in 1usize..=3, b in 1usize..=2) {
        let mut r = rng(seed);
        let x = random_density(a, 2, &mut r);
        let y = random_density(b, 1, &mut r);
        let joint = tensor_product(x.matrix(), y.matrix());
        let keep_a: Vec<usize> = (0..a).collect();
        let keep_b: Vec<usize> = (a..a + b).collect();
        prop_assert!(partial_trace_matrix(&joint, &keep_a).unwrap().approx_eq(x.matrix(), 1e-12));
        prop_assert!(partial_trace_matrix(&joint, &keep_b).unwrap().approx_eq(y.matrix(), 1e-12));
    }

    #[test]
    fn expm_inverse_and_unitarity(seed in any::<u64>(), n in 1usize..=3, eps in -2.0f64..2.0) {
        let mut r = rng(seed);
        let k = random_hermitian(n, &mut r);
        let tol = Tolerances::default();
        let u = expm_i_hermitian(k.matrix(), eps, &tol).unwrap();
        let v = expm_i_hermitian(k.matrix(), -eps, &tol).unwrap();
        prop_assert!(u.unitarity_deviation() < 1e-10);
        prop_assert!((&u * &v).approx_eq(&qnn_graphlearn::linalg::ComplexMatrix::identity(1 << n), 1e-10));
    }

    #[test]
    fn pauli_round_trip(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let h = random_hermitian(n, &mut r);
        let coeffs = pauli_expand(&h, &Tolerances::default()).unwrap();
        prop_assert!(pauli_reconstruct(&coeffs).matrix().approx_eq(h.matrix(), 1e-12));
    }

    #[test]
    fn hs_distance_symmetric_nonnegative(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let a = random_density(n, 2, &mut r);
        let b = random_density(n, 1, &mut r);
        let ab = hs_distance(&a, &b).unwrap();
        prop_assert!((0.0..=2.0 + 1e-12).contains(&ab));
        prop_assert!((ab - hs_distance(&b, &a).unwrap()).abs() < 1e-14);
        prop_assert!(hs_distance(&a, &a).unwrap().abs() < 1e-14);
    }

    #[test]
    fn fidelity_in_unit_interval(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let phi = random_pure_state(n, &mut r);
        let rho = random_density(n, 2, &mut r);
        let f = fidelity_pure(&phi, &rho).unwrap();
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!((fidelity_pure(&phi, &phi.to_density()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unitary_conjugation_preserves_state(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let u = haar_random_unitary(1 << n, &mut r).unwrap();
        let rho = random_density(n, 2, &mut r);
        let moved = DensityMatrix::new(rho.matrix().conjugate_by(&u), &Tolerances::default());
        prop_assert!(moved.is_ok());
    }
}
