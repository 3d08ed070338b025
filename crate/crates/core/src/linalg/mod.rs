//! Dense complex linear algebra for multi-qubit registers.

pub mod expm;
pub mod matrix;
pub mod ops;
pub mod pauli;
pub mod random;
pub mod state;

pub use expm::{expm_i_hermitian, herm_expm_unitary, hermitian_eigen};
pub use matrix::{pauli as pauli_matrices, ComplexMatrix};
pub use ops::{
    commutator, embed_operator, embed_unitary, fidelity_pure, hs_distance, partial_trace,
    partial_trace_matrix, tensor_product, tensor_states,
};
pub use pauli::{pauli_expand, pauli_reconstruct, pauli_word, PauliCoefficients};
pub use random::{haar_random_unitary, random_density, random_hermitian, random_pure_state};
pub use state::{DensityMatrix, HermitianOperator, PureState};

pub use num_complex::Complex64;
