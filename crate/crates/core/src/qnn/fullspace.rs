//! Whole-register evaluation of the network.
//!
//! Every perceptron is embedded in the joint register of all layers and the
//! output is read off after tracing out everything but the last layer. This
//! is exponentially more expensive than the layer-by-layer path and exists
//! as an independent reference for it.

use super::network::NetworkState;
use super::topology::NetworkTopology;
use crate::error::{Error, Result};
use crate::linalg::ops::tensor_zero_ancilla;
use crate::linalg::{embed_operator, partial_trace_matrix, tensor_product, ComplexMatrix, DensityMatrix};

#[derive(Debug, Clone)]
pub struct FullSpaceNetwork {
    topology: NetworkTopology,
    offsets: Vec<usize>,
    embedded: Vec<Vec<ComplexMatrix>>,
}

impl FullSpaceNetwork {
    pub fn new(network: &NetworkState) -> Result<Self> {
        let topology = network.topology().clone();
        let offsets = topology.layer_offsets();
        let total = topology.total_qubits();
        let embedded = network
            .perceptrons()
            .iter()
            .enumerate()
            .map(|(k, layer)| {
                layer
                    .iter()
                    .enumerate()
                    .map(|(j, u)| embed_operator(u, total, &support(&topology, &offsets, k, j)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            topology,
            offsets,
            embedded,
        })
    }

    pub fn topology(&self) -> &NetworkTopology {
        &self.topology
    }

    pub fn total_qubits(&self) -> usize {
        self.topology.total_qubits()
    }

    /// Qubits perceptron `(k, j)` acts on, in the joint register.
    pub fn support(&self, k: usize, j: usize) -> Vec<usize> {
        support(&self.topology, &self.offsets, k, j)
    }

    fn ordered(&self) -> impl Iterator<Item = ((usize, usize), &ComplexMatrix)> {
        self.embedded
            .iter()
            .enumerate()
            .flat_map(|(k, layer)| layer.iter().enumerate().map(move |(j, u)| ((k, j), u)))
    }

    /// `x ⊗ |0..0><0..0|` over every non-input qubit.
    pub fn pad_input(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        let expected = 1usize << self.topology.input_qubits();
        if x.rows() != expected || x.cols() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: x.rows(),
            });
        }
        Ok(tensor_zero_ancilla(x, self.total_qubits() - self.topology.input_qubits()))
    }

    /// Padded input conjugated by every perceptron up to and including `(k, j)`.
    pub fn forward_through(&self, x_in: &ComplexMatrix, k: usize, j: usize) -> Result<ComplexMatrix> {
        self.topology.check_index(k, j)?;
        let mut x = self.pad_input(x_in)?;
        for (idx, u) in self.ordered() {
            x = x.conjugate_by(u);
            if idx == (k, j) {
                break;
            }
        }
        Ok(x)
    }

    /// `I ⊗ obs` conjugated backwards by every perceptron after `(k, j)`:
    /// `U_after^dagger (I ⊗ obs) U_after`.
    pub fn backward_after(&self, obs_out: &ComplexMatrix, k: usize, j: usize) -> Result<ComplexMatrix> {
        self.topology.check_index(k, j)?;
        let out_dim = 1usize << self.topology.output_qubits();
        if obs_out.rows() != out_dim || obs_out.cols() != out_dim {
            return Err(Error::DimensionMismatch {
                expected: out_dim,
                found: obs_out.rows(),
            });
        }
        let rest = 1usize << (self.total_qubits() - self.topology.output_qubits());
        let mut b = tensor_product(&ComplexMatrix::identity(rest), obs_out);
        let after: Vec<&ComplexMatrix> = self
            .ordered()
            .skip_while(|(idx, _)| *idx != (k, j))
            .skip(1)
            .map(|(_, u)| u)
            .collect();
        for u in after.into_iter().rev() {
            b = &(&u.adjoint() * &b) * u;
        }
        Ok(b)
    }

    /// Network output from one global unitary evolution of the padded input.
    pub fn output(&self, rho_in: &DensityMatrix) -> Result<DensityMatrix> {
        let mut x = self.pad_input(rho_in.matrix())?;
        for (_, u) in self.ordered() {
            x = x.conjugate_by(u);
        }
        let last = *self.offsets.last().expect("at least two layers");
        let keep: Vec<usize> = (last..self.total_qubits()).collect();
        DensityMatrix::from_matrix_unchecked(partial_trace_matrix(&x, &keep)?)
    }

    /// Partial trace of a joint-register operator onto the support of perceptron `(k, j)`.
    pub fn trace_to_support(&self, m: &ComplexMatrix, k: usize, j: usize) -> Result<ComplexMatrix> {
        self.topology.check_index(k, j)?;
        partial_trace_matrix(m, &self.support(k, j))
    }
}

fn support(topology: &NetworkTopology, offsets: &[usize], k: usize, j: usize) -> Vec<usize> {
    let mut s: Vec<usize> = (offsets[k]..offsets[k] + topology.widths()[k]).collect();
    s.push(offsets[k + 1] + j);
    s
}

/// Output state computed on the joint register of all layers.
pub fn global_output(network: &NetworkState, rho_in: &DensityMatrix) -> Result<DensityMatrix> {
    FullSpaceNetwork::new(network)?.output(rho_in)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    use super::*;
    use crate::linalg::random_density;
    use crate::qnn::{init_network, network_output};

    #[test]
    fn agrees_with_layered_feedforward() {
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        for widths in [vec![1, 1], vec![2, 1], vec![1, 2, 1], vec![2, 2, 1], vec![2, 1, 2]] {
            let t = NetworkTopology::new(widths).unwrap();
            let net = init_network(&t, &mut rng);
            let rho = random_density(t.input_qubits(), 2, &mut rng);
            let full = global_output(&net, &rho).unwrap();
            let layered = network_output(&net, &rho).unwrap();
            assert!(full.matrix().approx_eq(layered.matrix(), 1e-12), "{t}");
        }
    }

    #[test]
    fn supports_follow_layer_offsets() {
        let t = NetworkTopology::new(vec![2, 3, 1]).unwrap();
        let full = FullSpaceNetwork::new(&NetworkState::identity(t)).unwrap();
        assert_eq!(full.support(0, 2), vec![0, 1, 4]);
        assert_eq!(full.support(1, 0), vec![2, 3, 4, 5]);
    }

    #[test]
    fn backward_after_last_perceptron_is_lifted_observable() {
        let t = NetworkTopology::new(vec![1, 1]).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(2);
        let full = FullSpaceNetwork::new(&init_network(&t, &mut rng)).unwrap();
        let obs = crate::linalg::pauli_matrices::z();
        let b = full.backward_after(&obs, 0, 0).unwrap();
        assert!(b.approx_eq(&tensor_product(&ComplexMatrix::identity(2), &obs), 0.0));
    }
}
