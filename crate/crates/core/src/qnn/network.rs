use rand::Rng;

use super::topology::NetworkTopology;
use crate::error::{Error, Result};
use crate::linalg::{embed_operator, haar_random_unitary, ComplexMatrix};
use crate::tolerance::Tolerances;

/// Topology plus one unitary per perceptron.
///
/// `perceptrons[k][j]` acts on all qubits of layer `k` followed by qubit `j`
/// of layer `k + 1`; within a transition they apply in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkState {
    topology: NetworkTopology,
    perceptrons: Vec<Vec<ComplexMatrix>>,
}

impl NetworkState {
    pub fn new(topology: NetworkTopology, perceptrons: Vec<Vec<ComplexMatrix>>, tol: &Tolerances) -> Result<Self> {
        if perceptrons.len() != topology.num_transitions() {
            return Err(Error::InvalidTopology(format!(
                "expected {} layers of perceptrons, got {}",
                topology.num_transitions(),
                perceptrons.len()
            )));
        }
        for (k, layer) in perceptrons.iter().enumerate() {
            if layer.len() != topology.perceptrons_in(k) {
                return Err(Error::InvalidTopology(format!(
                    "layer {k} needs {} perceptrons, got {}",
                    topology.perceptrons_in(k),
                    layer.len()
                )));
            }
            let dim = 1usize << topology.perceptron_qubits(k);
            for u in layer {
                if u.rows() != dim || u.cols() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: u.rows(),
                    });
                }
                let deviation = u.unitarity_deviation();
                if deviation > tol.unitary {
                    return Err(Error::NotUnitary { deviation });
                }
            }
        }
        Ok(Self {
            topology,
            perceptrons,
        })
    }

    /// Every perceptron is the identity.
    pub fn identity(topology: NetworkTopology) -> Self {
        let perceptrons = (0..topology.num_transitions())
            .map(|k| {
                let dim = 1usize << topology.perceptron_qubits(k);
                vec![ComplexMatrix::identity(dim); topology.perceptrons_in(k)]
            })
            .collect();
        Self {
            topology,
            perceptrons,
        }
    }

    pub fn topology(&self) -> &NetworkTopology {
        &self.topology
    }

    pub fn perceptrons(&self) -> &[Vec<ComplexMatrix>] {
        &self.perceptrons
    }

    pub fn layer(&self, k: usize) -> &[ComplexMatrix] {
        &self.perceptrons[k]
    }

    pub fn perceptron(&self, k: usize, j: usize) -> Result<&ComplexMatrix> {
        self.topology.check_index(k, j)?;
        Ok(&self.perceptrons[k][j])
    }

    /// Replaces one perceptron, returning a new network.
    pub fn with_perceptron(&self, k: usize, j: usize, u: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        let mut perceptrons = self.perceptrons.clone();
        self.topology.check_index(k, j)?;
        perceptrons[k][j] = u;
        Self::new(self.topology.clone(), perceptrons, tol)
    }

    /// Largest unitarity deviation over all perceptrons.
    pub fn max_unitarity_deviation(&self) -> f64 {
        self.perceptrons
            .iter()
            .flatten()
            .map(ComplexMatrix::unitarity_deviation)
            .fold(0.0, f64::max)
    }

    pub(crate) fn from_parts_unchecked(topology: NetworkTopology, perceptrons: Vec<Vec<ComplexMatrix>>) -> Self {
        Self {
            topology,
            perceptrons,
        }
    }
}

/// Haar-random perceptrons for every slot of the topology.
pub fn init_network<R: Rng + ?Sized>(topology: &NetworkTopology, rng: &mut R) -> NetworkState {
    let perceptrons = (0..topology.num_transitions())
        .map(|k| {
            let dim = 1usize << topology.perceptron_qubits(k);
            (0..topology.perceptrons_in(k))
                .map(|_| haar_random_unitary(dim, rng).expect("perceptron dimension is positive"))
                .collect()
        })
        .collect();
    NetworkState::from_parts_unchecked(topology.clone(), perceptrons)
}

/// Perceptron `j` of a transition from `in_qubits` to `out_qubits`, embedded
/// in the joint register of the two layers.
pub fn embed_in_transition(u: &ComplexMatrix, in_qubits: usize, out_qubits: usize, j: usize) -> Result<ComplexMatrix> {
    let mut targets: Vec<usize> = (0..in_qubits).collect();
    targets.push(in_qubits + j);
    embed_operator(u, in_qubits + out_qubits, &targets)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    use super::*;

    #[test]
    fn three_one_network_has_one_sixteen_dim_perceptron() {
        let t = NetworkTopology::new(vec![3, 1]).unwrap();
        let net = init_network(&t, &mut ChaCha20Rng::seed_from_u64(1));
        assert_eq!(net.perceptrons().len(), 1);
        assert_eq!(net.layer(0).len(), 1);
        assert_eq!(net.layer(0)[0].rows(), 16);
        assert!(net.max_unitarity_deviation() < 1e-10);
    }

    #[test]
    fn smallest_network_and_determinism() {
        let t = NetworkTopology::new(vec![1, 1]).unwrap();
        let a = init_network(&t, &mut ChaCha20Rng::seed_from_u64(2));
        let b = init_network(&t, &mut ChaCha20Rng::seed_from_u64(2));
        assert_eq!(a.layer(0)[0].rows(), 4);
        assert_eq!(a, b);
    }

    #[test]
    fn new_checks_shapes_and_unitarity() {
        let t = NetworkTopology::new(vec![1, 1]).unwrap();
        let tol = Tolerances::default();
        assert!(NetworkState::new(t.clone(), vec![vec![ComplexMatrix::identity(2)]], &tol).is_err());
        let bad = ComplexMatrix::identity(4).scale_real(2.0);
        assert!(matches!(
            NetworkState::new(t.clone(), vec![vec![bad]], &tol),
            Err(Error::NotUnitary { .. })
        ));
        assert!(NetworkState::new(t, vec![vec![ComplexMatrix::identity(4)]], &tol).is_ok());
    }
}
