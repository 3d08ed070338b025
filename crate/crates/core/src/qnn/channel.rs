//! Layer-to-layer channels and the feedforward pass.

use super::network::{embed_in_transition, NetworkState};
use crate::error::{Error, Result};
use crate::linalg::ops::{ancilla_zero_block, tensor_zero_ancilla};
use crate::linalg::{partial_trace_matrix, tensor_product, ComplexMatrix, DensityMatrix};
use crate::tolerance::Tolerances;

/// One transition's perceptrons embedded in the joint register of its two
/// layers (previous layer's qubits first), with cached products.
#[derive(Debug, Clone)]
pub struct CompiledTransition {
    in_qubits: usize,
    out_qubits: usize,
    embedded: Vec<ComplexMatrix>,
    /// `U_m ... U_1` restricted to inputs whose new-layer qubits are |0...0>.
    isometry: ComplexMatrix,
}

impl CompiledTransition {
    pub fn new(layer: &[ComplexMatrix], in_qubits: usize) -> Result<Self> {
        let out_qubits = layer.len();
        if out_qubits == 0 {
            return Err(Error::InvalidTopology("a layer needs at least one perceptron".into()));
        }
        let embedded = layer
            .iter()
            .enumerate()
            .map(|(j, u)| embed_in_transition(u, in_qubits, out_qubits, j))
            .collect::<Result<Vec<_>>>()?;
        let product = embedded
            .iter()
            .skip(1)
            .fold(embedded[0].clone(), |acc, u| u * &acc);
        let in_dim = 1usize << in_qubits;
        let isometry = ComplexMatrix::from_fn(product.rows(), in_dim, |r, c| product.get(r, c << out_qubits));
        Ok(Self {
            in_qubits,
            out_qubits,
            embedded,
            isometry,
        })
    }

    pub fn in_qubits(&self) -> usize {
        self.in_qubits
    }

    pub fn out_qubits(&self) -> usize {
        self.out_qubits
    }

    /// Embedded perceptrons `U_1 .. U_m` in application order.
    pub fn embedded(&self) -> &[ComplexMatrix] {
        &self.embedded
    }

    /// `tr_prev(U (x ⊗ |0..0><0..0|) U^dagger)`, for any operator `x` on the previous layer.
    pub fn apply(&self, x: &ComplexMatrix) -> ComplexMatrix {
        let joint = x.conjugate_by(&self.isometry);
        let keep: Vec<usize> = (self.in_qubits..self.in_qubits + self.out_qubits).collect();
        partial_trace_matrix(&joint, &keep).expect("kept qubits are in range")
    }

    /// Heisenberg-picture adjoint: `<0..0| U^dagger (I ⊗ y) U |0..0>`.
    pub fn adjoint(&self, y: &ComplexMatrix) -> ComplexMatrix {
        let lifted = tensor_product(&ComplexMatrix::identity(1 << self.in_qubits), y);
        &(&self.isometry.adjoint() * &lifted) * &self.isometry
    }

    /// `x ⊗ |0..0><0..0|` on the joint register.
    pub fn pad_input(&self, x: &ComplexMatrix) -> ComplexMatrix {
        tensor_zero_ancilla(x, self.out_qubits)
    }

    /// Qubits kept by `tr_rest` for perceptron `j`: the previous layer plus output qubit `j`.
    pub fn perceptron_support(&self, j: usize) -> Vec<usize> {
        let mut keep: Vec<usize> = (0..self.in_qubits).collect();
        keep.push(self.in_qubits + j);
        keep
    }

    #[allow(dead_code)]
    pub(crate) fn project_output_zero(&self, y: &ComplexMatrix) -> ComplexMatrix {
        ancilla_zero_block(y, self.out_qubits)
    }
}

/// All transitions of a network, compiled once and reused across inputs.
#[derive(Debug, Clone)]
pub struct CompiledNetwork {
    transitions: Vec<CompiledTransition>,
    tol: Tolerances,
}

impl CompiledNetwork {
    pub fn new(network: &NetworkState) -> Self {
        Self::with_tolerances(network, Tolerances::default())
    }

    pub fn with_tolerances(network: &NetworkState, tol: Tolerances) -> Self {
        let widths = network.topology().widths();
        let transitions = network
            .perceptrons()
            .iter()
            .enumerate()
            .map(|(k, layer)| CompiledTransition::new(layer, widths[k]).expect("network shapes are validated"))
            .collect();
        Self { transitions, tol }
    }

    pub fn transitions(&self) -> &[CompiledTransition] {
        &self.transitions
    }

    pub fn feedforward(&self, rho_in: &DensityMatrix) -> Result<ForwardTrace> {
        let first = &self.transitions[0];
        let expected = 1usize << first.in_qubits();
        if rho_in.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: rho_in.dim(),
            });
        }
        let mut states = Vec::with_capacity(self.transitions.len() + 1);
        states.push(rho_in.clone());
        for t in &self.transitions {
            let prev = states.last().expect("input state pushed").matrix();
            let mut next = DensityMatrix::from_matrix_unchecked(t.apply(prev))?;
            next.renormalize_if_drifted(self.tol.renormalize);
            states.push(next);
        }
        Ok(ForwardTrace { states })
    }
}

/// States of every layer for one input: `states[0]` is the input, the last is the output.
#[derive(Debug, Clone, PartialEq)]
pub struct ForwardTrace {
    states: Vec<DensityMatrix>,
}

impl ForwardTrace {
    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    pub fn input(&self) -> &DensityMatrix {
        &self.states[0]
    }

    pub fn output(&self) -> &DensityMatrix {
        self.states.last().expect("trace holds at least the input")
    }

    pub fn layer(&self, index: usize) -> &DensityMatrix {
        &self.states[index]
    }

    pub fn into_output(mut self) -> DensityMatrix {
        self.states.pop().expect("trace holds at least the input")
    }
}

/// Channel from one layer to the next, built from that transition's perceptrons.
pub fn layer_channel(state_prev: &DensityMatrix, layer: &[ComplexMatrix]) -> Result<DensityMatrix> {
    let in_qubits = state_prev.num_qubits();
    let expected = 1usize << (in_qubits + 1);
    if let Some(u) = layer.iter().find(|u| u.rows() != expected) {
        return Err(Error::DimensionMismatch {
            expected,
            found: u.rows(),
        });
    }
    let t = CompiledTransition::new(layer, in_qubits)?;
    let mut out = DensityMatrix::from_matrix_unchecked(t.apply(state_prev.matrix()))?;
    out.renormalize_if_drifted(Tolerances::default().renormalize);
    Ok(out)
}

/// Applies every layer channel in turn, keeping each intermediate state.
pub fn feedforward(network: &NetworkState, rho_in: &DensityMatrix) -> Result<ForwardTrace> {
    CompiledNetwork::new(network).feedforward(rho_in)
}

/// Final state of [`feedforward`].
pub fn network_output(network: &NetworkState, rho_in: &DensityMatrix) -> Result<DensityMatrix> {
    Ok(feedforward(network, rho_in)?.into_output())
}
