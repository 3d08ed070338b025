//! Update matrices.
//!
//! For perceptron `(k, j)` (transition `k`, output qubit `j`, both zero-based)
//! the traced generator is
//!
//! ```text
//! m_kj = tr_rest[ (1/S) sum_u M_u + 2 gamma sum_{v,w} A_vw M_vw ]
//! ```
//!
//! and the update matrix is `K_kj = eta * 2^{w_k} * i * m_kj`, where `w_k` is
//! the width of layer `k`. Under `U <- exp(i eps K) U` the combined loss then
//! changes by `eps * sum i tr(m K) = -eps * eta * sum 2^{w_k} tr(m^2) >= 0`
//! to first order.
//!
//! Two evaluation paths produce the same generators: a literal full-register
//! construction and a layer-pair reduction that folds the pairwise graph sum
//! into one backward observable per vertex.

use crate::error::{Error, Result};
use crate::graph::{GraphDataset, SupervisionMask};
use crate::linalg::matrix::I;
use crate::linalg::{commutator, partial_trace_matrix, ComplexMatrix, DensityMatrix, HermitianOperator, PureState};
use crate::qnn::{CompiledNetwork, ForwardTrace, FullSpaceNetwork, NetworkState};
use crate::tolerance::Tolerances;

use super::hyperparams::Hyperparams;

/// How the traced generators are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatrixPath {
    /// Two layers at a time with per-vertex backward observables.
    #[default]
    Reduced,
    /// Every perceptron embedded in the register of all layers; pairwise graph sum.
    FullSpace,
}

/// Untraced supervised commutator for one input/target pair, on the full register.
pub fn m_matrix_supervised(
    network: &NetworkState,
    rho_in: &DensityMatrix,
    target: &PureState,
    k: usize,
    j: usize,
) -> Result<ComplexMatrix> {
    let full = FullSpaceNetwork::new(network)?;
    full_m(&full, rho_in.matrix(), &target.projector_matrix(), k, j)
}

/// Untraced graph commutator for the ordered pair `(v, w)`, on the full register.
pub fn m_matrix_graph(
    network: &NetworkState,
    rho_in_v: &DensityMatrix,
    rho_in_w: &DensityMatrix,
    rho_out_v: &DensityMatrix,
    rho_out_w: &DensityMatrix,
    k: usize,
    j: usize,
) -> Result<ComplexMatrix> {
    let full = FullSpaceNetwork::new(network)?;
    let d_in = rho_in_v.matrix().checked_sub(rho_in_w.matrix())?;
    let d_out = rho_out_v.matrix().checked_sub(rho_out_w.matrix())?;
    full_m(&full, &d_in, &d_out, k, j)
}

fn full_m(full: &FullSpaceNetwork, x_in: &ComplexMatrix, obs: &ComplexMatrix, k: usize, j: usize) -> Result<ComplexMatrix> {
    let a = full.forward_through(x_in, k, j)?;
    let b = full.backward_after(obs, k, j)?;
    commutator(&a, &b)
}

fn check_inputs(network: &NetworkState, dataset: &GraphDataset, mask: &SupervisionMask, gamma: f64) -> Result<()> {
    let n = dataset.num_vertices();
    if mask.num_vertices() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: mask.num_vertices(),
        });
    }
    let t = network.topology();
    if dataset.input_qubits() != t.input_qubits() {
        return Err(Error::DimensionMismatch {
            expected: t.input_qubits(),
            found: dataset.input_qubits(),
        });
    }
    if dataset.output_qubits() != t.output_qubits() {
        return Err(Error::DimensionMismatch {
            expected: t.output_qubits(),
            found: dataset.output_qubits(),
        });
    }
    if mask.num_supervised() == 0 && gamma == 0.0 {
        return Err(Error::NoTrainingSignal);
    }
    Ok(())
}

/// Traced generators `m_kj` for every perceptron, indexed `[k][j]`.
pub fn traced_generators(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    gamma_graph: f64,
    path: MatrixPath,
) -> Result<Vec<Vec<ComplexMatrix>>> {
    check_inputs(network, dataset, mask, gamma_graph)?;
    match path {
        MatrixPath::Reduced => {
            let compiled = CompiledNetwork::new(network);
            let traces = dataset
                .inputs
                .iter()
                .map(|x| compiled.feedforward(x.density()))
                .collect::<Result<Vec<_>>>()?;
            Ok(reduced_generators(&compiled, &traces, dataset, mask, gamma_graph))
        }
        MatrixPath::FullSpace => full_space_generators(network, dataset, mask, gamma_graph),
    }
}

fn full_space_generators(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    gamma: f64,
) -> Result<Vec<Vec<ComplexMatrix>>> {
    let full = FullSpaceNetwork::new(network)?;
    let outputs = dataset
        .inputs
        .iter()
        .map(|x| full.output(x.density()))
        .collect::<Result<Vec<_>>>()?;
    let t = network.topology();
    let s = mask.num_supervised();
    let mut out = Vec::with_capacity(t.num_transitions());
    for k in 0..t.num_transitions() {
        let mut layer = Vec::with_capacity(t.perceptrons_in(k));
        for j in 0..t.perceptrons_in(k) {
            let support = full.support(k, j);
            let dim = 1usize << support.len();
            let mut m = ComplexMatrix::zeros(dim, dim);
            for &u in mask.supervised() {
                let mu = full_m(
                    &full,
                    dataset.inputs[u].density().matrix(),
                    &dataset.targets[u].projector_matrix(),
                    k,
                    j,
                )?;
                m.add_scaled(&partial_trace_matrix(&mu, &support)?, (1.0 / s as f64).into())?;
            }
            if gamma != 0.0 {
                for v in 0..dataset.num_vertices() {
                    for w in 0..dataset.num_vertices() {
                        let a = dataset.adjacency.get(v, w);
                        if a == 0.0 {
                            continue;
                        }
                        let d_in = dataset.inputs[v].density().matrix() - dataset.inputs[w].density().matrix();
                        let d_out = outputs[v].matrix() - outputs[w].matrix();
                        let mvw = full_m(&full, &d_in, &d_out, k, j)?;
                        m.add_scaled(&partial_trace_matrix(&mvw, &support)?, (2.0 * gamma * a).into())?;
                    }
                }
            }
            layer.push(m);
        }
        out.push(layer);
    }
    Ok(out)
}

/// Output-layer observable whose backward image drives vertex `v`:
/// `[v supervised] / S |phi_v><phi_v| + 2 gamma sum_w (A_vw + A_wv)(rho_v - rho_w)`.
pub(crate) fn backward_observables(
    outputs: &[&DensityMatrix],
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    gamma: f64,
) -> Vec<ComplexMatrix> {
    let n = dataset.num_vertices();
    let dim = dataset.targets.first().map_or(1, PureState::dim);
    let mut obs = vec![ComplexMatrix::zeros(dim, dim); n];
    let s = mask.num_supervised();
    for &u in mask.supervised() {
        obs[u] = dataset.targets[u].projector_matrix().scale_real(1.0 / s as f64);
    }
    if gamma != 0.0 {
        for v in 0..n {
            for w in 0..n {
                let a = dataset.adjacency.get(v, w) + dataset.adjacency.get(w, v);
                if a == 0.0 || v == w {
                    continue;
                }
                let diff = outputs[v].matrix() - outputs[w].matrix();
                obs[v]
                    .add_scaled(&diff, (2.0 * gamma * a).into())
                    .expect("outputs share one dimension");
            }
        }
    }
    obs
}

pub(crate) fn reduced_generators(
    compiled: &CompiledNetwork,
    traces: &[ForwardTrace],
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    gamma: f64,
) -> Vec<Vec<ComplexMatrix>> {
    let outputs: Vec<&DensityMatrix> = traces.iter().map(ForwardTrace::output).collect();
    let observables = backward_observables(&outputs, dataset, mask, gamma);
    let transitions = compiled.transitions();
    let mut generators: Vec<Vec<ComplexMatrix>> = transitions
        .iter()
        .map(|t| {
            let dim = 1usize << (t.in_qubits() + 1);
            vec![ComplexMatrix::zeros(dim, dim); t.out_qubits()]
        })
        .collect();

    for (trace, obs) in traces.iter().zip(observables) {
        if obs.max_abs() == 0.0 {
            continue;
        }
        // sigmas[k] is the observable on the output layer of transition k.
        let mut sigmas = vec![obs];
        for t in transitions.iter().skip(1).rev() {
            let next = t.adjoint(sigmas.last().expect("seeded with the output observable"));
            sigmas.push(next);
        }
        sigmas.reverse();

        for (k, t) in transitions.iter().enumerate() {
            let units = t.embedded();
            let mut backs = Vec::with_capacity(units.len());
            let mut b = crate::linalg::tensor_product(&ComplexMatrix::identity(1 << t.in_qubits()), &sigmas[k]);
            for u in units.iter().rev() {
                let prev = &(&u.adjoint() * &b) * u;
                backs.push(std::mem::replace(&mut b, prev));
            }
            backs.reverse();

            let mut a = t.pad_input(trace.layer(k).matrix());
            for (j, u) in units.iter().enumerate() {
                a = a.conjugate_by(u);
                let c = &(&a * &backs[j]) - &(&backs[j] * &a);
                let traced = partial_trace_matrix(&c, &t.perceptron_support(j)).expect("support is in range");
                generators[k][j]
                    .add_scaled(&traced, 1.0.into())
                    .expect("generator shapes match");
            }
        }
    }
    generators
}

/// `K = eta * 2^{w_k} * i * m` for every perceptron.
pub fn update_matrices_from_generators(
    network: &NetworkState,
    generators: &[Vec<ComplexMatrix>],
    eta: f64,
    tol: &Tolerances,
) -> Result<Vec<Vec<HermitianOperator>>> {
    let widths = network.topology().widths();
    generators
        .iter()
        .enumerate()
        .map(|(k, layer)| {
            let scale = I * (eta * (1u64 << widths[k]) as f64);
            layer
                .iter()
                .map(|m| {
                    let k_mat = m.scale(scale);
                    let deviation = k_mat.hermiticity_deviation();
                    if deviation > tol.hermitian * k_mat.max_abs().max(1.0) {
                        return Err(Error::Numerical(format!(
                            "update matrix not Hermitian (deviation {deviation:e})"
                        )));
                    }
                    let symmetric = (&k_mat + &k_mat.adjoint()).scale_real(0.5);
                    HermitianOperator::new(symmetric, tol)
                })
                .collect()
        })
        .collect()
}

/// Update matrices for every perceptron, indexed `[k][j]`.
pub fn k_matrices(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    hyper: &Hyperparams,
    path: MatrixPath,
) -> Result<Vec<Vec<HermitianOperator>>> {
    let generators = traced_generators(network, dataset, mask, hyper.gamma_graph, path)?;
    update_matrices_from_generators(network, &generators, hyper.eta, &Tolerances::default())
}

/// Update matrix of one perceptron, from the literal full-register formula.
pub fn k_matrix(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    hyper: &Hyperparams,
    k: usize,
    j: usize,
) -> Result<HermitianOperator> {
    network.topology().check_index(k, j)?;
    let generators = traced_generators(network, dataset, mask, hyper.gamma_graph, MatrixPath::FullSpace)?;
    let mut ks = update_matrices_from_generators(network, &generators, hyper.eta, &Tolerances::default())?;
    Ok(ks.swap_remove(k).swap_remove(j))
}

/// First-order change of the combined loss per unit step: `sum_kj Re(i tr(m_kj K_kj))`.
pub fn directional_derivative(generators: &[Vec<ComplexMatrix>], updates: &[Vec<HermitianOperator>]) -> f64 {
    generators
        .iter()
        .flatten()
        .zip(updates.iter().flatten())
        .map(|(m, k)| (I * m.trace_product(k.matrix())).re)
        .sum()
}
