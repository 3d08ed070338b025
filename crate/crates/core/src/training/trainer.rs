use serde::Serialize;

use super::gradient::{reduced_generators, update_matrices_from_generators};
use super::hyperparams::{Hyperparams, PLATEAU_TOLERANCE, PLATEAU_WINDOW};
use super::loss::LossRecord;
use crate::error::{Error, Result};
use crate::graph::{GraphDataset, SupervisionMask};
use crate::linalg::{herm_expm_unitary, HermitianOperator};
use crate::qnn::{CompiledNetwork, ForwardTrace, NetworkState};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, Serialize)]
pub struct TrainingTrace {
    pub hyperparams: Hyperparams,
    pub mask: Vec<usize>,
    /// Losses before the first update and after every update.
    pub records: Vec<LossRecord>,
    #[serde(skip)]
    pub final_network: NetworkState,
}

impl TrainingTrace {
    pub fn final_record(&self) -> &LossRecord {
        self.records.last().expect("a trace always holds the initial record")
    }
}

fn forward_all(compiled: &CompiledNetwork, dataset: &GraphDataset) -> Result<Vec<ForwardTrace>> {
    dataset
        .inputs
        .iter()
        .map(|x| compiled.feedforward(x.density()))
        .collect()
}

fn record(
    step: usize,
    traces: &[ForwardTrace],
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    gamma: f64,
) -> Result<LossRecord> {
    let outputs: Vec<_> = traces.iter().map(|t| t.output().clone()).collect();
    LossRecord::from_outputs(step, &outputs, &dataset.targets, mask, &dataset.adjacency, gamma)
}

/// Losses of `network` on `dataset`.
pub fn evaluate(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    gamma_graph: f64,
    step_index: usize,
) -> Result<LossRecord> {
    let traces = forward_all(&CompiledNetwork::new(network), dataset)?;
    record(step_index, &traces, dataset, mask, gamma_graph)
}

/// Replaces every perceptron `U` by `exp(i eps K) U`.
pub fn apply_updates(network: &NetworkState, updates: &[Vec<HermitianOperator>], epsilon: f64) -> NetworkState {
    let perceptrons = network
        .perceptrons()
        .iter()
        .zip(updates)
        .map(|(layer, ks)| {
            layer
                .iter()
                .zip(ks)
                .map(|(u, k)| &herm_expm_unitary(k, epsilon) * u)
                .collect()
        })
        .collect();
    NetworkState::from_parts_unchecked(network.topology().clone(), perceptrons)
}

fn step_inner(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    hyper: &Hyperparams,
    step: usize,
) -> Result<(NetworkState, LossRecord)> {
    let compiled = CompiledNetwork::new(network);
    let traces = forward_all(&compiled, dataset)?;
    let rec = record(step, &traces, dataset, mask, hyper.gamma_graph)?;
    let generators = reduced_generators(&compiled, &traces, dataset, mask, hyper.gamma_graph);
    let updates = update_matrices_from_generators(network, &generators, hyper.eta, &Tolerances::default())?;
    Ok((apply_updates(network, &updates, hyper.epsilon), rec))
}

fn check(network: &NetworkState, dataset: &GraphDataset, mask: &SupervisionMask, hyper: &Hyperparams) -> Result<()> {
    hyper.validate()?;
    let t = network.topology();
    if mask.num_vertices() != dataset.num_vertices() {
        return Err(Error::DimensionMismatch {
            expected: dataset.num_vertices(),
            found: mask.num_vertices(),
        });
    }
    if dataset.input_qubits() != t.input_qubits() || dataset.output_qubits() != t.output_qubits() {
        return Err(Error::InvalidDataset(format!(
            "dataset maps {} to {} qubits, network {t} does not",
            dataset.input_qubits(),
            dataset.output_qubits()
        )));
    }
    if mask.num_supervised() == 0 && hyper.gamma_graph == 0.0 {
        return Err(Error::NoTrainingSignal);
    }
    Ok(())
}

/// One synchronous update; the record holds the losses before the update.
pub fn update_step(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    hyper: &Hyperparams,
) -> Result<(NetworkState, LossRecord)> {
    check(network, dataset, mask, hyper)?;
    step_inner(network, dataset, mask, hyper, 0)
}

fn plateaued(records: &[LossRecord]) -> bool {
    if records.len() <= PLATEAU_WINDOW {
        return false;
    }
    let now = records[records.len() - 1].l_combined;
    let then = records[records.len() - 1 - PLATEAU_WINDOW].l_combined;
    (now - then) / then.abs().max(f64::MIN_POSITIVE) < PLATEAU_TOLERANCE
}

/// Runs `hyper.rounds` updates (fewer if the plateau detector is on and fires).
pub fn train(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    hyper: &Hyperparams,
) -> Result<TrainingTrace> {
    check(network, dataset, mask, hyper)?;
    let mut current = network.clone();
    let mut records = Vec::with_capacity(hyper.rounds + 1);
    for step in 0..hyper.rounds {
        let (next, rec) = step_inner(&current, dataset, mask, hyper, step)?;
        records.push(rec);
        current = next;
        if hyper.stop_on_plateau && plateaued(&records) {
            break;
        }
    }
    records.push(evaluate(&current, dataset, mask, hyper.gamma_graph, records.len())?);
    Ok(TrainingTrace {
        hyperparams: hyper.clone(),
        mask: mask.supervised().to_vec(),
        records,
        final_network: current,
    })
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    use super::*;
    use crate::graph::{dataset_connected_clusters, select_supervised};
    use crate::qnn::{init_network, NetworkTopology};

    fn setup(seed: u64) -> (NetworkState, GraphDataset, SupervisionMask) {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let ds = dataset_connected_clusters(&mut rng).unwrap();
        let mask = select_supervised(ds.num_vertices(), 3, &mut rng).unwrap();
        let net = init_network(&NetworkTopology::new(vec![3, 1]).unwrap(), &mut rng);
        (net, ds, mask)
    }

    #[test]
    fn zero_rounds_yields_initial_record() {
        let (net, ds, mask) = setup(1);
        let hyper = Hyperparams {
            rounds: 0,
            ..Hyperparams::default()
        };
        let trace = train(&net, &ds, &mask, &hyper).unwrap();
        assert_eq!(trace.records.len(), 1);
        assert_eq!(trace.final_network, net);
    }

    #[test]
    fn record_count_and_step_indices() {
        let (net, ds, mask) = setup(2);
        let hyper = Hyperparams {
            rounds: 7,
            gamma_graph: -0.5,
            ..Hyperparams::default()
        };
        let trace = train(&net, &ds, &mask, &hyper).unwrap();
        assert_eq!(trace.records.len(), 8);
        assert!(trace.records.iter().enumerate().all(|(i, r)| r.step_index == i));
    }

    #[test]
    fn update_keeps_unitarity_and_ascends() {
        let (net, ds, mask) = setup(3);
        let hyper = Hyperparams {
            epsilon: 1e-3,
            gamma_graph: -0.5,
            ..Hyperparams::default()
        };
        let (next, before) = update_step(&net, &ds, &mask, &hyper).unwrap();
        assert!(next.max_unitarity_deviation() < 1e-8);
        let after = evaluate(&next, &ds, &mask, hyper.gamma_graph, 1).unwrap();
        assert!(after.l_combined >= before.l_combined - 10.0 * hyper.epsilon.powi(2));
    }

    #[test]
    fn training_is_deterministic() {
        let (net, ds, mask) = setup(4);
        let hyper = Hyperparams {
            rounds: 5,
            gamma_graph: -0.5,
            ..Hyperparams::default()
        };
        let a = train(&net, &ds, &mask, &hyper).unwrap();
        let b = train(&net, &ds, &mask, &hyper).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.final_network, b.final_network);
    }

    #[test]
    fn plateau_detector_stops_stationary_training() {
        let (net, ds, mask) = setup(5);
        let hyper = Hyperparams {
            rounds: 400,
            epsilon: 1e-12,
            stop_on_plateau: true,
            ..Hyperparams::default()
        };
        let trace = train(&net, &ds, &mask, &hyper).unwrap();
        assert_eq!(trace.records.len(), PLATEAU_WINDOW + 2);
    }
}
