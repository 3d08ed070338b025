use qnn_graphlearn::graph::{select_supervised, Adjacency, BuiltinDataset, GraphDataset, SupervisionMask, VertexInput};
use qnn_graphlearn::linalg::random_pure_state;
use qnn_graphlearn::qnn::{init_network, NetworkTopology};
use qnn_graphlearn::training::{
    apply_updates, evaluate, k_matrices, k_matrix, traced_generators, train, update_step, Hyperparams, MatrixPath,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

fn random_dataset(t: &NetworkTopology, n: usize, rng: &mut ChaCha20Rng) -> GraphDataset {
    let inputs = (0..n)
        .map(|_| VertexInput::pure(random_pure_state(t.input_qubits(), rng)))
        .collect();
    let targets = (0..n).map(|_| random_pure_state(t.output_qubits(), rng)).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    GraphDataset::new(inputs, targets, Adjacency::from_edges(n, &edges, 1.0).unwrap(), None).unwrap()
}

#[test]
fn one_step_ascends_up_to_second_order() {
    let mut rng = ChaCha20Rng::seed_from_u64(100);
    let eps = 1e-3;
    for i in 0..60 {
        let widths = [vec![1, 1], vec![2, 1], vec![3, 1], vec![2, 2, 1]][i % 4].clone();
        let t = NetworkTopology::new(widths).unwrap();
        let n = rng.random_range(2..=5);
        let ds = random_dataset(&t, n, &mut rng);
        let mask = select_supervised(n, rng.random_range(0..=n), &mut rng).unwrap();
        let gamma = if mask.num_supervised() == 0 { -0.5 } else { -rng.random_range(0.0..1.0) };
        let hyper = Hyperparams {
            epsilon: eps,
            gamma_graph: gamma,
            ..Hyperparams::default()
        };
        let net = init_network(&t, &mut rng);
        let (next, before) = update_step(&net, &ds, &mask, &hyper).unwrap();
        let after = evaluate(&next, &ds, &mask, gamma, 1).unwrap();
        // Second-order allowance from the curvature along K, estimated with a half step.
        let ks = k_matrices(&net, &ds, &mask, &hyper, MatrixPath::Reduced).unwrap();
        let half = evaluate(&apply_updates(&net, &ks, eps / 2.0), &ds, &mask, gamma, 1).unwrap();
        let curvature = 4.0 * (after.l_combined - 2.0 * half.l_combined + before.l_combined).abs() / (eps * eps);
        let allowance = curvature * eps * eps;
        assert!(
            after.l_combined >= before.l_combined - allowance,
            "instance {i}: {} -> {}",
            before.l_combined,
            after.l_combined
        );
    }
}

#[test]
fn computation_order_does_not_change_update() {
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let t = NetworkTopology::new(vec![2, 2, 1]).unwrap();
    let ds = random_dataset(&t, 3, &mut rng);
    let mask = SupervisionMask::first(3, 2).unwrap();
    let net = init_network(&t, &mut rng);
    let hyper = Hyperparams::default().with_gamma(-0.5);
    let all = k_matrices(&net, &ds, &mask, &hyper, MatrixPath::Reduced).unwrap();
    // Compute each perceptron's matrix on its own, in reverse order.
    let mut single: Vec<Vec<_>> = all.iter().map(|l| Vec::with_capacity(l.len())).collect();
    let mut indices = t.perceptron_indices();
    indices.reverse();
    let mut computed = Vec::new();
    for (k, j) in indices {
        computed.push(((k, j), k_matrix(&net, &ds, &mask, &hyper, k, j).unwrap()));
    }
    computed.sort_by_key(|(idx, _)| *idx);
    for ((k, _), m) in computed {
        single[k].push(m);
    }
    let a = apply_updates(&net, &all, 0.01);
    let b = apply_updates(&net, &single, 0.01);
    for (x, y) in a.perceptrons().iter().flatten().zip(b.perceptrons().iter().flatten()) {
        assert!(x.max_abs_diff(y) < 1e-12);
    }
}

#[test]
fn graph_term_vanishes_without_weight() {
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let t = NetworkTopology::new(vec![3, 1]).unwrap();
    let ds = BuiltinDataset::Line.build(&mut rng).unwrap();
    let mask = select_supervised(ds.num_vertices(), 4, &mut rng).unwrap();
    let net = init_network(&t, &mut rng);
    let hyper = Hyperparams {
        rounds: 20,
        ..Hyperparams::default()
    };
    let mut no_edges = ds.clone();
    no_edges.adjacency = Adjacency::zeros(ds.num_vertices());
    let a = train(&net, &ds, &mask, &hyper).unwrap();
    let b = train(&net, &no_edges, &mask, &hyper).unwrap();
    assert_eq!(a.final_network, b.final_network);
}

#[test]
fn graph_only_training_ignores_targets() {
    let mut rng = ChaCha20Rng::seed_from_u64(9);
    let t = NetworkTopology::new(vec![3, 1]).unwrap();
    let ds = BuiltinDataset::Clusters.build(&mut rng).unwrap();
    let mask = SupervisionMask::first(ds.num_vertices(), 0).unwrap();
    let net = init_network(&t, &mut rng);
    let hyper = Hyperparams {
        rounds: 20,
        gamma_graph: -0.5,
        ..Hyperparams::default()
    };
    let mut other = ds.clone();
    other.targets.reverse();
    let a = train(&net, &ds, &mask, &hyper).unwrap();
    let b = train(&net, &other, &mask, &hyper).unwrap();
    assert_eq!(a.final_network, b.final_network);
}

#[test]
fn graph_loss_does_not_increase_without_supervision() {
    let mut rng = ChaCha20Rng::seed_from_u64(10);
    let eps = 1e-3;
    for _ in 0..10 {
        let t = NetworkTopology::new(vec![2, 1]).unwrap();
        let ds = random_dataset(&t, 4, &mut rng);
        let mask = SupervisionMask::first(4, 0).unwrap();
        let net = init_network(&t, &mut rng);
        let hyper = Hyperparams {
            epsilon: eps,
            gamma_graph: -0.2,
            rounds: 100,
            ..Hyperparams::default()
        };
        let trace = train(&net, &ds, &mask, &hyper).unwrap();
        for w in trace.records.windows(2) {
            assert!(w[1].l_graph <= w[0].l_graph + 10.0 * eps * eps, "{} -> {}", w[0].l_graph, w[1].l_graph);
        }
    }
}

#[test]
fn trained_single_pair_is_stationary() {
    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let t = NetworkTopology::new(vec![2, 1]).unwrap();
    let ds = GraphDataset::new(
        vec![VertexInput::pure(random_pure_state(2, &mut rng))],
        vec![random_pure_state(1, &mut rng)],
        Adjacency::zeros(1),
        None,
    )
    .unwrap();
    let mask = SupervisionMask::first(1, 1).unwrap();
    let net = init_network(&t, &mut rng);
    let hyper = Hyperparams {
        rounds: 3000,
        ..Hyperparams::default()
    };
    let trace = train(&net, &ds, &mask, &hyper).unwrap();
    assert!(trace.final_record().l_sv.unwrap() > 1.0 - 1e-9);
    let gens = traced_generators(&trace.final_network, &ds, &mask, 0.0, MatrixPath::FullSpace).unwrap();
    let largest = gens.iter().flatten().map(|m| m.max_abs()).fold(0.0, f64::max);
    assert!(largest < 1e-6, "{largest:e}");
}
