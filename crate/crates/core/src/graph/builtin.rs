//! The two example datasets: two connected clusters and a line.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::adjacency::build_adjacency_by_fidelity;
use super::dataset::{GraphDataset, VertexInput};
use crate::error::{Error, Result};
use crate::linalg::{random_pure_state, PureState};

/// Qubit count of the random input states of both examples.
pub const EXAMPLE_INPUT_QUBITS: usize = 3;

/// Target amplitudes `(a, b)` of `a|0> + b|1>` for v1..v8, as printed (three decimals).
pub const CLUSTERS_TARGETS: [[f64; 2]; 8] = [
    [1.0, 0.0],
    [0.997, 0.071],
    [0.988, 0.152],
    [0.97, 0.243],
    [0.152, 0.988],
    [0.071, 0.997],
    [0.0, 1.0],
    [0.659, 0.753],
];

/// Target amplitudes for v1..v10 of the line example, as printed.
pub const LINE_TARGETS: [[f64; 2]; 10] = [
    [1.0, 0.0],
    [0.99, 0.21],
    [0.96, 0.28],
    [0.89, 0.45],
    [0.78, 0.62],
    [0.62, 0.78],
    [0.45, 0.89],
    [0.27, 0.96],
    [0.12, 0.99],
    [0.0, 1.0],
];

/// Squared-overlap threshold reproducing the drawn cluster graph.
pub const CLUSTERS_THRESHOLD: f64 = 0.65;

/// Squared-overlap threshold reproducing the drawn path graph.
///
/// The printed coefficients give |<v2|v4>|^2 = 0.9344 and a weakest path edge
/// of 0.9491 (v5-v6), so the path is recovered for thresholds in (0.9344, 0.9491].
pub const LINE_THRESHOLD: f64 = 0.94;

pub const EXAMPLE_EDGE_WEIGHT: f64 = 1.0;

/// Which example dataset to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinDataset {
    Clusters,
    Line,
}

impl BuiltinDataset {
    pub const NAMES: [&'static str; 2] = ["clusters", "line"];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinDataset::Clusters => "clusters",
            BuiltinDataset::Line => "line",
        }
    }

    pub fn target_table(self) -> &'static [[f64; 2]] {
        match self {
            BuiltinDataset::Clusters => &CLUSTERS_TARGETS,
            BuiltinDataset::Line => &LINE_TARGETS,
        }
    }

    pub fn threshold(self) -> f64 {
        match self {
            BuiltinDataset::Clusters => CLUSTERS_THRESHOLD,
            BuiltinDataset::Line => LINE_THRESHOLD,
        }
    }

    /// Graph weight used by the published runs of this example.
    pub fn default_gamma(self) -> f64 {
        match self {
            BuiltinDataset::Clusters => -0.5,
            BuiltinDataset::Line => -1.0,
        }
    }

    pub fn num_vertices(self) -> usize {
        self.target_table().len()
    }

    pub fn targets(self) -> Vec<PureState> {
        self.target_table()
            .iter()
            .map(|ab| PureState::from_real(ab).expect("printed targets are nonzero"))
            .collect()
    }

    /// Builds the dataset with the example's threshold and fresh random inputs.
    pub fn build<R: Rng + ?Sized>(self, rng: &mut R) -> Result<GraphDataset> {
        self.build_with_threshold(self.threshold(), rng)
    }

    pub fn build_with_threshold<R: Rng + ?Sized>(self, threshold: f64, rng: &mut R) -> Result<GraphDataset> {
        let targets = self.targets();
        let adjacency = build_adjacency_by_fidelity(&targets, threshold, EXAMPLE_EDGE_WEIGHT)?;
        let inputs = (0..targets.len())
            .map(|_| VertexInput::pure(random_pure_state(EXAMPLE_INPUT_QUBITS, rng)))
            .collect();
        GraphDataset::new(inputs, targets, adjacency, None)
    }
}

impl fmt::Display for BuiltinDataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinDataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "clusters" => Ok(BuiltinDataset::Clusters),
            "line" => Ok(BuiltinDataset::Line),
            other => Err(Error::Config(format!(
                "unknown builtin dataset '{other}', valid options: {}",
                Self::NAMES.join(", ")
            ))),
        }
    }
}

/// Eight vertices in two clusters joined through v8.
pub fn dataset_connected_clusters<R: Rng + ?Sized>(rng: &mut R) -> Result<GraphDataset> {
    BuiltinDataset::Clusters.build(rng)
}

/// Ten vertices on a path from |0> to |1>.
pub fn dataset_line<R: Rng + ?Sized>(rng: &mut R) -> Result<GraphDataset> {
    BuiltinDataset::Line.build(rng)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    use super::*;

    #[test]
    fn cluster_endpoints() {
        let ds = dataset_connected_clusters(&mut ChaCha20Rng::seed_from_u64(0)).unwrap();
        assert_eq!(ds.num_vertices(), 8);
        assert_eq!(ds.targets[0], PureState::basis(1, 0).unwrap());
        assert_eq!(ds.targets[6], PureState::basis(1, 1).unwrap());
        for input in &ds.inputs {
            assert_eq!(input.num_qubits(), 3);
            assert!((input.ket().unwrap().norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn line_target_v8_is_renormalized() {
        let ds = dataset_line(&mut ChaCha20Rng::seed_from_u64(0)).unwrap();
        let norm = (0.27f64.powi(2) + 0.96f64.powi(2)).sqrt();
        let amps = ds.targets[7].amplitudes();
        assert!((amps[0].re - 0.27 / norm).abs() < 1e-15);
        assert!((amps[1].re - 0.96 / norm).abs() < 1e-15);
    }

    #[test]
    fn line_inputs_are_seeded() {
        let a = dataset_line(&mut ChaCha20Rng::seed_from_u64(4)).unwrap();
        let b = dataset_line(&mut ChaCha20Rng::seed_from_u64(4)).unwrap();
        let c = dataset_line(&mut ChaCha20Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.inputs, c.inputs);
    }

    #[test]
    fn unknown_name_lists_options() {
        let err = "ring".parse::<BuiltinDataset>().unwrap_err().to_string();
        assert!(err.contains("clusters") && err.contains("line"), "{err}");
    }
}
