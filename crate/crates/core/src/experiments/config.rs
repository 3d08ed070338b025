use std::path::{Path, PathBuf};

use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{read_dataset, BuiltinDataset, GraphDataset};
use crate::qnn::NetworkTopology;
use crate::training::Hyperparams;

/// Where the vertices come from.
#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSource {
    Builtin(BuiltinDataset),
    /// A dataset JSON file; every shot reuses its inputs.
    File(GraphDataset),
}

impl DatasetSource {
    /// A builtin name, or a path ending in `.json`.
    pub fn resolve(name: &str) -> Result<Self> {
        if let Ok(b) = name.parse::<BuiltinDataset>() {
            return Ok(Self::Builtin(b));
        }
        if name.ends_with(".json") {
            return Ok(Self::File(read_dataset(Path::new(name))?));
        }
        Err(Error::Config(format!(
            "unknown dataset '{name}'; expected 'clusters', 'line' or a path to a .json dataset"
        )))
    }

    pub fn build(&self, rng: &mut ChaCha20Rng) -> Result<GraphDataset> {
        match self {
            Self::Builtin(b) => b.build(rng),
            Self::File(ds) => Ok(ds.clone()),
        }
    }

    pub fn num_vertices(&self) -> usize {
        match self {
            Self::Builtin(b) => b.num_vertices(),
            Self::File(ds) => ds.num_vertices(),
        }
    }

    fn qubits(&self) -> (usize, usize) {
        match self {
            Self::Builtin(b) => (crate::graph::builtin::EXAMPLE_INPUT_QUBITS, b.targets()[0].num_qubits()),
            Self::File(ds) => (ds.input_qubits(), ds.output_qubits()),
        }
    }

    pub fn default_gamma(&self) -> f64 {
        match self {
            Self::Builtin(b) => b.default_gamma(),
            Self::File(_) => -0.5,
        }
    }
}

fn default_dataset() -> String {
    "clusters".into()
}
fn default_topology() -> Vec<usize> {
    vec![3, 1]
}
fn default_epsilon() -> f64 {
    0.01
}
fn default_eta() -> f64 {
    1.0
}
fn default_rounds() -> usize {
    1000
}
fn default_shots() -> usize {
    30
}
fn default_s() -> usize {
    3
}
fn default_output() -> PathBuf {
    PathBuf::from("out")
}

/// One JSON document configuring every command. Missing fields take defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default = "default_dataset")]
    pub dataset: String,
    #[serde(default = "default_topology")]
    pub topology: Vec<usize>,
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    #[serde(default = "default_eta")]
    pub eta: f64,
    /// Defaults to -0.5 for clusters and -1 for line.
    #[serde(default)]
    pub gamma_graph: Option<f64>,
    #[serde(default = "default_rounds")]
    pub rounds: usize,
    #[serde(default = "default_shots")]
    pub shots: usize,
    /// Supervised count for `train`.
    #[serde(default = "default_s")]
    pub s: usize,
    /// Supervised counts for `sweep`; defaults to `1..N`.
    #[serde(default)]
    pub s_values: Option<Vec<usize>>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub emit_svg: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        serde_json::from_str("{}").expect("all fields have defaults")
    }
}

/// A config checked against its dataset, ready to run.
#[derive(Debug, Clone)]
pub struct ResolvedConfig {
    pub config: ExperimentConfig,
    pub source: DatasetSource,
    pub topology: NetworkTopology,
    pub hyper: Hyperparams,
    pub s_values: Vec<usize>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Resolves the dataset and checks every field before anything runs.
    pub fn resolve(&self) -> Result<ResolvedConfig> {
        let source = DatasetSource::resolve(&self.dataset)?;
        let topology = NetworkTopology::new(self.topology.clone()).map_err(|e| Error::Config(e.to_string()))?;
        let (in_q, out_q) = source.qubits();
        if topology.input_qubits() != in_q || topology.output_qubits() != out_q {
            return Err(Error::Config(format!(
                "topology {topology} does not map {in_q} input qubits to {out_q} output qubits"
            )));
        }
        let hyper = Hyperparams {
            epsilon: self.epsilon,
            eta: self.eta,
            gamma_graph: self.gamma_graph.unwrap_or_else(|| source.default_gamma()),
            rounds: self.rounds,
            shots: self.shots,
            seed: self.seed,
            stop_on_plateau: false,
        };
        hyper.validate().map_err(|e| Error::Config(e.to_string()))?;
        let n = source.num_vertices();
        let check_s = |s: usize| {
            if s == 0 || s >= n {
                Err(Error::Config(format!(
                    "supervised count {s} must satisfy 1 <= S <= {} for {n} vertices",
                    n - 1
                )))
            } else {
                Ok(())
            }
        };
        check_s(self.s)?;
        let s_values = self.s_values.clone().unwrap_or_else(|| (1..n).collect());
        if s_values.is_empty() {
            return Err(Error::Config("s_values is empty".into()));
        }
        s_values.iter().try_for_each(|&s| check_s(s))?;
        Ok(ResolvedConfig {
            config: self.clone(),
            source,
            topology,
            hyper,
            s_values,
        })
    }
}
