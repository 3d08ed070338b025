use std::path::Path;

use serde::{Deserialize, Serialize};

use super::network::NetworkState;
use super::topology::NetworkTopology;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::tolerance::Tolerances;

pub const NETWORK_FORMAT_VERSION: u32 = 1;

/// JSON form of a network: per layer, per perceptron, row-major interleaved `[re, im, ...]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NetworkDocument {
    pub version: u32,
    pub widths: Vec<usize>,
    pub perceptrons: Vec<Vec<Vec<f64>>>,
}

impl NetworkDocument {
    pub fn from_network(network: &NetworkState) -> Self {
        Self {
            version: NETWORK_FORMAT_VERSION,
            widths: network.topology().widths().to_vec(),
            perceptrons: network
                .perceptrons()
                .iter()
                .map(|layer| layer.iter().map(ComplexMatrix::to_interleaved).collect())
                .collect(),
        }
    }

    pub fn into_network(self, tol: &Tolerances) -> Result<NetworkState> {
        if self.version != NETWORK_FORMAT_VERSION {
            return Err(Error::Serialization(format!(
                "unsupported network version {}",
                self.version
            )));
        }
        let topology = NetworkTopology::new(self.widths)?;
        let perceptrons = self
            .perceptrons
            .iter()
            .enumerate()
            .map(|(k, layer)| {
                let dim = if k < topology.num_transitions() {
                    1usize << topology.perceptron_qubits(k)
                } else {
                    0
                };
                layer
                    .iter()
                    .map(|values| ComplexMatrix::from_interleaved(dim, dim, values))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        NetworkState::new(topology, perceptrons, tol)
    }
}

pub fn network_to_json(network: &NetworkState) -> Result<String> {
    Ok(serde_json::to_string(&NetworkDocument::from_network(network))?)
}

pub fn network_from_json(text: &str) -> Result<NetworkState> {
    serde_json::from_str::<NetworkDocument>(text)?.into_network(&Tolerances::default())
}

pub fn write_network(network: &NetworkState, path: &Path) -> Result<()> {
    std::fs::write(path, network_to_json(network)?)?;
    Ok(())
}

pub fn read_network(path: &Path) -> Result<NetworkState> {
    network_from_json(&std::fs::read_to_string(path)?)
}
