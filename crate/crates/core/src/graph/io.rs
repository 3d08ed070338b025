use std::path::Path;

use serde::{Deserialize, Serialize};

use super::adjacency::Adjacency;
use super::dataset::{GraphDataset, VertexInput};
use crate::error::{Error, Result};
use crate::linalg::PureState;

pub const DATASET_FORMAT_VERSION: u32 = 1;

/// On-disk JSON form of a [`GraphDataset`]; amplitudes are interleaved `[re, im, ...]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetDocument {
    pub version: u32,
    pub num_vertices: usize,
    pub input_amplitudes: Vec<Vec<f64>>,
    pub target_amplitudes: Vec<Vec<f64>>,
    pub adjacency: Vec<Vec<f64>>,
    pub seed: Option<u64>,
}

impl DatasetDocument {
    pub fn from_dataset(ds: &GraphDataset) -> Result<Self> {
        let input_amplitudes = ds
            .inputs
            .iter()
            .enumerate()
            .map(|(v, input)| {
                input.ket().map(PureState::to_interleaved).ok_or_else(|| {
                    Error::Serialization(format!("input {v} is mixed; only pure inputs can be stored"))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            version: DATASET_FORMAT_VERSION,
            num_vertices: ds.num_vertices(),
            input_amplitudes,
            target_amplitudes: ds.targets.iter().map(PureState::to_interleaved).collect(),
            adjacency: ds.adjacency.rows(),
            seed: ds.seed,
        })
    }

    /// Rebuilds and validates the dataset.
    pub fn into_dataset(self) -> Result<GraphDataset> {
        if self.version != DATASET_FORMAT_VERSION {
            return Err(Error::Serialization(format!(
                "unsupported dataset version {}",
                self.version
            )));
        }
        if self.input_amplitudes.len() != self.num_vertices || self.target_amplitudes.len() != self.num_vertices {
            return Err(Error::Serialization(format!(
                "expected {} vertices, found {} inputs and {} targets",
                self.num_vertices,
                self.input_amplitudes.len(),
                self.target_amplitudes.len()
            )));
        }
        let inputs = self
            .input_amplitudes
            .iter()
            .map(|a| PureState::from_interleaved_unchecked(a).map(VertexInput::pure))
            .collect::<Result<_>>()?;
        let targets = self
            .target_amplitudes
            .iter()
            .map(|a| PureState::from_interleaved_unchecked(a))
            .collect::<Result<_>>()?;
        let adjacency = Adjacency::from_rows(&self.adjacency)?;
        GraphDataset::new(inputs, targets, adjacency, self.seed)
    }
}

pub fn dataset_to_json(ds: &GraphDataset) -> Result<String> {
    Ok(serde_json::to_string_pretty(&DatasetDocument::from_dataset(ds)?)?)
}

pub fn dataset_from_json(text: &str) -> Result<GraphDataset> {
    serde_json::from_str::<DatasetDocument>(text)?.into_dataset()
}

pub fn write_dataset(ds: &GraphDataset, path: &Path) -> Result<()> {
    std::fs::write(path, dataset_to_json(ds)?)?;
    Ok(())
}

pub fn read_dataset(path: &Path) -> Result<GraphDataset> {
    dataset_from_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    use super::*;
    use crate::graph::builtin::dataset_connected_clusters;

    #[test]
    fn json_round_trip() {
        let mut ds = dataset_connected_clusters(&mut ChaCha20Rng::seed_from_u64(3)).unwrap();
        ds.seed = Some(3);
        let back = dataset_from_json(&dataset_to_json(&ds).unwrap()).unwrap();
        assert_eq!(back, ds);
    }

    #[test]
    fn rejects_invalid_documents() {
        let ds = dataset_connected_clusters(&mut ChaCha20Rng::seed_from_u64(3)).unwrap();
        let mut doc = DatasetDocument::from_dataset(&ds).unwrap();
        doc.adjacency[0][1] = 0.25;
        assert!(matches!(doc.clone().into_dataset(), Err(Error::InvalidDataset(_))));
        doc.version = 7;
        assert!(matches!(doc.into_dataset(), Err(Error::Serialization(_))));
    }
}
