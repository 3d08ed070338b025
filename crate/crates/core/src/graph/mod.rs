//! Graph-structured quantum datasets.

pub mod adjacency;
pub mod builtin;
pub mod dataset;
pub mod io;
pub mod mask;

pub use adjacency::{build_adjacency_by_fidelity, Adjacency};
pub use builtin::{dataset_connected_clusters, dataset_line, BuiltinDataset};
pub use dataset::{validate_dataset, GraphDataset, ValidationReport, VertexInput, Violation};
pub use io::{dataset_from_json, dataset_to_json, read_dataset, write_dataset, DatasetDocument};
pub use mask::{select_supervised, SupervisionMask};
