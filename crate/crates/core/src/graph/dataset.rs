use std::fmt;

use super::adjacency::Adjacency;
use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix, PureState};
use crate::tolerance::Tolerances;

/// Input state of one vertex. Pure inputs keep their ket for serialization.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexInput {
    ket: Option<PureState>,
    density: DensityMatrix,
}

impl VertexInput {
    pub fn pure(ket: PureState) -> Self {
        let density = ket.to_density();
        Self {
            ket: Some(ket),
            density,
        }
    }

    pub fn mixed(density: DensityMatrix) -> Self {
        Self { ket: None, density }
    }

    pub fn ket(&self) -> Option<&PureState> {
        self.ket.as_ref()
    }

    pub fn density(&self) -> &DensityMatrix {
        &self.density
    }

    pub fn num_qubits(&self) -> usize {
        self.density.num_qubits()
    }
}

/// Vertex-indexed inputs and target pure states plus a weighted graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphDataset {
    pub inputs: Vec<VertexInput>,
    pub targets: Vec<PureState>,
    pub adjacency: Adjacency,
    /// Seed the inputs were drawn with, when generated.
    pub seed: Option<u64>,
}

impl GraphDataset {
    /// Assembles a dataset and rejects it if `validate_dataset` finds any violation.
    pub fn new(
        inputs: Vec<VertexInput>,
        targets: Vec<PureState>,
        adjacency: Adjacency,
        seed: Option<u64>,
    ) -> Result<Self> {
        let ds = Self {
            inputs,
            targets,
            adjacency,
            seed,
        };
        let report = validate_dataset(&ds, &Tolerances::default());
        if !report.is_valid() {
            return Err(Error::InvalidDataset(report.to_string()));
        }
        Ok(ds)
    }

    pub fn num_vertices(&self) -> usize {
        self.targets.len()
    }

    pub fn input_qubits(&self) -> usize {
        self.inputs.first().map_or(0, VertexInput::num_qubits)
    }

    pub fn output_qubits(&self) -> usize {
        self.targets.first().map_or(0, PureState::num_qubits)
    }

    pub fn input_densities(&self) -> Vec<&DensityMatrix> {
        self.inputs.iter().map(VertexInput::density).collect()
    }
}

/// One broken dataset invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    LengthMismatch { inputs: usize, targets: usize, adjacency: usize },
    AsymmetricAdjacency { v: usize, w: usize },
    SelfLoop { v: usize },
    NegativeWeight { v: usize, w: usize },
    NonFiniteWeight { v: usize, w: usize },
    InputQubitMismatch { v: usize, expected: usize, found: usize },
    TargetQubitMismatch { v: usize, expected: usize, found: usize },
    InvalidInput { v: usize, reason: String },
    TargetNotNormalized { v: usize, norm: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LengthMismatch {
                inputs,
                targets,
                adjacency,
            } => write!(
                f,
                "length mismatch: {inputs} inputs, {targets} targets, {adjacency}x{adjacency} adjacency"
            ),
            Violation::AsymmetricAdjacency { v, w } => write!(f, "adjacency not symmetric at ({v}, {w})"),
            Violation::SelfLoop { v } => write!(f, "nonzero diagonal at vertex {v}"),
            Violation::NegativeWeight { v, w } => write!(f, "negative weight at ({v}, {w})"),
            Violation::NonFiniteWeight { v, w } => write!(f, "non-finite weight at ({v}, {w})"),
            Violation::InputQubitMismatch { v, expected, found } => {
                write!(f, "input {v} has {found} qubits, expected {expected}")
            }
            Violation::TargetQubitMismatch { v, expected, found } => {
                write!(f, "target {v} has {found} qubits, expected {expected}")
            }
            Violation::InvalidInput { v, reason } => write!(f, "input {v} is not a valid state: {reason}"),
            Violation::TargetNotNormalized { v, norm } => write!(f, "target {v} has norm {norm}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "no violations");
        }
        let parts: Vec<String> = self.violations.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Lists every violated dataset invariant with the offending indices.
pub fn validate_dataset(ds: &GraphDataset, tol: &Tolerances) -> ValidationReport {
    let mut violations = Vec::new();
    let n = ds.targets.len();
    if ds.inputs.len() != n || ds.adjacency.len() != n {
        violations.push(Violation::LengthMismatch {
            inputs: ds.inputs.len(),
            targets: n,
            adjacency: ds.adjacency.len(),
        });
    }

    let a = &ds.adjacency;
    for v in 0..a.len() {
        if a.get(v, v) != 0.0 {
            violations.push(Violation::SelfLoop { v });
        }
        for w in 0..a.len() {
            let weight = a.get(v, w);
            if !weight.is_finite() {
                violations.push(Violation::NonFiniteWeight { v, w });
            } else if weight < 0.0 {
                violations.push(Violation::NegativeWeight { v, w });
            }
            if w > v && a.get(v, w) != a.get(w, v) {
                violations.push(Violation::AsymmetricAdjacency { v, w });
            }
        }
    }

    if let Some(first) = ds.inputs.first() {
        let expected = first.num_qubits();
        for (v, input) in ds.inputs.iter().enumerate() {
            if input.num_qubits() != expected {
                violations.push(Violation::InputQubitMismatch {
                    v,
                    expected,
                    found: input.num_qubits(),
                });
            }
            let check = match input.ket() {
                Some(ket) if (ket.norm() - 1.0).abs() > tol.norm => {
                    Err(format!("ket norm {}", ket.norm()))
                }
                _ => input.density().validate(tol).map_err(|e| e.to_string()),
            };
            if let Err(reason) = check {
                violations.push(Violation::InvalidInput { v, reason });
            }
        }
    }

    if let Some(first) = ds.targets.first() {
        let expected = first.num_qubits();
        for (v, t) in ds.targets.iter().enumerate() {
            if t.num_qubits() != expected {
                violations.push(Violation::TargetQubitMismatch {
                    v,
                    expected,
                    found: t.num_qubits(),
                });
            }
            let norm = t.norm();
            if (norm - 1.0).abs() > tol.norm {
                violations.push(Violation::TargetNotNormalized { v, norm });
            }
        }
    }

    ValidationReport { violations }
}
