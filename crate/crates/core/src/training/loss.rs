use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Adjacency, SupervisionMask};
use crate::linalg::ops::expectation;
use crate::linalg::{hs_distance, DensityMatrix, PureState};

/// Losses of one network state.
///
/// `l_sv` is `None` without supervised vertices and `l_usv` is `None` when
/// every vertex is supervised.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LossRecord {
    pub step_index: usize,
    pub l_sv: Option<f64>,
    pub l_graph: f64,
    pub l_combined: f64,
    pub l_usv: Option<f64>,
}

impl LossRecord {
    pub fn from_outputs(
        step_index: usize,
        outputs: &[DensityMatrix],
        targets: &[PureState],
        mask: &SupervisionMask,
        adjacency: &Adjacency,
        gamma_graph: f64,
    ) -> Result<Self> {
        check_lengths(outputs.len(), targets.len(), mask)?;
        let l_sv = mean_fidelity(outputs, targets, mask.supervised());
        let l_usv = mean_fidelity(outputs, targets, mask.unsupervised());
        let l_graph = loss_graph(outputs, adjacency)?;
        Ok(Self {
            step_index,
            l_sv,
            l_graph,
            l_combined: l_sv.unwrap_or(0.0) + gamma_graph * l_graph,
            l_usv,
        })
    }
}

fn check_lengths(outputs: usize, targets: usize, mask: &SupervisionMask) -> Result<()> {
    if outputs != targets {
        return Err(Error::DimensionMismatch {
            expected: targets,
            found: outputs,
        });
    }
    if mask.num_vertices() != targets {
        return Err(Error::DimensionMismatch {
            expected: targets,
            found: mask.num_vertices(),
        });
    }
    Ok(())
}

fn mean_fidelity(outputs: &[DensityMatrix], targets: &[PureState], vertices: &[usize]) -> Option<f64> {
    if vertices.is_empty() {
        return None;
    }
    let sum: f64 = vertices
        .iter()
        .map(|&v| expectation(&targets[v], outputs[v].matrix()).clamp(0.0, 1.0))
        .sum();
    Some(sum / vertices.len() as f64)
}

/// Mean fidelity of the supervised outputs with their targets.
pub fn loss_supervised(outputs: &[DensityMatrix], targets: &[PureState], mask: &SupervisionMask) -> Result<f64> {
    check_lengths(outputs.len(), targets.len(), mask)?;
    check_dims(outputs, targets)?;
    mean_fidelity(outputs, targets, mask.supervised()).ok_or(Error::NoSupervisedVertices)
}

/// Mean fidelity of the unsupervised outputs with their targets.
pub fn loss_testing(outputs: &[DensityMatrix], targets: &[PureState], mask: &SupervisionMask) -> Result<f64> {
    check_lengths(outputs.len(), targets.len(), mask)?;
    check_dims(outputs, targets)?;
    mean_fidelity(outputs, targets, mask.unsupervised()).ok_or(Error::NoTestVertices)
}

/// `sum_{v,w} A_vw tr((rho_v - rho_w)^2)` over ordered pairs.
pub fn loss_graph(outputs: &[DensityMatrix], adjacency: &Adjacency) -> Result<f64> {
    if outputs.len() != adjacency.len() {
        return Err(Error::DimensionMismatch {
            expected: adjacency.len(),
            found: outputs.len(),
        });
    }
    let mut total = 0.0;
    for v in 0..outputs.len() {
        for w in 0..outputs.len() {
            let a = adjacency.get(v, w);
            if a != 0.0 {
                total += a * hs_distance(&outputs[v], &outputs[w])?;
            }
        }
    }
    Ok(total)
}

/// `l_sv + gamma_graph * l_graph`.
pub fn loss_combined(
    outputs: &[DensityMatrix],
    targets: &[PureState],
    mask: &SupervisionMask,
    adjacency: &Adjacency,
    gamma_graph: f64,
) -> Result<f64> {
    Ok(loss_supervised(outputs, targets, mask)? + gamma_graph * loss_graph(outputs, adjacency)?)
}

fn check_dims(outputs: &[DensityMatrix], targets: &[PureState]) -> Result<()> {
    for (rho, phi) in outputs.iter().zip(targets) {
        if rho.dim() != phi.dim() {
            return Err(Error::DimensionMismatch {
                expected: phi.dim(),
                found: rho.dim(),
            });
        }
    }
    Ok(())
}
