use serde::Serialize;

use super::gradient::{directional_derivative, traced_generators, update_matrices_from_generators, MatrixPath};
use super::hyperparams::Hyperparams;
use super::trainer::{apply_updates, evaluate};
use crate::error::Result;
use crate::graph::{GraphDataset, SupervisionMask};
use crate::linalg::HermitianOperator;
use crate::qnn::NetworkState;
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdProbe {
    pub epsilon: f64,
    /// `(L(s + eps) - L(s)) / eps`.
    pub numeric: f64,
    pub abs_residual: f64,
    pub rel_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdReport {
    /// `sum_kj Re(i tr(m_kj K_kj))`.
    pub analytic: f64,
    pub probes: Vec<FdProbe>,
    /// Least-squares slope of log residual against log epsilon.
    pub order: Option<f64>,
}

impl FdReport {
    pub fn max_abs_residual(&self) -> f64 {
        self.probes.iter().map(|p| p.abs_residual).fold(0.0, f64::max)
    }
}

/// Compares the analytic derivative of the combined loss along the update
/// matrices from `k_matrices` with forward differences.
pub fn finite_difference_check(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    hyper: &Hyperparams,
    probe_epsilons: &[f64],
) -> Result<FdReport> {
    let generators = traced_generators(network, dataset, mask, hyper.gamma_graph, MatrixPath::Reduced)?;
    let updates = update_matrices_from_generators(network, &generators, hyper.eta, &Tolerances::default())?;
    finite_difference_check_with(network, dataset, mask, hyper.gamma_graph, &updates, probe_epsilons)
}

/// Same check along arbitrary Hermitian directions `updates[k][j]`.
pub fn finite_difference_check_with(
    network: &NetworkState,
    dataset: &GraphDataset,
    mask: &SupervisionMask,
    gamma_graph: f64,
    updates: &[Vec<HermitianOperator>],
    probe_epsilons: &[f64],
) -> Result<FdReport> {
    let generators = traced_generators(network, dataset, mask, gamma_graph, MatrixPath::Reduced)?;
    let analytic = directional_derivative(&generators, updates);
    let base = evaluate(network, dataset, mask, gamma_graph, 0)?.l_combined;
    let mut probes = Vec::with_capacity(probe_epsilons.len());
    for &eps in probe_epsilons {
        let moved = apply_updates(network, updates, eps);
        let numeric = (evaluate(&moved, dataset, mask, gamma_graph, 1)?.l_combined - base) / eps;
        let abs_residual = (numeric - analytic).abs();
        probes.push(FdProbe {
            epsilon: eps,
            numeric,
            abs_residual,
            rel_residual: abs_residual / analytic.abs().max(f64::MIN_POSITIVE),
        });
    }
    let order = fitted_order(&probes);
    Ok(FdReport {
        analytic,
        probes,
        order,
    })
}

/// Rescales a set of update matrices to unit total Frobenius norm.
pub fn unit_direction(updates: &[Vec<HermitianOperator>]) -> Vec<Vec<HermitianOperator>> {
    let norm = updates
        .iter()
        .flatten()
        .map(|k| k.matrix().frobenius_norm().powi(2))
        .sum::<f64>()
        .sqrt();
    let factor = if norm > 0.0 { 1.0 / norm } else { 0.0 };
    updates
        .iter()
        .map(|layer| layer.iter().map(|k| k.scale(factor)).collect())
        .collect()
}

fn fitted_order(probes: &[FdProbe]) -> Option<f64> {
    let points: Vec<(f64, f64)> = probes
        .iter()
        .filter(|p| p.abs_residual > 0.0 && p.epsilon > 0.0)
        .map(|p| (p.epsilon.ln(), p.abs_residual.ln()))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    use super::*;
    use crate::graph::{dataset_line, select_supervised};
    use crate::qnn::{init_network, NetworkTopology};

    #[test]
    fn line_dataset_gradient_converges_linearly() {
        let mut rng = ChaCha20Rng::seed_from_u64(17);
        let ds = dataset_line(&mut rng).unwrap();
        let mask = select_supervised(ds.num_vertices(), 4, &mut rng).unwrap();
        let net = init_network(&NetworkTopology::new(vec![3, 1]).unwrap(), &mut rng);
        let hyper = Hyperparams::default().with_gamma(-1.0);
        let report = finite_difference_check(&net, &ds, &mask, &hyper, &[1e-3, 1e-4, 1e-5]).unwrap();
        assert!(report.analytic > 0.0);
        assert!(report.probes[1].rel_residual < 1e-2, "{report:?}");
        assert!(report.probes[2].abs_residual < report.probes[1].abs_residual);
        assert!(report.order.unwrap() > 0.8, "{report:?}");
    }

    #[test]
    fn sign_flip_flips_derivative() {
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        let ds = dataset_line(&mut rng).unwrap();
        let mask = select_supervised(ds.num_vertices(), 3, &mut rng).unwrap();
        let net = init_network(&NetworkTopology::new(vec![3, 1]).unwrap(), &mut rng);
        let gens = traced_generators(&net, &ds, &mask, 0.0, MatrixPath::Reduced).unwrap();
        let ks = update_matrices_from_generators(&net, &gens, 1.0, &Tolerances::default()).unwrap();
        let flipped: Vec<Vec<_>> = ks.iter().map(|l| l.iter().map(|k| k.scale(-1.0)).collect()).collect();
        let up = finite_difference_check_with(&net, &ds, &mask, 0.0, &ks, &[1e-5]).unwrap();
        let down = finite_difference_check_with(&net, &ds, &mask, 0.0, &flipped, &[1e-5]).unwrap();
        assert!((up.analytic + down.analytic).abs() < 1e-12);
        assert!(up.probes[0].numeric > 0.0 && down.probes[0].numeric < 0.0);
    }
}
