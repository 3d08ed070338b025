use crate::error::{Error, Result};
use crate::linalg::PureState;

/// Dense real weight matrix over graph vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjacency {
    n: usize,
    weights: Vec<f64>,
}

impl Adjacency {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            weights: vec![0.0; n * n],
        }
    }

    /// Row-major weights; symmetry is not enforced here (see `validate_dataset`).
    pub fn from_row_major(n: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: weights.len(),
            });
        }
        Ok(Self { n, weights })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidShape("adjacency matrix must be square".into()));
        }
        Self::from_row_major(n, rows.concat())
    }

    /// Symmetric adjacency with `weight` on each listed undirected edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)], weight: f64) -> Result<Self> {
        let mut a = Self::zeros(n);
        for &(v, w) in edges {
            if v >= n || w >= n {
                return Err(Error::InvalidDataset(format!("edge ({v}, {w}) out of range")));
            }
            a.set(v, w, weight);
            a.set(w, v, weight);
        }
        Ok(a)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, v: usize, w: usize) -> f64 {
        self.weights[v * self.n + w]
    }

    #[inline]
    pub fn set(&mut self, v: usize, w: usize, weight: f64) {
        self.weights[v * self.n + w] = weight;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.weights.chunks(self.n.max(1)).map(<[f64]>::to_vec).collect()
    }

    /// Undirected edges `(v, w)` with `v < w` and a nonzero weight in either direction.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.n {
            for w in v + 1..self.n {
                if self.get(v, w) != 0.0 || self.get(w, v) != 0.0 {
                    out.push((v, w));
                }
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }
}

/// Connects `v != w` with `weight` whenever `|<phi_v|phi_w>|^2 >= threshold`.
pub fn build_adjacency_by_fidelity(targets: &[PureState], threshold: f64, weight: f64) -> Result<Adjacency> {
    if targets.is_empty() {
        return Err(Error::InvalidDataset("no target states".into()));
    }
    if !(threshold > 0.0 && threshold <= 1.0) {
        return Err(Error::InvalidDataset(format!("threshold {threshold} outside (0, 1]")));
    }
    if !(weight > 0.0 && weight.is_finite()) {
        return Err(Error::InvalidDataset(format!("edge weight {weight} must be positive")));
    }
    let n = targets.len();
    let mut a = Adjacency::zeros(n);
    for v in 0..n {
        for w in v + 1..n {
            if targets[v].overlap(&targets[w])? >= threshold {
                a.set(v, w, weight);
                a.set(w, v, weight);
            }
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_threshold_keeps_only_parallel_states() {
        let targets = vec![
            PureState::from_real(&[1.0, 0.0]).unwrap(),
            PureState::from_real(&[0.8, 0.6]).unwrap(),
            PureState::from_real(&[0.6, 0.8]).unwrap(),
        ];
        assert_eq!(build_adjacency_by_fidelity(&targets, 1.0, 1.0).unwrap(), Adjacency::zeros(3));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(build_adjacency_by_fidelity(&[], 0.5, 1.0).is_err());
        let t = vec![PureState::from_real(&[1.0, 0.0]).unwrap()];
        assert!(build_adjacency_by_fidelity(&t, 0.0, 1.0).is_err());
        assert!(build_adjacency_by_fidelity(&t, 0.5, 0.0).is_err());
    }
}
