use std::fmt;

use crate::error::{Error, Result};

/// Qubit widths `[m_in, m_1, ..., m_L, m_out]` of a layered network.
///
/// Layer transitions are indexed from 0: transition `k` maps the `widths[k]`
/// qubits of one layer onto the `widths[k + 1]` fresh qubits of the next,
/// through `widths[k + 1]` perceptrons.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NetworkTopology {
    widths: Vec<usize>,
}

impl NetworkTopology {
    pub fn new(widths: Vec<usize>) -> Result<Self> {
        if widths.len() < 2 {
            return Err(Error::InvalidTopology(format!(
                "need at least an input and an output layer, got {widths:?}"
            )));
        }
        if let Some(pos) = widths.iter().position(|&w| w == 0) {
            return Err(Error::InvalidTopology(format!("layer {pos} has width 0")));
        }
        Ok(Self { widths })
    }

    pub fn widths(&self) -> &[usize] {
        &self.widths
    }

    /// Number of layer transitions (hidden layers + 1).
    pub fn num_transitions(&self) -> usize {
        self.widths.len() - 1
    }

    pub fn input_qubits(&self) -> usize {
        self.widths[0]
    }

    pub fn output_qubits(&self) -> usize {
        *self.widths.last().expect("at least two layers")
    }

    pub fn total_qubits(&self) -> usize {
        self.widths.iter().sum()
    }

    /// Qubits a perceptron of transition `k` acts on: all of layer `k` plus one output qubit.
    pub fn perceptron_qubits(&self, k: usize) -> usize {
        self.widths[k] + 1
    }

    /// Number of perceptrons in transition `k`.
    pub fn perceptrons_in(&self, k: usize) -> usize {
        self.widths[k + 1]
    }

    /// First qubit of each layer in the joint register of all layers.
    pub fn layer_offsets(&self) -> Vec<usize> {
        self.widths
            .iter()
            .scan(0, |acc, &w| {
                let start = *acc;
                *acc += w;
                Some(start)
            })
            .collect()
    }

    /// All `(transition, perceptron)` pairs in application order.
    pub fn perceptron_indices(&self) -> Vec<(usize, usize)> {
        (0..self.num_transitions())
            .flat_map(|k| (0..self.perceptrons_in(k)).map(move |j| (k, j)))
            .collect()
    }

    pub fn check_index(&self, k: usize, j: usize) -> Result<()> {
        if k >= self.num_transitions() || j >= self.perceptrons_in(k) {
            return Err(Error::IndexOutOfRange {
                layer: k,
                perceptron: j,
            });
        }
        Ok(())
    }
}

impl fmt::Display for NetworkTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.widths.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("-"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_widths() {
        assert!(NetworkTopology::new(vec![3]).is_err());
        assert!(NetworkTopology::new(vec![2, 0, 1]).is_err());
        let t = NetworkTopology::new(vec![2, 3, 1]).unwrap();
        assert_eq!(t.total_qubits(), 6);
        assert_eq!(t.layer_offsets(), vec![0, 2, 5]);
        assert_eq!(t.perceptron_indices(), vec![(0, 0), (0, 1), (0, 2), (1, 0)]);
        assert_eq!(t.perceptron_qubits(1), 4);
        assert!(t.check_index(1, 1).is_err());
        assert_eq!(t.to_string(), "2-3-1");
    }
}
