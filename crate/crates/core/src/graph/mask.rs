use rand::Rng;

use crate::error::{Error, Result};

/// Split of the vertices into supervised and unsupervised index lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupervisionMask {
    supervised: Vec<usize>,
    unsupervised: Vec<usize>,
}

impl SupervisionMask {
    /// Mask over `n_total` vertices with the given supervised indices; the
    /// complement, ascending, becomes the unsupervised list.
    pub fn new(n_total: usize, supervised: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; n_total];
        for &v in &supervised {
            if v >= n_total {
                return Err(Error::InvalidDataset(format!(
                    "supervised vertex {v} out of range for {n_total} vertices"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidDataset(format!("vertex {v} supervised twice")));
            }
        }
        let unsupervised = (0..n_total).filter(|&v| !seen[v]).collect();
        Ok(Self {
            supervised,
            unsupervised,
        })
    }

    /// The first `s` vertices are supervised.
    pub fn first(n_total: usize, s: usize) -> Result<Self> {
        if s > n_total {
            return Err(Error::InvalidDataset(format!("{s} supervised of {n_total} vertices")));
        }
        Self::new(n_total, (0..s).collect())
    }

    pub fn supervised(&self) -> &[usize] {
        &self.supervised
    }

    pub fn unsupervised(&self) -> &[usize] {
        &self.unsupervised
    }

    pub fn num_supervised(&self) -> usize {
        self.supervised.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.supervised.len() + self.unsupervised.len()
    }

    pub fn is_supervised(&self, v: usize) -> bool {
        self.supervised.contains(&v)
    }
}

/// Uniformly random `s`-subset of `0..n_total`, listed in ascending order.
pub fn select_supervised<R: Rng + ?Sized>(n_total: usize, s: usize, rng: &mut R) -> Result<SupervisionMask> {
    if s > n_total {
        return Err(Error::InvalidDataset(format!("{s} supervised of {n_total} vertices")));
    }
    let mut chosen = rand::seq::index::sample(rng, n_total, s).into_vec();
    chosen.sort_unstable();
    SupervisionMask::new(n_total, chosen)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    use super::*;

    #[test]
    fn boundaries() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        let none = select_supervised(8, 0, &mut rng).unwrap();
        assert!(none.supervised().is_empty());
        assert_eq!(none.unsupervised().len(), 8);
        let all = select_supervised(8, 8, &mut rng).unwrap();
        assert_eq!(all.supervised(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        assert!(all.unsupervised().is_empty());
        assert!(select_supervised(8, 9, &mut rng).is_err());
    }

    #[test]
    fn selection_is_uniform() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        let draws = 10_000;
        let mut counts = [0usize; 8];
        for _ in 0..draws {
            for &v in select_supervised(8, 3, &mut rng).unwrap().supervised() {
                counts[v] += 1;
            }
        }
        for (v, &c) in counts.iter().enumerate() {
            let freq = c as f64 / draws as f64;
            assert!((freq - 3.0 / 8.0).abs() < 0.02, "vertex {v}: {freq}");
        }
    }

    #[test]
    fn rejects_duplicates_and_out_of_range() {
        assert!(SupervisionMask::new(3, vec![0, 0]).is_err());
        assert!(SupervisionMask::new(3, vec![3]).is_err());
        let m = SupervisionMask::new(4, vec![2, 0]).unwrap();
        assert_eq!(m.unsupervised(), &[1, 3]);
        assert!(m.is_supervised(2));
    }
}
