use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::hyperparams::Hyperparams;
use super::trainer::{train, TrainingTrace};
use crate::error::{Error, Result};
use crate::graph::{select_supervised, GraphDataset};
use crate::qnn::{init_network, NetworkTopology};

/// Random stream for shot `shot` at supervised count `s`.
///
/// Both arms of a shot draw inputs, mask and initial network from the same
/// stream, in that order, so they start from identical conditions.
pub fn shot_rng(master_seed: u64, s: usize, shot: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(master_seed);
    rng.set_stream(((s as u64) << 32) | shot as u64);
    rng
}

/// Both arms of one shot: `gamma_graph = 0` and the configured graph weight.
#[derive(Debug, Clone)]
pub struct ShotOutcome {
    pub supervised: TrainingTrace,
    pub graph: TrainingTrace,
}

pub fn run_shot<F>(builder: &F, topology: &NetworkTopology, hyper: &Hyperparams, s: usize, shot: usize) -> Result<ShotOutcome>
where
    F: Fn(&mut ChaCha20Rng) -> Result<GraphDataset>,
{
    let mut rng = shot_rng(hyper.seed, s, shot);
    let dataset = builder(&mut rng)?;
    let mask = select_supervised(dataset.num_vertices(), s, &mut rng)?;
    let network = init_network(topology, &mut rng);
    Ok(ShotOutcome {
        supervised: train(&network, &dataset, &mask, &hyper.with_gamma(0.0))?,
        graph: train(&network, &dataset, &mask, hyper)?,
    })
}

/// Per-arm means of the final losses at one supervised count.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub s: usize,
    pub supervised_training: f64,
    pub graph_training: f64,
    pub supervised_testing: f64,
    pub graph_testing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub shots: usize,
    pub rows: Vec<SweepRow>,
}

/// Runs `hyper.shots` paired trainings for every `s` on a pool of `jobs`
/// threads. Results do not depend on `jobs`.
pub fn sweep_supervised<F>(
    builder: &F,
    topology: &NetworkTopology,
    hyper: &Hyperparams,
    s_values: &[usize],
    jobs: usize,
) -> Result<SweepTable>
where
    F: Fn(&mut ChaCha20Rng) -> Result<GraphDataset> + Sync,
{
    hyper.validate()?;
    if s_values.is_empty() {
        return Err(Error::InvalidHyperparams("s_values is empty".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::InvalidHyperparams(format!("cannot build worker pool: {e}")))?;
    let tasks: Vec<(usize, usize)> = s_values
        .iter()
        .flat_map(|&s| (0..hyper.shots).map(move |shot| (s, shot)))
        .collect();
    let outcomes: Vec<Result<[f64; 4]>> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(s, shot)| {
                let out = run_shot(builder, topology, hyper, s, shot)?;
                let (a, b) = (out.supervised.final_record(), out.graph.final_record());
                match (a.l_sv, b.l_sv, a.l_usv, b.l_usv) {
                    (Some(x), Some(y), Some(z), Some(w)) => Ok([x, y, z, w]),
                    _ => Err(Error::InvalidHyperparams(format!(
                        "supervised count {s} leaves a loss undefined; use 1 <= S < N"
                    ))),
                }
            })
            .collect()
    });

    let mut rows = Vec::with_capacity(s_values.len());
    let mut it = outcomes.into_iter();
    for &s in s_values {
        let mut sums = [0.0; 4];
        for _ in 0..hyper.shots {
            let values = it.next().expect("one outcome per task")?;
            for (acc, v) in sums.iter_mut().zip(values) {
                *acc += v;
            }
        }
        let n = hyper.shots as f64;
        rows.push(SweepRow {
            s,
            supervised_training: sums[0] / n,
            graph_training: sums[1] / n,
            supervised_testing: sums[2] / n,
            graph_testing: sums[3] / n,
        });
    }
    Ok(SweepTable {
        shots: hyper.shots,
        rows,
    })
}
