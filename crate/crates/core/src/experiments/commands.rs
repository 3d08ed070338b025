use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{DatasetSource, ExperimentConfig, ResolvedConfig};
use super::csv_io::{sweep_rows, training_rows, write_rows};
use super::svg::{emit_svg, PlotKind};
use crate::error::{Error, Result};
use crate::graph::{write_dataset, BuiltinDataset, GraphDataset, SupervisionMask};
use crate::qnn::{network_output, write_network, NetworkState};
use crate::tolerance::Tolerances;
use crate::training::{
    finite_difference_check, run_shot, shot_rng, sweep_supervised, FdReport, ShotOutcome, SweepTable,
};

pub const TRAINING_CSV: &str = "training.csv";
pub const SWEEP_CSV: &str = "sweep.csv";
pub const MANIFEST: &str = "manifest.json";

/// Unitarity bound checked on every trained perceptron.
pub const UNITARITY_BOUND: f64 = 1e-8;
/// Trace bound checked on every trained output state.
pub const TRACE_BOUND: f64 = 1e-9;
/// Lower bound on the smallest eigenvalue of every trained output state.
pub const EIGENVALUE_BOUND: f64 = -1e-8;

fn prepare_output(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    Ok(())
}

#[derive(Debug, Clone)]
pub struct GenDataSummary {
    pub path: PathBuf,
    pub num_vertices: usize,
    pub num_edges: usize,
}

/// Writes the configured builtin dataset, with inputs drawn from the seed.
pub fn cmd_gen_data(cfg: &ResolvedConfig) -> Result<GenDataSummary> {
    let DatasetSource::Builtin(builtin) = cfg.source else {
        return Err(Error::Config("gen-data needs a builtin dataset name".into()));
    };
    let mut rng = shot_rng(cfg.hyper.seed, 0, 0);
    let mut ds = builtin.build(&mut rng)?;
    ds.seed = Some(cfg.hyper.seed);
    prepare_output(&cfg.config.output_dir)?;
    let path = cfg.config.output_dir.join(format!("dataset_{builtin}.json"));
    write_dataset(&ds, &path)?;
    Ok(GenDataSummary {
        path,
        num_vertices: ds.num_vertices(),
        num_edges: ds.adjacency.num_edges(),
    })
}

/// Checks unitarity of every perceptron and the state axioms of every output.
pub fn check_trained(network: &NetworkState, dataset: &GraphDataset) -> Result<()> {
    let dev = network.max_unitarity_deviation();
    if dev > UNITARITY_BOUND {
        return Err(Error::Numerical(format!("perceptron unitarity deviation {dev:e}")));
    }
    for (v, input) in dataset.inputs.iter().enumerate() {
        let out = network_output(network, input.density())?;
        let tr = out.matrix().trace();
        if (tr.re - 1.0).abs() > TRACE_BOUND || tr.im.abs() > TRACE_BOUND {
            return Err(Error::Numerical(format!("output {v} has trace {tr}")));
        }
        let min = out.min_eigenvalue();
        if min < EIGENVALUE_BOUND {
            return Err(Error::Numerical(format!("output {v} has eigenvalue {min:e}")));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct TrainOutput {
    pub csv: PathBuf,
    pub svg: Option<PathBuf>,
    pub mask: SupervisionMask,
    pub outcome: ShotOutcome,
}

/// Trains both arms on shot 0 of the configured supervised count.
pub fn run_training(cfg: &ResolvedConfig) -> Result<(ShotOutcome, SupervisionMask, GraphDataset)> {
    let builder = |rng: &mut _| cfg.source.build(rng);
    let s = cfg.config.s;
    let outcome = run_shot(&builder, &cfg.topology, &cfg.hyper, s, 0)?;
    let dataset = builder(&mut shot_rng(cfg.hyper.seed, s, 0))?;
    let mask = SupervisionMask::new(dataset.num_vertices(), outcome.graph.mask.clone())?;
    check_trained(&outcome.supervised.final_network, &dataset)?;
    check_trained(&outcome.graph.final_network, &dataset)?;
    Ok((outcome, mask, dataset))
}

/// Writes the per-round CSV and both final networks.
pub fn cmd_train(cfg: &ResolvedConfig) -> Result<TrainOutput> {
    let (outcome, mask, _) = run_training(cfg)?;
    let rows = training_rows(&outcome.supervised, &outcome.graph)?;
    let dir = &cfg.config.output_dir;
    prepare_output(dir)?;
    let csv = dir.join(TRAINING_CSV);
    write_rows(&csv, &rows)?;
    write_network(&outcome.supervised.final_network, &dir.join("network_supervised.json"))?;
    write_network(&outcome.graph.final_network, &dir.join("network_graph.json"))?;
    let svg = if cfg.config.emit_svg {
        Some(emit_svg(&csv, PlotKind::Training)?)
    } else {
        None
    };
    Ok(TrainOutput {
        csv,
        svg,
        mask,
        outcome,
    })
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub csv: PathBuf,
    pub svg: Option<PathBuf>,
    pub table: SweepTable,
}

/// Writes the per-S mean CSV. `jobs` sets the worker count and never the results.
pub fn cmd_sweep(cfg: &ResolvedConfig, jobs: usize) -> Result<SweepOutput> {
    let builder = |rng: &mut _| cfg.source.build(rng);
    let table = sweep_supervised(&builder, &cfg.topology, &cfg.hyper, &cfg.s_values, jobs)?;
    let rows = sweep_rows(&table)?;
    let dir = &cfg.config.output_dir;
    prepare_output(dir)?;
    let csv = dir.join(SWEEP_CSV);
    write_rows(&csv, &rows)?;
    let svg = if cfg.config.emit_svg {
        Some(emit_svg(&csv, PlotKind::Sweep)?)
    } else {
        None
    };
    Ok(SweepOutput { csv, svg, table })
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub example: String,
    pub config: ExperimentConfig,
    pub gamma_graph: f64,
    pub s_values: Vec<usize>,
    pub master_seed: u64,
    /// How per-shot random streams derive from the master seed.
    pub shot_streams: String,
    pub files: Vec<String>,
}

/// Config of a replication run: the example's defaults with the given seed.
pub fn replicate_config(example: BuiltinDataset, seed: u64, output_dir: PathBuf, emit_svg: bool) -> ExperimentConfig {
    ExperimentConfig {
        dataset: example.name().into(),
        gamma_graph: Some(example.default_gamma()),
        s: 3,
        seed,
        output_dir,
        emit_svg,
        ..ExperimentConfig::default()
    }
}

/// Training CSV, sweep CSV, optional plots and a manifest for one example.
pub fn cmd_replicate(config: &ExperimentConfig, jobs: usize) -> Result<Manifest> {
    let cfg = config.resolve()?;
    let DatasetSource::Builtin(example) = cfg.source else {
        return Err(Error::Config("replicate needs a builtin dataset".into()));
    };
    let train = cmd_train(&cfg)?;
    let sweep = cmd_sweep(&cfg, jobs)?;
    let mut files = vec![TRAINING_CSV.to_string(), SWEEP_CSV.to_string()];
    for svg in [&train.svg, &sweep.svg].into_iter().flatten() {
        files.push(file_name(svg));
    }
    files.push(MANIFEST.into());
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME").into(),
        version: env!("CARGO_PKG_VERSION").into(),
        command: "replicate".into(),
        example: example.name().into(),
        config: cfg.config.clone(),
        gamma_graph: cfg.hyper.gamma_graph,
        s_values: cfg.s_values.clone(),
        master_seed: cfg.hyper.seed,
        shot_streams: "ChaCha20 seeded with the master seed, stream (S << 32) | shot; \
                       inputs, mask, then network drawn in that order; both arms share the stream"
            .into(),
        files,
    };
    let text = serde_json::to_string_pretty(&manifest)?;
    std::fs::write(cfg.config.output_dir.join(MANIFEST), text + "\n")?;
    Ok(manifest)
}

fn file_name(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

/// Probe step sizes for `check-gradients`.
pub const GRADIENT_PROBES: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// Finite-difference check on shot 0 of the configured run; fails when the
/// residual does not shrink with the step.
pub fn cmd_check_gradients(cfg: &ResolvedConfig) -> Result<FdReport> {
    let mut rng = shot_rng(cfg.hyper.seed, cfg.config.s, 0);
    let dataset = cfg.source.build(&mut rng)?;
    let mask = crate::graph::select_supervised(dataset.num_vertices(), cfg.config.s, &mut rng)?;
    let network = crate::qnn::init_network(&cfg.topology, &mut rng);
    let report = finite_difference_check(&network, &dataset, &mask, &cfg.hyper, &GRADIENT_PROBES)?;
    prepare_output(&cfg.config.output_dir)?;
    std::fs::write(
        cfg.config.output_dir.join("gradient_check.json"),
        serde_json::to_string_pretty(&report)? + "\n",
    )?;
    let shrinking = report
        .probes
        .windows(2)
        .all(|w| w[1].abs_residual <= w[0].abs_residual || w[1].abs_residual < Tolerances::default().equality);
    if !shrinking || report.probes.iter().any(|p| !p.numeric.is_finite()) {
        return Err(Error::Numerical(format!(
            "finite-difference residual does not shrink: {:?}",
            report.probes
        )));
    }
    Ok(report)
}
