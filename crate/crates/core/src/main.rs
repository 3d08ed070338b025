use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qnn_graphlearn::experiments::{
    cmd_check_gradients, cmd_gen_data, cmd_replicate, cmd_sweep, cmd_train, replicate_config, ExperimentConfig,
};
use qnn_graphlearn::graph::BuiltinDataset;
use qnn_graphlearn::Error;

#[derive(Parser)]
#[command(name = "qnn-graphlearn", version, about = "Train dissipative quantum neural networks on graph-structured quantum data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a builtin dataset with seeded random inputs.
    GenData(CommonArgs),
    /// Train the supervised and supervised+graph arms and write per-round losses.
    Train(CommonArgs),
    /// Mean final losses over shots for each supervised count.
    Sweep(CommonArgs),
    /// Training CSV, sweep CSV and manifest for one example with its default settings.
    Replicate(ReplicateArgs),
    /// Compare the analytic update direction with finite differences.
    CheckGradients(CommonArgs),
}

#[derive(Args)]
struct Overrides {
    /// Random seed of the run.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for sweeps; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    /// Output directory.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Also write SVG plots of the CSVs.
    #[arg(long)]
    emit_svg: bool,
    /// Training rounds per arm.
    #[arg(long)]
    rounds: Option<usize>,
    /// Random restarts averaged per sweep point.
    #[arg(long)]
    shots: Option<usize>,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Builtin dataset name or dataset JSON path.
    #[arg(long)]
    dataset: Option<String>,
    /// Supervised count for train and check-gradients.
    #[arg(long)]
    s: Option<usize>,
    /// Graph-loss weight of the supervised+graph arm.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct ReplicateArgs {
    /// clusters or line.
    example: String,
    #[command(flatten)]
    overrides: Overrides,
}

impl Overrides {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(output) = &self.output {
            cfg.output_dir = output.clone();
        }
        if self.emit_svg {
            cfg.emit_svg = true;
        }
        if let Some(rounds) = self.rounds {
            cfg.rounds = rounds;
        }
        if let Some(shots) = self.shots {
            cfg.shots = shots;
        }
    }

    fn jobs(&self) -> usize {
        self.jobs
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
    }
}

impl CommonArgs {
    fn config(&self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::default(),
        };
        if let Some(d) = &self.dataset {
            cfg.dataset = d.clone();
        }
        if let Some(s) = self.s {
            cfg.s = s;
        }
        if let Some(g) = self.gamma {
            cfg.gamma_graph = Some(g);
        }
        self.overrides.apply(&mut cfg);
        Ok(cfg)
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::GenData(args) => {
            let out = cmd_gen_data(&args.config()?.resolve()?)?;
            println!(
                "{}: {} vertices, {} edges",
                out.path.display(),
                out.num_vertices,
                out.num_edges
            );
        }
        Command::Train(args) => {
            let cfg = args.config()?.resolve()?;
            let out = cmd_train(&cfg)?;
            let (a, b) = (out.outcome.supervised.final_record(), out.outcome.graph.final_record());
            println!("supervised vertices: {:?}", out.mask.supervised());
            println!(
                "final testing loss: supervised {:.4}, supervised+graph {:.4}",
                a.l_usv.unwrap_or(f64::NAN),
                b.l_usv.unwrap_or(f64::NAN)
            );
            println!("wrote {}", out.csv.display());
        }
        Command::Sweep(args) => {
            let jobs = args.overrides.jobs();
            let out = cmd_sweep(&args.config()?.resolve()?, jobs)?;
            for r in &out.table.rows {
                println!(
                    "S={}: testing supervised {:.4}, supervised+graph {:.4}",
                    r.s, r.supervised_testing, r.graph_testing
                );
            }
            println!("wrote {}", out.csv.display());
        }
        Command::Replicate(args) => {
            let example: BuiltinDataset = args.example.parse()?;
            let Some(seed) = args.overrides.seed else {
                return Err(Error::Config("replicate requires --seed".into()));
            };
            let output = args
                .overrides
                .output
                .clone()
                .unwrap_or_else(|| PathBuf::from(format!("out/{example}")));
            let mut cfg = replicate_config(example, seed, output, args.overrides.emit_svg);
            args.overrides.apply(&mut cfg);
            let manifest = cmd_replicate(&cfg, args.overrides.jobs())?;
            println!(
                "wrote {} to {}",
                manifest.files.join(", "),
                cfg.output_dir.display()
            );
        }
        Command::CheckGradients(args) => {
            let report = cmd_check_gradients(&args.config()?.resolve()?)?;
            println!("analytic derivative {:.6e}", report.analytic);
            for p in &report.probes {
                println!(
                    "eps {:.0e}: finite difference {:.6e}, residual {:.3e} (relative {:.3e})",
                    p.epsilon, p.numeric, p.abs_residual, p.rel_residual
                );
            }
            if let Some(order) = report.order {
                println!("fitted order {order:.2}");
            }
        }
    }
    Ok(())
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::InvalidHyperparams(_) | Error::InvalidTopology(_) | Error::NoTrainingSignal => 2,
        Error::Numerical(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
