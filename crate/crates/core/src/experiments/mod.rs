//! Experiment harness behind the command-line tool.

pub mod commands;
pub mod config;
pub mod csv_io;
pub mod svg;

pub use commands::{
    check_trained, cmd_check_gradients, cmd_gen_data, cmd_replicate, cmd_sweep, cmd_train, replicate_config,
    run_training, GenDataSummary, Manifest, SweepOutput, TrainOutput,
};
pub use config::{DatasetSource, ExperimentConfig, ResolvedConfig};
pub use csv_io::{read_rows, SweepCsvRow, TrainingRow, SWEEP_HEADER, TRAINING_HEADER};
pub use svg::{emit_svg, PlotKind};
