//! Losses, update matrices and the training loop.

pub mod finite_difference;
pub mod gradient;
pub mod hyperparams;
pub mod loss;
pub mod sweep;
pub mod trainer;

pub use finite_difference::{finite_difference_check, finite_difference_check_with, unit_direction, FdProbe, FdReport};
pub use gradient::{
    directional_derivative, k_matrices, k_matrix, m_matrix_graph, m_matrix_supervised, traced_generators,
    update_matrices_from_generators, MatrixPath,
};
pub use hyperparams::Hyperparams;
pub use loss::{loss_combined, loss_graph, loss_supervised, loss_testing, LossRecord};
pub use sweep::{run_shot, shot_rng, sweep_supervised, ShotOutcome, SweepRow, SweepTable};
pub use trainer::{apply_updates, evaluate, train, update_step, TrainingTrace};
