pub mod error;
pub mod experiments;
pub mod graph;
pub mod linalg;
pub mod qnn;
pub mod tolerance;
pub mod training;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
