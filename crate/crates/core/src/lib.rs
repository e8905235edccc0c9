pub mod arithmetics;
pub mod cli;
pub mod coefficients;
pub mod error;
pub mod partitions;
pub mod qseries;
pub mod sduality;

pub use coefficients::{CycNum, Rat};
pub use error::{Error, Result};
