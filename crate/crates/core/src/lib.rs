pub mod bench;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod matio;
pub mod matrix;
pub mod partition;
pub mod scalar;
pub mod verify;
