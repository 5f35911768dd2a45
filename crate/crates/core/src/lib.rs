pub mod bwb;
pub mod error;
pub mod ext;
pub mod goldens;
pub mod koszul;
pub mod partitions;
pub mod plethysm;
pub mod ring;
pub mod schur;
mod serde_util;

pub use error::{Error, Result};
