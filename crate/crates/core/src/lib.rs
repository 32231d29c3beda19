pub mod discrepancy;
pub mod domain;
pub mod error;
pub mod harness;
pub mod geometry;
pub mod hypothesis;
pub mod localization;
pub mod numeric;
pub mod objectives;
pub mod oracle;
pub mod plane;
pub mod synthetic;
pub mod tables;

pub use error::{Error, Result};
