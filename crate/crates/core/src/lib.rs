pub mod cat;
pub mod coeff;
pub mod cohomology;
pub mod error;
pub mod fixtures;
pub mod nerve;
pub mod resolution;
pub mod track;
pub mod validation;
pub mod zmod;

pub use error::{Error, Result};
pub use validation::ValidationReport;
