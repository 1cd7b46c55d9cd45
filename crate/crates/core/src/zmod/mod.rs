//! Exact integer linear algebra over finitely generated abelian groups.

mod complex;
mod fp;
mod group;
mod int;
mod lattice;
mod matrix;
mod modkernel;
mod snf;

pub use complex::{CochainComplexZ, CohomologyData};
pub use group::{
    cokernel_presentation, iso_check, solve_preimage, solve_preimage_with, AbElement, AbHom, CyclicSum, FinAbGroup,
    PreimageRule,
};
pub use int::Z;
pub use lattice::{image_generators, kernel_generators, subgroup_contains, subgroup_eq, SpanTester};
pub use matrix::{IntMatrix, SparseMatrix};
pub use snf::{smith_normal_form, snf_with, Snf, SnfTracking};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ZmodError {
    #[error("degree {index} out of range (complex determines degrees below {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("differentials do not compose to zero at degree {0}")]
    NotAComplex(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("element is not a cocycle")]
    NotACocycle,
}
