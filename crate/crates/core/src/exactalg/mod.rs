//! Exact integer linear algebra: Smith normal form and homology of chain
//! complexes over the integers.

mod group;
mod homology;
mod matrix;
mod snf;

pub use group::AbelianGroup;
pub use homology::{homology_of_complex, homology_with_offset};
pub use matrix::IntMatrix;
pub use snf::{smith_invariants, smith_normal_form, SmithNormalForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactAlgError {
    #[error("boundary composition into degree {degree} is nonzero")]
    CompositionNonzero { degree: usize },
    #[error("boundary in degree {degree} has {found} rows, expected {expected}")]
    ShapeMismatch {
        degree: usize,
        expected: usize,
        found: usize,
    },
    #[error("boundary out of degree 0 must be the zero map")]
    NonzeroBottomBoundary,
}
