//! Exact univariate polynomials over Q and Q(i).

mod algorithms;
mod parse;
mod polynomial;
mod scalar;

pub use algorithms::{
    cauchy_bound_within, determinant, gcd, gcd_many, jet, max_root_multiplicity, real_root_carrier,
    real_root_count, resultant, roots_in_open_disk, squarefree_decomposition, squarefree_part,
    sturm_count, sturm_sequence, ExtendedRational, SquarefreeDecomposition,
};
pub use parse::{parse_polynomial, parse_scalar};
pub use polynomial::Polynomial;
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("interval endpoints must satisfy a < b")]
    EmptyInterval,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}
