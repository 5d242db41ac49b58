use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{smith_invariants, AbelianGroup, ExactAlgError, IntMatrix};

/// Homology of an integer chain complex.
///
/// `boundaries[k]` is the matrix of the boundary map from degree `k` to
/// degree `k - 1`, so its column count is the rank of the degree-`k` chain
/// group and `boundaries[0]` has zero rows. Returns `H_0 .. H_{len-1}`.
pub fn homology_of_complex(boundaries: &[IntMatrix]) -> Result<Vec<AbelianGroup>, ExactAlgError> {
    for (k, pair) in boundaries.windows(2).enumerate() {
        let (lower, upper) = (&pair[0], &pair[1]);
        if upper.rows() != lower.cols() {
            return Err(ExactAlgError::ShapeMismatch {
                degree: k + 1,
                expected: lower.cols(),
                found: upper.rows(),
            });
        }
        if !(lower * upper).is_zero() {
            return Err(ExactAlgError::CompositionNonzero { degree: k + 1 });
        }
    }
    if let Some(first) = boundaries.first() {
        if first.rows() != 0 && !first.is_zero() {
            return Err(ExactAlgError::NonzeroBottomBoundary);
        }
    }

    let invariants: Vec<Vec<BigInt>> = boundaries.iter().map(smith_invariants).collect();
    let ranks: Vec<usize> = invariants
        .iter()
        .map(|inv| inv.iter().filter(|d| !d.is_zero()).count())
        .collect();

    let mut groups = Vec::with_capacity(boundaries.len());
    for k in 0..boundaries.len() {
        let chains = boundaries[k].cols();
        let rank_out = ranks[k];
        let (rank_in, torsion): (usize, Vec<BigInt>) = match invariants.get(k + 1) {
            Some(inv) => (
                ranks[k + 1],
                inv.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect(),
            ),
            None => (0, Vec::new()),
        };
        groups.push(AbelianGroup::from_invariants(
            chains - rank_out - rank_in,
            &torsion,
        ));
    }
    Ok(groups)
}

/// Homology of a complex whose lowest chain group sits in degree `offset`.
/// The returned list covers degrees `0 ..= offset + boundaries.len() - 1`,
/// with trivial groups below `offset`.
pub fn homology_with_offset(
    offset: usize,
    boundaries: &[IntMatrix],
) -> Result<Vec<AbelianGroup>, ExactAlgError> {
    let mut out = vec![AbelianGroup::trivial(); offset];
    out.extend(homology_of_complex(boundaries)?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_generator() {
        let h = homology_of_complex(&[IntMatrix::zeros(0, 1)]).unwrap();
        assert_eq!(h, vec![AbelianGroup::free(1)]);
    }

    #[test]
    fn multiplication_by_two() {
        let h = homology_of_complex(&[IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[vec![2]])])
            .unwrap();
        assert_eq!(h, vec![AbelianGroup::cyclic(2), AbelianGroup::trivial()]);
    }

    #[test]
    fn zero_differential() {
        let h = homology_of_complex(&[IntMatrix::zeros(0, 1), IntMatrix::from_rows(&[vec![0]])])
            .unwrap();
        assert_eq!(h, vec![AbelianGroup::free(1), AbelianGroup::free(1)]);
    }

    #[test]
    fn rejects_nonzero_composition() {
        let d1 = IntMatrix::from_rows(&[vec![1]]);
        let d2 = IntMatrix::from_rows(&[vec![1]]);
        let err = homology_of_complex(&[IntMatrix::zeros(0, 1), d1, d2]).unwrap_err();
        assert!(matches!(err, ExactAlgError::CompositionNonzero { degree: 2 }));
    }

    #[test]
    fn rejects_shape_mismatch() {
        let err = homology_of_complex(&[IntMatrix::zeros(0, 2), IntMatrix::zeros(1, 1)]).unwrap_err();
        assert!(matches!(err, ExactAlgError::ShapeMismatch { .. }));
    }

    #[test]
    fn circle_simplicial() {
        // triangle boundary: 3 vertices, 3 edges
        let d1 = IntMatrix::from_rows(&[vec![-1, 0, 1], vec![1, -1, 0], vec![0, 1, -1]]);
        let h = homology_of_complex(&[IntMatrix::zeros(0, 3), d1]).unwrap();
        assert_eq!(h, vec![AbelianGroup::free(1), AbelianGroup::free(1)]);
    }

    #[test]
    fn real_projective_plane() {
        // minimal CW structure: one cell in each dimension, d2 = 2, d1 = 0
        let h = homology_of_complex(&[
            IntMatrix::zeros(0, 1),
            IntMatrix::from_rows(&[vec![0]]),
            IntMatrix::from_rows(&[vec![2]]),
        ])
        .unwrap();
        assert_eq!(
            h,
            vec![AbelianGroup::free(1), AbelianGroup::cyclic(2), AbelianGroup::trivial()]
        );
    }
}
