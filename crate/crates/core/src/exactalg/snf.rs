use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Result of a Smith normal form computation: `diagonal = left * input * right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub diagonal: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl SmithNormalForm {
    /// The diagonal entries d_1 | d_2 | ... (including trailing zeros up to the
    /// smaller dimension).
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.diagonal.rows().min(self.diagonal.cols());
        (0..k).map(|i| self.diagonal[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivot choice is the nonzero entry of smallest absolute value in the active
/// submatrix, ties broken by lowest (row, col), so the output is deterministic.
pub fn smith_normal_form(m: &IntMatrix) -> SmithNormalForm {
    let mut work = Reduction {
        a: m.clone(),
        left: Some(IntMatrix::identity(m.rows())),
        right: Some(IntMatrix::identity(m.cols())),
    };
    work.run();
    SmithNormalForm {
        diagonal: work.a,
        left: work.left.unwrap(),
        right: work.right.unwrap(),
    }
}

/// Diagonal of the Smith normal form without tracking the transforms.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    let mut work = Reduction {
        a: m.clone(),
        left: None,
        right: None,
    };
    work.run();
    let k = m.rows().min(m.cols());
    (0..k).map(|i| work.a[(i, i)].clone()).collect()
}

struct Reduction {
    a: IntMatrix,
    left: Option<IntMatrix>,
    right: Option<IntMatrix>,
}

impl Reduction {
    fn run(&mut self) {
        let k = self.a.rows().min(self.a.cols());
        for t in 0..k {
            if !self.settle_pivot(t) {
                break;
            }
            if self.a[(t, t)].is_negative() {
                self.a.negate_row(t);
                if let Some(u) = self.left.as_mut() {
                    u.negate_row(t);
                }
            }
        }
    }

    /// Clears row and column `t` and enforces divisibility of the remaining
    /// block by the pivot. Returns false when the active block is zero.
    fn settle_pivot(&mut self, t: usize) -> bool {
        loop {
            let Some((pi, pj)) = self.smallest_entry(t) else {
                return false;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);

            let pivot = self.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..self.a.rows() {
                if self.a[(i, t)].is_zero() {
                    continue;
                }
                let q = self.a[(i, t)].div_floor(&pivot);
                self.add_row_multiple(i, t, &-q);
                clean &= self.a[(i, t)].is_zero();
            }
            for j in t + 1..self.a.cols() {
                if self.a[(t, j)].is_zero() {
                    continue;
                }
                let q = self.a[(t, j)].div_floor(&pivot);
                self.add_col_multiple(j, t, &-q);
                clean &= self.a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }

            let offender = (t + 1..self.a.rows()).find(|&i| {
                (t + 1..self.a.cols()).any(|j| !self.a[(i, j)].is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => self.add_row_multiple(t, i, &BigInt::one()),
                None => return true,
            }
        }
    }

    fn smallest_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| abs < *b) {
                    best = Some((i, j, abs));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.a.swap_rows(a, b);
        if let Some(u) = self.left.as_mut() {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.a.swap_cols(a, b);
        if let Some(v) = self.right.as_mut() {
            v.swap_cols(a, b);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_row_multiple(target, source, factor);
        if let Some(u) = self.left.as_mut() {
            u.add_row_multiple(target, source, factor);
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        self.a.add_col_multiple(target, source, factor);
        if let Some(v) = self.right.as_mut() {
            v.add_col_multiple(target, source, factor);
        }
    }
}
