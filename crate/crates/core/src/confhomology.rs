//! Integral (co)homology of unordered configuration spaces of the plane,
//! computed from the Fox–Neuwirth cell structure on the one-point
//! compactification.
//!
//! A configuration of `p` points is recorded by its distinct real parts
//! `x_1 < ... < x_k` and, above each, the number `a_j` of points sharing that
//! real part (ordered by imaginary part). The composition `(a_1, ..., a_k)`
//! labels an open cell of dimension `p + k`. Letting two adjacent columns
//! collide merges `a_j, a_{j+1}`; the incidence number is a signed count of
//! the shuffles of the two columns. The resulting complex computes the reduced
//! homology of the compactification, i.e. Borel–Moore homology, and Poincaré
//! duality on the orientable `2p`-manifold turns that into cohomology.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use crate::exactalg::{homology_with_offset, AbelianGroup, ExactAlgError, IntMatrix};

/// Largest point count accepted by default.
pub const P_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfError {
    #[error("p = {p} exceeds the supported maximum {max}")]
    TooLarge { p: usize, max: usize },
    #[error("configuration spaces need at least one point")]
    Empty,
    #[error(transparent)]
    Algebra(#[from] ExactAlgError),
}

/// Ordered parts `(a_1, ..., a_k)`, all positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Option<Self> {
        parts.iter().all(|&a| a > 0).then_some(Composition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Cell dimension `p + k`.
    pub fn dimension(&self) -> usize {
        self.total() + self.0.len()
    }

    /// Merges parts `j` and `j + 1` (zero-based).
    pub fn merge(&self, j: usize) -> Composition {
        let mut parts = self.0.clone();
        let b = parts.remove(j + 1);
        parts[j] += b;
        Composition(parts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All compositions of `p`, in lexicographic order.
pub fn compositions(p: usize) -> Vec<Composition> {
    fn go(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if rest == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for a in 1..=rest {
            prefix.push(a);
            go(rest - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if p > 0 {
        go(p, &mut Vec::new(), &mut out);
    }
    out
}

/// Signed count of `(a, b)`-shuffles, `sum over shuffles of (-1)^inversions`.
/// This is the Gaussian binomial `[a+b choose a]` at `q = -1`.
pub fn signed_shuffle_count(a: usize, b: usize) -> i64 {
    if a % 2 == 1 && b % 2 == 1 {
        return 0;
    }
    binomial((a + b) / 2, a / 2)
}

fn binomial(n: usize, k: usize) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Orientation conventions for the cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignConvention {
    #[default]
    Standard,
    /// Every cell of odd dimension carries the opposite orientation.
    OddCellsReversed,
}

/// The cellular chain complex of the compactified configuration space,
/// basepoint excluded.
#[derive(Clone, Debug)]
pub struct FoxNeuwirthComplex {
    p: usize,
    cells: BTreeMap<usize, Vec<Composition>>,
    /// Keyed by source dimension; rows index cells one dimension lower.
    boundaries: BTreeMap<usize, IntMatrix>,
}

impl FoxNeuwirthComplex {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn cells(&self) -> &BTreeMap<usize, Vec<Composition>> {
        &self.cells
    }

    pub fn cells_in(&self, dim: usize) -> &[Composition] {
        self.cells.get(&dim).map_or(&[], Vec::as_slice)
    }

    /// Boundary out of dimension `dim`; `None` outside `p + 2 ..= 2p`.
    pub fn boundary(&self, dim: usize) -> Option<&IntMatrix> {
        self.boundaries.get(&dim)
    }

    /// Incidence coefficient of `face` in the boundary of `cell`.
    pub fn incidence(&self, cell: &Composition, face: &Composition) -> Option<BigInt> {
        let dim = cell.dimension();
        let col = self.cells_in(dim).iter().position(|c| c == cell)?;
        let row = self.cells_in(dim - 1).iter().position(|c| c == face)?;
        Some(self.boundaries.get(&dim)?[(row, col)].clone())
    }

    /// `d ∘ d = 0` in every degree.
    pub fn is_chain_complex(&self) -> bool {
        (self.p + 3..=2 * self.p).all(|k| (&self.boundaries[&(k - 1)] * &self.boundaries[&k]).is_zero())
    }

    /// Reduced homology of the compactification in degrees `0 ..= 2p`.
    pub fn borel_moore_homology(&self) -> Result<Vec<AbelianGroup>, ConfError> {
        let low = self.p + 1;
        let mut maps = vec![IntMatrix::zeros(0, self.cells_in(low).len())];
        maps.extend((low + 1..=2 * self.p).map(|k| self.boundaries[&k].clone()));
        Ok(homology_with_offset(low, &maps)?)
    }
}

/// Builds the complex for `p` points with the standard orientation.
pub fn build_complex(p: usize) -> Result<FoxNeuwirthComplex, ConfError> {
    build_complex_with(p, SignConvention::Standard, P_MAX)
}

/// Builds the complex with an explicit convention and size limit.
pub fn build_complex_with(
    p: usize,
    convention: SignConvention,
    max_p: usize,
) -> Result<FoxNeuwirthComplex, ConfError> {
    if p == 0 {
        return Err(ConfError::Empty);
    }
    if p > max_p {
        return Err(ConfError::TooLarge { p, max: max_p });
    }
    let mut cells: BTreeMap<usize, Vec<Composition>> = BTreeMap::new();
    for c in compositions(p) {
        cells.entry(c.dimension()).or_default().push(c);
    }
    let mut boundaries = BTreeMap::new();
    for dim in p + 2..=2 * p {
        let sources = &cells[&dim];
        let targets = &cells[&(dim - 1)];
        let mut m = IntMatrix::zeros(targets.len(), sources.len());
        for (col, cell) in sources.iter().enumerate() {
            let parts = cell.parts();
            let mut prefix = 0;
            for j in 0..parts.len() - 1 {
                prefix += parts[j];
                let count = signed_shuffle_count(parts[j], parts[j + 1]);
                if count == 0 {
                    continue;
                }
                // moving x_{j+1} past (x_0, Y_0, ..., x_j, Y_j)
                let sign = if (j + 1 + prefix) % 2 == 0 { 1 } else { -1 };
                let flip = match convention {
                    SignConvention::Standard => 1,
                    // orientation change on odd source and target cells
                    SignConvention::OddCellsReversed => -1,
                };
                let face = cell.merge(j);
                let row = targets.binary_search(&face).expect("merged composition is a cell");
                m[(row, col)] += BigInt::from(sign * flip * count);
            }
        }
        boundaries.insert(dim, m);
    }
    Ok(FoxNeuwirthComplex { p, cells, boundaries })
}

fn cached_borel_moore(p: usize) -> Result<Vec<AbelianGroup>, ConfError> {
    static CACHE: [OnceLock<Vec<AbelianGroup>>; P_MAX + 1] = [const { OnceLock::new() }; P_MAX + 1];
    if p == 0 {
        return Err(ConfError::Empty);
    }
    if p > P_MAX {
        return Err(ConfError::TooLarge { p, max: P_MAX });
    }
    if let Some(v) = CACHE[p].get() {
        return Ok(v.clone());
    }
    let complex = build_complex(p)?;
    if !complex.is_chain_complex() {
        return Err(ExactAlgError::CompositionNonzero { degree: 0 }.into());
    }
    let bm = complex.borel_moore_homology()?;
    Ok(CACHE[p].get_or_init(|| bm).clone())
}

/// `H^j(C_p)` for `0 <= j <= 2p`, read off by Poincaré duality
/// `H^j = H^BM_{2p-j}`.
fn dual_cohomology(p: usize) -> Result<Vec<AbelianGroup>, ConfError> {
    let bm = cached_borel_moore(p)?;
    Ok((0..=2 * p).map(|j| bm[2 * p - j].clone()).collect())
}

/// `H_j(C_p; Z)` for every `0 <= j <= 2p`.
pub fn homology_conf_full(p: usize) -> Result<Vec<AbelianGroup>, ConfError> {
    let coh = dual_cohomology(p)?;
    Ok((0..=2 * p)
        .map(|j| {
            let next = coh.get(j + 1).cloned().unwrap_or_default();
            coh[j].with_torsion_of(&next)
        })
        .collect())
}

/// `H_j(C_p; Z)` for `0 <= j < p`; all higher groups vanish.
pub fn homology_conf(p: usize) -> Result<Vec<AbelianGroup>, ConfError> {
    let mut h = homology_conf_full(p)?;
    h.truncate(p);
    Ok(h)
}

/// Universal coefficients: `rank H^j = rank H_j`, `torsion H^j = torsion H_{j-1}`.
pub fn cohomology_from_homology(homology: &[AbelianGroup]) -> Vec<AbelianGroup> {
    (0..homology.len())
        .map(|j| match j {
            0 => homology[0].with_torsion_of(&AbelianGroup::trivial()),
            _ => homology[j].with_torsion_of(&homology[j - 1]),
        })
        .collect()
}

/// `H^j(C_p; Z)` for `0 <= j < p`.
pub fn cohomology_conf(p: usize) -> Result<Vec<AbelianGroup>, ConfError> {
    Ok(cohomology_from_homology(&homology_conf(p)?))
}

/// `H^j(C_p; Z)`, zero outside `0 <= j < p`.
pub fn cohomology_conf_degree(p: usize, j: i64) -> Result<AbelianGroup, ConfError> {
    let coh = cohomology_conf(p)?;
    Ok(usize::try_from(j)
        .ok()
        .and_then(|j| coh.get(j).cloned())
        .unwrap_or_default())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Enumerates shuffles of (0..a) with (a..a+b) and sums (-1)^inversions.
    fn brute_shuffle(a: usize, b: usize) -> i64 {
        let mut total = 0;
        for mask in 0u32..(1 << (a + b)) {
            if mask.count_ones() as usize != b {
                continue;
            }
            // bit set: slot holds an element of the second block
            let mut inv = 0;
            let mut seen_second = 0;
            for slot in 0..a + b {
                if mask & (1 << slot) != 0 {
                    seen_second += 1;
                } else {
                    inv += seen_second;
                }
            }
            total += if inv % 2 == 0 { 1 } else { -1 };
        }
        total
    }

    #[test]
    fn shuffle_formula_matches_enumeration() {
        for a in 0..=7 {
            for b in 0..=7 {
                assert_eq!(signed_shuffle_count(a, b), brute_shuffle(a, b), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn composition_counts() {
        for p in 1..=10 {
            assert_eq!(compositions(p).len(), 1 << (p - 1));
        }
    }

    #[test]
    fn one_point() {
        let c = build_complex(1).unwrap();
        assert_eq!(c.cells_in(2), &[Composition(vec![1])]);
        assert!(c.boundary(2).is_none());
        assert_eq!(homology_conf(1).unwrap(), vec![AbelianGroup::free(1)]);
    }

    #[test]
    fn two_points() {
        let c = build_complex(2).unwrap();
        assert_eq!(c.cells_in(4), &[Composition(vec![1, 1])]);
        assert_eq!(c.cells_in(3), &[Composition(vec![2])]);
        let coeff = c.incidence(&Composition(vec![1, 1]), &Composition(vec![2])).unwrap();
        assert_eq!(coeff, BigInt::from(0));
        assert_eq!(homology_conf(2).unwrap(), vec![AbelianGroup::free(1); 2]);
        assert_eq!(cohomology_conf(2).unwrap(), vec![AbelianGroup::free(1); 2]);
    }

    #[test]
    fn three_points() {
        let c = build_complex(3).unwrap();
        assert_eq!(c.cells_in(6).len(), 1);
        assert_eq!(c.cells_in(5), &[Composition(vec![1, 2]), Composition(vec![2, 1])]);
        assert_eq!(c.cells_in(4), &[Composition(vec![3])]);
        assert_eq!(
            homology_conf(3).unwrap(),
            vec![AbelianGroup::free(1), AbelianGroup::free(1), AbelianGroup::trivial()]
        );
    }

    #[test]
    fn four_points_has_two_torsion() {
        // Frozen oracle output: H_*(C_4) = Z, Z, Z/2, 0.
        assert_eq!(
            homology_conf(4).unwrap(),
            vec![
                AbelianGroup::free(1),
                AbelianGroup::free(1),
                AbelianGroup::cyclic(2),
                AbelianGroup::trivial()
            ]
        );
        let coh = cohomology_conf(4).unwrap();
        assert_eq!(coh[2], AbelianGroup::trivial());
        assert_eq!(coh[3], AbelianGroup::cyclic(2));
    }

    #[test]
    fn d_squared_vanishes_under_both_conventions() {
        for p in 1..=P_MAX {
            for conv in [SignConvention::Standard, SignConvention::OddCellsReversed] {
                assert!(build_complex_with(p, conv, P_MAX).unwrap().is_chain_complex(), "p={p}");
            }
        }
    }

    #[test]
    fn convention_does_not_change_homology() {
        for p in 1..=7 {
            let a = build_complex_with(p, SignConvention::Standard, P_MAX).unwrap();
            let b = build_complex_with(p, SignConvention::OddCellsReversed, P_MAX).unwrap();
            assert_eq!(a.borel_moore_homology().unwrap(), b.borel_moore_homology().unwrap());
        }
    }

    #[test]
    fn limits() {
        assert_eq!(build_complex(11).unwrap_err(), ConfError::TooLarge { p: 11, max: 10 });
        assert_eq!(homology_conf(0).unwrap_err(), ConfError::Empty);
    }
}
