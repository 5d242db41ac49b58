//! First pages of the spectral sequence for `SP^d_n(C)` built from the
//! configuration-space oracle, with the stability range and comparison data.
//!
//! Higher differentials are not computed.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::confhomology::{cohomology_conf, ConfError, P_MAX};
use crate::exactalg::AbelianGroup;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectralError {
    #[error("need d >= 2 and n >= 2, got d = {d}, n = {n}")]
    InvalidParameter { d: usize, n: usize },
    #[error("degree {k} outside (0, {upper})")]
    OutOfRange { k: i64, upper: i64 },
    #[error(transparent)]
    Conf(#[from] ConfError),
}

/// A nonnegative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(u64),
    Infinite,
}

impl Bound {
    pub fn admits(&self, degree: i64) -> bool {
        match *self {
            Bound::Finite(b) => degree <= b as i64,
            Bound::Infinite => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(b) => write!(f, "{b}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(b) => s.serialize_u64(*b),
            Bound::Infinite => s.serialize_str("inf"),
        }
    }
}

fn check_dn(d: usize, n: usize) -> Result<(), SpectralError> {
    if d < 2 || n < 2 {
        return Err(SpectralError::InvalidParameter { d, n });
    }
    Ok(())
}

/// `N(d,n) = (2n-3) [d/n]` when `[d/n] < [(d+1)/n]`, infinite otherwise.
pub fn stability_bound_n(d: usize, n: usize) -> Result<Bound, SpectralError> {
    check_dn(d, n)?;
    Ok(if d / n < (d + 1) / n {
        Bound::Finite(((2 * n - 3) * (d / n)) as u64)
    } else {
        Bound::Infinite
    })
}

/// `H^k` of the complement corresponds to compactly supported homology of the
/// discriminant in degree `2d - k - 1`, for `0 < k < 2d`.
pub fn alexander_reindex(d: usize, k: i64) -> Result<i64, SpectralError> {
    let upper = 2 * d as i64;
    if k <= 0 || k >= upper {
        return Err(SpectralError::OutOfRange { k, upper });
    }
    Ok(upper - k - 1)
}

/// Inverse of [`alexander_reindex`]: discriminant degree back to cohomological degree.
pub fn alexander_reindex_inverse(d: usize, j: i64) -> Result<i64, SpectralError> {
    let upper = 2 * d as i64;
    if j < 0 || j >= upper - 1 {
        return Err(SpectralError::OutOfRange { k: j, upper: upper - 1 });
    }
    Ok(upper - j - 1)
}

/// One nonzero entry of a page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct E1Entry {
    pub p: i64,
    pub q: i64,
    pub total_degree: i64,
    pub group: AbelianGroup,
}

/// `E_1^{p,q} = H^{(2-2n)p + q}(C_p(C))` for `1 <= p <= [d/n]`; zero entries
/// are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Page {
    pub d: usize,
    pub n: usize,
    entries: BTreeMap<(i64, i64), AbelianGroup>,
}

impl E1Page {
    pub fn get(&self, p: i64, q: i64) -> AbelianGroup {
        self.entries.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Entries sorted by `(p, q)`.
    pub fn entries(&self) -> impl Iterator<Item = E1Entry> + '_ {
        self.entries.iter().map(|(&(p, q), g)| E1Entry {
            p,
            q,
            total_degree: q - p,
            group: g.clone(),
        })
    }

    pub fn max_total_degree(&self) -> Option<i64> {
        self.entries.keys().map(|(p, q)| q - p).max()
    }
}

impl Serialize for E1Page {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("E1Page", 3)?;
        st.serialize_field("d", &self.d)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("entries", &self.entries().collect::<Vec<_>>())?;
        st.end()
    }
}

pub fn e1_page(d: usize, n: usize) -> Result<E1Page, SpectralError> {
    check_dn(d, n)?;
    if d / n > P_MAX {
        return Err(ConfError::TooLarge { p: d / n, max: P_MAX }.into());
    }
    let mut entries = BTreeMap::new();
    for p in 1..=d / n {
        let shift = ((2 * n - 2) * p) as i64;
        for (j, group) in cohomology_conf(p)?.into_iter().enumerate() {
            if !group.is_trivial() {
                entries.insert((p as i64, j as i64 + shift), group);
            }
        }
    }
    Ok(E1Page { d, n, entries })
}

/// Where the comparison map of first pages induced by stabilization is
/// known to be an isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComparisonRegion {
    /// Every `(p, q)`.
    All,
    /// `p <= 0`, or `1 <= p <= max_p` and `q >= slope * p`.
    Wedge { max_p: i64, slope: i64 },
}

impl ComparisonRegion {
    pub fn contains(&self, p: i64, q: i64) -> bool {
        match *self {
            ComparisonRegion::All => true,
            ComparisonRegion::Wedge { max_p, slope } => p <= 0 || (1 <= p && p <= max_p && q >= slope * p),
        }
    }
}

pub fn comparison_iso_region(d: usize, n: usize) -> Result<ComparisonRegion, SpectralError> {
    check_dn(d, n)?;
    Ok(if d / n == (d + 1) / n {
        ComparisonRegion::All
    } else {
        ComparisonRegion::Wedge {
            max_p: (d / n) as i64,
            slope: (2 * n - 2) as i64,
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub p: i64,
    pub q: i64,
    pub left: AbelianGroup,
    pub right: AbelianGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub d: usize,
    pub n: usize,
    pub bound: Bound,
    /// Largest total degree compared; `None` when both pages are empty.
    pub agreement_checked_through: Option<i64>,
    pub identical_pages: bool,
    pub mismatches: Vec<Mismatch>,
}

/// Compares the pages for `d` and `d + 1` entrywise in total degrees up to
/// `N(d, n)`.
pub fn verify_stability(d: usize, n: usize) -> Result<StabilityReport, SpectralError> {
    let bound = stability_bound_n(d, n)?;
    let left = e1_page(d, n)?;
    let right = e1_page(d + 1, n)?;
    let mut keys: Vec<(i64, i64)> = left.entries.keys().chain(right.entries.keys()).copied().collect();
    keys.sort_unstable();
    keys.dedup();

    let mut mismatches = Vec::new();
    let mut checked = None;
    for (p, q) in keys {
        if !bound.admits(q - p) {
            continue;
        }
        checked = checked.max(Some(q - p));
        let (l, r) = (left.get(p, q), right.get(p, q));
        if l != r {
            mismatches.push(Mismatch { p, q, left: l, right: r });
        }
    }
    let checked = match bound {
        Bound::Finite(b) => Some(b as i64),
        Bound::Infinite => checked,
    };
    Ok(StabilityReport {
        d,
        n,
        bound,
        agreement_checked_through: checked,
        identical_pages: left.entries == right.entries,
        mismatches,
    })
}

/// Upper bounds on Betti numbers of `SP^d_n(C)` in positive degrees: the sum
/// of free ranks on each total-degree line of the first page.
pub fn betti_bounds(d: usize, n: usize) -> Result<BTreeMap<i64, usize>, SpectralError> {
    let page = e1_page(d, n)?;
    let mut out = BTreeMap::new();
    for e in page.entries() {
        *out.entry(e.total_degree).or_insert(0) += e.group.free_rank();
    }
    Ok(out)
}
