//! Membership predicates for the polynomial spaces with bounded root
//! multiplicity, the general constraint system, and the maps between them.
//!
//! Every negative verdict carries a [`Certificate`] naming the offending
//! factor or clause.

mod constraints;
mod maps;
mod predicates;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::poly::{PolyError, Polynomial};

pub use constraints::{check_constraints, Clause, ConstraintSpec, ConstraintVerdict, MultBound, Violation};
pub use maps::{coefficient_rescale_map, jet0, jet_tuple_t, stabilize, stabilization_point, Conjugate};
pub use predicates::{in_a_n_m, in_p_d_y_n, in_q, in_sp_d_n};

/// Either the reals or the complex plane, as a subset of C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Domain {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Domain::Real => "R",
            Domain::Complex => "C",
        })
    }
}

/// Parameters of one of the polynomial-space families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "space")]
pub enum SpaceSpec {
    /// Monic degree-d polynomials, every root of multiplicity `< n`.
    SymmetricProduct { d: usize, n: usize },
    /// Monic degree-d `f` with `f(X) ⊆ X` and no n-fold roots in `Y`.
    RestrictedRoots { d: usize, n: usize, x: Domain, y: Domain },
    /// n-tuples of monic degree-d polynomials with no common root.
    Coprime { d: usize, n: usize },
    /// As `Coprime`, each entry additionally with every multiplicity `< m`.
    BoundedCoprime { d: usize, n: usize, m: usize },
    /// n-tuples with `p_i(X) ⊆ X` and no common root in `Y`.
    RestrictedCoprime { d: usize, n: usize, x: Domain, y: Domain },
}

impl SpaceSpec {
    pub fn symmetric_product(d: usize, n: usize) -> Result<Self, SpaceError> {
        check_dn(d, n)?;
        Ok(SpaceSpec::SymmetricProduct { d, n })
    }

    pub fn restricted_roots(d: usize, n: usize, x: Domain, y: Domain) -> Result<Self, SpaceError> {
        check_dn(d, n)?;
        Ok(SpaceSpec::RestrictedRoots { d, n, x, y })
    }

    pub fn coprime(d: usize, n: usize) -> Result<Self, SpaceError> {
        check_dn(d, n)?;
        Ok(SpaceSpec::Coprime { d, n })
    }

    pub fn bounded_coprime(d: usize, n: usize, m: usize) -> Result<Self, SpaceError> {
        check_dn(d, n)?;
        if m < 2 {
            return Err(SpaceError::InvalidParameter(format!("m must be at least 2, got {m}")));
        }
        Ok(SpaceSpec::BoundedCoprime { d, n, m })
    }

    pub fn restricted_coprime(d: usize, n: usize, x: Domain, y: Domain) -> Result<Self, SpaceError> {
        check_dn(d, n)?;
        Ok(SpaceSpec::RestrictedCoprime { d, n, x, y })
    }

    pub fn d(&self) -> usize {
        match *self {
            SpaceSpec::SymmetricProduct { d, .. }
            | SpaceSpec::RestrictedRoots { d, .. }
            | SpaceSpec::Coprime { d, .. }
            | SpaceSpec::BoundedCoprime { d, .. }
            | SpaceSpec::RestrictedCoprime { d, .. } => d,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            SpaceSpec::SymmetricProduct { n, .. }
            | SpaceSpec::RestrictedRoots { n, .. }
            | SpaceSpec::Coprime { n, .. }
            | SpaceSpec::BoundedCoprime { n, .. }
            | SpaceSpec::RestrictedCoprime { n, .. } => n,
        }
    }

    /// True for the tuple spaces, false for single-polynomial spaces.
    pub fn takes_tuple(&self) -> bool {
        matches!(
            self,
            SpaceSpec::Coprime { .. } | SpaceSpec::BoundedCoprime { .. } | SpaceSpec::RestrictedCoprime { .. }
        )
    }

    /// Membership of a single polynomial. Tuple spaces reject with a
    /// [`SpaceError::WrongArity`].
    pub fn contains(&self, f: &Polynomial) -> Result<Verdict, SpaceError> {
        match *self {
            SpaceSpec::SymmetricProduct { d, n } => Ok(predicates::with_degree(f, d, || in_sp_d_n(f, n))),
            SpaceSpec::RestrictedRoots { .. } => in_p_d_y_n(f, self),
            _ => Err(SpaceError::WrongArity),
        }
    }

    pub fn contains_tuple(&self, tuple: &PolyTuple) -> Result<Verdict, SpaceError> {
        if self.takes_tuple() {
            in_q(tuple, self)
        } else {
            Err(SpaceError::WrongArity)
        }
    }
}

fn check_dn(d: usize, n: usize) -> Result<(), SpaceError> {
    if d < 1 {
        return Err(SpaceError::InvalidParameter("d must be at least 1".into()));
    }
    if n < 2 {
        return Err(SpaceError::InvalidParameter(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

/// An ordered tuple of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PolyTuple(pub Vec<Polynomial>);

impl PolyTuple {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Polynomial> {
        self.0.iter()
    }
}

impl From<Vec<Polynomial>> for PolyTuple {
    fn from(v: Vec<Polynomial>) -> Self {
        PolyTuple(v)
    }
}

/// Entries separated by `;`.
impl fmt::Display for PolyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

impl FromStr for PolyTuple {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(';')
            .map(str::parse)
            .collect::<Result<Vec<_>, _>>()
            .map(PolyTuple)
    }
}

/// Why a polynomial or tuple fails a membership test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    ZeroPolynomial,
    NotMonic { leading: crate::poly::Scalar },
    WrongDegree { expected: usize, found: Option<usize> },
    /// A squarefree factor whose roots all have this multiplicity, `>= n`.
    RootMultiplicity { factor: Polynomial, multiplicity: usize },
    /// As above, restricted to a factor with at least one real root.
    RealRootMultiplicity { factor: Polynomial, multiplicity: usize, real_roots: usize },
    NonRealCoefficients,
    CommonRoot { gcd: Polynomial },
    CommonRealRoot { gcd: Polynomial, real_roots: usize },
    TupleLength { expected: usize, found: usize },
    Component { index: usize, reason: Box<Certificate> },
}

/// Outcome of a membership test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn yes() -> Self {
        Verdict {
            member: true,
            certificate: None,
        }
    }

    pub fn no(certificate: Certificate) -> Self {
        Verdict {
            member: false,
            certificate: Some(certificate),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("tuple has {found} entries, expected {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("input arity does not match the space (single polynomial vs tuple)")]
    WrongArity,
    #[error("vectors must share one positive length")]
    RaggedVectors,
    #[error("polynomial is not in SP^d_n: {0:?}")]
    NotMember(Box<Certificate>),
    #[error("a root lies outside the open disk of radius {radius}")]
    PreconditionRootOutsideDisk { radius: usize },
    #[error("polynomial must be monic of positive degree")]
    NotMonicPositive,
    #[error("invalid constraint spec: {0}")]
    InvalidConstraint(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}
