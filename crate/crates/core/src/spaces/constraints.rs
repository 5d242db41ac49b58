//! Declarative constraint systems on polynomial tuples: exact degrees,
//! coprimality of index subsets, and root-multiplicity bounds.

use std::fmt;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use super::{PolyTuple, SpaceError, SpaceSpec};
use crate::poly::{gcd_many, max_root_multiplicity};

/// Upper bound on root multiplicity: every root of `p_i` must have
/// multiplicity strictly below it. Serialized as an integer or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MultBound {
    Finite(usize),
    Infinite,
}

impl MultBound {
    pub fn admits(&self, multiplicity: usize) -> bool {
        match *self {
            MultBound::Finite(m) => multiplicity < m,
            MultBound::Infinite => true,
        }
    }
}

impl Serialize for MultBound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MultBound::Finite(m) => s.serialize_u64(*m as u64),
            MultBound::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for MultBound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) if s == "inf" => Ok(MultBound::Infinite),
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(|m| MultBound::Finite(m as usize))
                .ok_or_else(|| de::Error::custom("multiplicity bound must be a nonnegative integer")),
            other => Err(de::Error::custom(format!("invalid multiplicity bound {other}"))),
        }
    }
}

/// Conditions on an n-tuple `(p_0, ..., p_{n-1})`. Indices are zero-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintSpec {
    pub n: usize,
    pub degrees: Vec<usize>,
    pub coprime_sets: Vec<Vec<usize>>,
    pub mult_bounds: Vec<MultBound>,
}

impl ConstraintSpec {
    pub fn validate(&self) -> Result<(), SpaceError> {
        let bad = |msg: String| Err(SpaceError::InvalidConstraint(msg));
        if self.degrees.len() != self.n {
            return bad(format!("{} degrees for n = {}", self.degrees.len(), self.n));
        }
        if self.mult_bounds.len() != self.n {
            return bad(format!("{} multiplicity bounds for n = {}", self.mult_bounds.len(), self.n));
        }
        for set in &self.coprime_sets {
            if set.is_empty() {
                return bad("empty coprime set".into());
            }
            if let Some(i) = set.iter().find(|&&i| i >= self.n) {
                return bad(format!("coprime index {i} out of range"));
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self, SpaceError> {
        let spec: ConstraintSpec =
            serde_json::from_str(s).map_err(|e| SpaceError::InvalidConstraint(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    /// The encoding of a named space, where one exists. Monicity is not a
    /// constraint clause, so agreement with the dedicated predicates holds on
    /// monic inputs.
    pub fn encode(space: &SpaceSpec) -> Option<ConstraintSpec> {
        match *space {
            SpaceSpec::SymmetricProduct { d, n } => Some(ConstraintSpec {
                n: 1,
                degrees: vec![d],
                coprime_sets: vec![],
                mult_bounds: vec![MultBound::Finite(n)],
            }),
            SpaceSpec::Coprime { d, n } => Some(ConstraintSpec {
                n,
                degrees: vec![d; n],
                coprime_sets: vec![(0..n).collect()],
                mult_bounds: vec![MultBound::Infinite; n],
            }),
            SpaceSpec::BoundedCoprime { d, n, m } => Some(ConstraintSpec {
                n,
                degrees: vec![d; n],
                coprime_sets: vec![(0..n).collect()],
                mult_bounds: vec![MultBound::Finite(m); n],
            }),
            _ => None,
        }
    }
}

/// The three clause families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    Degree,
    Coprime,
    Multiplicity,
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Clause::Degree => "i",
            Clause::Coprime => "ii",
            Clause::Multiplicity => "iii",
        })
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub clause: Clause,
    /// Tuple index for clauses (i) and (iii), coprime-set index for (ii).
    pub index: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintVerdict {
    pub satisfied: bool,
    pub violations: Vec<Violation>,
}

/// Checks every clause and reports all violations.
pub fn check_constraints(tuple: &PolyTuple, spec: &ConstraintSpec) -> Result<ConstraintVerdict, SpaceError> {
    spec.validate()?;
    if tuple.len() != spec.n {
        return Err(SpaceError::TupleLength {
            expected: spec.n,
            found: tuple.len(),
        });
    }
    let mut violations = Vec::new();

    for (i, (p, &d)) in tuple.iter().zip(&spec.degrees).enumerate() {
        if p.degree() != Some(d) {
            violations.push(Violation {
                clause: Clause::Degree,
                index: i,
                detail: format!("degree {:?}, required {d}", p.degree()),
            });
        }
    }

    for (k, set) in spec.coprime_sets.iter().enumerate() {
        match gcd_many(set.iter().map(|&i| &tuple.0[i])) {
            Ok(g) if g.is_constant() => {}
            Ok(g) => violations.push(Violation {
                clause: Clause::Coprime,
                index: k,
                detail: format!("common factor {g}"),
            }),
            Err(_) => violations.push(Violation {
                clause: Clause::Coprime,
                index: k,
                detail: "all entries zero".into(),
            }),
        }
    }

    for (i, (p, bound)) in tuple.iter().zip(&spec.mult_bounds).enumerate() {
        match max_root_multiplicity(p) {
            Ok(m) if bound.admits(m) => {}
            Ok(m) => violations.push(Violation {
                clause: Clause::Multiplicity,
                index: i,
                detail: format!("root of multiplicity {m}"),
            }),
            Err(_) => violations.push(Violation {
                clause: Clause::Multiplicity,
                index: i,
                detail: "zero polynomial".into(),
            }),
        }
    }

    Ok(ConstraintVerdict {
        satisfied: violations.is_empty(),
        violations,
    })
}
