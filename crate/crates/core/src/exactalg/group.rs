use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

/// A finitely generated abelian group `Z^rank + Z/d1 + ... + Z/dk` with
/// `d1 | d2 | ... | dk`, every `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct AbelianGroup {
    free_rank: usize,
    torsion: Vec<BigUint>,
}

impl AbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(0, [order])
    }

    /// Normalizes an arbitrary list of cyclic orders into invariant-factor form.
    /// Orders of 1 are dropped; an order of 0 contributes a free summand.
    pub fn new<I, T>(free_rank: usize, orders: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let mut free_rank = free_rank;
        let mut t: Vec<BigUint> = Vec::new();
        for o in orders {
            let o = o.into();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                t.push(o);
            }
        }
        // Pairwise (gcd, lcm) sweep leaves a divisibility chain.
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let g = t[i].gcd(&t[j]);
                let l = &t[i] / &g * &t[j];
                t[i] = g;
                t[j] = l;
            }
        }
        t.retain(|d| !d.is_one());
        AbelianGroup {
            free_rank,
            torsion: t,
        }
    }

    /// Builds the group from Smith invariants taken up to sign.
    pub fn from_invariants(free_rank: usize, invariants: &[BigInt]) -> Self {
        Self::new(
            free_rank,
            invariants.iter().map(|d| d.magnitude().clone()).filter(|d| !d.is_zero()),
        )
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn with_torsion_of(&self, other: &AbelianGroup) -> AbelianGroup {
        AbelianGroup {
            free_rank: self.free_rank,
            torsion: other.torsion.clone(),
        }
    }

    /// Torsion coefficients joined with `;`, the CSV cell format.
    pub fn torsion_string(&self) -> String {
        self.torsion
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(";")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|d| match d.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        let mut s = serializer.serialize_struct("AbelianGroup", 2)?;
        s.serialize_field("rank", &self.free_rank)?;
        s.serialize_field("torsion", &torsion)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            rank: usize,
            torsion: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut orders = Vec::with_capacity(raw.torsion.len());
        for v in raw.torsion {
            let d = match &v {
                serde_json::Value::Number(n) => n.as_u64().map(BigUint::from),
                serde_json::Value::String(s) => s.parse::<BigUint>().ok(),
                _ => None,
            }
            .ok_or_else(|| de::Error::custom(format!("invalid torsion coefficient {v}")))?;
            if d < BigUint::from(2u8) {
                return Err(de::Error::custom("torsion coefficients must be at least 2"));
            }
            orders.push(d);
        }
        let g = AbelianGroup::new(raw.rank, orders.iter().cloned());
        if g.torsion != orders {
            return Err(de::Error::custom("torsion is not in divisibility normal form"));
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_is_divisibility_chain() {
        let g = AbelianGroup::new(1, [4u32, 6, 1, 9]);
        assert_eq!(g.free_rank(), 1);
        let t: Vec<u64> = g.torsion().iter().map(|d| d.to_u64().unwrap()).collect();
        // Z/4 + Z/6 + Z/9 = Z/2 ⊕ Z/4 ⊕ Z/3 ⊕ Z/9 = Z/6 + Z/36
        assert_eq!(t, vec![6, 36]);
        assert_eq!(g.to_string(), "Z + Z/6 + Z/36");
    }

    #[test]
    fn isomorphic_inputs_share_representation() {
        assert_eq!(AbelianGroup::new(0, [2u32, 3]), AbelianGroup::new(0, [6u32]));
        assert_eq!(AbelianGroup::new(0, [0u32, 1]), AbelianGroup::free(1));
    }

    #[test]
    fn json_shape() {
        let g = AbelianGroup::new(2, [2u32]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"rank":2,"torsion":[2]}"#);
        let back: AbelianGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"rank":0,"torsion":[4,2]}"#).is_err());
        assert!(serde_json::from_str::<AbelianGroup>(r#"{"rank":0,"torsion":[1]}"#).is_err());
    }
}
