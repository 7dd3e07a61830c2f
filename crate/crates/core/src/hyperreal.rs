//! Standard parts of limited ε-series and of subparticle representations.
//!
//! A subparticle representation is a tuple `(k, λ, a₃, …, aₙ)` whose first two
//! coordinates are hypernaturals and whose remaining coordinates are limited
//! ε-series. Its standard part is `(0, 0, st a₃, …, st aₙ)`. On sets,
//! `St(A)` is the image of `A`, `'St(X) = X ∪ St(X)` is a consequence
//! operator, and the realism relation is `R(Y) = 'St(Y) - Y`.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{EpsilonSeries, HyperNatural, Rational};

pub const MIN_ARITY: usize = 3;

/// Coefficient of `ε⁰`; `Unlimited` carries the most negative exponent.
pub fn st_point(x: &EpsilonSeries) -> Result<Rational> {
    match x.min_exponent() {
        Some(e) if e < 0 => Err(Error::Unlimited(e)),
        _ => Ok(x.coefficient(0)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubparticleRep {
    leading: [HyperNatural; 2],
    tail: Vec<EpsilonSeries>,
}

impl SubparticleRep {
    /// `tail` holds coordinates 3..n and must have at least one entry.
    /// Limitedness is checked by the operators and by [`SpUniverse`].
    pub fn new(first: HyperNatural, second: HyperNatural, tail: Vec<EpsilonSeries>) -> Result<Self> {
        if tail.len() + 2 < MIN_ARITY {
            return Err(Error::ArityMismatch { expected: MIN_ARITY, found: tail.len() + 2 });
        }
        Ok(SubparticleRep { leading: [first, second], tail })
    }

    pub fn arity(&self) -> usize {
        self.tail.len() + 2
    }

    pub fn leading(&self) -> &[HyperNatural; 2] {
        &self.leading
    }

    pub fn tail(&self) -> &[EpsilonSeries] {
        &self.tail
    }

    /// Coordinate `n` for `1 ≤ n ≤ arity`; the first two are hypernatural.
    pub fn tail_coordinate(&self, n: usize) -> Option<&EpsilonSeries> {
        n.checked_sub(3).and_then(|k| self.tail.get(k))
    }

    pub fn is_limited(&self) -> bool {
        self.tail.iter().all(EpsilonSeries::is_limited)
    }

    /// Every tail coordinate has a nonzero infinitesimal part.
    pub fn is_nonstandard(&self) -> bool {
        self.tail.iter().all(EpsilonSeries::is_nonstandard_limited)
    }

    fn check_limited(&self) -> Result<()> {
        self.tail.iter().try_for_each(|x| st_point(x).map(drop))
    }
}

impl fmt::Display for SubparticleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}", self.leading[0], self.leading[1])?;
        for x in &self.tail {
            write!(f, ", {x}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for SubparticleRep {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        let mut seq = serializer.serialize_seq(Some(self.arity()))?;
        seq.serialize_element(&self.leading[0])?;
        seq.serialize_element(&self.leading[1])?;
        for x in &self.tail {
            seq.serialize_element(x)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for SubparticleRep {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct RepVisitor;

        impl<'de> Visitor<'de> for RepVisitor {
            type Value = SubparticleRep;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an array of two hypernaturals followed by ε-series")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> std::result::Result<Self::Value, A::Error> {
                let first = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let second = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let mut tail = Vec::new();
                while let Some(x) = seq.next_element()? {
                    tail.push(x);
                }
                SubparticleRep::new(first, second, tail).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_seq(RepVisitor)
    }
}

/// `(0, 0, st a₃, …, st aₙ)`.
pub fn st_subparticle(s: &SubparticleRep) -> Result<SubparticleRep> {
    let tail = s.tail.iter().map(|x| st_point(x).map(EpsilonSeries::constant)).collect::<Result<_>>()?;
    Ok(SubparticleRep { leading: [HyperNatural::Std(0), HyperNatural::Std(0)], tail })
}

/// `St(A)`.
pub fn st_set(a: &BTreeSet<SubparticleRep>) -> Result<BTreeSet<SubparticleRep>> {
    a.iter().map(st_subparticle).collect()
}

/// `'St(X) = X ∪ St(X)`.
pub fn st_extended(x: &BTreeSet<SubparticleRep>) -> Result<BTreeSet<SubparticleRep>> {
    let mut out = st_set(x)?;
    out.extend(x.iter().cloned());
    Ok(out)
}

/// `R(Y) = 'St(Y) - Y`.
pub fn realism_relation(y: &BTreeSet<SubparticleRep>) -> Result<BTreeSet<SubparticleRep>> {
    Ok(st_extended(y)?.difference(y).cloned().collect())
}

/// A declared finite collection of subparticle representations of one arity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpUniverse {
    arity: usize,
    members: BTreeSet<SubparticleRep>,
}

impl SpUniverse {
    pub fn new(arity: usize, members: impl IntoIterator<Item = SubparticleRep>) -> Result<Self> {
        if arity < MIN_ARITY {
            return Err(Error::ArityMismatch { expected: MIN_ARITY, found: arity });
        }
        let members: BTreeSet<_> = members.into_iter().collect();
        for m in &members {
            if m.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: m.arity() });
            }
            m.check_limited()?;
        }
        Ok(SpUniverse { arity, members })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn members(&self) -> &BTreeSet<SubparticleRep> {
        &self.members
    }

    /// The members together with their standard parts: the smallest set on
    /// which `'St` is a self-map.
    pub fn saturated(&self) -> BTreeSet<SubparticleRep> {
        st_extended(&self.members).expect("members are limited")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpUniverseFile {
    arity: usize,
    members: Vec<SubparticleRep>,
}

impl<'de> Deserialize<'de> for SpUniverse {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = SpUniverseFile::deserialize(deserializer)?;
        SpUniverse::new(file.arity, file.members).map_err(de::Error::custom)
    }
}
