use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;

/// A finite formal sum `Σ q_k ε^k` in a fixed positive infinitesimal `ε`.
///
/// Exponents may be negative, in which case the value is unlimited. Only
/// nonzero coefficients are stored, so the zero series is the empty map and
/// structural equality is value equality.
///
/// The order is the field order in which `0 < ε < r` for every positive
/// rational `r`: `x < y` iff the lowest-exponent coefficient of `y - x` is
/// positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct EpsilonSeries {
    terms: BTreeMap<i64, Rational>,
}

impl EpsilonSeries {
    pub fn zero() -> Self {
        EpsilonSeries::default()
    }

    pub fn constant(value: Rational) -> Self {
        EpsilonSeries::monomial(value, 0)
    }

    /// `ε` itself.
    pub fn epsilon() -> Self {
        EpsilonSeries::monomial(Rational::one(), 1)
    }

    pub fn monomial(coefficient: Rational, exponent: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        EpsilonSeries { terms }
    }

    /// Builds a series from `(exponent, coefficient)` pairs, summing repeated
    /// exponents and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let mut acc = EpsilonSeries::zero();
        for (exp, coeff) in terms {
            acc.add_term(exp, coeff);
        }
        acc
    }

    fn add_term(&mut self, exponent: i64, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exponent) {
            Some(existing) => existing + coefficient,
            None => coefficient,
        };
        if !sum.is_zero() {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exponent: i64) -> Rational {
        self.terms.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Member of G(0): no negative exponent.
    pub fn is_limited(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 0)
    }

    /// Limited, and differs from a rational by a nonzero infinitesimal.
    pub fn is_nonstandard_limited(&self) -> bool {
        self.is_limited() && self.terms.keys().any(|&e| e > 0)
    }

    pub fn is_standard(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// Sign of the leading (lowest-exponent) coefficient.
    pub fn signum(&self) -> Ordering {
        match self.terms.values().next() {
            None => Ordering::Equal,
            Some(c) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }
}

impl Add<&EpsilonSeries> for &EpsilonSeries {
    type Output = EpsilonSeries;
    fn add(self, rhs: &EpsilonSeries) -> EpsilonSeries {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Neg for &EpsilonSeries {
    type Output = EpsilonSeries;
    fn neg(self) -> EpsilonSeries {
        EpsilonSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub<&EpsilonSeries> for &EpsilonSeries {
    type Output = EpsilonSeries;
    fn sub(self, rhs: &EpsilonSeries) -> EpsilonSeries {
        self + &(-rhs)
    }
}

impl Mul<&EpsilonSeries> for &EpsilonSeries {
    type Output = EpsilonSeries;
    fn mul(self, rhs: &EpsilonSeries) -> EpsilonSeries {
        let mut out = EpsilonSeries::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for EpsilonSeries {
            type Output = EpsilonSeries;
            fn $method(self, rhs: EpsilonSeries) -> EpsilonSeries {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for EpsilonSeries {
    type Output = EpsilonSeries;
    fn neg(self) -> EpsilonSeries {
        -&self
    }
}

impl From<Rational> for EpsilonSeries {
    fn from(value: Rational) -> Self {
        EpsilonSeries::constant(value)
    }
}

impl Ord for EpsilonSeries {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialOrd for EpsilonSeries {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for EpsilonSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag == Rational::one();
            match *e {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "ε")?,
                1 => write!(f, "{mag}ε")?,
                _ if unit => write!(f, "ε^{e}")?,
                _ => write!(f, "{mag}ε^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for EpsilonSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Wire form: [[exponent, "p/q"], ...] sorted by exponent.
impl Serialize for EpsilonSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms.iter())
    }
}

impl<'de> Deserialize<'de> for EpsilonSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, Rational)> = Vec::deserialize(deserializer)?;
        let mut seen = std::collections::BTreeSet::new();
        for (e, _) in &pairs {
            if !seen.insert(*e) {
                return Err(D::Error::custom(format!("exponent {e} listed twice")));
            }
        }
        Ok(EpsilonSeries::from_terms(pairs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn eps() -> EpsilonSeries {
        EpsilonSeries::epsilon()
    }

    fn c(s: &str) -> EpsilonSeries {
        EpsilonSeries::constant(r(s))
    }

    #[test]
    fn coefficients_cancel() {
        let x = &c("1") + &eps();
        let y = &c("2") - &eps();
        assert_eq!(&x + &y, c("3"));
        assert!(!(&x + &y).terms().any(|(e, _)| e == 1));
    }

    #[test]
    fn exponents_add_under_product() {
        let sq = &eps() * &eps();
        assert_eq!(sq, EpsilonSeries::monomial(Rational::one(), 2));
        assert_eq!(sq.to_string(), "ε^2");
    }

    #[test]
    fn infinitesimal_below_every_positive_standard() {
        assert!(eps() < c("1/1000"));
        assert!(eps() > EpsilonSeries::zero());
        assert!(-eps() < EpsilonSeries::zero());
        let huge = EpsilonSeries::monomial(Rational::one(), -1);
        assert!(huge > c("1000000"));
    }

    #[test]
    fn limitedness_is_syntactic() {
        assert!((&c("3/2") + &eps()).is_limited());
        assert!(!EpsilonSeries::monomial(Rational::one(), -2).is_limited());
        assert!(EpsilonSeries::zero().is_limited());
    }

    #[test]
    fn wire_format_is_sorted_pairs() {
        let x = EpsilonSeries::from_terms([(2, r("-1")), (0, r("3/2")), (1, r("5"))]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"[[0,"3/2"],[1,"5"],[2,"-1"]]"#);
        let back: EpsilonSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<EpsilonSeries>(r#"[[0,"1"],[0,"2"]]"#).is_err());
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let x = EpsilonSeries::from_terms([(0, r("0")), (3, r("1")), (3, r("-1"))]);
        assert!(x.is_zero());
        assert_eq!(x.to_string(), "0");
    }
}
