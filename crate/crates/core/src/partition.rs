//! Lexicographic index order on `ℤ × ℕ` and exact partition points for the
//! four primitive-time interval kinds.
//!
//! Subinterval `i` is `[c_i, c_{i+1})` with `c_i = i/K`; inside it the points
//! `t(i, 0) = c_i < t(i, 1) < …` approach `c_{i+1}`. The default point rule is
//! `t(i, j) = (1/K)(i + 1 - 1/2^j)`.
//!
//! Closed endpoints are single indices: for `[0, b]` the endpoint `b = c_m` is
//! `(m, 0)`, and for `(-∞, 0]` the endpoint `0` is `(0, 0)`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::Rational;

/// A moment `(i, j)` of primitive time. The derived order is lexicographic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexPair {
    pub i: BigInt,
    pub j: u32,
}

impl IndexPair {
    pub fn new(i: impl Into<BigInt>, j: u32) -> Self {
        IndexPair { i: i.into(), j }
    }
}

impl fmt::Display for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl fmt::Debug for IndexPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a ⪯ b` as an [`Ordering`]: first by `i`, then by `j`.
pub fn lex_compare(a: &IndexPair, b: &IndexPair) -> Ordering {
    a.i.cmp(&b.i).then(a.j.cmp(&b.j))
}

/// The four basic intervals partitioned by a scheme.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntervalKind {
    /// q = 1: `[0, b]`, cut into `m` subintervals.
    Bounded { b: Rational, m: u64 },
    /// q = 2: `[0, +∞)`.
    NonNegative,
    /// q = 3: `(-∞, 0]`.
    NonPositive,
    /// q = 4: `(-∞, +∞)`.
    Whole,
}

impl IntervalKind {
    pub fn q(&self) -> u8 {
        match self {
            IntervalKind::Bounded { .. } => 1,
            IntervalKind::NonNegative => 2,
            IntervalKind::NonPositive => 3,
            IntervalKind::Whole => 4,
        }
    }

    /// Whether `(i, j)` names a point of this interval.
    pub fn admits(&self, idx: &IndexPair) -> bool {
        match self {
            IntervalKind::Bounded { m, .. } => {
                let m = BigInt::from(*m);
                !idx.i.is_negative() && (idx.i < m || (idx.i == m && idx.j == 0))
            }
            IntervalKind::NonNegative => !idx.i.is_negative(),
            IntervalKind::NonPositive => idx.i.is_negative() || (idx.i.is_zero() && idx.j == 0),
            IntervalKind::Whole => true,
        }
    }

    /// Whether `(i, j)` is the single index standing for a closed right endpoint.
    pub fn is_endpoint(&self, idx: &IndexPair) -> bool {
        match self {
            IntervalKind::Bounded { m, .. } => idx.j == 0 && idx.i == BigInt::from(*m),
            IntervalKind::NonPositive => idx.j == 0 && idx.i.is_zero(),
            _ => false,
        }
    }

    fn check(&self, idx: &IndexPair) -> Result<()> {
        if self.admits(idx) {
            Ok(())
        } else {
            Err(Error::InadmissibleIndex { i: idx.i.to_string(), j: idx.j, kind: self.q() })
        }
    }
}

type RuleFn = dyn Fn(u64, &IndexPair) -> Rational + Send + Sync;

/// How partition points are placed inside each subinterval.
#[derive(Clone)]
pub enum PointRule {
    /// `t(i, j) = (1/K)(i + 1 - 1/2^j)`.
    Halving,
    /// A caller-supplied rule `(K, (i, j)) ↦ t`, checked on every range it is
    /// enumerated over.
    Custom { name: String, rule: Arc<RuleFn> },
}

impl PointRule {
    pub fn custom<F>(name: impl Into<String>, rule: F) -> Self
    where
        F: Fn(u64, &IndexPair) -> Rational + Send + Sync + 'static,
    {
        PointRule::Custom { name: name.into(), rule: Arc::new(rule) }
    }

    fn name(&self) -> &str {
        match self {
            PointRule::Halving => "halving",
            PointRule::Custom { name, .. } => name,
        }
    }
}

impl fmt::Debug for PointRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PointRule({})", self.name())
    }
}

impl PartialEq for PointRule {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (PointRule::Halving, PointRule::Halving) => true,
            (PointRule::Custom { name: a, rule: ra }, PointRule::Custom { name: b, rule: rb }) => {
                a == b && Arc::ptr_eq(ra, rb)
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PartitionScheme {
    k: u64,
    kind: IntervalKind,
    rule: PointRule,
}

impl PartitionScheme {
    /// A scheme with the halving rule. For `[0, b]` the endpoint must satisfy
    /// `b = m/K`, since `b` is the partition value `c_m`.
    pub fn new(k: u64, kind: IntervalKind) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidScheme("K must be positive".into()));
        }
        if let IntervalKind::Bounded { b, m } = &kind {
            if !b.is_positive() || *m == 0 {
                return Err(Error::InvalidScheme("[0,b] needs b > 0 and m > 0".into()));
            }
            let c_m = Rational::new(*m, k)?;
            if *b != c_m {
                return Err(Error::InvalidScheme(format!("b = {b} but c_m = m/K = {c_m}")));
            }
        }
        Ok(PartitionScheme { k, kind, rule: PointRule::Halving })
    }

    /// `[0, m/K]` cut into `m` subintervals.
    pub fn bounded(k: u64, m: u64) -> Result<Self> {
        let b = Rational::new(m, k.max(1))?;
        PartitionScheme::new(k, IntervalKind::Bounded { b, m })
    }

    pub fn with_rule(mut self, rule: PointRule) -> Self {
        self.rule = rule;
        self
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn kind(&self) -> &IntervalKind {
        &self.kind
    }

    pub fn rule(&self) -> &PointRule {
        &self.rule
    }

    /// Identifies the time axis; segments with equal tags are `≤_D` comparable.
    pub fn tag(&self) -> String {
        let rule = match &self.rule {
            PointRule::Halving => String::new(),
            PointRule::Custom { name, .. } => format!(":rule={name}"),
        };
        match &self.kind {
            IntervalKind::Bounded { b, m } => format!("q1:K={}:b={b}:m={m}{rule}", self.k),
            other => format!("q{}:K={}{rule}", other.q(), self.k),
        }
    }

    /// `c_i = i/K`.
    pub fn cut(&self, i: &BigInt) -> Rational {
        Rational::new(i.clone(), self.k).expect("K > 0")
    }

    fn evaluate(&self, idx: &IndexPair) -> Rational {
        match &self.rule {
            PointRule::Halving => {
                let inner = Rational::integer(&idx.i + 1) - Rational::inverse_power_of_two(idx.j);
                inner * Rational::new(1, self.k).expect("K > 0")
            }
            PointRule::Custom { rule, .. } => rule(self.k, idx),
        }
    }

    pub fn partition_point(&self, idx: &IndexPair) -> Result<Rational> {
        self.kind.check(idx)?;
        Ok(self.evaluate(idx))
    }

    fn admissible_range(&self, i_lo: i64, i_hi: i64, j_max: u32) -> Result<Vec<IndexPair>> {
        if i_lo > i_hi {
            return Err(Error::InvalidScheme(format!("empty index range {i_lo}..={i_hi}")));
        }
        for i in [i_lo, i_hi] {
            self.kind.check(&IndexPair::new(i, 0))?;
        }
        let mut out = Vec::new();
        for i in i_lo..=i_hi {
            for j in 0..=j_max {
                let idx = IndexPair::new(i, j);
                if self.kind.admits(&idx) {
                    out.push(idx);
                }
            }
        }
        Ok(out)
    }

    /// Every admissible `(i, j)` with `i_lo ≤ i ≤ i_hi`, `j ≤ j_max`, in
    /// lexicographic order, paired with its point. Endpoint indices contribute
    /// only `j = 0`. Custom rules are validated over the whole range.
    pub fn enumerate_points(&self, i_lo: i64, i_hi: i64, j_max: u32) -> Result<Vec<(IndexPair, Rational)>> {
        let points: Vec<_> = self
            .admissible_range(i_lo, i_hi, j_max)?
            .into_iter()
            .map(|idx| {
                let t = self.evaluate(&idx);
                (idx, t)
            })
            .collect();
        if matches!(self.rule, PointRule::Custom { .. }) {
            self.validate(&points)?;
        }
        Ok(points)
    }

    fn validate(&self, points: &[(IndexPair, Rational)]) -> Result<()> {
        let violation = |idx: &IndexPair, reason: String| Error::RuleViolation {
            i: idx.i.to_string(),
            j: idx.j,
            reason,
        };
        for (n, (idx, t)) in points.iter().enumerate() {
            let lo = self.cut(&idx.i);
            if idx.j == 0 && *t != lo {
                return Err(violation(idx, format!("t(i,0) = {t} but c_i = {lo}")));
            }
            if *t < lo {
                return Err(violation(idx, format!("{t} below c_i = {lo}")));
            }
            let hi = self.cut(&(&idx.i + 1));
            if !self.kind.is_endpoint(idx) && *t >= hi {
                return Err(violation(idx, format!("{t} not below c_(i+1) = {hi}")));
            }
            if let Some((prev, pt)) = n.checked_sub(1).map(|p| &points[p]) {
                if prev.i == idx.i && pt >= t {
                    return Err(violation(idx, format!("not increasing in j ({pt} ≥ {t})")));
                }
            }
        }
        Ok(())
    }

    /// Checks `t ≤ t' ⇔ idx ⪯ idx'` over every pair of admissible indices in
    /// the range. Rule validity is not assumed.
    pub fn verify_order_embedding(&self, i_lo: i64, i_hi: i64, j_max: u32) -> bool {
        let Ok(indices) = self.admissible_range(i_lo, i_hi, j_max) else {
            return false;
        };
        let points: Vec<_> = indices.iter().map(|idx| self.evaluate(idx)).collect();
        for (a, ta) in indices.iter().zip(&points) {
            for (b, tb) in indices.iter().zip(&points) {
                let by_time = ta <= tb;
                let by_index = lex_compare(a, b) != Ordering::Greater;
                if by_time != by_index {
                    return false;
                }
            }
        }
        true
    }
}

impl Serialize for IndexPair {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("IndexPair", 2)?;
        match self.i.to_i64() {
            Some(i) => st.serialize_field("i", &i)?,
            None => st.serialize_field("i", &self.i.to_string())?,
        }
        st.serialize_field("j", &self.j)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for IndexPair {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Int {
            Small(i64),
            Big(String),
        }
        #[derive(Deserialize)]
        struct Raw {
            i: Int,
            j: u32,
        }
        let raw = Raw::deserialize(deserializer)?;
        let i = match raw.i {
            Int::Small(i) => BigInt::from(i),
            Int::Big(s) => s.parse().map_err(serde::de::Error::custom)?,
        };
        Ok(IndexPair { i, j: raw.j })
    }
}

/// One row of a point listing: columns `i`, `j`, `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointRecord {
    #[serde(flatten)]
    pub index: IndexPair,
    pub t: Rational,
}

pub fn points_to_records(points: &[(IndexPair, Rational)]) -> Vec<PointRecord> {
    points.iter().map(|(index, t)| PointRecord { index: index.clone(), t: t.clone() }).collect()
}

pub fn points_to_csv(points: &[(IndexPair, Rational)]) -> String {
    let mut out = String::from("i,j,t\n");
    for (idx, t) in points {
        out.push_str(&format!("{},{},{}\n", idx.i, idx.j, t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn whole(k: u64) -> PartitionScheme {
        PartitionScheme::new(k, IntervalKind::Whole).unwrap()
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex_compare(&IndexPair::new(-1, 5), &IndexPair::new(0, 0)), Ordering::Less);
        assert_eq!(lex_compare(&IndexPair::new(2, 3), &IndexPair::new(2, 7)), Ordering::Less);
        assert_eq!(lex_compare(&IndexPair::new(4, 1), &IndexPair::new(4, 1)), Ordering::Equal);
    }

    #[test]
    fn derived_order_is_lex() {
        for i in -3..=3 {
            for j in 0..4 {
                for p in -3..=3 {
                    for m in 0..4 {
                        let (a, b) = (IndexPair::new(i, j), IndexPair::new(p, m));
                        assert_eq!(a.cmp(&b), lex_compare(&a, &b));
                    }
                }
            }
        }
    }

    #[test]
    fn point_examples() {
        assert_eq!(whole(1).partition_point(&IndexPair::new(0, 0)).unwrap(), r("0"));
        assert_eq!(whole(2).partition_point(&IndexPair::new(3, 2)).unwrap(), r("15/8"));
        assert_eq!(whole(1).partition_point(&IndexPair::new(-1, 3)).unwrap(), r("-1/8"));
    }

    #[test]
    fn admissibility_per_kind() {
        let q1 = PartitionScheme::bounded(2, 3).unwrap();
        assert_eq!(q1.partition_point(&IndexPair::new(3, 0)).unwrap(), r("3/2"));
        assert!(matches!(q1.partition_point(&IndexPair::new(3, 1)), Err(Error::InadmissibleIndex { .. })));
        assert!(q1.partition_point(&IndexPair::new(-1, 0)).is_err());
        assert!(q1.partition_point(&IndexPair::new(4, 0)).is_err());

        let q2 = PartitionScheme::new(1, IntervalKind::NonNegative).unwrap();
        assert!(q2.partition_point(&IndexPair::new(-1, 0)).is_err());

        let q3 = PartitionScheme::new(1, IntervalKind::NonPositive).unwrap();
        assert_eq!(q3.partition_point(&IndexPair::new(0, 0)).unwrap(), r("0"));
        assert!(q3.partition_point(&IndexPair::new(0, 1)).is_err());
        assert!(q3.partition_point(&IndexPair::new(1, 0)).is_err());
        assert_eq!(q3.partition_point(&IndexPair::new(-1, 1)).unwrap(), r("-1/2"));
    }

    #[test]
    fn scheme_construction_errors() {
        assert!(PartitionScheme::new(0, IntervalKind::Whole).is_err());
        let bad_b = IntervalKind::Bounded { b: r("1"), m: 3 };
        assert!(matches!(PartitionScheme::new(2, bad_b), Err(Error::InvalidScheme(_))));
        assert!(PartitionScheme::bounded(2, 0).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let pts = whole(1).enumerate_points(0, 0, 1).unwrap();
        assert_eq!(pts, vec![(IndexPair::new(0, 0), r("0")), (IndexPair::new(0, 1), r("1/2"))]);
        let pts = whole(1).enumerate_points(0, 1, 0).unwrap();
        assert_eq!(pts, vec![(IndexPair::new(0, 0), r("0")), (IndexPair::new(1, 0), r("1"))]);
    }

    #[test]
    fn enumerate_k3_six_points_increasing() {
        // (1/3)(i + 1 - 2^-j) for i ∈ {-1, 0}, j ∈ {0, 1, 2}, evaluated by hand.
        let expected = ["-1/3", "-1/6", "-1/12", "0", "1/6", "1/4"];
        let pts = whole(3).enumerate_points(-1, 0, 2).unwrap();
        let got: Vec<String> = pts.iter().map(|(_, t)| t.to_string()).collect();
        assert_eq!(got, expected);
        assert!(pts.windows(2).all(|w| w[0].1 < w[1].1 && w[0].0 < w[1].0));
    }

    #[test]
    fn bounded_endpoint_contributes_once() {
        let q1 = PartitionScheme::bounded(1, 2).unwrap();
        let pts = q1.enumerate_points(0, 2, 2).unwrap();
        assert_eq!(pts.len(), 2 * 3 + 1);
        assert_eq!(pts.last().unwrap(), &(IndexPair::new(2, 0), r("2")));
        assert!(q1.enumerate_points(0, 3, 0).is_err());
    }

    #[test]
    fn residual_identity() {
        for k in 1..=3u64 {
            let s = whole(k);
            for i in -4i64..=4 {
                for j in 0..10u32 {
                    let t = s.partition_point(&IndexPair::new(i, j)).unwrap();
                    let residual = s.cut(&BigInt::from(i + 1)) - t;
                    let expected = Rational::new(1, BigInt::from(k) << j).unwrap();
                    assert_eq!(residual, expected);
                }
            }
        }
    }

    #[test]
    fn embedding_holds_for_halving_rule() {
        assert!(whole(1).verify_order_embedding(-2, 2, 6));
        assert!(whole(1).verify_order_embedding(0, 0, 0));
    }

    #[test]
    fn constant_rule_breaks_embedding() {
        let flat = whole(1).with_rule(PointRule::custom("flat", |k, idx| Rational::new(idx.i.clone(), k).unwrap()));
        assert!(!flat.verify_order_embedding(0, 1, 1));
        assert!(matches!(flat.enumerate_points(0, 1, 1), Err(Error::RuleViolation { .. })));
    }

    #[test]
    fn valid_custom_rule_is_accepted() {
        // t(i, j) = (1/K)(i + j/(j+1)): starts at c_i, increases, stays below c_{i+1}.
        let harmonic = whole(2).with_rule(PointRule::custom("harmonic", |k, idx| {
            let frac = Rational::new(idx.j, idx.j + 1).unwrap();
            (Rational::integer(idx.i.clone()) + frac) * Rational::new(1, k).unwrap()
        }));
        assert!(harmonic.enumerate_points(-2, 2, 5).is_ok());
        assert!(harmonic.verify_order_embedding(-2, 2, 5));
        assert!(harmonic.tag().ends_with(":rule=harmonic"));
    }

    #[test]
    fn escaping_rule_is_rejected() {
        let escaping = whole(1).with_rule(PointRule::custom("escape", |k, idx| {
            Rational::new(idx.i.clone(), k).unwrap() + Rational::integer(idx.j)
        }));
        assert!(matches!(escaping.enumerate_points(0, 0, 1), Err(Error::RuleViolation { .. })));
    }

    #[test]
    fn csv_and_json_emission() {
        let pts = whole(2).enumerate_points(0, 0, 1).unwrap();
        assert_eq!(points_to_csv(&pts), "i,j,t\n0,0,0\n0,1,1/4\n");
        let json = serde_json::to_string(&points_to_records(&pts)).unwrap();
        assert_eq!(json, r#"[{"i":0,"j":0,"t":"0"},{"i":0,"j":1,"t":"1/4"}]"#);
    }
}
