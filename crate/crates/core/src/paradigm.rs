//! Inductively defined families of partial sequences, developmental-paradigm
//! membership, and the finite sets `H` whose conjunction words generate
//! initial stretches of a paradigm.
//!
//! The sets `H` are the standard, pre-transfer objects: for every finite
//! truncation there is a word `w` with `H ⊆ S({w})`. Infinite truncations
//! (`λ`, `ν`, `γ`) are never iterated; a [`HyperNatural`] marker may be attached
//! to parameters purely as an output label.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::consequence::{elimination_closure, Formula};
use crate::error::{Error, Result};
use crate::language::{build_conjunction_word, ConjunctionWord, DevelopmentalParadigm, FrozenSegment};
use crate::numerics::{HyperNatural, Rational};
use crate::partition::{IndexPair, IntervalKind};

/// A function on `[0, n]`, stored as its values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialSequence<T> {
    values: Vec<T>,
}

impl<T> PartialSequence<T> {
    pub fn new(values: Vec<T>) -> Self {
        PartialSequence { values }
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// `n`, the last point of the domain; `None` for the empty function.
    pub fn last_index(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    /// `f|[0, n]`.
    pub fn restrict(&self, n: usize) -> PartialSequence<T>
    where
        T: Clone,
    {
        PartialSequence { values: self.values[..=n.min(self.values.len().saturating_sub(1))].to_vec() }
    }
}

/// A range `D` and a distinguished beginning segment `F`. `F` need not lie in
/// `D`; the first value is tested against `F` alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XFamily<T: Ord> {
    pub range: BTreeSet<T>,
    pub first: T,
}

impl<T: Ord> XFamily<T> {
    pub fn new(range: impl IntoIterator<Item = T>, first: T) -> Self {
        XFamily { range: range.into_iter().collect(), first }
    }
}

/// `f ∈ 𝒳_n` where `n` is the last index of `f`, decided by unfolding the
/// inductive definition: `𝒳_1` fixes `f(0) = F` and `f(1) ∈ D`, and
/// `𝒳_{n+1}` asks `f|[0,n] ∈ 𝒳_n` and `f(n+1) ∈ D`. Sequences on `[0, 0]` are
/// in no `𝒳_n`.
pub fn x_membership<T: Ord>(f: &[T], family: &XFamily<T>) -> bool {
    let mut n = match f.len().checked_sub(1) {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    loop {
        if n == 1 {
            return f[0] == family.first && family.range.contains(&f[1]);
        }
        if !family.range.contains(&f[n]) {
            return false;
        }
        n -= 1;
    }
}

/// Checks the developmental-paradigm condition for a sequence `f : ℕ → D` up
/// to `horizon`: `f(0) = F` and `f|[0,k] ∈ 𝒳_k` for `1 ≤ k ≤ horizon`.
pub fn dp_membership<T, F>(f: F, family: &XFamily<T>, horizon: usize) -> Result<bool>
where
    T: Ord,
    F: Fn(usize) -> T,
{
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    let prefix: Vec<T> = (0..=horizon).map(f).collect();
    if prefix[0] != family.first {
        return Ok(false);
    }
    Ok((1..=horizon).all(|k| x_membership(&prefix[..=k], family)))
}

/// Finite truncation of one of the four interval kinds.
///
/// `m` bounds the subinterval index (`0 < m ≤` the interval's `m` for
/// `[0, b]`, `m ≥ 0` for `[0, +∞)`, `m ≤ 0` for `(-∞, 0]` and `(-∞, +∞)`),
/// `p ≥ 0` is the right bound for `(-∞, +∞)` only, `n` bounds `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncationParams {
    pub m: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    pub n: u32,
    /// Label of the infinite parameter this truncation stands in for.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marker: Option<HyperNatural>,
}

impl TruncationParams {
    pub fn new(m: i64, n: u32) -> Self {
        TruncationParams { m, p: None, n, marker: None }
    }

    pub fn two_sided(m: i64, p: i64, n: u32) -> Self {
        TruncationParams { m, p: Some(p), n, marker: None }
    }

    pub fn with_marker(mut self, marker: HyperNatural) -> Self {
        self.marker = Some(marker);
        self
    }
}

fn inadmissible(reason: impl Into<String>) -> Error {
    Error::InadmissibleTruncation(reason.into())
}

fn check_params(kind: &IntervalKind, t: &TruncationParams) -> Result<()> {
    match (kind, t.p) {
        (IntervalKind::Whole, None) => return Err(inadmissible("(-∞,+∞) needs p")),
        (IntervalKind::Whole, Some(p)) if t.m > 0 || p < 0 => return Err(inadmissible("need m ≤ 0 ≤ p")),
        (IntervalKind::Whole, Some(_)) => return Ok(()),
        (_, Some(_)) => return Err(inadmissible("p applies to (-∞,+∞) only")),
        _ => {}
    }
    match kind {
        IntervalKind::Bounded { m, .. } if t.m <= 0 || t.m as u64 > *m => {
            Err(inadmissible(format!("[0,b] needs 0 < m ≤ {m}")))
        }
        IntervalKind::NonNegative if t.m < 0 => Err(inadmissible("[0,+∞) needs m ≥ 0")),
        IntervalKind::NonPositive if t.m > 0 => Err(inadmissible("(-∞,0] needs m ≤ 0")),
        _ => Ok(()),
    }
}

/// Indices of `H` in lexicographic order:
///
/// - `[0, b]`: `{(i, j) : 0 ≤ i < m, j ≤ n} ∪ {(m, 0)}`
/// - `[0, +∞)`: `{(i, j) : 0 ≤ i ≤ m, j ≤ n}`
/// - `(-∞, 0]`: `{(i, j) : m ≤ i < 0, j ≤ n} ∪ {(0, 0)}`
/// - `(-∞, +∞)`: `{(i, j) : m ≤ i ≤ 0, j ≤ n} ∪ {(k, j) : 0 ≤ k ≤ p, j ≤ n}`
pub fn h_indices(kind: &IntervalKind, t: &TruncationParams) -> Result<Vec<IndexPair>> {
    check_params(kind, t)?;
    let block = |lo: i64, hi: i64| (lo..=hi).flat_map(move |i| (0..=t.n).map(move |j| IndexPair::new(i, j)));
    let out = match kind {
        IntervalKind::Bounded { .. } => block(0, t.m - 1).chain([IndexPair::new(t.m, 0)]).collect(),
        IntervalKind::NonNegative => block(0, t.m).collect(),
        IntervalKind::NonPositive => block(t.m, -1).chain([IndexPair::new(0, 0)]).collect(),
        IntervalKind::Whole => block(t.m, t.p.unwrap_or(0)).collect(),
    };
    Ok(out)
}

/// Closed-form `|H|`.
pub fn h_size(kind: &IntervalKind, t: &TruncationParams) -> Result<u64> {
    check_params(kind, t)?;
    let cols = u64::from(t.n) + 1;
    Ok(match kind {
        IntervalKind::Bounded { .. } => t.m as u64 * cols + 1,
        IntervalKind::NonNegative => (t.m as u64 + 1) * cols,
        IntervalKind::NonPositive => t.m.unsigned_abs() * cols + 1,
        IntervalKind::Whole => (t.p.unwrap_or(0) - t.m) as u64 * cols + cols,
    })
}

/// `H` together with its indices, in `≤_D` order.
pub fn build_h_indexed(dp: &DevelopmentalParadigm, t: &TruncationParams) -> Result<Vec<(IndexPair, FrozenSegment)>> {
    h_indices(dp.scheme().kind(), t)?
        .into_iter()
        .map(|idx| {
            let seg = dp.segment_of(&idx)?;
            Ok((idx, seg))
        })
        .collect()
}

pub fn build_h(dp: &DevelopmentalParadigm, t: &TruncationParams) -> Result<BTreeSet<FrozenSegment>> {
    Ok(build_h_indexed(dp, t)?.into_iter().map(|(_, s)| s).collect())
}

/// The word `w_t = 𝒢(H)`, checked to satisfy `H ⊆ S({w_t})`.
pub fn ultraword_approx(dp: &DevelopmentalParadigm, t: &TruncationParams) -> Result<ConjunctionWord> {
    ultraword_witness(dp, t).map(|w| w.word)
}

/// One member of `H`, as emitted in listings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentRecord {
    #[serde(flatten)]
    pub index: IndexPair,
    pub t: Rational,
    pub clause: String,
    pub text: String,
}

impl SegmentRecord {
    pub fn new(index: &IndexPair, seg: &FrozenSegment) -> Self {
        SegmentRecord {
            index: index.clone(),
            t: seg.time_id().clone(),
            clause: seg.naming_clause(),
            text: seg.text(),
        }
    }
}

/// An approximating word with the evidence that it generates `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UltrawordWitness {
    pub params: TruncationParams,
    pub members: Vec<(IndexPair, FrozenSegment)>,
    pub word: ConjunctionWord,
    /// `H ⊆ S({w})`, evaluated through the consequence operator.
    pub contained: bool,
}

pub fn ultraword_witness(dp: &DevelopmentalParadigm, t: &TruncationParams) -> Result<UltrawordWitness> {
    let members = build_h_indexed(dp, t)?;
    let word = build_conjunction_word(members.iter().map(|(_, s)| s.clone()))?;
    let generated = elimination_closure(&word)?;
    let contained = members.iter().all(|(_, s)| generated.contains(&Formula::Atom(s.clone())));
    Ok(UltrawordWitness { params: t.clone(), members, word, contained })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{BodyRule, Mode};
    use crate::partition::PartitionScheme;

    fn dp(kind: IntervalKind, k: u64) -> DevelopmentalParadigm {
        let scheme = PartitionScheme::new(k, kind).unwrap();
        DevelopmentalParadigm::new(scheme, BodyRule::Template("e{i}_{j}".into()), Mode::Description).unwrap()
    }

    fn bounded(k: u64, m: u64) -> DevelopmentalParadigm {
        let scheme = PartitionScheme::bounded(k, m).unwrap();
        DevelopmentalParadigm::new(scheme, BodyRule::Template("e{i}_{j}".into()), Mode::Description).unwrap()
    }

    #[test]
    fn x_membership_examples() {
        let fam = XFamily::new(["F", "d1", "d2"], "F");
        assert!(x_membership(&["F", "d1"], &fam));
        assert!(!x_membership(&["d1", "d2"], &fam));
        assert!(x_membership(&["F", "d1", "d2", "d1"], &fam));
        assert!(!x_membership(&["F", "d1", "zz", "d1"], &fam));
        assert!(!x_membership(&["F"], &fam));
        assert!(!x_membership::<&str>(&[], &fam));
    }

    #[test]
    fn first_segment_outside_range() {
        let fam = XFamily::new(["d1"], "F");
        assert!(x_membership(&["F", "d1", "d1"], &fam));
        assert!(!x_membership(&["F", "F"], &fam));
    }

    #[test]
    fn dp_membership_examples() {
        let fam = XFamily::new([0u8, 1, 2], 0);
        assert_eq!(dp_membership(|_| 0u8, &fam, 25), Ok(true));
        assert_eq!(dp_membership(|k| if k == 0 { 1 } else { 0 }, &fam, 5), Ok(false));
        assert_eq!(dp_membership(|k| (k % 4) as u8, &fam, 10), Ok(false));
        assert_eq!(dp_membership(|k| (k % 3) as u8, &fam, 10), Ok(true));
        assert_eq!(dp_membership(|_| 0u8, &fam, 0), Err(Error::ZeroHorizon));
    }

    #[test]
    fn partial_sequence_restriction() {
        let f = PartialSequence::new(vec![1, 2, 3, 4]);
        assert_eq!(f.last_index(), Some(3));
        assert_eq!(f.restrict(1).values(), &[1, 2]);
    }

    #[test]
    fn h_examples() {
        let h = build_h(&bounded(1, 2), &TruncationParams::new(2, 1)).unwrap();
        assert_eq!(h.len(), 5);
        let h = build_h(&dp(IntervalKind::Whole, 1), &TruncationParams::two_sided(-1, 1, 0)).unwrap();
        assert_eq!(h.len(), 3);
        let h = build_h(&dp(IntervalKind::NonNegative, 1), &TruncationParams::new(0, 0)).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.first().unwrap().time_id(), &Rational::zero());
    }

    #[test]
    fn non_positive_h_uses_closed_endpoint() {
        let idx = h_indices(&IntervalKind::NonPositive, &TruncationParams::new(-2, 1)).unwrap();
        let shown: Vec<String> = idx.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["(-2,0)", "(-2,1)", "(-1,0)", "(-1,1)", "(0,0)"]);
    }

    #[test]
    fn inadmissible_params() {
        let q1 = bounded(1, 2);
        for t in [TruncationParams::new(0, 1), TruncationParams::new(3, 1), TruncationParams::two_sided(1, 1, 0)] {
            assert!(matches!(build_h(&q1, &t), Err(Error::InadmissibleTruncation(_))), "{t:?}");
        }
        let q4 = dp(IntervalKind::Whole, 1);
        assert!(build_h(&q4, &TruncationParams::new(-1, 0)).is_err());
        assert!(build_h(&q4, &TruncationParams::two_sided(1, 2, 0)).is_err());
        assert!(build_h(&dp(IntervalKind::NonPositive, 1), &TruncationParams::new(1, 0)).is_err());
        assert!(build_h(&dp(IntervalKind::NonNegative, 1), &TruncationParams::new(-1, 0)).is_err());
    }

    #[test]
    fn ultraword_examples() {
        let w = ultraword_approx(&bounded(1, 1), &TruncationParams::new(1, 0)).unwrap();
        let times: Vec<String> = w.conjuncts().iter().map(|s| s.time_id().to_string()).collect();
        assert_eq!(times, ["0", "1"]);

        let witness = ultraword_witness(&bounded(1, 2), &TruncationParams::new(2, 1)).unwrap();
        assert_eq!(witness.word.len(), 5);
        assert!(witness.contained);

        let single = ultraword_approx(&dp(IntervalKind::NonNegative, 1), &TruncationParams::new(0, 0));
        assert_eq!(single, Err(Error::TooFewMembers(1)));
    }

    #[test]
    fn marker_is_label_only() {
        let t = TruncationParams::new(1, 2).with_marker(HyperNatural::infinite("λ", 0));
        let plain = TruncationParams::new(1, 2);
        let q2 = dp(IntervalKind::NonNegative, 2);
        assert_eq!(build_h(&q2, &t).unwrap(), build_h(&q2, &plain).unwrap());
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"m":1,"n":2,"marker":{"inf":"λ","offset":0}}"#);
    }
}
