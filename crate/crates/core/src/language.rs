//! Words, frozen segments and the conjunction words built from them.
//!
//! A frozen segment is a description word carrying the clause
//! `This description is named ⌈t⌉.` where `t` is its primitive-time
//! identifier. A developmental paradigm assigns one segment to every
//! admissible index of a [`PartitionScheme`], and `≤_D` is the order of the
//! time identifiers.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Rational;
use crate::partition::{IndexPair, IntervalKind, PartitionScheme};

/// The reserved connective joining conjuncts.
pub const CONNECTIVE: &str = "∧";

const OPEN_NAME: char = '⌈';
const CLOSE_NAME: char = '⌉';

/// A nonempty sequence of symbols. Symbols may not contain whitespace, the
/// connective, or the name brackets `⌈ ⌉`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Word {
    symbols: Vec<String>,
}

impl Word {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        for s in &symbols {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidWord(format!("bad symbol `{s}`")));
            }
            if s.contains(CONNECTIVE) || s.contains([OPEN_NAME, CLOSE_NAME]) {
                return Err(Error::InvalidWord(format!("symbol `{s}` uses a reserved character")));
            }
        }
        Ok(Word { symbols })
    }

    /// Splits on whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        Word::new(text.split_whitespace())
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbols.join(" "))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl TryFrom<String> for Word {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        Word::parse(&s)
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Description,
    Instruction,
}

impl Mode {
    fn noun(self) -> &'static str {
        match self {
            Mode::Description => "description",
            Mode::Instruction => "instruction",
        }
    }
}

/// A word stamped with its primitive-time identifier.
///
/// `axis` is the tag of the scheme the time was drawn from; only segments on
/// the same axis are `≤_D` comparable. Field order makes the derived `Ord`
/// agree with `≤_D` within an axis.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrozenSegment {
    axis: String,
    time_id: Rational,
    mode: Mode,
    body: Word,
}

impl FrozenSegment {
    pub fn new(body: Word, time_id: Rational, mode: Mode, axis: impl Into<String>) -> Self {
        FrozenSegment { axis: axis.into(), time_id, mode, body }
    }

    pub fn body(&self) -> &Word {
        &self.body
    }

    pub fn time_id(&self) -> &Rational {
        &self.time_id
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn axis(&self) -> &str {
        &self.axis
    }

    /// `This description is named ⌈t⌉.`
    pub fn naming_clause(&self) -> String {
        format!("This {} is named {OPEN_NAME}{}{CLOSE_NAME}.", self.mode.noun(), self.time_id)
    }

    /// Body followed by the naming clause.
    pub fn text(&self) -> String {
        format!("{} {}", self.body, self.naming_clause())
    }

    /// Reads a segment back from its text. Inverse of [`FrozenSegment::text`].
    pub fn parse(text: &str, axis: impl Into<String>) -> Result<Self> {
        let malformed = || Error::MalformedSegment(text.to_string());
        let (mode, at) = [Mode::Description, Mode::Instruction]
            .into_iter()
            .find_map(|m| text.rfind(&format!(" This {} is named {OPEN_NAME}", m.noun())).map(|at| (m, at)))
            .ok_or_else(malformed)?;
        let body = Word::parse(&text[..at])?;
        let time_id = extract_time_id(&text[at..])?;
        let seg = FrozenSegment::new(body, time_id, mode, axis);
        if seg.text() != text {
            return Err(malformed());
        }
        Ok(seg)
    }
}

/// The rational inside `⌈…⌉` of a segment text or naming clause.
pub fn extract_time_id(text: &str) -> Result<Rational> {
    let malformed = || Error::MalformedSegment(text.to_string());
    let open = text.rfind(OPEN_NAME).ok_or_else(malformed)?;
    let rest = &text[open + OPEN_NAME.len_utf8()..];
    let close = rest.find(CLOSE_NAME).ok_or_else(malformed)?;
    rest[..close].parse()
}

impl fmt::Display for FrozenSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Debug for FrozenSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F({})", self.time_id)
    }
}

pub fn make_frozen_segment(body: Word, scheme: &PartitionScheme, idx: &IndexPair, mode: Mode) -> Result<FrozenSegment> {
    let t = scheme.partition_point(idx)?;
    Ok(FrozenSegment::new(body, t, mode, scheme.tag()))
}

/// How a paradigm chooses the body of the segment at `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BodyRule {
    /// Placeholders `{i}`, `{j}` and `{q}` are substituted.
    Template(String),
    /// The body at `(i, j)` is entry `j mod len`.
    Literal(Vec<Word>),
}

impl BodyRule {
    fn render(&self, q: u8, idx: &IndexPair) -> Result<Word> {
        match self {
            BodyRule::Template(t) => Word::parse(
                &t.replace("{i}", &idx.i.to_string())
                    .replace("{j}", &idx.j.to_string())
                    .replace("{q}", &q.to_string()),
            ),
            BodyRule::Literal(words) if words.is_empty() => Err(Error::InvalidWord("empty literal body list".into())),
            BodyRule::Literal(words) => Ok(words[idx.j as usize % words.len()].clone()),
        }
    }
}

/// `f = F ∘ t`: indices to frozen segments.
#[derive(Debug, Clone, PartialEq)]
pub struct DevelopmentalParadigm {
    scheme: PartitionScheme,
    bodies: BodyRule,
    mode: Mode,
}

impl DevelopmentalParadigm {
    pub fn new(scheme: PartitionScheme, bodies: BodyRule, mode: Mode) -> Result<Self> {
        if let BodyRule::Literal(words) = &bodies {
            if words.is_empty() {
                return Err(Error::InvalidWord("empty literal body list".into()));
            }
        }
        Ok(DevelopmentalParadigm { scheme, bodies, mode })
    }

    pub fn scheme(&self) -> &PartitionScheme {
        &self.scheme
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn segment_of(&self, idx: &IndexPair) -> Result<FrozenSegment> {
        let body = self.bodies.render(self.scheme.kind().q(), idx)?;
        make_frozen_segment(body, &self.scheme, idx, self.mode)
    }

    /// Segments over an index range, in `≤_D` order.
    pub fn segments(&self, i_lo: i64, i_hi: i64, j_max: u32) -> Result<Vec<(IndexPair, FrozenSegment)>> {
        let q = self.scheme.kind().q();
        self.scheme
            .enumerate_points(i_lo, i_hi, j_max)?
            .into_iter()
            .map(|(idx, t)| {
                let body = self.bodies.render(q, &idx)?;
                let seg = FrozenSegment::new(body, t, self.mode, self.scheme.tag());
                Ok((idx, seg))
            })
            .collect()
    }
}

/// Paradigm description file:
/// `{"q": 1|2|3|4, "K": int, "b": "p/q", "m": int, "mode": ..., "bodies": ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParadigmSpec {
    pub q: u8,
    #[serde(rename = "K")]
    pub k: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default)]
    pub mode: Mode,
    pub bodies: BodyRule,
}

impl ParadigmSpec {
    pub fn interval_kind(&self) -> Result<IntervalKind> {
        match (self.q, &self.b, self.m) {
            (1, b, Some(m)) => {
                let b = match b {
                    Some(b) => b.clone(),
                    None => Rational::new(m, self.k.max(1))?,
                };
                Ok(IntervalKind::Bounded { b, m })
            }
            (1, _, None) => Err(Error::InvalidScheme("q = 1 requires m".into())),
            (2..=4, Some(_), _) | (2..=4, _, Some(_)) => {
                Err(Error::InvalidScheme("b and m apply to q = 1 only".into()))
            }
            (2, ..) => Ok(IntervalKind::NonNegative),
            (3, ..) => Ok(IntervalKind::NonPositive),
            (4, ..) => Ok(IntervalKind::Whole),
            (q, ..) => Err(Error::InvalidScheme(format!("unknown interval kind q = {q}"))),
        }
    }

    pub fn build(&self) -> Result<DevelopmentalParadigm> {
        let scheme = PartitionScheme::new(self.k, self.interval_kind()?)?;
        DevelopmentalParadigm::new(scheme, self.bodies.clone(), self.mode)
    }
}

/// `F_1 ∧ F_2 ∧ … ∧ F_n`, n ≥ 2, no repeated conjunct.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConjunctionWord {
    conjuncts: Vec<FrozenSegment>,
}

impl ConjunctionWord {
    /// Keeps the caller's left-to-right order.
    pub fn from_ordered(conjuncts: Vec<FrozenSegment>) -> Result<Self> {
        let distinct: BTreeSet<&FrozenSegment> = conjuncts.iter().collect();
        if distinct.len() != conjuncts.len() {
            return Err(Error::InvalidWord("repeated conjunct".into()));
        }
        if conjuncts.len() < 2 {
            return Err(Error::TooFewMembers(conjuncts.len()));
        }
        Ok(ConjunctionWord { conjuncts })
    }

    pub fn conjuncts(&self) -> &[FrozenSegment] {
        &self.conjuncts
    }

    pub fn len(&self) -> usize {
        self.conjuncts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conjuncts.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.conjuncts.windows(2).all(|w| w[0] < w[1])
    }

    pub fn canonical(&self) -> ConjunctionWord {
        let mut conjuncts = self.conjuncts.clone();
        conjuncts.sort();
        ConjunctionWord { conjuncts }
    }

    pub fn text(&self) -> String {
        self.conjuncts.iter().map(FrozenSegment::text).collect::<Vec<_>>().join(&format!(" {CONNECTIVE} "))
    }
}

impl fmt::Display for ConjunctionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl fmt::Debug for ConjunctionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.conjuncts.iter().map(|c| format!("{c:?}")).collect();
        write!(f, "{}", parts.join(" ∧ "))
    }
}

/// The word `𝒢(G)`: members of `G` joined left to right in `≤_D` order.
pub fn build_conjunction_word<I>(members: I) -> Result<ConjunctionWord>
where
    I: IntoIterator<Item = FrozenSegment>,
{
    let set: BTreeSet<FrozenSegment> = members.into_iter().collect();
    if set.len() < 2 {
        return Err(Error::TooFewMembers(set.len()));
    }
    Ok(ConjunctionWord { conjuncts: set.into_iter().collect() })
}

pub fn atoms_of(word: &ConjunctionWord) -> BTreeSet<FrozenSegment> {
    word.conjuncts.iter().cloned().collect()
}

/// Finite ordered choice: the members of `F` listed in strictly increasing
/// `≤_D` order.
pub fn ordered_choice<I>(members: I) -> Result<Vec<FrozenSegment>>
where
    I: IntoIterator<Item = FrozenSegment>,
{
    let set: BTreeSet<FrozenSegment> = members.into_iter().collect();
    let mut out: Vec<FrozenSegment> = Vec::with_capacity(set.len());
    for seg in set {
        if let Some(first) = out.first() {
            if first.axis != seg.axis {
                return Err(Error::IncomparableMembers(first.axis.clone(), seg.axis.clone()));
            }
        }
        if let Some(last) = out.last() {
            if last.time_id == seg.time_id {
                return Err(Error::TimeCollision(seg.time_id.clone()));
            }
        }
        out.push(seg);
    }
    Ok(out)
}
