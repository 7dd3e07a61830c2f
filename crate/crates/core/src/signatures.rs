//! Perceived-set consequence operators and the signatures they leave.
//!
//! Given a theory over `L` and a perceived set `P ⊆ L`, the perceived closure
//! is `P_N(X) = P ∩ S_N(X)`. A behavior signature records, for one finite
//! source `X`, the tuples `(x_1, …, x_n, y)` with `y ∈ P_N(X) - X`; the theory
//! signature is their union over all nonempty `X ⊆ P`. Read back as rules,
//! the theory signature generates `P_N` again.
//!
//! The converse direction builds rules straight from observations `(X, X')`.
//! Applying each observation's rules separately can derive less than applying
//! their union, because only the union chains.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::consequence::{LogicSystem, Rule};
use crate::error::{Error, Result};

pub const DEFAULT_TAG: &str = "†";

/// Perceived sets up to this size are swept exhaustively.
pub const SIGNATURE_LIMIT: usize = 20;
pub const CHECK_LIMIT: usize = 12;

type Sentences = BTreeSet<String>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerceivedContext {
    perceived: Sentences,
    theory: LogicSystem<String>,
    tag: String,
}

impl PerceivedContext {
    pub fn new(theory: LogicSystem<String>, perceived: impl IntoIterator<Item = String>, tag: impl Into<String>) -> Result<Self> {
        let perceived: Sentences = perceived.into_iter().collect();
        let tag = tag.into();
        if tag.is_empty() {
            return Err(Error::TagCollision(String::new()));
        }
        for p in &perceived {
            if !theory.language().contains(p) {
                return Err(Error::UnknownSentence(p.clone()));
            }
            if p.contains(&tag) {
                return Err(Error::TagCollision(p.clone()));
            }
        }
        Ok(PerceivedContext { perceived, theory, tag })
    }

    pub fn perceived(&self) -> &Sentences {
        &self.perceived
    }

    pub fn theory(&self) -> &LogicSystem<String> {
        &self.theory
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    fn check_perceived(&self, x: &Sentences) -> Result<()> {
        match x.iter().find(|s| !self.perceived.contains(*s)) {
            Some(s) => Err(Error::NotPerceived(s.clone())),
            None => Ok(()),
        }
    }

    /// `P_N(X) = P ∩ S_N(X)`.
    pub fn perceived_closure(&self, x: &Sentences) -> Result<Sentences> {
        self.check_perceived(x)?;
        let closure = self.theory.closure_set(x)?;
        Ok(closure.intersection(&self.perceived).cloned().collect())
    }

    /// Empty tuple set when nothing new is deduced.
    pub fn behavior_signature(&self, x: &Sentences) -> Result<BehaviorSignature> {
        if x.is_empty() {
            return Err(Error::EmptySource);
        }
        let deduced = self.perceived_closure(x)?;
        let source: Vec<String> = x.iter().cloned().collect();
        let tuples = deduced
            .difference(x)
            .map(|y| source.iter().cloned().chain([y.clone()]).collect())
            .collect();
        Ok(BehaviorSignature { source, tuples })
    }

    fn nonempty_subsets(&self) -> Result<impl Iterator<Item = Sentences> + '_> {
        let n = self.perceived.len();
        if n > SIGNATURE_LIMIT {
            return Err(Error::TooLarge { what: "perceived set", size: n, limit: SIGNATURE_LIMIT });
        }
        Ok((1u64..1 << n).map(move |mask| subset(&self.perceived, mask)))
    }

    pub fn theory_signature(&self) -> Result<TheorySignature> {
        let mut tuples = BTreeSet::new();
        for x in self.nonempty_subsets()? {
            tuples.extend(self.behavior_signature(&x)?.tuples);
        }
        Ok(TheorySignature { tuples })
    }

    /// Compares the operator generated by the computed theory signature with
    /// `P_N` on every subset of `P`.
    pub fn signature_operator_check(&self) -> Result<SignatureReport> {
        let sig = self.theory_signature()?;
        self.check_signature(&sig)
    }

    /// Compares the operator generated by `signature` with `P_N` on every
    /// subset of `P`.
    pub fn check_signature(&self, signature: &TheorySignature) -> Result<SignatureReport> {
        let n = self.perceived.len();
        if n > CHECK_LIMIT {
            return Err(Error::TooLarge { what: "perceived set", size: n, limit: CHECK_LIMIT });
        }
        let generated = signature.to_system(self.perceived.iter().cloned())?;
        let mut mismatches = Vec::new();
        for mask in 0u64..1 << n {
            let x = subset(&self.perceived, mask);
            let expected = self.perceived_closure(&x)?;
            let got: Sentences = generated.closure_set(&x)?.intersection(&self.perceived).cloned().collect();
            if got != expected {
                mismatches.push(Mismatch { source: x, expected, generated: got });
            }
        }
        Ok(SignatureReport { subsets_checked: 1 << n, mismatches })
    }

    /// `J'`: pairs each member with its tagged copy.
    pub fn tag_j_prime(&self, x: &Sentences) -> Result<BTreeSet<(String, String)>> {
        self.check_perceived(x)?;
        x.iter()
            .map(|s| {
                if s.ends_with(&self.tag) {
                    Err(Error::TagCollision(s.clone()))
                } else {
                    Ok((s.clone(), format!("{s}{}", self.tag)))
                }
            })
            .collect()
    }

    /// `{(X, P_N(X) - X) : X ⊆ P, P_N(X) ≠ ∅}`.
    pub fn process_relation(&self) -> Result<BTreeSet<(Sentences, Sentences)>> {
        let n = self.perceived.len();
        if n > SIGNATURE_LIMIT {
            return Err(Error::TooLarge { what: "perceived set", size: n, limit: SIGNATURE_LIMIT });
        }
        let mut out = BTreeSet::new();
        for mask in 0u64..1 << n {
            let x = subset(&self.perceived, mask);
            let deduced = self.perceived_closure(&x)?;
            if !deduced.is_empty() {
                let new = deduced.difference(&x).cloned().collect();
                out.insert((x, new));
            }
        }
        Ok(out)
    }

    /// Whether [`Self::process_relation`] lies inside a caller's relation.
    pub fn process_relation_within(&self, relation: &BTreeSet<(Sentences, Sentences)>) -> Result<bool> {
        Ok(self.process_relation()?.is_subset(relation))
    }
}

fn subset(from: &Sentences, mask: u64) -> Sentences {
    from.iter().enumerate().filter(|(n, _)| mask >> n & 1 == 1).map(|(_, s)| s.clone()).collect()
}

/// `B_X`: the source in canonical order and the tuples `(x_1, …, x_n, y)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BehaviorSignature {
    pub source: Vec<String>,
    pub tuples: BTreeSet<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TheorySignature {
    pub tuples: BTreeSet<Vec<String>>,
}

impl TheorySignature {
    /// Each tuple as a rule: the leading coordinates entail the last one.
    pub fn rules(&self) -> Vec<Rule<String>> {
        self.tuples
            .iter()
            .filter_map(|t| t.split_last())
            .map(|(last, init)| Rule::new(init.iter().cloned(), last.clone()))
            .collect()
    }

    pub fn to_system(&self, language: impl IntoIterator<Item = String>) -> Result<LogicSystem<String>> {
        LogicSystem::new(language, self.rules())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub source: Sentences,
    pub expected: Sentences,
    pub generated: Sentences,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureReport {
    pub subsets_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl SignatureReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// One observed transition `X ↦ X'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Observation {
    #[serde(rename = "X")]
    pub source: Sentences,
    #[serde(rename = "Xprime")]
    pub observed: Sentences,
}

impl Observation {
    pub fn new<S: Into<String>>(source: impl IntoIterator<Item = S>, observed: impl IntoIterator<Item = S>) -> Self {
        Observation {
            source: source.into_iter().map(Into::into).collect(),
            observed: observed.into_iter().map(Into::into).collect(),
        }
    }

    /// `B'_X`: one rule `X ⊢ y` per `y ∈ X'`.
    pub fn rules(&self) -> Vec<Rule<String>> {
        self.observed.iter().map(|y| Rule::new(self.source.iter().cloned(), y.clone())).collect()
    }
}

fn observation_language(observations: &[Observation], language: Option<&Sentences>) -> Result<Sentences> {
    let used: Sentences = observations
        .iter()
        .flat_map(|o| o.source.iter().chain(&o.observed))
        .cloned()
        .collect();
    if observations.iter().any(|o| o.source.is_empty()) {
        return Err(Error::EmptySource);
    }
    match language {
        None => Ok(used),
        Some(lang) => match used.iter().find(|s| !lang.contains(*s)) {
            Some(s) => Err(Error::UnknownSentence(s.clone())),
            None => Ok(lang.clone()),
        },
    }
}

/// `RI'`: the union of every observation's rules. Without a declared
/// language, the language is every sentence the observations mention.
pub fn converse_ri(observations: &[Observation], language: Option<&Sentences>) -> Result<LogicSystem<String>> {
    let lang = observation_language(observations, language)?;
    LogicSystem::new(lang, observations.iter().flat_map(Observation::rules))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub separate: Sentences,
    pub union: Sentences,
    pub equal: bool,
}

/// Closure of `premises` under each observation's rules taken alone (then
/// united), against closure under `RI'`.
pub fn separate_vs_union(
    observations: &[Observation],
    premises: &Sentences,
    language: Option<&Sentences>,
) -> Result<Discrepancy> {
    let lang = observation_language(observations, language)?;
    let lang: Sentences = lang.union(premises).cloned().collect();
    if let Some(declared) = language {
        if let Some(s) = premises.iter().find(|s| !declared.contains(*s)) {
            return Err(Error::UnknownSentence(s.clone()));
        }
    }
    let mut separate = premises.clone();
    for obs in observations {
        let single = LogicSystem::new(lang.iter().cloned(), obs.rules())?;
        separate.extend(single.closure_set(premises)?);
    }
    let union_system = LogicSystem::new(lang.iter().cloned(), observations.iter().flat_map(Observation::rules))?;
    let union = union_system.closure_set(premises)?;
    let equal = separate == union;
    Ok(Discrepancy { separate, union, equal })
}

/// Context file: a rule file plus `"perceived"` and an optional `"tag"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContextFile {
    pub language: Sentences,
    pub rules: Vec<Rule<String>>,
    pub perceived: Sentences,
    #[serde(default = "default_tag")]
    pub tag: String,
}

fn default_tag() -> String {
    DEFAULT_TAG.to_string()
}

impl ContextFile {
    pub fn into_context(self) -> Result<PerceivedContext> {
        let theory = LogicSystem::new(self.language, self.rules)?;
        PerceivedContext::new(theory, self.perceived, self.tag)
    }
}
