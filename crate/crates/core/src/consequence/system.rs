use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `premises ⊢ conclusion`. Premise sets are nonempty.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Rule<S: Ord> {
    pub premises: BTreeSet<S>,
    pub conclusion: S,
}

impl<S: Ord> Rule<S> {
    pub fn new(premises: impl IntoIterator<Item = S>, conclusion: S) -> Self {
        Rule { premises: premises.into_iter().collect(), conclusion }
    }
}

/// A finite language with finitely many rules of inference.
///
/// Rules are kept sorted by conclusion, then premises, and deduplicated; the
/// closure's derivation order is reproducible from that ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicSystem<S: Ord> {
    language: BTreeSet<S>,
    rules: Vec<Rule<S>>,
    by_premise: BTreeMap<S, Vec<usize>>,
}

/// Least fixpoint of a premise set, with the rules in the order they fired.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureResult<S: Ord> {
    pub closure: BTreeSet<S>,
    pub derivation: Vec<Rule<S>>,
}

impl<S: Ord + Clone> ClosureResult<S> {
    /// Re-applies the recorded firings to `premises`. Each firing must be
    /// enabled when it is replayed.
    pub fn replay(&self, premises: &BTreeSet<S>) -> Option<BTreeSet<S>> {
        let mut known = premises.clone();
        for rule in &self.derivation {
            if !rule.premises.is_subset(&known) {
                return None;
            }
            known.insert(rule.conclusion.clone());
        }
        Some(known)
    }
}

impl<S: Ord + Clone + Debug> LogicSystem<S> {
    pub fn new(language: impl IntoIterator<Item = S>, rules: impl IntoIterator<Item = Rule<S>>) -> Result<Self> {
        let language: BTreeSet<S> = language.into_iter().collect();
        let mut rules: Vec<Rule<S>> = rules.into_iter().collect();
        for rule in &rules {
            if rule.premises.is_empty() {
                return Err(Error::EmptyPremises(format!("{:?}", rule.conclusion)));
            }
            for s in rule.premises.iter().chain(std::iter::once(&rule.conclusion)) {
                if !language.contains(s) {
                    return Err(Error::UnknownSentence(format!("{s:?}")));
                }
            }
        }
        rules.sort_by(|a, b| a.conclusion.cmp(&b.conclusion).then_with(|| a.premises.cmp(&b.premises)));
        rules.dedup();

        let mut by_premise: BTreeMap<S, Vec<usize>> = BTreeMap::new();
        for (n, rule) in rules.iter().enumerate() {
            for p in &rule.premises {
                by_premise.entry(p.clone()).or_default().push(n);
            }
        }
        Ok(LogicSystem { language, rules, by_premise })
    }

    pub fn language(&self) -> &BTreeSet<S> {
        &self.language
    }

    pub fn rules(&self) -> &[Rule<S>] {
        &self.rules
    }

    fn check_known(&self, set: &BTreeSet<S>) -> Result<()> {
        match set.iter().find(|s| !self.language.contains(s)) {
            Some(s) => Err(Error::UnknownSentence(format!("{s:?}"))),
            None => Ok(()),
        }
    }

    /// Forward chaining to the least fixpoint. Each round only revisits rules
    /// with a premise derived in the previous round.
    pub fn closure(&self, premises: &BTreeSet<S>) -> Result<ClosureResult<S>> {
        self.check_known(premises)?;
        let mut known = premises.clone();
        let mut derivation = Vec::new();
        let mut delta: BTreeSet<S> = premises.clone();

        while !delta.is_empty() {
            let candidates: BTreeSet<usize> = delta
                .iter()
                .filter_map(|s| self.by_premise.get(s))
                .flatten()
                .copied()
                .collect();
            let mut fresh = BTreeSet::new();
            for n in candidates {
                let rule = &self.rules[n];
                if !known.contains(&rule.conclusion) && rule.premises.is_subset(&known) {
                    known.insert(rule.conclusion.clone());
                    fresh.insert(rule.conclusion.clone());
                    derivation.push(rule.clone());
                }
            }
            delta = fresh;
        }
        Ok(ClosureResult { closure: known, derivation })
    }

    pub fn closure_set(&self, premises: &BTreeSet<S>) -> Result<BTreeSet<S>> {
        self.closure(premises).map(|r| r.closure)
    }
}

/// Rule file: `{"language": [...], "rules": [{"premises": [...], "conclusion": "..."}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleFile {
    pub language: BTreeSet<String>,
    pub rules: Vec<Rule<String>>,
}

impl RuleFile {
    pub fn into_system(self) -> Result<LogicSystem<String>> {
        LogicSystem::new(self.language, self.rules)
    }
}

impl From<&LogicSystem<String>> for RuleFile {
    fn from(ls: &LogicSystem<String>) -> Self {
        RuleFile { language: ls.language.clone(), rules: ls.rules.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[&str]) -> BTreeSet<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn rule(ps: &[&str], c: &str) -> Rule<String> {
        Rule::new(ps.iter().map(|s| s.to_string()), c.to_string())
    }

    fn abc() -> LogicSystem<String> {
        LogicSystem::new(set(&["a", "b", "c"]), [rule(&["a", "b"], "c"), rule(&["a"], "b")]).unwrap()
    }

    #[test]
    fn chains_two_firings() {
        let res = abc().closure(&set(&["a"])).unwrap();
        assert_eq!(res.closure, set(&["a", "b", "c"]));
        assert_eq!(res.derivation, vec![rule(&["a"], "b"), rule(&["a", "b"], "c")]);
        assert_eq!(res.replay(&set(&["a"])), Some(res.closure.clone()));
    }

    #[test]
    fn empty_premises_derive_nothing() {
        assert!(abc().closure_set(&BTreeSet::new()).unwrap().is_empty());
    }

    #[test]
    fn unmatched_premise_is_fixed() {
        let ls = LogicSystem::new(set(&["a", "b"]), [rule(&["a"], "b")]).unwrap();
        assert_eq!(ls.closure_set(&set(&["b"])).unwrap(), set(&["b"]));
    }

    #[test]
    fn unknown_sentences_rejected() {
        assert!(matches!(abc().closure(&set(&["z"])), Err(Error::UnknownSentence(_))));
        let bad = LogicSystem::new(set(&["a"]), [rule(&["a"], "q")]);
        assert!(matches!(bad, Err(Error::UnknownSentence(_))));
        let empty = LogicSystem::new(set(&["a"]), [rule(&[], "a")]);
        assert!(matches!(empty, Err(Error::EmptyPremises(_))));
    }

    #[test]
    fn rules_are_canonical() {
        let ls = LogicSystem::new(
            set(&["a", "b", "c"]),
            [rule(&["b"], "c"), rule(&["a"], "b"), rule(&["b"], "c"), rule(&["a"], "c")],
        )
        .unwrap();
        assert_eq!(ls.rules(), &[rule(&["a"], "b"), rule(&["a"], "c"), rule(&["b"], "c")]);
    }

    #[test]
    fn replay_rejects_disabled_firing() {
        let res = abc().closure(&set(&["a"])).unwrap();
        assert_eq!(res.replay(&set(&["b"])), None);
    }

    #[test]
    fn rule_file_round_trip() {
        let json = r#"{"language": ["a", "b", "c"], "rules": [{"premises": ["a"], "conclusion": "b"}, {"premises": ["a", "b"], "conclusion": "c"}]}"#;
        let file: RuleFile = serde_json::from_str(json).unwrap();
        let ls = file.into_system().unwrap();
        assert_eq!(ls, abc());
        assert_eq!(RuleFile::from(&ls).into_system().unwrap(), ls);
    }
}
