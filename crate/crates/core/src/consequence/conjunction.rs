//! The conjunction consequence operator `S` on a word `w = F_1 ∧ … ∧ F_n`
//! and its decomposition `S({w}) = A ∪ Q ∪ d`.
//!
//! `d` is the set of atoms of `w`, `Q` every conjunction of two or more
//! distinct atoms, `A` a caller-supplied axiom set. In canonical mode a
//! conjunction is identified with its `≤_D` arrangement; in permutational
//! mode every arrangement is a distinct word.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::system::{LogicSystem, Rule};
use crate::error::{Error, Result};
use crate::language::{atoms_of, ConjunctionWord, FrozenSegment};

/// Largest atom count accepted per mode; `|Q|` grows as `2^n` and `e·n!`.
pub const CANONICAL_ATOM_LIMIT: usize = 16;
pub const PERMUTATIONAL_ATOM_LIMIT: usize = 7;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjunctionMode {
    #[default]
    Canonical,
    Permutational,
}

/// A sentence of the conjunction language.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(FrozenSegment),
    Conjunction(ConjunctionWord),
    /// A logical axiom, opaque here.
    Axiom(String),
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Conjunction(c) => write!(f, "{c}"),
            Formula::Axiom(s) => write!(f, "{s}"),
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a:?}"),
            Formula::Conjunction(c) => write!(f, "[{c:?}]"),
            Formula::Axiom(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SDecomposition {
    pub word: ConjunctionWord,
    pub mode: ConjunctionMode,
    pub axioms: BTreeSet<Formula>,
    pub conjunctions: BTreeSet<ConjunctionWord>,
    pub atoms: BTreeSet<FrozenSegment>,
}

impl SDecomposition {
    pub fn members(&self) -> BTreeSet<Formula> {
        let mut out = self.axioms.clone();
        out.extend(self.conjunctions.iter().cloned().map(Formula::Conjunction));
        out.extend(self.atoms.iter().cloned().map(Formula::Atom));
        out
    }

    pub fn total(&self) -> usize {
        self.axioms.len() + self.conjunctions.len() + self.atoms.len()
    }

    /// The structural facts of the decomposition: the three parts are
    /// disjoint, `w ∈ Q`, each conjunction is built from atoms only, and every
    /// atom occurs in some conjunction.
    pub fn invariants_hold(&self) -> bool {
        let members = self.members();
        let disjoint = members.len() == self.total();
        let word_in_q = self.conjunctions.contains(&self.word);
        let built_from_atoms = self
            .conjunctions
            .iter()
            .all(|c| c.conjuncts().iter().all(|a| self.atoms.contains(a)));
        let used: BTreeSet<&FrozenSegment> = self.conjunctions.iter().flat_map(|c| c.conjuncts()).collect();
        let all_used = self.atoms.iter().all(|a| used.contains(a));
        disjoint && word_in_q && built_from_atoms && all_used
    }
}

fn check_size(n: usize, mode: ConjunctionMode) -> Result<()> {
    let limit = match mode {
        ConjunctionMode::Canonical => CANONICAL_ATOM_LIMIT,
        ConjunctionMode::Permutational => PERMUTATIONAL_ATOM_LIMIT,
    };
    if n > limit {
        return Err(Error::TooLarge { what: "conjunction word", size: n, limit });
    }
    Ok(())
}

/// Every conjunction of two or more distinct members of `atoms`.
pub fn conjunctions_over(atoms: &BTreeSet<FrozenSegment>, mode: ConjunctionMode) -> Result<BTreeSet<ConjunctionWord>> {
    check_size(atoms.len(), mode)?;
    let mut out = BTreeSet::new();
    for subset in atoms.iter().cloned().powerset().filter(|s| s.len() >= 2) {
        match mode {
            ConjunctionMode::Canonical => {
                out.insert(ConjunctionWord::from_ordered(subset)?);
            }
            ConjunctionMode::Permutational => {
                let k = subset.len();
                for arrangement in subset.into_iter().permutations(k) {
                    out.insert(ConjunctionWord::from_ordered(arrangement)?);
                }
            }
        }
    }
    Ok(out)
}

fn representative(word: &ConjunctionWord, mode: ConjunctionMode) -> ConjunctionWord {
    match mode {
        ConjunctionMode::Canonical => word.canonical(),
        ConjunctionMode::Permutational => word.clone(),
    }
}

fn check_axioms(axioms: &BTreeSet<Formula>, atoms: &BTreeSet<FrozenSegment>) -> Result<()> {
    for ax in axioms {
        let collides = match ax {
            Formula::Atom(a) => atoms.contains(a),
            // A conjunction collides with Q exactly when it is built from two or
            // more atoms of w; arrangement is irrelevant in either mode.
            Formula::Conjunction(c) => c.conjuncts().iter().all(|a| atoms.contains(a)),
            Formula::Axiom(_) => false,
        };
        if collides {
            return Err(Error::AxiomCollision(ax.to_string()));
        }
    }
    Ok(())
}

/// `S({w}) = A ∪ Q ∪ d`, enumerated directly.
pub fn s_operator(word: &ConjunctionWord, axioms: &BTreeSet<Formula>, mode: ConjunctionMode) -> Result<SDecomposition> {
    let atoms = atoms_of(word);
    check_axioms(axioms, &atoms)?;
    let conjunctions = conjunctions_over(&atoms, mode)?;
    Ok(SDecomposition {
        word: representative(word, mode),
        mode,
        axioms: axioms.clone(),
        conjunctions,
        atoms,
    })
}

/// The conjunction logic over the atoms of `w`: elimination `{c} ⊢ a` for each
/// conjunct `a` of `c`, and introduction `atoms(c) ⊢ c`.
pub fn conjunction_system(
    word: &ConjunctionWord,
    axioms: &BTreeSet<Formula>,
    mode: ConjunctionMode,
) -> Result<LogicSystem<Formula>> {
    let atoms = atoms_of(word);
    check_axioms(axioms, &atoms)?;
    let conjunctions = conjunctions_over(&atoms, mode)?;
    let mut rules = Vec::new();
    for c in &conjunctions {
        let as_formula = Formula::Conjunction(c.clone());
        let parts: Vec<Formula> = c.conjuncts().iter().cloned().map(Formula::Atom).collect();
        for a in &parts {
            rules.push(Rule::new([as_formula.clone()], a.clone()));
        }
        rules.push(Rule::new(parts, as_formula));
    }
    let language = axioms
        .iter()
        .cloned()
        .chain(conjunctions.into_iter().map(Formula::Conjunction))
        .chain(atoms.into_iter().map(Formula::Atom));
    LogicSystem::new(language, rules)
}

/// `S({w})` as the fixpoint of [`conjunction_system`] from `{w} ∪ A`.
pub fn s_closure(word: &ConjunctionWord, axioms: &BTreeSet<Formula>, mode: ConjunctionMode) -> Result<BTreeSet<Formula>> {
    let ls = conjunction_system(word, axioms, mode)?;
    let mut start = axioms.clone();
    start.insert(Formula::Conjunction(representative(word, mode)));
    ls.closure_set(&start)
}

/// The part of `S({w})` reached by elimination alone: `{w} ∪ atoms(w)`.
///
/// Linear in the word length, so it serves as the membership check for
/// words too long to enumerate `Q`.
pub fn elimination_closure(word: &ConjunctionWord) -> Result<BTreeSet<Formula>> {
    let w = Formula::Conjunction(word.clone());
    let atoms: Vec<Formula> = word.conjuncts().iter().cloned().map(Formula::Atom).collect();
    let rules = atoms.iter().map(|a| Rule::new([w.clone()], a.clone()));
    let ls = LogicSystem::new(atoms.iter().cloned().chain([w.clone()]), rules)?;
    ls.closure_set(&BTreeSet::from([w]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::language::{build_conjunction_word, Mode, Word};
    use crate::numerics::Rational;

    fn seg(t: i64) -> FrozenSegment {
        FrozenSegment::new(Word::parse("x").unwrap(), Rational::integer(t), Mode::Description, "axis")
    }

    fn word(n: i64) -> ConjunctionWord {
        build_conjunction_word((0..n).map(seg)).unwrap()
    }

    #[test]
    fn three_atoms_canonical() {
        let d = s_operator(&word(3), &BTreeSet::new(), ConjunctionMode::Canonical).unwrap();
        assert_eq!((d.atoms.len(), d.conjunctions.len(), d.total()), (3, 4, 7));
        assert!(d.invariants_hold());
    }

    #[test]
    fn three_atoms_permutational() {
        let d = s_operator(&word(3), &BTreeSet::new(), ConjunctionMode::Permutational).unwrap();
        assert_eq!((d.conjunctions.len(), d.total()), (12, 15));
        assert!(d.invariants_hold());
    }

    #[test]
    fn smallest_word_with_axiom() {
        let axioms = BTreeSet::from([Formula::Axiom("α".into())]);
        let w = word(2);
        let d = s_operator(&w, &axioms, ConjunctionMode::Canonical).unwrap();
        let expected = BTreeSet::from([
            Formula::Axiom("α".into()),
            Formula::Conjunction(w.clone()),
            Formula::Atom(seg(0)),
            Formula::Atom(seg(1)),
        ]);
        assert_eq!(d.members(), expected);
        assert!(d.invariants_hold());
    }

    #[test]
    fn axiom_collisions() {
        let w = word(3);
        let atom = BTreeSet::from([Formula::Atom(seg(1))]);
        assert!(matches!(s_operator(&w, &atom, ConjunctionMode::Canonical), Err(Error::AxiomCollision(_))));
        let sub = ConjunctionWord::from_ordered(vec![seg(2), seg(0)]).unwrap();
        let conj = BTreeSet::from([Formula::Conjunction(sub)]);
        for mode in [ConjunctionMode::Canonical, ConjunctionMode::Permutational] {
            assert!(matches!(s_operator(&w, &conj, mode), Err(Error::AxiomCollision(_))));
        }
        let foreign = BTreeSet::from([Formula::Atom(seg(7))]);
        assert!(s_operator(&w, &foreign, ConjunctionMode::Canonical).is_ok());
    }

    #[test]
    fn fixpoint_route_agrees_with_enumeration() {
        let axioms = BTreeSet::from([Formula::Axiom("α".into()), Formula::Axiom("β".into())]);
        for n in 2..=4 {
            for mode in [ConjunctionMode::Canonical, ConjunctionMode::Permutational] {
                let direct = s_operator(&word(n), &axioms, mode).unwrap().members();
                assert_eq!(s_closure(&word(n), &axioms, mode).unwrap(), direct, "n={n} {mode:?}");
            }
        }
    }

    #[test]
    fn non_canonical_word_in_both_modes() {
        let w = ConjunctionWord::from_ordered(vec![seg(2), seg(0), seg(1)]).unwrap();
        let canon = s_operator(&w, &BTreeSet::new(), ConjunctionMode::Canonical).unwrap();
        assert!(canon.conjunctions.contains(&w.canonical()));
        assert!(!canon.conjunctions.contains(&w));
        assert!(canon.invariants_hold());
        let perm = s_operator(&w, &BTreeSet::new(), ConjunctionMode::Permutational).unwrap();
        assert!(perm.conjunctions.contains(&w));
        assert!(perm.invariants_hold());
    }

    #[test]
    fn elimination_reaches_every_atom() {
        let w = word(30);
        let closure = elimination_closure(&w).unwrap();
        assert_eq!(closure.len(), 31);
        assert!(w.conjuncts().iter().all(|a| closure.contains(&Formula::Atom(a.clone()))));
    }

    #[test]
    fn oversized_words_rejected() {
        let w = word(8);
        assert!(matches!(
            s_operator(&w, &BTreeSet::new(), ConjunctionMode::Permutational),
            Err(Error::TooLarge { .. })
        ));
    }
}
