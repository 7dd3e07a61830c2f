//! Checks that a set-to-set map on a finite universe is a finite consequence
//! operator: `X ⊆ C(X) = C(C(X)) ⊆ U` and `C(X) = ⋃{C(F) : F finite ⊆ X}`.

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

/// Universes up to this size are checked over every subset.
pub const EXHAUSTIVE_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConsequenceAxiom {
    /// `X ⊆ C(X)`
    Extensive,
    /// `C(X) ⊆ U`
    Bounded,
    /// `C(C(X)) = C(X)`
    Idempotent,
    /// `C(X) = ⋃{C(F) : F ⊆ X finite}`
    Finitary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation<S: Ord> {
    pub axiom: ConsequenceAxiom,
    pub witness: BTreeSet<S>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport<S: Ord> {
    pub universe_size: usize,
    pub subsets_checked: usize,
    pub exhaustive: bool,
    pub violations: Vec<Violation<S>>,
}

impl<S: Ord> AxiomReport<S> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations_of(&self, axiom: ConsequenceAxiom) -> impl Iterator<Item = &Violation<S>> {
        self.violations.iter().filter(move |v| v.axiom == axiom)
    }
}

/// Exhaustive over all subsets when `|universe| ≤ 12`; otherwise `samples`
/// random subsets drawn from a generator seeded with `seed`.
pub fn check_consequence_axioms<S, F>(op: F, universe: &BTreeSet<S>, samples: usize, seed: u64) -> AxiomReport<S>
where
    S: Ord + Clone + std::fmt::Debug,
    F: Fn(&BTreeSet<S>) -> BTreeSet<S>,
{
    if universe.len() <= EXHAUSTIVE_LIMIT {
        exhaustive(&op, universe)
    } else {
        sampled(&op, universe, samples, seed)
    }
}

struct Indexed<'a, S> {
    elems: Vec<&'a S>,
}

impl<'a, S: Ord + Clone> Indexed<'a, S> {
    fn set(&self, mask: u64) -> BTreeSet<S> {
        self.elems
            .iter()
            .enumerate()
            .filter(|(n, _)| mask >> n & 1 == 1)
            .map(|(_, s)| (*s).clone())
            .collect()
    }

    /// Mask of the in-universe part and the elements outside the universe.
    fn split(&self, set: &BTreeSet<S>) -> (u64, BTreeSet<S>) {
        let mut mask = 0;
        let mut outside = BTreeSet::new();
        for s in set {
            match self.elems.binary_search(&s) {
                Ok(n) => mask |= 1 << n,
                Err(_) => {
                    outside.insert(s.clone());
                }
            }
        }
        (mask, outside)
    }
}

fn exhaustive<S, F>(op: &F, universe: &BTreeSet<S>) -> AxiomReport<S>
where
    S: Ord + Clone + std::fmt::Debug,
    F: Fn(&BTreeSet<S>) -> BTreeSet<S>,
{
    let ix = Indexed { elems: universe.iter().collect() };
    let total = 1u64 << universe.len();
    let mut violations = Vec::new();
    let mut image = Vec::with_capacity(total as usize);
    let mut bounded = Vec::with_capacity(total as usize);

    for mask in 0..total {
        let x = ix.set(mask);
        let y = op(&x);
        let (y_mask, outside) = ix.split(&y);
        if !outside.is_empty() {
            violations.push(Violation {
                axiom: ConsequenceAxiom::Bounded,
                witness: x.clone(),
                detail: format!("image leaves the universe: {outside:?}"),
            });
        }
        if mask & !y_mask != 0 {
            violations.push(Violation {
                axiom: ConsequenceAxiom::Extensive,
                witness: x,
                detail: format!("lost {:?}", ix.set(mask & !y_mask)),
            });
        }
        image.push(y_mask);
        bounded.push(outside.is_empty());
    }

    for mask in 0..total {
        let y_mask = image[mask as usize];
        let twice_differs = if bounded[mask as usize] {
            image[y_mask as usize] != y_mask
        } else {
            let y = op(&ix.set(mask));
            op(&y) != y
        };
        if twice_differs {
            violations.push(Violation {
                axiom: ConsequenceAxiom::Idempotent,
                witness: ix.set(mask),
                detail: "C(C(X)) differs from C(X)".into(),
            });
        }

        // Union of images over every subset of X, walking submasks downward.
        let mut union = 0u64;
        let mut sub = mask;
        loop {
            union |= image[sub as usize];
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
        if union != y_mask {
            violations.push(Violation {
                axiom: ConsequenceAxiom::Finitary,
                witness: ix.set(mask),
                detail: format!("images of subsets add {:?}", ix.set(union & !y_mask)),
            });
        }
    }

    AxiomReport { universe_size: universe.len(), subsets_checked: total as usize, exhaustive: true, violations }
}

fn random_subset<S: Ord + Clone>(rng: &mut StdRng, from: &[&S]) -> BTreeSet<S> {
    from.iter().filter(|_| rng.random_bool(0.5)).map(|s| (*s).clone()).collect()
}

fn sampled<S, F>(op: &F, universe: &BTreeSet<S>, samples: usize, seed: u64) -> AxiomReport<S>
where
    S: Ord + Clone + std::fmt::Debug,
    F: Fn(&BTreeSet<S>) -> BTreeSet<S>,
{
    const SUBSETS_PER_SAMPLE: usize = 16;
    let mut rng = StdRng::seed_from_u64(seed);
    let elems: Vec<&S> = universe.iter().collect();
    let mut violations = Vec::new();

    for _ in 0..samples {
        let x = random_subset(&mut rng, &elems);
        let y = op(&x);
        if !y.is_subset(universe) {
            let outside: BTreeSet<_> = y.difference(universe).cloned().collect();
            violations.push(Violation {
                axiom: ConsequenceAxiom::Bounded,
                witness: x.clone(),
                detail: format!("image leaves the universe: {outside:?}"),
            });
        }
        if !x.is_subset(&y) {
            let lost: BTreeSet<_> = x.difference(&y).cloned().collect();
            violations.push(Violation {
                axiom: ConsequenceAxiom::Extensive,
                witness: x.clone(),
                detail: format!("lost {lost:?}"),
            });
        }
        if op(&y) != y {
            violations.push(Violation {
                axiom: ConsequenceAxiom::Idempotent,
                witness: x.clone(),
                detail: "C(C(X)) differs from C(X)".into(),
            });
        }
        // Since X itself is one of its finite subsets, equality reduces to
        // every C(F) staying inside C(X).
        let members: Vec<&S> = x.iter().collect();
        let mut probes: Vec<BTreeSet<S>> = members.iter().map(|s| BTreeSet::from([(*s).clone()])).collect();
        probes.push(BTreeSet::new());
        probes.extend((0..SUBSETS_PER_SAMPLE).map(|_| random_subset(&mut rng, &members)));
        if let Some(f) = probes.into_iter().find(|f| !op(f).is_subset(&y)) {
            violations.push(Violation {
                axiom: ConsequenceAxiom::Finitary,
                witness: x,
                detail: format!("C({f:?}) escapes C(X)"),
            });
        }
    }

    AxiomReport { universe_size: universe.len(), subsets_checked: samples, exhaustive: false, violations }
}
