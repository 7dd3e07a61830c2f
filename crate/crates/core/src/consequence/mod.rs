//! Logic systems, their fixpoint closure, the consequence-operator axiom
//! harness and the conjunction operator `S`.

mod axioms;
mod conjunction;
mod system;

pub use axioms::{check_consequence_axioms, AxiomReport, ConsequenceAxiom, Violation, EXHAUSTIVE_LIMIT};
pub use conjunction::{
    conjunction_system, conjunctions_over, elimination_closure, s_closure, s_operator, ConjunctionMode, Formula,
    SDecomposition, CANONICAL_ATOM_LIMIT, PERMUTATIONAL_ATOM_LIMIT,
};
pub use system::{ClosureResult, LogicSystem, Rule, RuleFile};
