//! Exact, finite models of consequence operators over conjunction words.
//!
//! * [`numerics`]: rationals, truncated ε-series and symbolic hypernaturals.
//! * [`partition`]: interval partitions indexed by `(i, j)` pairs and their
//!   order embedding into the rationals.
//! * [`language`]: words, frozen segments named by their time, developmental
//!   paradigms and canonical conjunction words.
//! * [`paradigm`]: inductive sequence families and finite truncations of the
//!   conjunction of a paradigm.
//! * [`consequence`]: logic systems, fixpoint closure, the axiom harness and
//!   the decomposition of `S({w})`.
//! * [`signatures`]: perceived-set operators, behavior and theory signatures
//!   and rules built from observations.
//! * [`hyperreal`]: standard parts of limited series and of subparticle
//!   representations.

pub mod consequence;
pub mod error;
pub mod hyperreal;
pub mod language;
pub mod numerics;
pub mod paradigm;
pub mod partition;
pub mod signatures;

pub use error::{Error, Result};
pub use numerics::{EpsilonSeries, HyperNatural, LabelOrder, Rational};
