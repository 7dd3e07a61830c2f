//! Exact arithmetic: rationals, truncated ε-series and symbolic hypernaturals.

mod hypernat;
mod rational;
mod series;

pub use hypernat::{HyperNatural, LabelOrder};
pub use rational::Rational;
pub use series::EpsilonSeries;
