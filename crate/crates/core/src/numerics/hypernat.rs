use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A natural number, or a symbolic infinite marker such as `λ`, `λ-1`, `ν+2`.
///
/// Infinite markers are labels only; no arithmetic is ever performed on them.
/// The derived `Ord` is structural (used for set storage). The semantic order
/// between different labels is supplied by a [`LabelOrder`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HyperNatural {
    Std(u64),
    Inf {
        #[serde(rename = "inf")]
        label: String,
        #[serde(default)]
        offset: i64,
    },
}

impl HyperNatural {
    pub fn infinite(label: impl Into<String>, offset: i64) -> Self {
        HyperNatural::Inf { label: label.into(), offset }
    }

    pub fn is_standard(&self) -> bool {
        matches!(self, HyperNatural::Std(_))
    }
}

impl fmt::Display for HyperNatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperNatural::Std(n) => write!(f, "{n}"),
            HyperNatural::Inf { label, offset: 0 } => write!(f, "{label}"),
            HyperNatural::Inf { label, offset } if *offset > 0 => write!(f, "{label}+{offset}"),
            HyperNatural::Inf { label, offset } => write!(f, "{label}{offset}"),
        }
    }
}

impl fmt::Debug for HyperNatural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Declared order on infinite labels: earlier labels are smaller.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LabelOrder {
    labels: Vec<String>,
}

impl LabelOrder {
    pub fn new<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for l in labels {
            let l = l.into();
            if !out.contains(&l) {
                out.push(l);
            }
        }
        LabelOrder { labels: out }
    }

    fn rank(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Every standard value lies below every infinite marker; markers with
    /// the same label compare by offset, otherwise by declared label rank.
    pub fn compare(&self, a: &HyperNatural, b: &HyperNatural) -> Result<Ordering> {
        use HyperNatural::*;
        match (a, b) {
            (Std(x), Std(y)) => Ok(x.cmp(y)),
            (Std(_), Inf { label, .. }) => self.rank(label).map(|_| Ordering::Less),
            (Inf { label, .. }, Std(_)) => self.rank(label).map(|_| Ordering::Greater),
            (Inf { label: la, offset: oa }, Inf { label: lb, offset: ob }) => {
                let (ra, rb) = (self.rank(la)?, self.rank(lb)?);
                Ok(ra.cmp(&rb).then(oa.cmp(ob)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> LabelOrder {
        LabelOrder::new(["λ", "ν"])
    }

    #[test]
    fn standard_below_infinite() {
        let got = ctx().compare(&HyperNatural::Std(5), &HyperNatural::infinite("λ", 0));
        assert_eq!(got, Ok(Ordering::Less));
        let got = ctx().compare(&HyperNatural::infinite("λ", -100), &HyperNatural::Std(u64::MAX));
        assert_eq!(got, Ok(Ordering::Greater));
    }

    #[test]
    fn offsets_order_same_label() {
        let got = ctx().compare(&HyperNatural::infinite("λ", 0), &HyperNatural::infinite("λ", 1));
        assert_eq!(got, Ok(Ordering::Less));
    }

    #[test]
    fn equal_standard_values() {
        assert_eq!(ctx().compare(&HyperNatural::Std(3), &HyperNatural::Std(3)), Ok(Ordering::Equal));
    }

    #[test]
    fn declared_rank_orders_labels() {
        let got = ctx().compare(&HyperNatural::infinite("ν", -5), &HyperNatural::infinite("λ", 5));
        assert_eq!(got, Ok(Ordering::Greater));
    }

    #[test]
    fn undeclared_label_is_rejected() {
        let got = ctx().compare(&HyperNatural::Std(1), &HyperNatural::infinite("γ", 0));
        assert_eq!(got, Err(Error::UnknownLabel("γ".into())));
    }

    #[test]
    fn wire_format() {
        let v: Vec<HyperNatural> = serde_json::from_str(r#"[3, {"inf": "λ", "offset": -1}, {"inf": "ν"}]"#).unwrap();
        assert_eq!(v, vec![HyperNatural::Std(3), HyperNatural::infinite("λ", -1), HyperNatural::infinite("ν", 0)]);
        assert_eq!(serde_json::to_string(&v[1]).unwrap(), r#"{"inf":"λ","offset":-1}"#);
        assert_eq!(v[1].to_string(), "λ-1");
    }
}
