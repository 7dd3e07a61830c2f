use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use ultraword::consequence::{check_consequence_axioms, s_operator, ConjunctionMode, Formula, RuleFile};
use ultraword::hyperreal::{realism_relation, st_extended, st_set, SpUniverse};
use ultraword::language::{build_conjunction_word, ConjunctionWord, DevelopmentalParadigm, ParadigmSpec};
use ultraword::paradigm::{ultraword_witness, SegmentRecord, TruncationParams};
use ultraword::partition::{points_to_csv, points_to_records, IndexPair, IntervalKind, PartitionScheme};
use ultraword::signatures::{converse_ri, separate_vs_union, ContextFile, Observation};
use ultraword::{HyperNatural, Rational};

use crate::args::*;
use crate::error::{usage, CliError, CliResult};

pub const DEFAULT_J_MAX: u32 = 3;
pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_SEED: u64 = 0;

/// Defaults read from `--config`; command-line flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Defaults {
    #[serde(rename = "K")]
    pub k: Option<u64>,
    #[serde(rename = "j-max")]
    pub j_max: Option<u32>,
    pub format: Option<Format>,
    pub mode: Option<ModeArg>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

impl Defaults {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        match path {
            None => Ok(Defaults::default()),
            Some(p) => read_json(p),
        }
    }
}

/// A finished command: its text and whether it reports a failed check.
pub struct Emitted {
    pub text: String,
    pub check_failed: bool,
}

impl Emitted {
    fn ok(text: String) -> Self {
        Emitted { text, check_failed: false }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn render(value: Value) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("output types serialize")
}

fn list(text: &str) -> BTreeSet<String> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()
}

fn parse_range(flag: &str, text: &str) -> CliResult<(i64, i64)> {
    let bad = || usage(format!("--{flag} expects lo..hi, got {text:?}"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(usage(format!("--{flag} range {lo}..{hi} is empty")));
    }
    Ok((lo, hi))
}

fn parse_indices(text: &str) -> CliResult<Vec<IndexPair>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let bad = || usage(format!("--points expects i:j items, got {item:?}"));
            let (i, j) = item.split_once(':').ok_or_else(bad)?;
            let i: i64 = i.trim().parse().map_err(|_| bad())?;
            let j: u32 = j.trim().parse().map_err(|_| bad())?;
            Ok(IndexPair::new(i, j))
        })
        .collect()
}

/// Subinterval range shown when `--i` is omitted.
fn default_range(kind: &IntervalKind) -> (i64, i64) {
    match kind {
        IntervalKind::Bounded { m, .. } => (0, *m as i64),
        IntervalKind::NonNegative => (0, 3),
        IntervalKind::NonPositive => (-3, 0),
        IntervalKind::Whole => (-3, 3),
    }
}

fn segment_records(list: &[(IndexPair, ultraword::language::FrozenSegment)]) -> Vec<SegmentRecord> {
    list.iter().map(|(i, s)| SegmentRecord::new(i, s)).collect()
}

pub fn points(a: &PointsArgs, d: &Defaults) -> CliResult<Emitted> {
    let k = a.k.or(d.k).ok_or_else(|| usage("--K is required"))?;
    if k == 0 {
        return Err(usage("--K must be positive"));
    }
    let kind = match (a.q, a.m) {
        (1, None) => return Err(usage("--q 1 requires --m")),
        (1, Some(m)) => {
            let b = match &a.b {
                Some(b) => b.parse::<Rational>().map_err(|e| usage(format!("--b: {e}")))?,
                None => Rational::new(m, k)?,
            };
            IntervalKind::Bounded { b, m }
        }
        (_, Some(_)) => return Err(usage("--m applies to --q 1 only")),
        _ if a.b.is_some() => return Err(usage("--b applies to --q 1 only")),
        (2, None) => IntervalKind::NonNegative,
        (3, None) => IntervalKind::NonPositive,
        _ => IntervalKind::Whole,
    };
    let (lo, hi) = match &a.i {
        Some(r) => parse_range("i", r)?,
        None => default_range(&kind),
    };
    let j_max = a.j_max.or(d.j_max).unwrap_or(DEFAULT_J_MAX);
    let scheme = PartitionScheme::new(k, kind)?;
    log::info!("enumerating {} over {lo}..{hi}, j ≤ {j_max}", scheme.tag());
    let pts = scheme.enumerate_points(lo, hi, j_max)?;
    let text = match a.format.or(d.format).unwrap_or(Format::Csv) {
        Format::Csv => points_to_csv(&pts),
        Format::Json => render(to_value(&points_to_records(&pts))),
    };
    Ok(Emitted::ok(text))
}

fn load_paradigm(path: &Path) -> CliResult<DevelopmentalParadigm> {
    let spec: ParadigmSpec = read_json(path)?;
    Ok(spec.build()?)
}

pub fn paradigm(a: &ParadigmArgs, d: &Defaults) -> CliResult<Emitted> {
    let dp = load_paradigm(&a.spec)?;
    let (lo, hi) = match &a.i {
        Some(r) => parse_range("i", r)?,
        None => default_range(dp.scheme().kind()),
    };
    let j_max = a.j_max.or(d.j_max).unwrap_or(DEFAULT_J_MAX);
    let segs = dp.segments(lo, hi, j_max)?;
    Ok(Emitted::ok(render(json!({
        "scheme": dp.scheme().tag(),
        "segments": to_value(&segment_records(&segs)),
    }))))
}

pub fn ultraword(a: &UltrawordArgs) -> CliResult<Emitted> {
    let dp = load_paradigm(&a.spec)?;
    let mut t = match a.p {
        Some(p) => TruncationParams::two_sided(a.m, p, a.n),
        None => TruncationParams::new(a.m, a.n),
    };
    if let Some(label) = &a.marker {
        t = t.with_marker(HyperNatural::infinite(label.clone(), 0));
    }
    let w = ultraword_witness(&dp, &t)?;
    log::debug!("word over {} segments", w.members.len());
    Ok(Emitted::ok(render(json!({
        "scheme": dp.scheme().tag(),
        "params": to_value(&w.params),
        "size": w.members.len(),
        "members": to_value(&segment_records(&w.members)),
        "word": w.word.text(),
        "contained": w.contained,
    }))))
}

pub fn closure(a: &ClosureArgs) -> CliResult<Emitted> {
    let file: RuleFile = read_json(&a.rules)?;
    let ls = file.into_system()?;
    let result = ls.closure(&list(&a.premises))?;
    Ok(Emitted::ok(render(to_value(&result))))
}

fn formula_text(f: &Formula) -> String {
    f.to_string()
}

pub fn decompose(a: &DecomposeArgs, d: &Defaults) -> CliResult<Emitted> {
    let dp = load_paradigm(&a.spec)?;
    let indices = parse_indices(&a.points)?;
    let segments = indices.iter().map(|i| dp.segment_of(i)).collect::<ultraword::Result<Vec<_>>>()?;
    let mode = match a.mode.or(d.mode).unwrap_or(ModeArg::Canonical) {
        ModeArg::Canonical => ConjunctionMode::Canonical,
        ModeArg::Permutational => ConjunctionMode::Permutational,
    };
    let word = match mode {
        ConjunctionMode::Canonical => build_conjunction_word(segments)?,
        ConjunctionMode::Permutational => ConjunctionWord::from_ordered(segments)?,
    };
    let axioms: BTreeSet<Formula> = list(&a.axioms).into_iter().map(Formula::Axiom).collect();
    let dec = s_operator(&word, &axioms, mode)?;
    Ok(Emitted::ok(render(json!({
        "mode": to_value(&mode),
        "word": word.text(),
        "counts": {
            "A": dec.axioms.len(),
            "Q": dec.conjunctions.len(),
            "d": dec.atoms.len(),
            "total": dec.total(),
        },
        "axioms": dec.axioms.iter().map(formula_text).collect::<Vec<_>>(),
        "conjunctions": dec.conjunctions.iter().map(ConjunctionWord::text).collect::<Vec<_>>(),
        "atoms": dec.atoms.iter().map(|s| s.text()).collect::<Vec<_>>(),
        "disjoint": dec.invariants_hold(),
    }))))
}

pub fn signature(a: &SignatureArgs) -> CliResult<Emitted> {
    let ctx = read_json::<ContextFile>(&a.context)?.into_context()?;
    let value = match &a.select.x {
        Some(x) => to_value(&ctx.behavior_signature(&list(x))?),
        None => to_value(&ctx.theory_signature()?.rules()),
    };
    Ok(Emitted::ok(render(value)))
}

pub fn converse(a: &ConverseArgs) -> CliResult<Emitted> {
    let obs: Vec<Observation> = read_json(&a.observations)?;
    let language = a.language.as_deref().map(list);
    let ri = converse_ri(&obs, language.as_ref())?;
    let mut out = json!({ "rules": to_value(&ri.rules()) });
    if let Some(p) = &a.premises {
        let verdict = separate_vs_union(&obs, &list(p), language.as_ref())?;
        out["comparison"] = to_value(&verdict);
    }
    Ok(Emitted::ok(render(out)))
}

pub fn st(a: &StArgs) -> CliResult<Emitted> {
    let u: SpUniverse = read_json(&a.input)?;
    let members = u.members();
    Ok(Emitted::ok(render(json!({
        "arity": u.arity(),
        "standard_parts": to_value(&st_set(members)?),
        "extended": to_value(&st_extended(members)?),
        "realism": to_value(&realism_relation(members)?),
    }))))
}

fn required<'a>(flag: &str, target: &str, path: &'a Option<std::path::PathBuf>) -> CliResult<&'a Path> {
    path.as_deref().ok_or_else(|| usage(format!("--target {target} requires --{flag}")))
}

pub fn check(a: &CheckArgs, d: &Defaults) -> CliResult<Emitted> {
    let samples = a.samples.or(d.samples).unwrap_or(DEFAULT_SAMPLES);
    let seed = a.seed.or(d.seed).unwrap_or(DEFAULT_SEED);
    let (target, report, passed) = match a.target {
        Target::Closure => {
            let ls = read_json::<RuleFile>(required("rules", "closure", &a.rules)?)?.into_system()?;
            let report = check_consequence_axioms(|x| ls.closure_set(x).expect("subsets of the language"), ls.language(), samples, seed);
            ("closure", to_value(&report), report.passed())
        }
        Target::St => {
            let u: SpUniverse = read_json(required("input", "st", &a.input)?)?;
            let universe = u.saturated();
            let report = check_consequence_axioms(|x| st_extended(x).expect("limited members"), &universe, samples, seed);
            ("st", to_value(&report), report.passed())
        }
        Target::Signature => {
            let ctx = read_json::<ContextFile>(required("context", "signature", &a.context)?)?.into_context()?;
            let report = check_consequence_axioms(
                |x| ctx.perceived_closure(x).expect("subsets of the perceived set"),
                ctx.perceived(),
                samples,
                seed,
            );
            let sig = ctx.signature_operator_check()?;
            let passed = report.passed() && sig.passed();
            let value = json!({ "axioms": to_value(&report), "signature": to_value(&sig) });
            ("signature", value, passed)
        }
    };
    Ok(Emitted {
        text: render(json!({ "target": target, "passed": passed, "report": report })),
        check_failed: !passed,
    })
}
