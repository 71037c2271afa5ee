//! Shipped fixtures and the reproduction suite.
//!
//! A fixture is a model file plus an expectations file. Expectation lines
//! have the form `<claim> = <outcome>`:
//!
//! ```text
//! eval <world> <formula> = 0|1
//! true <formula> = yes|no
//! false <formula> = yes|no
//! inference <sequent> = holds|fails
//! meta <metainference> = holds|fails
//! valid <kind> = yes|no
//! certifies <logic> <mode> <payload> = yes|no
//! check <logic> <mode> <max-worlds> <payload> = holds-exact|holds-up-to-bound|fails
//! ```
//!
//! `certifies` re-tags the fixture model to `<logic>` and asks whether it is
//! a valid countermodel to the payload. `check` runs the search.

use std::fmt;

use rayon::prelude::*;

use crate::consequence::{cross_check_st_classical, glivenko_battery};
use crate::consequence::{Bound, Checker, Mode, Query};
use crate::error::Error;
use crate::formula::{Atom, Formula};
use crate::model::{load_model, validate_as, Interpretation, ModelKind};
use crate::properties::{self, PropertyReport};
use crate::sample::{default_atoms, Sampler, DEFAULT_SEED};
use crate::semantics::{Inference, Metainference, Semantics};

const SHIPPED: [(&str, &str, &str); 4] = [
    (
        "glivenko_witness",
        include_str!("../fixtures/glivenko_witness.model"),
        include_str!("../fixtures/glivenko_witness.expect"),
    ),
    (
        "conjunction_intro",
        include_str!("../fixtures/conjunction_intro.model"),
        include_str!("../fixtures/conjunction_intro.expect"),
    ),
    (
        "explosion_pair",
        include_str!("../fixtures/explosion_pair.model"),
        include_str!("../fixtures/explosion_pair.expect"),
    ),
    (
        "trivial_model",
        include_str!("../fixtures/trivial_model.model"),
        include_str!("../fixtures/trivial_model.expect"),
    ),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    HoldsExact,
    HoldsUpToBound,
    Fails,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::HoldsExact => "holds-exact",
            Outcome::HoldsUpToBound => "holds-up-to-bound",
            Outcome::Fails => "fails",
        }
    }
}

#[derive(Clone, Debug)]
pub enum Claim {
    Eval { world: String, formula: Formula, value: bool },
    True(Formula, bool),
    False(Formula, bool),
    Inference(Inference, bool),
    Meta(Metainference, bool),
    Valid(ModelKind, bool),
    Certifies(Query, bool),
    Check(Query, Outcome),
}

#[derive(Clone, Debug)]
pub struct Expectation {
    pub line: usize,
    pub text: String,
    pub claim: Claim,
}

fn flag(line: usize, word: &str, yes: &str, no: &str) -> Result<bool, Error> {
    match word {
        w if w == yes => Ok(true),
        w if w == no => Ok(false),
        other => Err(Error::Expectation {
            line,
            message: format!("expected `{yes}` or `{no}`, found {other:?}"),
        }),
    }
}

fn split_word(s: &str) -> (&str, &str) {
    let s = s.trim_start();
    match s.find(char::is_whitespace) {
        Some(i) => (&s[..i], s[i..].trim_start()),
        None => (s, ""),
    }
}

fn parse_claim(line: usize, claim: &str, outcome: &str) -> Result<Claim, Error> {
    let bad = |message: String| Error::Expectation { line, message };
    let (keyword, rest) = split_word(claim);
    let query = |rest: &str, with_bound: bool| -> Result<Query, Error> {
        let (logic, rest) = split_word(rest);
        let (mode, rest) = split_word(rest);
        let logic: ModelKind = logic.parse().map_err(bad)?;
        let mode: Mode = mode.parse().map_err(bad)?;
        let (bound, payload) = if with_bound {
            let (n, rest) = split_word(rest);
            let n = n.parse().map_err(|_| bad(format!("expected a world count, found {n:?}")))?;
            (Bound::worlds(n), rest)
        } else {
            (Bound::default(), rest)
        };
        Query::parse(logic, mode, payload, bound)
    };
    Ok(match keyword {
        "eval" => {
            let (world, formula) = split_word(rest);
            let value = match outcome {
                "1" => true,
                "0" => false,
                other => return Err(bad(format!("expected `0` or `1`, found {other:?}"))),
            };
            Claim::Eval {
                world: world.to_string(),
                formula: formula.parse()?,
                value,
            }
        }
        "true" => Claim::True(rest.parse()?, flag(line, outcome, "yes", "no")?),
        "false" => Claim::False(rest.parse()?, flag(line, outcome, "yes", "no")?),
        "inference" => Claim::Inference(rest.parse()?, flag(line, outcome, "holds", "fails")?),
        "meta" => Claim::Meta(rest.parse()?, flag(line, outcome, "holds", "fails")?),
        "valid" => Claim::Valid(rest.trim().parse().map_err(bad)?, flag(line, outcome, "yes", "no")?),
        "certifies" => Claim::Certifies(query(rest, false)?, flag(line, outcome, "yes", "no")?),
        "check" => {
            let expected = match outcome {
                "holds-exact" => Outcome::HoldsExact,
                "holds-up-to-bound" => Outcome::HoldsUpToBound,
                "fails" => Outcome::Fails,
                other => return Err(bad(format!("unknown verdict {other:?}"))),
            };
            Claim::Check(query(rest, true)?, expected)
        }
        other => return Err(bad(format!("unknown expectation {other:?}"))),
    })
}

/// Parses an expectations file. Blank lines and `#` comments are skipped.
pub fn parse_expectations(text: &str) -> Result<Vec<Expectation>, Error> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((claim, outcome)) = content.rsplit_once(" = ") else {
            return Err(Error::Expectation {
                line,
                message: "expected `<claim> = <outcome>`".into(),
            });
        };
        let claim = parse_claim(line, claim.trim(), outcome.trim()).map_err(|e| match e {
            Error::Expectation { .. } => e,
            other => Error::Expectation {
                line,
                message: other.to_string(),
            },
        })?;
        out.push(Expectation {
            line,
            text: content.to_string(),
            claim,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub model: Interpretation,
    pub expectations: Vec<Expectation>,
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn holds_fails(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

impl Fixture {
    pub fn load(name: &str, model: &str, expectations: &str) -> Result<Fixture, Error> {
        Ok(Fixture {
            name: name.to_string(),
            model: load_model(model)?,
            expectations: parse_expectations(expectations)?,
        })
    }

    /// Checks every expectation; returns one line per mismatch.
    pub fn check(&self, checker: &Checker) -> Vec<String> {
        let s = &checker.semantics;
        let m = &self.model;
        let mut mismatches = Vec::new();
        for e in &self.expectations {
            let got: Result<Option<String>, Error> = (|| {
                Ok(match &e.claim {
                    Claim::Eval { world, formula, value } => {
                        let v = s.eval(m, m.world(world)?, formula)?;
                        (v != *value).then(|| u8::from(v).to_string())
                    }
                    Claim::True(f, want) => {
                        let v = s.is_true(m, f);
                        (v != *want).then(|| yes_no(v).into())
                    }
                    Claim::False(f, want) => {
                        let v = s.is_false(m, f);
                        (v != *want).then(|| yes_no(v).into())
                    }
                    Claim::Inference(inf, want) => {
                        let v = s.satisfies_inference(m, inf);
                        (v != *want).then(|| holds_fails(v).into())
                    }
                    Claim::Meta(meta, want) => {
                        let v = s.satisfies_metainference(m, meta);
                        (v != *want).then(|| holds_fails(v).into())
                    }
                    Claim::Valid(kind, want) => {
                        let violations = validate_as(m, *kind);
                        let v = violations.is_empty();
                        (v != *want).then(|| {
                            let list: Vec<String> = violations.iter().map(|x| x.to_string()).collect();
                            format!("{} [{}]", yes_no(v), list.join("; "))
                        })
                    }
                    Claim::Certifies(q, want) => {
                        let v = checker.certificate_is_sound(&m.retagged(q.logic), q);
                        (v != *want).then(|| yes_no(v).into())
                    }
                    Claim::Check(q, want) => {
                        let verdict = checker.check(q)?;
                        let sound = verdict.certificate().is_none_or(|c| checker.certificate_is_sound(c, q));
                        if !sound {
                            Some(format!("{} with an unsound certificate", verdict.label()))
                        } else {
                            (verdict.label() != want.as_str()).then(|| verdict.label().into())
                        }
                    }
                })
            })();
            match got {
                Ok(None) => {}
                Ok(Some(actual)) => mismatches.push(format!("line {}: `{}`, got {actual}", e.line, e.text)),
                Err(err) => mismatches.push(format!("line {}: `{}`, error: {err}", e.line, e.text)),
            }
        }
        mismatches
    }
}

/// The fixtures shipped with the crate.
pub fn shipped_fixtures() -> Vec<Fixture> {
    SHIPPED
        .iter()
        .map(|(name, model, expect)| Fixture::load(name, model, expect).expect("shipped fixture is well-formed"))
        .collect()
}

pub fn shipped_fixture(name: &str) -> Option<Fixture> {
    shipped_fixtures().into_iter().find(|f| f.name == name)
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub semantics: Semantics,
}

impl Default for SuiteOptions {
    fn default() -> SuiteOptions {
        SuiteOptions {
            seed: DEFAULT_SEED,
            semantics: Semantics::STANDARD,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteItem {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    pub details: Vec<String>,
}

impl SuiteItem {
    fn from_property(r: PropertyReport) -> SuiteItem {
        SuiteItem {
            name: format!("property:{}", r.name),
            passed: r.passed(),
            summary: format!("{} checks, {} violations", r.checked, r.violation_count),
            details: r.violations,
        }
    }

    fn from_error(name: &str, e: Error) -> SuiteItem {
        SuiteItem {
            name: name.to_string(),
            passed: false,
            summary: format!("error: {e}"),
            details: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub seed: u64,
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn item(&self, name: &str) -> Option<&SuiteItem> {
        self.items.iter().find(|i| i.name == name)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for item in &self.items {
            let mark = if item.passed { "pass" } else { "FAIL" };
            writeln!(f, "{mark} {}: {}", item.name, item.summary)?;
            for d in &item.details {
                writeln!(f, "    {d}")?;
            }
        }
        let failed = self.items.iter().filter(|i| !i.passed).count();
        write!(f, "{} items, {} failed", self.items.len(), failed)
    }
}

fn names(list: &[&str]) -> Vec<Atom> {
    list.iter().map(|n| Atom::new(*n).expect("valid name")).collect()
}

type Job = Box<dyn Fn(&SuiteOptions) -> SuiteItem + Send + Sync>;

fn property(f: impl Fn(&Checker, u64) -> PropertyReport + Send + Sync + 'static) -> Job {
    Box::new(move |o| SuiteItem::from_property(f(&Checker::with_semantics(o.semantics), o.seed)))
}

fn jobs() -> Vec<Job> {
    let mut jobs: Vec<Job> = Vec::new();
    for (name, model, expect) in SHIPPED {
        jobs.push(Box::new(move |o| {
            let item = format!("fixture:{name}");
            match Fixture::load(name, model, expect) {
                Ok(fx) => {
                    let details = fx.check(&Checker::with_semantics(o.semantics));
                    SuiteItem {
                        name: item,
                        passed: details.is_empty(),
                        summary: format!("{} expectations, {} mismatches", fx.expectations.len(), details.len()),
                        details,
                    }
                }
                Err(e) => SuiteItem::from_error(&item, e),
            }
        }));
    }

    let two = || names(&["a", "b"]);
    jobs.push(property(|c, _| properties::heredity(&c.semantics, 3, 4)));
    jobs.push(property(|c, _| properties::falsity_collapse(&c.semantics, 3, 4)));
    jobs.push(property(move |c, seed| {
        let mut s = Sampler::new(seed ^ 0x01, default_atoms(), 3);
        properties::classical_bivalence(c, &mut s, 3, 4, 100)
    }));
    jobs.push(property(move |c, seed| {
        let pool = properties::model_pool(3, &two());
        let mut s = Sampler::new(seed ^ 0x02, two(), 4);
        properties::reduction_equivalence(&c.semantics, &mut s, &pool, 500)
    }));
    jobs.push(property(move |c, seed| {
        let pool = properties::model_pool(3, &two());
        let mut s = Sampler::new(seed ^ 0x03, two(), 4);
        properties::empty_premise_equivalence(&c.semantics, &mut s, &pool, 500)
    }));
    jobs.push(property(|c, seed| {
        let mut s = Sampler::new(seed ^ 0x04, default_atoms(), 4);
        properties::trivial_totality(&c.semantics, &mut s, 200)
    }));
    jobs.push(property(|c, seed| {
        let mut s = Sampler::new(seed ^ 0x05, default_atoms(), 4);
        properties::minimal_st_vacuity(c, &mut s, 100, Bound::worlds(3))
    }));
    jobs.push(property(|c, seed| {
        let mut s = Sampler::new(seed ^ 0x06, default_atoms(), 3);
        properties::class_inclusion(c, &mut s, 50, Bound::worlds(3))
    }));
    jobs.push(Box::new(|o| {
        let mut s = Sampler::new(o.seed ^ 0x07, default_atoms(), 4);
        let c = Checker::with_semantics(o.semantics);
        match cross_check_st_classical(&c, &mut s, 200, Bound::worlds(3)) {
            Ok(r) => SuiteItem {
                name: "property:st-classical".into(),
                passed: r.passed(),
                summary: r.to_string().lines().next().unwrap_or_default().to_string(),
                details: r.to_string().lines().skip(1).map(|l| l.trim().to_string()).collect(),
            },
            Err(e) => SuiteItem::from_error("property:st-classical", e),
        }
    }));
    jobs.push(Box::new(|o| {
        let mut s = Sampler::new(o.seed ^ 0x08, default_atoms(), 3);
        let c = Checker::with_semantics(o.semantics);
        match glivenko_battery(&c, &mut s, 100, Bound::worlds(4)) {
            Ok(r) => SuiteItem {
                name: "property:glivenko".into(),
                passed: r.passed(),
                summary: r.to_string().lines().next().unwrap_or_default().to_string(),
                details: r.to_string().lines().skip(1).map(|l| l.trim().to_string()).collect(),
            },
            Err(e) => SuiteItem::from_error("property:glivenko", e),
        }
    }));
    jobs
}

/// Runs every fixture and property battery, concurrently, and reports the
/// items sorted by name.
pub fn run_suite(options: &SuiteOptions) -> SuiteReport {
    let mut items: Vec<SuiteItem> = jobs().par_iter().map(|job| job(options)).collect();
    items.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteReport {
        seed: options.seed,
        items,
    }
}

/// Runs only the shipped fixtures.
pub fn run_fixtures(semantics: Semantics) -> Vec<(String, Vec<String>)> {
    let checker = Checker::with_semantics(semantics);
    shipped_fixtures()
        .into_iter()
        .map(|fx| {
            let mismatches = fx.check(&checker);
            (fx.name, mismatches)
        })
        .collect()
}
