//! Consequence queries over a class of interpretations.
//!
//! Classical queries are decided exactly by running through every one-world
//! Boolean valuation. Minimal and intuitionistic queries are semi-decided by
//! exhaustive search up to a world bound: a countermodel found is a real
//! refutation, while finding none only says [`Verdict::HoldsUpToBound`].

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::Error;
use crate::formula::{Atom, Formula};
use crate::model::{enumerate_with_ceiling, validate_as, Ceiling, Interpretation, ModelKind};
use crate::parse;
use crate::semantics::{Inference, Metainference, Semantics};

mod battery;

pub use battery::{
    cross_check_st_classical, glivenko_battery, CrossCheckReport, Discrepancy, DiscrepancyKind,
    minimal_witness, GlivenkoReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Truth preservation, single conclusion.
    Tarskian,
    /// Strict-tolerant inference.
    St,
    /// Strict-tolerant metainference.
    Meta,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Tarskian => "tarskian",
            Mode::St => "st",
            Mode::Meta => "meta",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tarskian" => Ok(Mode::Tarskian),
            "st" => Ok(Mode::St),
            "meta" => Ok(Mode::Meta),
            other => Err(format!("unknown mode {other:?} (expected tarskian, st or meta)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Inference(Inference),
    Metainference(Metainference),
}

impl Payload {
    /// Parses sequent syntax for `tarskian`/`st`, bracketed syntax for `meta`.
    pub fn parse(mode: Mode, text: &str) -> Result<Payload, Error> {
        Ok(match mode {
            Mode::Meta => Payload::Metainference(parse::metainference(text)?),
            Mode::Tarskian | Mode::St => Payload::Inference(parse::inference(text)?),
        })
    }

    pub fn atoms(&self) -> std::collections::BTreeSet<Atom> {
        match self {
            Payload::Inference(i) => i.atoms(),
            Payload::Metainference(m) => m.atoms(),
        }
    }
}

impl fmt::Display for Payload {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Payload::Inference(i) => write!(f, "{i}"),
            Payload::Metainference(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    pub max_worlds: usize,
    pub extra_atoms: usize,
}

impl Default for Bound {
    fn default() -> Self {
        Bound {
            max_worlds: 3,
            extra_atoms: 0,
        }
    }
}

impl Bound {
    pub fn worlds(max_worlds: usize) -> Bound {
        Bound {
            max_worlds,
            ..Bound::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub logic: ModelKind,
    pub mode: Mode,
    pub payload: Payload,
    pub bound: Bound,
}

impl Query {
    pub fn new(logic: ModelKind, mode: Mode, payload: Payload, bound: Bound) -> Result<Query, Error> {
        match (&payload, mode) {
            (Payload::Inference(i), Mode::Tarskian) if i.succedent.len() != 1 => {
                return Err(Error::InvalidQuery(format!(
                    "a tarskian query needs exactly one conclusion, got {}",
                    i.succedent.len()
                )));
            }
            (Payload::Inference(_), Mode::Tarskian | Mode::St)
            | (Payload::Metainference(_), Mode::Meta) => {}
            (Payload::Metainference(_), _) => {
                return Err(Error::InvalidQuery(format!(
                    "mode {mode} takes a sequent, not a metainference"
                )));
            }
            (Payload::Inference(_), Mode::Meta) => {
                return Err(Error::InvalidQuery("mode meta takes a metainference".into()));
            }
        }
        if bound.max_worlds == 0 {
            return Err(Error::InvalidQuery("max worlds must be at least 1".into()));
        }
        Ok(Query {
            logic,
            mode,
            payload,
            bound,
        })
    }

    pub fn parse(logic: ModelKind, mode: Mode, text: &str, bound: Bound) -> Result<Query, Error> {
        Query::new(logic, mode, Payload::parse(mode, text)?, bound)
    }

    /// Payload atoms followed by `extra_atoms` fresh ones (`x1`, `x2`, ...
    /// skipping any name already used).
    pub fn search_atoms(&self) -> Vec<Atom> {
        let mut atoms: Vec<Atom> = self.payload.atoms().into_iter().collect();
        let mut next = 1;
        for _ in 0..self.bound.extra_atoms {
            loop {
                let fresh = Atom::new(format!("x{next}")).expect("valid name");
                next += 1;
                if !atoms.contains(&fresh) {
                    atoms.push(fresh);
                    break;
                }
            }
        }
        atoms
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Fails(Interpretation),
    HoldsExact,
    HoldsUpToBound(Bound),
}

impl Verdict {
    pub fn certificate(&self) -> Option<&Interpretation> {
        match self {
            Verdict::Fails(m) => Some(m),
            _ => None,
        }
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    /// `fails`, `holds-exact` or `holds-up-to-bound`.
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Fails(_) => "fails",
            Verdict::HoldsExact => "holds-exact",
            Verdict::HoldsUpToBound(_) => "holds-up-to-bound",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Fails(m) => write!(f, "fails ({}-world countermodel)", m.world_count()),
            Verdict::HoldsExact => f.write_str("holds (exact)"),
            Verdict::HoldsUpToBound(b) => write!(
                f,
                "no countermodel up to {} worlds, {} extra atoms",
                b.max_worlds, b.extra_atoms
            ),
        }
    }
}

/// One line of a batch report.
pub struct QueryReport<'a> {
    pub query: &'a Query,
    pub verdict: &'a Verdict,
    pub certificate_path: Option<PathBuf>,
}

impl fmt::Display for QueryReport<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} | {} | {} | {}",
            self.query.payload,
            self.query.logic,
            self.query.mode,
            self.verdict.label()
        )?;
        if let Some(path) = &self.certificate_path {
            write!(f, " | {}", path.display())?;
        }
        Ok(())
    }
}

const CHUNK: usize = 4096;

/// Runs queries against one choice of semantic clauses and enumeration
/// ceiling.
#[derive(Clone, Copy, Debug)]
pub struct Checker {
    pub semantics: Semantics,
    pub ceiling: Ceiling,
    /// Check each chunk of the model stream on the rayon pool. The reported
    /// certificate is still the canonically first one.
    pub parallel: bool,
}

impl Default for Checker {
    fn default() -> Self {
        Checker {
            semantics: Semantics::STANDARD,
            ceiling: Ceiling::default(),
            parallel: false,
        }
    }
}

impl Checker {
    pub fn with_semantics(semantics: Semantics) -> Checker {
        Checker {
            semantics,
            ..Checker::default()
        }
    }

    pub fn check(&self, q: &Query) -> Result<Verdict, Error> {
        match q.logic {
            ModelKind::Classical => self.check_classical(q),
            ModelKind::Minimal | ModelKind::Intuitionistic => self.check_bounded(q),
        }
    }

    /// Exact: every one-world Boolean valuation of the query's atoms.
    pub fn check_classical(&self, q: &Query) -> Result<Verdict, Error> {
        if q.logic != ModelKind::Classical {
            return Err(Error::InvalidQuery(format!(
                "exact check is for classical queries, not {}",
                q.logic
            )));
        }
        let models = enumerate_with_ceiling(ModelKind::Classical, 1, &q.search_atoms(), self.ceiling)?;
        Ok(match self.first_refuting(models, q) {
            Some(m) => Verdict::Fails(m),
            None => Verdict::HoldsExact,
        })
    }

    /// Bounded search over minimal or intuitionistic interpretations.
    pub fn check_bounded(&self, q: &Query) -> Result<Verdict, Error> {
        if q.logic == ModelKind::Classical {
            return Err(Error::InvalidQuery("bounded search is for minimal or intuitionistic queries".into()));
        }
        let models =
            enumerate_with_ceiling(q.logic, q.bound.max_worlds, &q.search_atoms(), self.ceiling)?;
        Ok(match self.first_refuting(models, q) {
            Some(m) => Verdict::Fails(m),
            None => Verdict::HoldsUpToBound(q.bound),
        })
    }

    /// `true` iff `m` is a countermodel to the query's payload.
    pub fn refutes(&self, m: &Interpretation, q: &Query) -> bool {
        let s = &self.semantics;
        match (&q.payload, q.mode) {
            (Payload::Inference(i), Mode::Tarskian) => match i.succedent.as_slice() {
                [conclusion] => !s.preserves_truth(m, &i.antecedent, conclusion),
                _ => false,
            },
            (Payload::Inference(i), _) => !s.satisfies_inference(m, i),
            (Payload::Metainference(meta), _) => !s.satisfies_metainference(m, meta),
        }
    }

    /// A certificate is sound when it is a valid interpretation of the
    /// query's logic and refutes the payload.
    pub fn certificate_is_sound(&self, m: &Interpretation, q: &Query) -> bool {
        validate_as(m, q.logic).is_empty() && self.refutes(m, q)
    }

    fn first_refuting(
        &self,
        mut models: impl Iterator<Item = Interpretation>,
        q: &Query,
    ) -> Option<Interpretation> {
        if !self.parallel {
            return models.find(|m| self.refutes(m, q));
        }
        loop {
            let chunk: Vec<Interpretation> = models.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                return None;
            }
            if let Some(i) = chunk.par_iter().position_first(|m| self.refutes(m, q)) {
                return chunk.into_iter().nth(i);
            }
        }
    }
}

/// [`Checker::check`] with the standard clauses and default ceiling.
pub fn check(q: &Query) -> Result<Verdict, Error> {
    Checker::default().check(q)
}

/// Single-conclusion Tarskian query `antecedent |= conclusion`.
pub fn tarskian(logic: ModelKind, antecedent: Vec<Formula>, conclusion: Formula, bound: Bound) -> Query {
    Query::new(
        logic,
        Mode::Tarskian,
        Payload::Inference(Inference::new(antecedent, vec![conclusion])),
        bound,
    )
    .expect("well-formed tarskian query")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{trivial_model, validate, WorldSet};

    fn query(logic: ModelKind, mode: Mode, text: &str, worlds: usize) -> Query {
        Query::parse(logic, mode, text, Bound::worlds(worlds)).unwrap()
    }

    #[test]
    fn classical_examples() {
        let c = Checker::default();
        let v = c
            .check_classical(&query(ModelKind::Classical, Mode::Tarskian, "=> ~a -> a -> b", 1))
            .unwrap();
        assert_eq!(v, Verdict::HoldsExact);

        let v = c
            .check_classical(&query(ModelKind::Classical, Mode::Meta, "[=> a ; => b] =>* [=> a & b]", 1))
            .unwrap();
        assert_eq!(v, Verdict::HoldsExact);

        let v = c
            .check_classical(&query(ModelKind::Classical, Mode::Tarskian, "a => b", 1))
            .unwrap();
        let m = v.certificate().expect("countermodel");
        assert_eq!(m.world_count(), 1);
        assert_eq!(m.atom_worlds(&Atom::new("a").unwrap()), WorldSet::singleton(0));
        assert_eq!(m.atom_worlds(&Atom::new("b").unwrap()), WorldSet::EMPTY);
    }

    #[test]
    fn minimal_st_fails_on_the_trivial_model_first() {
        let q = query(ModelKind::Minimal, Mode::St, "a, b -> c => c & a", 3);
        let v = check(&q).unwrap();
        let atoms = q.payload.atoms();
        assert_eq!(v, Verdict::Fails(trivial_model(&atoms)));
    }

    #[test]
    fn double_negated_witness_fails_minimally_with_two_worlds() {
        let q = query(ModelKind::Minimal, Mode::Tarskian, "=> ~~(~a -> (a -> b))", 2);
        let v = check(&q).unwrap();
        let m = v.certificate().unwrap();
        assert_eq!(m.world_count(), 2);
        assert!(Checker::default().certificate_is_sound(m, &q));
        // w0 sees w1; a at both, bot only at the top, b nowhere.
        assert!(m.relation().contains(0, 1) && !m.relation().contains(1, 0));
        assert_eq!(m.atom_worlds(&Atom::new("a").unwrap()), WorldSet::from_bits(0b11));
        assert_eq!(m.atom_worlds(&Atom::new("b").unwrap()), WorldSet::EMPTY);
        assert_eq!(m.bottom(), WorldSet::singleton(1));
    }

    #[test]
    fn one_world_is_not_enough_for_the_witness() {
        let q = query(ModelKind::Minimal, Mode::Tarskian, "=> ~~(~a -> (a -> b))", 1);
        assert_eq!(check(&q).unwrap(), Verdict::HoldsUpToBound(Bound::worlds(1)));
    }

    #[test]
    fn conjunction_intro_fails_constructively() {
        for logic in [ModelKind::Minimal, ModelKind::Intuitionistic] {
            let q = query(logic, Mode::Meta, "[=> a ; => b] =>* [=> a & b]", 3);
            let v = check(&q).unwrap();
            let m = v.certificate().unwrap();
            assert!(Checker::default().certificate_is_sound(m, &q));
            // Smallest countermodel: two incomparable worlds.
            assert_eq!(m.world_count(), 2);
            assert!(!m.relation().contains(0, 1) && !m.relation().contains(1, 0));
        }
    }

    #[test]
    fn explosion_holds_intuitionistically_up_to_four_worlds() {
        let q = query(ModelKind::Intuitionistic, Mode::St, "a, ~a => b", 4);
        assert_eq!(check(&q).unwrap(), Verdict::HoldsUpToBound(Bound::worlds(4)));
    }

    #[test]
    fn parallel_search_reports_the_same_certificate() {
        let q = query(ModelKind::Intuitionistic, Mode::Meta, "[=> a ; => ~a] =>* [=> b | c]", 3);
        let seq = Checker::default().check(&q).unwrap();
        let par = Checker {
            parallel: true,
            ..Checker::default()
        }
        .check(&q)
        .unwrap();
        assert!(seq.fails());
        assert_eq!(seq, par);
    }

    #[test]
    fn query_shape_is_checked() {
        let b = Bound::default();
        assert!(Query::parse(ModelKind::Minimal, Mode::Tarskian, "a => b, c", b).is_err());
        assert!(Query::parse(ModelKind::Minimal, Mode::Tarskian, "a =>", b).is_err());
        assert!(Query::parse(ModelKind::Minimal, Mode::Meta, "a => b", b).is_err());
        assert!(Query::parse(ModelKind::Minimal, Mode::St, "[] =>* [=> a]", b).is_err());
        assert!(Query::parse(ModelKind::Minimal, Mode::St, "=> a", Bound::worlds(0)).is_err());
        let q = query(ModelKind::Minimal, Mode::St, "=> a", 1);
        assert!(Checker::default().check_classical(&q).is_err());
        let q = query(ModelKind::Classical, Mode::St, "=> a", 1);
        assert!(Checker::default().check_bounded(&q).is_err());
    }

    #[test]
    fn extra_atoms_are_fresh() {
        let q = Query::parse(
            ModelKind::Intuitionistic,
            Mode::St,
            "x1 => a",
            Bound {
                max_worlds: 2,
                extra_atoms: 2,
            },
        )
        .unwrap();
        let names: Vec<String> = q.search_atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, ["a", "x1", "x2", "x3"]);
        let v = check(&q).unwrap();
        assert!(validate(v.certificate().unwrap()).is_empty());
    }

    #[test]
    fn ceiling_is_reported() {
        let q = Query::parse(
            ModelKind::Minimal,
            Mode::St,
            "a, b, c => d",
            Bound::worlds(4),
        )
        .unwrap();
        assert!(matches!(check(&q), Err(Error::CeilingExceeded { cells: 20, .. })));
    }
}
