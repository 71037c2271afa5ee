//! Property batteries over enumerated and sampled interpretations.
//!
//! The exhaustive batteries quantify over *every* formula up to a depth by
//! working with extensions: in a fixed interpretation the value of a compound
//! depends only on the world sets of its immediate parts, so one
//! representative formula per reachable world set covers all formulas of
//! that depth.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::consequence::{tarskian, Bound, Checker, Mode, Payload, Query, Verdict};
use crate::formula::{Atom, Formula};
use crate::model::{
    enumerate, preorders, trivial_model, validate, validate_as, Interpretation, ModelKind, WorldSet,
};
use crate::sample::Sampler;
use crate::semantics::{reduce_succedent, Metainference, Semantics};

const KEPT_VIOLATIONS: usize = 20;

#[derive(Clone, Debug)]
pub struct PropertyReport {
    pub name: &'static str,
    pub checked: usize,
    pub violation_count: usize,
    /// The first few violations, described.
    pub violations: Vec<String>,
}

impl PropertyReport {
    fn new(name: &'static str) -> PropertyReport {
        PropertyReport {
            name,
            checked: 0,
            violation_count: 0,
            violations: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < KEPT_VIOLATIONS {
                self.violations.push(describe());
            }
        }
    }

    fn error(&mut self, e: crate::Error) {
        self.violation_count += 1;
        self.violations.push(format!("error: {e}"));
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.checked > 0
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} checks, {} violations",
            self.name, self.checked, self.violation_count
        )?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

fn atoms(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| Atom::new(*n).expect("valid name")).collect()
}

/// One representative formula for each world set that some formula of depth
/// at most `depth` over `atoms` and `bot` denotes in `m`.
pub fn definable_formulas(
    semantics: &Semantics,
    m: &Interpretation,
    atoms: &[Atom],
    depth: usize,
) -> Vec<(WorldSet, Formula)> {
    let mut reps: BTreeMap<WorldSet, Formula> = BTreeMap::new();
    for f in atoms
        .iter()
        .map(|a| Formula::Atom(a.clone()))
        .chain(std::iter::once(Formula::Bottom))
    {
        reps.entry(semantics.extension(m, &f)).or_insert(f);
    }
    for _ in 0..depth {
        let previous: Vec<Formula> = reps.values().cloned().collect();
        for l in &previous {
            for r in &previous {
                for f in [
                    Formula::and(l.clone(), r.clone()),
                    Formula::or(l.clone(), r.clone()),
                    Formula::implies(l.clone(), r.clone()),
                ] {
                    reps.entry(semantics.extension(m, &f)).or_insert(f);
                }
            }
        }
    }
    reps.into_iter().collect()
}

/// Every classical interpretation with up to `max_worlds` worlds: any
/// preorder, world-constant atoms, `bot` false.
pub fn classical_frames(max_worlds: usize, atoms: &[Atom]) -> Vec<Interpretation> {
    let mut out = Vec::new();
    for n in 1..=max_worlds {
        for r in preorders(n) {
            for mask in 0u32..(1 << atoms.len()) {
                let names = (0..n).map(|i| format!("w{i}")).collect();
                let mut m = Interpretation::new(names, r.clone(), ModelKind::Classical)
                    .expect("well-formed frame");
                for (i, a) in atoms.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        m.set_atom(a.clone(), WorldSet::full(n));
                    }
                }
                out.push(m);
            }
        }
    }
    out
}

/// Minimal, intuitionistic and one-world classical interpretations with up
/// to `max_worlds` worlds over `atoms`.
pub fn model_pool(max_worlds: usize, atoms: &[Atom]) -> Vec<Interpretation> {
    ModelKind::ALL
        .into_iter()
        .flat_map(|k| enumerate(k, max_worlds, atoms).expect("pool within ceiling"))
        .collect()
}

/// Truth in every world propagates along the relation, for every formula
/// of depth <= `depth` in every minimal interpretation up to `max_worlds`
/// worlds over `a`, `b`.
pub fn heredity(semantics: &Semantics, max_worlds: usize, depth: usize) -> PropertyReport {
    let mut report = PropertyReport::new("heredity");
    let leaves = atoms(&["a", "b"]);
    let models = match enumerate(ModelKind::Minimal, max_worlds, &leaves) {
        Ok(ms) => ms,
        Err(e) => {
            report.error(e);
            return report;
        }
    };
    for m in models {
        for (ext, f) in definable_formulas(semantics, &m, &leaves, depth) {
            report.check(m.relation().is_up_set(ext), || {
                format!("{f} holds at {ext:?} which is not up-closed in\n{}", crate::model::write_model(&m))
            });
        }
    }
    report
}

/// In intuitionistic interpretations a formula is false iff it holds at no
/// world.
pub fn falsity_collapse(semantics: &Semantics, max_worlds: usize, depth: usize) -> PropertyReport {
    let mut report = PropertyReport::new("falsity-collapse");
    let leaves = atoms(&["a", "b"]);
    let models = match enumerate(ModelKind::Intuitionistic, max_worlds, &leaves) {
        Ok(ms) => ms,
        Err(e) => {
            report.error(e);
            return report;
        }
    };
    for m in models {
        for (ext, f) in definable_formulas(semantics, &m, &leaves, depth) {
            report.check(semantics.is_false(&m, &f) == ext.is_empty(), || {
                format!("{f}: false = {}, extension {ext:?}", semantics.is_false(&m, &f))
            });
        }
    }
    report
}

/// Plain two-valued evaluation; `true_atoms` are the atoms set to 1.
pub fn boolean_value(f: &Formula, true_atoms: &BTreeSet<Atom>) -> bool {
    match f {
        Formula::Atom(a) => true_atoms.contains(a),
        Formula::Bottom => false,
        Formula::And(l, r) => boolean_value(l, true_atoms) && boolean_value(r, true_atoms),
        Formula::Or(l, r) => boolean_value(l, true_atoms) || boolean_value(r, true_atoms),
        Formula::Implies(l, r) => !boolean_value(l, true_atoms) || boolean_value(r, true_atoms),
    }
}

/// In classical interpretations (any frame, world-constant atoms) falsity is
/// non-truth and truth is the truth-table value; single-model inference
/// satisfaction and the exact checker agree with the truth-table reading,
/// and a non-empty succedent can be replaced by its disjunction.
pub fn classical_bivalence(
    checker: &Checker,
    sampler: &mut Sampler,
    max_worlds: usize,
    depth: usize,
    trials: usize,
) -> PropertyReport {
    let semantics = &checker.semantics;
    let mut report = PropertyReport::new("classical-bivalence");
    let leaves = atoms(&["a", "b"]);
    for m in classical_frames(max_worlds, &leaves) {
        let on: BTreeSet<Atom> = m.atoms().map(|(a, _)| a.clone()).collect();
        for (_, f) in definable_formulas(semantics, &m, &leaves, depth) {
            let t = semantics.is_true(&m, &f);
            report.check(semantics.is_false(&m, &f) != t, || format!("{f}: true and false agree"));
            report.check(t == boolean_value(&f, &on), || format!("{f}: truth differs from truth table"));
        }
    }

    let one_world: Vec<Interpretation> = match enumerate(ModelKind::Classical, 1, sampler.atoms()) {
        Ok(ms) => ms.collect(),
        Err(e) => {
            report.error(e);
            return report;
        }
    };
    for _ in 0..trials {
        let inf = sampler.inference(0..=2, 0..=3);
        for m in &one_world {
            let on: BTreeSet<Atom> = m.atoms().map(|(a, _)| a.clone()).collect();
            let table = !(inf.antecedent.iter().all(|g| boolean_value(g, &on))
                && inf.succedent.iter().all(|d| !boolean_value(d, &on)));
            report.check(semantics.satisfies_inference(m, &inf) == table, || {
                format!("{inf}: satisfaction differs from truth table at {on:?}")
            });
        }
        if inf.succedent.is_empty() {
            continue;
        }
        let reduced = reduce_succedent(&inf).expect("non-empty succedent");
        let st = Query::new(ModelKind::Classical, Mode::St, Payload::Inference(inf.clone()), Bound::worlds(1));
        let tk = Query::new(ModelKind::Classical, Mode::Tarskian, Payload::Inference(reduced), Bound::worlds(1));
        match (st.and_then(|q| checker.check(&q)), tk.and_then(|q| checker.check(&q))) {
            (Ok(a), Ok(b)) => report.check(a.fails() == b.fails(), || {
                format!("{inf}: ST {} but disjunctive tarskian {}", a.label(), b.label())
            }),
            (Err(e), _) | (_, Err(e)) => report.error(e),
        }
    }
    report
}

/// A non-empty succedent and its disjunction agree in every sampled model.
pub fn reduction_equivalence(
    semantics: &Semantics,
    sampler: &mut Sampler,
    pool: &[Interpretation],
    trials: usize,
) -> PropertyReport {
    let mut report = PropertyReport::new("reduction");
    for _ in 0..trials {
        let m = &pool[sampler.index(pool.len())];
        let inf = sampler.inference(0..=2, 1..=3);
        let reduced = reduce_succedent(&inf).expect("non-empty succedent");
        let (native, single) = (
            semantics.satisfies_inference(m, &inf),
            semantics.satisfies_inference(m, &reduced),
        );
        report.check(native == single, || {
            format!("{inf}: native {native}, reduced {single} in\n{}", crate::model::write_model(m))
        });
    }
    report
}

/// A metainference with no premises behaves as its conclusion.
pub fn empty_premise_equivalence(
    semantics: &Semantics,
    sampler: &mut Sampler,
    pool: &[Interpretation],
    trials: usize,
) -> PropertyReport {
    let mut report = PropertyReport::new("empty-premise");
    for _ in 0..trials {
        let m = &pool[sampler.index(pool.len())];
        let inf = sampler.inference(0..=2, 0..=2);
        let meta = Metainference::new(Vec::new(), inf.clone());
        report.check(
            semantics.satisfies_metainference(m, &meta) == semantics.satisfies_inference(m, &inf),
            || format!("{meta} disagrees with its conclusion"),
        );
    }
    report
}

/// In the trivial model every formula is both true and false.
pub fn trivial_totality(semantics: &Semantics, sampler: &mut Sampler, trials: usize) -> PropertyReport {
    let mut report = PropertyReport::new("trivial-totality");
    let m = trivial_model(sampler.atoms());
    for _ in 0..trials {
        let f = sampler.formula();
        report.check(semantics.is_true(&m, &f) && semantics.is_false(&m, &f), || {
            format!("{f} is not both true and false in the trivial model")
        });
    }
    report
}

/// Every sampled inference with a non-empty succedent fails under minimal
/// strict-tolerant search, and the trivial model over its atoms refutes it.
pub fn minimal_st_vacuity(
    checker: &Checker,
    sampler: &mut Sampler,
    trials: usize,
    bound: Bound,
) -> PropertyReport {
    let mut report = PropertyReport::new("minimal-st-vacuity");
    for _ in 0..trials {
        let inf = sampler.inference(0..=2, 1..=2);
        let q = match Query::new(ModelKind::Minimal, Mode::St, Payload::Inference(inf.clone()), bound) {
            Ok(q) => q,
            Err(e) => {
                report.error(e);
                continue;
            }
        };
        match checker.check(&q) {
            Ok(v) => {
                let sound = v.certificate().is_some_and(|m| checker.certificate_is_sound(m, &q));
                report.check(sound, || format!("{inf}: minimal ST search says {}", v.label()));
            }
            Err(e) => report.error(e),
        }
        let trivial = trivial_model(&inf.atoms());
        report.check(checker.certificate_is_sound(&trivial, &q), || {
            format!("{inf}: trivial model is not a countermodel")
        });
    }
    report
}

/// Literal class inclusion on enumerated interpretations, and reuse of
/// certificates across classes after re-tagging.
pub fn class_inclusion(
    checker: &Checker,
    sampler: &mut Sampler,
    trials: usize,
    bound: Bound,
) -> PropertyReport {
    let mut report = PropertyReport::new("class-inclusion");
    let leaves = atoms(&["a", "b"]);
    let classical = classical_frames(3, &leaves);
    let intuitionistic: Vec<_> = enumerate(ModelKind::Intuitionistic, 3, &leaves)
        .expect("within ceiling")
        .collect();
    for m in &classical {
        report.check(validate(m).is_empty(), || "classical frame invalid".into());
        report.check(validate_as(m, ModelKind::Intuitionistic).is_empty(), || {
            "classical model rejected as intuitionistic".into()
        });
    }
    for m in classical.iter().chain(&intuitionistic) {
        report.check(validate_as(m, ModelKind::Minimal).is_empty(), || {
            "model rejected as minimal".into()
        });
    }

    for _ in 0..trials {
        let gamma = sampler.formulas(0..=2);
        let goal = sampler.formula();
        let classical_q = tarskian(ModelKind::Classical, gamma.clone(), goal.clone(), bound);
        let minimal_tk = tarskian(ModelKind::Minimal, gamma.clone(), goal.clone(), bound);
        let st = |logic| {
            Query::new(logic, Mode::St, Payload::Inference(crate::Inference::new(gamma.clone(), vec![goal.clone()])), bound)
                .expect("well-formed")
        };
        let (minimal_st, intuitionistic_st) = (st(ModelKind::Minimal), st(ModelKind::Intuitionistic));
        let verdicts = [&classical_q, &minimal_tk, &minimal_st, &intuitionistic_st]
            .map(|q| checker.check(q));
        let [Ok(cl), Ok(mt), Ok(ms), Ok(is)] = verdicts else {
            for e in verdicts.into_iter().filter_map(Result::err) {
                report.error(e);
            }
            continue;
        };

        // A classical countermodel is a minimal one, so minimal search must
        // also refute.
        if let Verdict::Fails(m) = &cl {
            report.check(checker.certificate_is_sound(&m.retagged(ModelKind::Minimal), &minimal_tk), || {
                format!("{goal}: classical countermodel does not refute minimally")
            });
            report.check(mt.fails(), || format!("{goal}: minimal tarskian search missed a classical countermodel"));
        }
        // Minimal ST validity would imply classical validity.
        if !ms.fails() {
            report.check(!cl.fails(), || format!("{goal}: minimal ST holds but classical fails"));
        }
        // Minimal certificates with bot nowhere are intuitionistic ones.
        for (v, q_int) in [(&mt, tarskian(ModelKind::Intuitionistic, gamma.clone(), goal.clone(), bound)), (&ms, intuitionistic_st.clone())] {
            if let Some(m) = v.certificate().filter(|m| m.bottom().is_empty()) {
                report.check(checker.certificate_is_sound(&m.retagged(ModelKind::Intuitionistic), &q_int), || {
                    format!("{goal}: bot-free minimal certificate does not carry over")
                });
            }
        }
        // One-world intuitionistic certificates are classical ones.
        if let Some(m) = is.certificate().filter(|m| m.world_count() == 1) {
            let q = st(ModelKind::Classical);
            report.check(checker.certificate_is_sound(&m.retagged(ModelKind::Classical), &q), || {
                format!("{goal}: one-world intuitionistic certificate is not classical")
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Relation;
    use crate::sample::default_atoms;

    #[test]
    fn definable_sets_on_a_chain() {
        let m = Interpretation::new(vec!["u".into(), "v".into()], Relation::closure(2, [(0, 1)]), ModelKind::Intuitionistic)
            .unwrap()
            .with_atom("a", WorldSet::singleton(1));
        let reps = definable_formulas(&Semantics::STANDARD, &m, &atoms(&["a"]), 2);
        let sets: Vec<u64> = reps.iter().map(|(s, _)| s.bits()).collect();
        // bot = {}, a = {v}, a -> a = {u, v}.
        assert_eq!(sets, vec![0b00, 0b10, 0b11]);
        for (s, f) in &reps {
            assert_eq!(Semantics::STANDARD.extension(&m, f), *s);
            assert!(f.depth() <= 2);
        }
    }

    #[test]
    fn boolean_value_basics() {
        let on: BTreeSet<Atom> = atoms(&["a"]).into_iter().collect();
        assert!(boolean_value(&"a -> b -> a".parse().unwrap(), &on));
        assert!(!boolean_value(&"~a".parse().unwrap(), &on));
        assert!(boolean_value(&"~bot".parse().unwrap(), &BTreeSet::new()));
    }

    #[test]
    fn classical_frames_are_classical() {
        let ms = classical_frames(2, &atoms(&["a"]));
        // 1 + 4 preorders, two valuations each.
        assert_eq!(ms.len(), 10);
        assert!(ms.iter().all(|m| validate(m).is_empty()));
    }

    #[test]
    fn small_batteries_pass() {
        let s = Semantics::STANDARD;
        assert!(heredity(&s, 2, 3).passed());
        assert!(falsity_collapse(&s, 2, 3).passed());
        let pool = model_pool(2, &atoms(&["a", "b"]));
        let mut sampler = Sampler::new(1, default_atoms()[..2].to_vec(), 3);
        assert!(reduction_equivalence(&s, &mut sampler, &pool, 100).passed());
        assert!(empty_premise_equivalence(&s, &mut sampler, &pool, 100).passed());
        assert!(trivial_totality(&s, &mut sampler, 100).passed());
        let c = Checker::default();
        assert!(classical_bivalence(&c, &mut sampler, 2, 3, 20).passed());
        assert!(minimal_st_vacuity(&c, &mut sampler, 10, Bound::worlds(2)).passed());
        assert!(class_inclusion(&c, &mut sampler, 10, Bound::worlds(2)).passed());
    }

    #[test]
    fn pinned_bottom_breaks_trivial_totality() {
        let s = Semantics {
            bottom: crate::semantics::BottomReading::PinnedFalse,
            ..Semantics::STANDARD
        };
        let mut sampler = Sampler::new(1, default_atoms(), 3);
        assert!(!trivial_totality(&s, &mut sampler, 50).passed());
    }
}
