//! Evaluation of formulas at worlds, truth and (strong) falsity in an
//! interpretation, and satisfaction of strict-tolerant inferences and
//! metainferences.
//!
//! A formula is *true* in an interpretation when it holds at every world, and
//! *false* when its negation holds at every world. In a minimal interpretation
//! both can happen at once.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};
use crate::formula::{Atom, Formula};
use crate::model::{Interpretation, WorldSet};
use crate::parse;

/// A sequent `antecedent => succedent`. Both sides are finite and may be
/// empty; order and repetition do not matter to any check.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inference {
    pub antecedent: Vec<Formula>,
    pub succedent: Vec<Formula>,
}

impl Inference {
    pub fn new(antecedent: Vec<Formula>, succedent: Vec<Formula>) -> Inference {
        Inference {
            antecedent,
            succedent,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for f in self.antecedent.iter().chain(&self.succedent) {
            f.collect_atoms(&mut out);
        }
        out
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, items: &[Formula]) -> fmt::Result {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

impl fmt::Display for Inference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.antecedent)?;
        match (self.antecedent.is_empty(), self.succedent.is_empty()) {
            (true, true) => f.write_str("=>"),
            (true, false) => f.write_str("=> "),
            (false, true) => f.write_str(" =>"),
            (false, false) => f.write_str(" => "),
        }?;
        write_list(f, &self.succedent)
    }
}

impl FromStr for Inference {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::inference(s)
    }
}

/// `[premises] =>* [conclusion]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Metainference {
    pub premises: Vec<Inference>,
    pub conclusion: Inference,
}

impl Metainference {
    pub fn new(premises: Vec<Inference>, conclusion: Inference) -> Metainference {
        Metainference {
            premises,
            conclusion,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = self.conclusion.atoms();
        for p in &self.premises {
            out.extend(p.atoms());
        }
        out
    }
}

impl fmt::Display for Metainference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.premises.iter().enumerate() {
            if i > 0 {
                f.write_str(" ;")?;
            }
            write!(f, " {p}")?;
        }
        if !self.premises.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "] =>* [ {} ]", self.conclusion)
    }
}

impl FromStr for Metainference {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::metainference(s)
    }
}

/// How the implication clause is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ImplicationReading {
    /// `A -> B` holds at `w` iff every `w'` with `w R w'` has `A` false or `B`
    /// true.
    #[default]
    Biconditional,
    /// Only the "if" half: the implication holds whenever the condition does,
    /// and is left at 1 where the clause does not constrain it. Mutant for
    /// sensitivity testing.
    IfOnly,
}

/// How `bot` is valued.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BottomReading {
    /// As stored in the interpretation.
    #[default]
    Stored,
    /// 0 everywhere regardless of the interpretation. Mutant for sensitivity
    /// testing.
    PinnedFalse,
}

/// The semantic clauses. [`Semantics::STANDARD`] is the one used everywhere
/// unless a caller asks for a mutant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Semantics {
    pub implication: ImplicationReading,
    pub bottom: BottomReading,
}

impl Semantics {
    pub const STANDARD: Semantics = Semantics {
        implication: ImplicationReading::Biconditional,
        bottom: BottomReading::Stored,
    };

    fn bottom_set(&self, m: &Interpretation) -> WorldSet {
        match self.bottom {
            BottomReading::Stored => m.bottom(),
            BottomReading::PinnedFalse => WorldSet::EMPTY,
        }
    }

    /// Worlds where `antecedent -> consequent` holds, given the worlds where
    /// each side holds.
    fn implication_set(&self, m: &Interpretation, antecedent: WorldSet, consequent: WorldSet) -> WorldSet {
        let all = m.all_worlds();
        if self.implication == ImplicationReading::IfOnly {
            return all;
        }
        let counterexamples = antecedent.difference(consequent);
        (0..m.world_count())
            .filter(|&w| m.relation().successors(w).intersection(counterexamples).is_empty())
            .collect()
    }

    /// The set of worlds where `f` holds.
    pub fn extension(&self, m: &Interpretation, f: &Formula) -> WorldSet {
        match f {
            Formula::Atom(a) => m.atom_worlds(a),
            Formula::Bottom => self.bottom_set(m),
            Formula::And(l, r) => self.extension(m, l).intersection(self.extension(m, r)),
            Formula::Or(l, r) => self.extension(m, l).union(self.extension(m, r)),
            Formula::Implies(l, r) => {
                let (l, r) = (self.extension(m, l), self.extension(m, r));
                self.implication_set(m, l, r)
            }
        }
    }

    pub fn eval(&self, m: &Interpretation, w: usize, f: &Formula) -> Result<bool, Error> {
        if w >= m.world_count() {
            return Err(Error::UnknownWorld(format!("#{w}")));
        }
        Ok(self.extension(m, f).contains(w))
    }

    pub fn is_true(&self, m: &Interpretation, f: &Formula) -> bool {
        self.extension(m, f) == m.all_worlds()
    }

    /// `~f` holds at every world.
    pub fn is_false(&self, m: &Interpretation, f: &Formula) -> bool {
        let negation = self.implication_set(m, self.extension(m, f), self.bottom_set(m));
        negation == m.all_worlds()
    }

    /// Fails exactly when every antecedent formula is true and every
    /// succedent formula is false.
    pub fn satisfies_inference(&self, m: &Interpretation, inf: &Inference) -> bool {
        let strict = inf.antecedent.iter().all(|g| self.is_true(m, g));
        let refuted = strict && inf.succedent.iter().all(|d| self.is_false(m, d));
        !refuted
    }

    /// Holds when some premise fails in `m` or the conclusion holds in `m`.
    pub fn satisfies_metainference(&self, m: &Interpretation, meta: &Metainference) -> bool {
        meta.premises
            .iter()
            .any(|p| !self.satisfies_inference(m, p))
            || self.satisfies_inference(m, &meta.conclusion)
    }

    /// Tarskian reading of a single-conclusion inference in one model: if all
    /// of the antecedent is true, the conclusion is true.
    pub fn preserves_truth(&self, m: &Interpretation, antecedent: &[Formula], conclusion: &Formula) -> bool {
        !antecedent.iter().all(|g| self.is_true(m, g)) || self.is_true(m, conclusion)
    }
}

pub fn eval(m: &Interpretation, w: usize, f: &Formula) -> Result<bool, Error> {
    Semantics::STANDARD.eval(m, w, f)
}

pub fn is_true(m: &Interpretation, f: &Formula) -> bool {
    Semantics::STANDARD.is_true(m, f)
}

pub fn is_false(m: &Interpretation, f: &Formula) -> bool {
    Semantics::STANDARD.is_false(m, f)
}

pub fn satisfies_inference(m: &Interpretation, inf: &Inference) -> bool {
    Semantics::STANDARD.satisfies_inference(m, inf)
}

pub fn satisfies_metainference(m: &Interpretation, meta: &Metainference) -> bool {
    Semantics::STANDARD.satisfies_metainference(m, meta)
}

/// Replaces a non-empty succedent `A1, ..., An` by the single formula
/// `A1 | (A2 | ... | An)`.
pub fn reduce_succedent(inf: &Inference) -> Result<Inference, Error> {
    let disjunction =
        Formula::disjunction(inf.succedent.iter().cloned()).ok_or(Error::EmptySuccedent)?;
    Ok(Inference::new(inf.antecedent.clone(), vec![disjunction]))
}
