//! The propositional language: atoms, the constant `bot`, and the binary
//! connectives `&`, `|`, `->`. Negation is not a node; `~A` is read as
//! `A -> bot` when parsed and printed back as `~A`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError};
use crate::parse;

/// An atom name: `[a-z][a-z0-9_]*`, never the reserved word `bot`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Atom, Error> {
        let name = name.into();
        if is_identifier(&name) && name != "bot" {
            Ok(Atom(name))
        } else {
            Err(Error::InvalidAtom(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_')
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    Bottom,
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    /// Panics on an invalid name; use [`Atom::new`] for untrusted input.
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name).expect("invalid atom name"))
    }

    pub fn and(left: Formula, right: Formula) -> Formula {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Formula {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Formula {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    /// `~f`, i.e. `f -> bot`.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::implies(f, Formula::Bottom)
    }

    /// Right-nested disjunction `f1 | (f2 | (... | fn))`. `None` when empty.
    pub fn disjunction<I>(formulas: I) -> Option<Formula>
    where
        I: IntoIterator<Item = Formula>,
        I::IntoIter: DoubleEndedIterator,
    {
        formulas
            .into_iter()
            .rev()
            .reduce(|acc, f| Formula::or(f, acc))
    }

    /// If this is `X -> bot`, returns `X`.
    pub fn negated(&self) -> Option<&Formula> {
        match self {
            Formula::Implies(inner, bot) if **bot == Formula::Bottom => Some(inner),
            _ => None,
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Bottom => {}
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Distinct subformulas, children before parents (left-to-right post-order
    /// with repeats dropped).
    pub fn subformulas(&self) -> Vec<&Formula> {
        fn walk<'a>(f: &'a Formula, seen: &mut HashSet<&'a Formula>, out: &mut Vec<&'a Formula>) {
            if seen.contains(f) {
                return;
            }
            if let Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) = f {
                walk(l, seen, out);
                walk(r, seen, out);
            }
            seen.insert(f);
            out.push(f);
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        walk(self, &mut seen, &mut out);
        out
    }

    pub fn node_count(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 1,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.node_count() + r.node_count()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Bottom => 0,
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) | Formula::Bottom => 4,
            _ if self.negated().is_some() => 4,
            Formula::And(..) => 3,
            Formula::Or(..) => 2,
            Formula::Implies(..) => 1,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_prec: u8) -> fmt::Result {
        let prec = self.precedence();
        if prec < min_prec {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        if let Some(inner) = self.negated() {
            f.write_str("~")?;
            return inner.write_at(f, 4);
        }
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Bottom => f.write_str("bot"),
            Formula::And(l, r) => {
                l.write_at(f, 3)?;
                f.write_str(" & ")?;
                r.write_at(f, 4)
            }
            Formula::Or(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" | ")?;
                r.write_at(f, 3)
            }
            Formula::Implies(l, r) => {
                l.write_at(f, 2)?;
                f.write_str(" -> ")?;
                r.write_at(f, 1)
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::formula(s)
    }
}
