//! Finite Kripke interpretations: a world set, a preorder accessibility
//! relation and a persistent two-valued valuation of atoms and `bot`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::formula::Atom;

mod enumerate;
mod text;

pub use enumerate::{enumerate, enumerate_with_ceiling, preorders, up_sets, Ceiling, Enumeration};
pub use text::{load_model, write_model};

/// World sets are `u64` bitmasks.
pub const MAX_WORLDS: usize = 64;

/// A set of world indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WorldSet(u64);

impl WorldSet {
    pub const EMPTY: WorldSet = WorldSet(0);

    pub fn full(n: usize) -> WorldSet {
        debug_assert!(n <= MAX_WORLDS);
        if n == MAX_WORLDS {
            WorldSet(u64::MAX)
        } else {
            WorldSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(w: usize) -> WorldSet {
        WorldSet(1u64 << w)
    }

    pub fn from_bits(bits: u64) -> WorldSet {
        WorldSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, w: usize) -> bool {
        w < MAX_WORLDS && self.0 & (1u64 << w) != 0
    }

    pub fn insert(&mut self, w: usize) {
        self.0 |= 1u64 << w;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: WorldSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 | other.0)
    }

    pub fn intersection(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & other.0)
    }

    pub fn difference(self, other: WorldSet) -> WorldSet {
        WorldSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let w = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w)
            }
        })
    }
}

impl FromIterator<usize> for WorldSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = WorldSet::EMPTY;
        for w in iter {
            s.insert(w);
        }
        s
    }
}

/// Minimal < Intuitionistic < Classical: every classical interpretation is
/// intuitionistic, every intuitionistic one is minimal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelKind {
    Minimal,
    Intuitionistic,
    Classical,
}

impl ModelKind {
    pub const ALL: [ModelKind; 3] = [
        ModelKind::Minimal,
        ModelKind::Intuitionistic,
        ModelKind::Classical,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::Minimal => "minimal",
            ModelKind::Intuitionistic => "intuitionistic",
            ModelKind::Classical => "classical",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minimal" => Ok(ModelKind::Minimal),
            "intuitionistic" => Ok(ModelKind::Intuitionistic),
            "classical" => Ok(ModelKind::Classical),
            other => Err(format!(
                "unknown logic {other:?} (expected minimal, intuitionistic or classical)"
            )),
        }
    }
}

/// Accessibility relation stored as one successor set per world.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    succ: Vec<WorldSet>,
}

impl Relation {
    /// The relation containing exactly `pairs`, with no closure applied.
    ///
    /// Panics if a pair mentions a world `>= n` or `n > MAX_WORLDS`.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Relation {
        assert!(n <= MAX_WORLDS, "at most {MAX_WORLDS} worlds");
        let mut succ = vec![WorldSet::EMPTY; n];
        for (w, v) in pairs {
            assert!(w < n && v < n, "pair ({w}, {v}) outside a {n}-world frame");
            succ[w].insert(v);
        }
        Relation { succ }
    }

    /// The least reflexive and transitive relation containing `pairs`.
    pub fn closure(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Relation {
        let mut r = Relation::from_pairs(n, pairs);
        r.close();
        r
    }

    pub fn identity(n: usize) -> Relation {
        Relation::closure(n, std::iter::empty())
    }

    pub(crate) fn from_successors(succ: Vec<WorldSet>) -> Relation {
        Relation { succ }
    }

    fn close(&mut self) {
        let n = self.succ.len();
        for w in 0..n {
            self.succ[w].insert(w);
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = self.succ[k];
            for i in 0..n {
                if self.succ[i].contains(k) {
                    self.succ[i] = self.succ[i].union(row_k);
                }
            }
        }
    }

    pub fn world_count(&self) -> usize {
        self.succ.len()
    }

    pub fn contains(&self, w: usize, v: usize) -> bool {
        self.succ.get(w).is_some_and(|s| s.contains(v))
    }

    /// `{ v | w R v }`.
    pub fn successors(&self, w: usize) -> WorldSet {
        self.succ[w]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(w, s)| s.iter().map(move |v| (w, v)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.succ.len()).all(|w| self.succ[w].contains(w))
    }

    pub fn is_transitive(&self) -> bool {
        self.transitivity_failure().is_none()
    }

    fn transitivity_failure(&self) -> Option<(usize, usize, usize)> {
        for (w, s) in self.succ.iter().enumerate() {
            for v in s.iter() {
                let missing = self.succ[v].difference(*s);
                if let Some(u) = missing.iter().next() {
                    return Some((w, v, u));
                }
            }
        }
        None
    }

    /// `true` iff `set` is closed upward along the relation.
    pub fn is_up_set(&self, set: WorldSet) -> bool {
        set.iter().all(|w| self.succ[w].is_subset(set))
    }
}

/// A way an interpretation can break the constraints of its declared kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotReflexive { world: String },
    NotTransitive { from: String, via: String, to: String },
    DanglingWorld { world: usize },
    NotPersistent { leaf: String, from: String, to: String },
    BottomTrue { world: String },
    NotWorldConstant { atom: String, true_at: String, false_at: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotReflexive { world } => {
                write!(f, "reflexivity: {world} does not access itself")
            }
            Violation::NotTransitive { from, via, to } => write!(
                f,
                "transitivity: {from} R {via} and {via} R {to} but not {from} R {to}"
            ),
            Violation::DanglingWorld { world } => {
                write!(f, "relation or valuation mentions undeclared world #{world}")
            }
            Violation::NotPersistent { leaf, from, to } => write!(
                f,
                "persistence: {leaf} is true at {from} but not at accessible {to}"
            ),
            Violation::BottomTrue { world } => {
                write!(f, "bot is true at {world} in a non-minimal interpretation")
            }
            Violation::NotWorldConstant {
                atom,
                true_at,
                false_at,
            } => write!(
                f,
                "classical constancy: {atom} is true at {true_at} but false at {false_at}"
            ),
        }
    }
}

/// A finite interpretation. Only atoms and `bot` carry stored values; every
/// compound value is computed by the semantics module. Unlisted atoms are
/// false everywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    worlds: Vec<String>,
    relation: Relation,
    atoms: BTreeMap<Atom, WorldSet>,
    bottom: WorldSet,
    kind: ModelKind,
}

impl Interpretation {
    /// An interpretation with every leaf false. No semantic validation happens
    /// here; see [`validate`].
    pub fn new(worlds: Vec<String>, relation: Relation, kind: ModelKind) -> Result<Self, Error> {
        if worlds.is_empty() {
            return Err(Error::InvalidQuery("an interpretation needs at least one world".into()));
        }
        if worlds.len() > MAX_WORLDS {
            return Err(Error::TooManyWorlds(worlds.len()));
        }
        if relation.world_count() != worlds.len() {
            return Err(Error::InvalidQuery(format!(
                "relation covers {} worlds but {} were declared",
                relation.world_count(),
                worlds.len()
            )));
        }
        for (i, name) in worlds.iter().enumerate() {
            if worlds[..i].contains(name) {
                return Err(Error::InvalidQuery(format!("duplicate world {name:?}")));
            }
        }
        Ok(Interpretation {
            worlds,
            relation,
            atoms: BTreeMap::new(),
            bottom: WorldSet::EMPTY,
            kind,
        })
    }

    /// Worlds named `w0`, `w1`, ...
    pub(crate) fn numbered(relation: Relation, kind: ModelKind) -> Interpretation {
        let worlds = (0..relation.world_count()).map(|i| format!("w{i}")).collect();
        Interpretation {
            worlds,
            relation,
            atoms: BTreeMap::new(),
            bottom: WorldSet::EMPTY,
            kind,
        }
    }

    pub fn set_atom(&mut self, atom: Atom, worlds: WorldSet) {
        if worlds.is_empty() {
            self.atoms.remove(&atom);
        } else {
            self.atoms.insert(atom, worlds);
        }
    }

    pub fn set_bottom(&mut self, worlds: WorldSet) {
        self.bottom = worlds;
    }

    pub fn with_atom(mut self, atom: &str, worlds: WorldSet) -> Self {
        self.set_atom(Atom::new(atom).expect("invalid atom name"), worlds);
        self
    }

    pub fn with_bottom(mut self, worlds: WorldSet) -> Self {
        self.set_bottom(worlds);
        self
    }

    /// The same frame and valuation under a different declared kind.
    pub fn retagged(&self, kind: ModelKind) -> Interpretation {
        Interpretation {
            kind,
            ..self.clone()
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn world_count(&self) -> usize {
        self.worlds.len()
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.worlds.len())
    }

    pub fn world_names(&self) -> &[String] {
        &self.worlds
    }

    pub fn world_name(&self, w: usize) -> &str {
        &self.worlds[w]
    }

    pub fn world(&self, name: &str) -> Result<usize, Error> {
        self.worlds
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn relation(&self) -> &Relation {
        &self.relation
    }

    pub fn atom_worlds(&self, atom: &Atom) -> WorldSet {
        self.atoms.get(atom).copied().unwrap_or_default()
    }

    /// Atoms true somewhere, with the worlds where they hold.
    pub fn atoms(&self) -> impl Iterator<Item = (&Atom, WorldSet)> {
        self.atoms.iter().map(|(a, s)| (a, *s))
    }

    pub fn bottom(&self) -> WorldSet {
        self.bottom
    }
}

/// Checks `m` against the constraints of its declared kind.
pub fn validate(m: &Interpretation) -> Vec<Violation> {
    validate_as(m, m.kind)
}

/// Checks `m` against the constraints of `kind`, ignoring its declared kind.
pub fn validate_as(m: &Interpretation, kind: ModelKind) -> Vec<Violation> {
    let n = m.world_count();
    let name = |w: usize| m.worlds[w].clone();
    let mut out = Vec::new();

    let everything = WorldSet::full(n);
    let leaves = m.atoms.values().chain(std::iter::once(&m.bottom));
    let dangling = m
        .relation
        .succ
        .iter()
        .chain(leaves)
        .map(|s| s.difference(everything))
        .fold(WorldSet::EMPTY, WorldSet::union);
    if let Some(world) = dangling.iter().next() {
        // Nothing below is meaningful with out-of-range bits.
        out.push(Violation::DanglingWorld { world });
        return out;
    }

    for w in 0..n {
        if !m.relation.contains(w, w) {
            out.push(Violation::NotReflexive { world: name(w) });
        }
    }
    if let Some((w, v, u)) = m.relation.transitivity_failure() {
        out.push(Violation::NotTransitive {
            from: name(w),
            via: name(v),
            to: name(u),
        });
    }

    let leaves = m
        .atoms
        .iter()
        .map(|(a, s)| (a.to_string(), *s))
        .chain(std::iter::once(("bot".to_string(), m.bottom)));
    for (leaf, set) in leaves {
        'leaf: for w in set.iter() {
            let lost = m.relation.successors(w).difference(set);
            if let Some(v) = lost.iter().next() {
                out.push(Violation::NotPersistent {
                    leaf,
                    from: name(w),
                    to: name(v),
                });
                break 'leaf;
            }
        }
    }

    if kind >= ModelKind::Intuitionistic {
        for w in m.bottom.iter() {
            out.push(Violation::BottomTrue { world: name(w) });
        }
    }

    if kind == ModelKind::Classical {
        for (atom, set) in &m.atoms {
            let unset = everything.difference(*set);
            if let (Some(t), Some(f)) = (set.iter().next(), unset.iter().next()) {
                out.push(Violation::NotWorldConstant {
                    atom: atom.to_string(),
                    true_at: name(t),
                    false_at: name(f),
                });
            }
        }
    }
    out
}

/// `m` unchanged if it satisfies its declared kind, otherwise every violation.
pub fn validated(m: Interpretation) -> Result<Interpretation, Error> {
    let violations = validate(&m);
    if violations.is_empty() {
        Ok(m)
    } else {
        Err(Error::InvalidModel(violations))
    }
}

/// One world where every listed atom and `bot` hold. Declared minimal.
pub fn trivial_model<'a>(atoms: impl IntoIterator<Item = &'a Atom>) -> Interpretation {
    let mut m = Interpretation::numbered(Relation::identity(1), ModelKind::Minimal);
    let here = WorldSet::singleton(0);
    for a in atoms {
        m.set_atom(a.clone(), here);
    }
    m.set_bottom(here);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_world_witness() -> Interpretation {
        let r = Relation::closure(2, [(0, 1)]);
        Interpretation::new(vec!["w".into(), "w'".into()], r, ModelKind::Minimal)
            .unwrap()
            .with_atom("a", WorldSet::from_bits(0b11))
            .with_bottom(WorldSet::singleton(1))
    }

    #[test]
    fn witness_is_minimal_but_not_intuitionistic() {
        let m = two_world_witness();
        assert_eq!(validate(&m), vec![]);
        assert_eq!(
            validate_as(&m, ModelKind::Intuitionistic),
            vec![Violation::BottomTrue { world: "w'".into() }]
        );
    }

    #[test]
    fn empty_relation_is_not_reflexive() {
        let m = Interpretation::new(
            vec!["w".into()],
            Relation::from_pairs(1, []),
            ModelKind::Minimal,
        )
        .unwrap();
        assert_eq!(
            validate(&m),
            vec![Violation::NotReflexive { world: "w".into() }]
        );
    }

    #[test]
    fn closure_examples() {
        let r = Relation::closure(1, []);
        assert_eq!(r.pairs().collect::<Vec<_>>(), vec![(0, 0)]);

        let r = Relation::closure(3, [(0, 1), (1, 2)]);
        assert_eq!(
            r.pairs().collect::<Vec<_>>(),
            vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]
        );

        let r = Relation::closure(3, [(0, 1), (0, 2)]);
        assert_eq!(
            r.pairs().collect::<Vec<_>>(),
            vec![(0, 0), (0, 1), (0, 2), (1, 1), (2, 2)]
        );
    }

    #[test]
    fn persistence_and_constancy_violations() {
        let r = Relation::closure(2, [(0, 1)]);
        let m = Interpretation::new(vec!["u".into(), "v".into()], r, ModelKind::Classical)
            .unwrap()
            .with_atom("a", WorldSet::singleton(0))
            .with_atom("b", WorldSet::singleton(1));
        let v = validate(&m);
        assert!(v.contains(&Violation::NotPersistent {
            leaf: "a".into(),
            from: "u".into(),
            to: "v".into()
        }));
        assert!(v.contains(&Violation::NotWorldConstant {
            atom: "b".into(),
            true_at: "v".into(),
            false_at: "u".into()
        }));
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn non_transitive_relation_is_reported() {
        let r = Relation::from_pairs(3, [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)]);
        let m = Interpretation::new(
            vec!["x".into(), "y".into(), "z".into()],
            r,
            ModelKind::Minimal,
        )
        .unwrap();
        assert_eq!(
            validate(&m),
            vec![Violation::NotTransitive {
                from: "x".into(),
                via: "y".into(),
                to: "z".into()
            }]
        );
    }

    #[test]
    fn trivial_model_shape() {
        let atoms = [Atom::new("a").unwrap(), Atom::new("b").unwrap()];
        let m = trivial_model(&atoms);
        assert_eq!(m.world_count(), 1);
        assert_eq!(m.bottom(), WorldSet::singleton(0));
        assert_eq!(m.atoms().count(), 2);
        assert!(validate(&m).is_empty());

        let empty = trivial_model(&[]);
        assert_eq!(empty.atoms().count(), 0);
        assert_eq!(empty.bottom(), WorldSet::singleton(0));
        assert!(validate(&trivial_model(&atoms[..1])).is_empty());
    }

    #[test]
    fn world_set_ops() {
        let s: WorldSet = [0, 2, 5].into_iter().collect();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert_eq!(s.len(), 3);
        assert!(WorldSet::singleton(2).is_subset(s));
        assert_eq!(WorldSet::full(3).difference(s), WorldSet::singleton(1));
        assert_eq!(WorldSet::full(64).len(), 64);
    }
}
