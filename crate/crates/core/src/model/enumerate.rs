//! Exhaustive, deterministic enumeration of interpretations over labeled
//! worlds.
//!
//! Canonical order: world count ascending; within a world count, preorders
//! ordered by the bitmask of their off-diagonal pairs (row-major); within a
//! frame, each leaf ranges over the up-sets of the preorder from the largest
//! bitmask down, with the first atom most significant and `bot` last.

use std::sync::OnceLock;

use super::{Interpretation, ModelKind, Relation, WorldSet};
use crate::error::Error;
use crate::formula::Atom;

/// Frames larger than this are not enumerated: the closure search over
/// `2^(n(n-1))` generator sets stops being cheap at six worlds.
pub const MAX_ENUMERATED_WORLDS: usize = 5;

const CEILING_ENV: &str = "KRIPKE_ST_CEILING";

/// Upper bound on `worlds x valued leaves` for one enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ceiling(pub usize);

impl Default for Ceiling {
    fn default() -> Self {
        Ceiling(16)
    }
}

impl Ceiling {
    /// Reads `KRIPKE_ST_CEILING`, falling back to the default.
    pub fn from_env() -> Ceiling {
        std::env::var(CEILING_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(Ceiling)
            .unwrap_or_default()
    }
}

fn off_diagonal_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

fn compute_preorders(n: usize) -> Vec<Relation> {
    let pairs = off_diagonal_pairs(n);
    let mut out = Vec::new();
    // A generator set is its own closure exactly when it is already
    // transitive; those masks are the distinct closures, each seen once.
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut succ: Vec<WorldSet> = (0..n).map(WorldSet::singleton).collect();
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                succ[i].insert(j);
            }
        }
        let transitive = (0..n).all(|i| succ[i].iter().all(|j| succ[j].is_subset(succ[i])));
        if transitive {
            out.push(Relation::from_successors(succ));
        }
    }
    out
}

/// All preorders on `n` labeled worlds in canonical order.
///
/// Panics if `n` is zero or above [`MAX_ENUMERATED_WORLDS`].
pub fn preorders(n: usize) -> &'static [Relation] {
    static CACHE: [OnceLock<Vec<Relation>>; MAX_ENUMERATED_WORLDS] =
        [const { OnceLock::new() }; MAX_ENUMERATED_WORLDS];
    assert!(
        (1..=MAX_ENUMERATED_WORLDS).contains(&n),
        "preorders are enumerated for 1..={MAX_ENUMERATED_WORLDS} worlds"
    );
    CACHE[n - 1].get_or_init(|| compute_preorders(n))
}

/// Up-closed world sets of `r`, largest bitmask first.
pub fn up_sets(r: &Relation) -> Vec<WorldSet> {
    let n = r.world_count();
    (0..(1u64 << n))
        .rev()
        .map(WorldSet::from_bits)
        .filter(|s| r.is_up_set(*s))
        .collect()
}

/// Stream of interpretations; see [`enumerate`].
pub struct Enumeration {
    kind: ModelKind,
    atoms: Vec<Atom>,
    max_worlds: usize,
    worlds: usize,
    frame: usize,
    choices: Vec<WorldSet>,
    odometer: Vec<usize>,
    done: bool,
}

impl Enumeration {
    fn leaf_count(&self) -> usize {
        self.atoms.len() + usize::from(self.kind == ModelKind::Minimal)
    }

    fn frames(&self) -> &'static [Relation] {
        preorders(self.worlds)
    }

    fn enter_frame(&mut self) {
        self.choices = match self.kind {
            ModelKind::Classical => vec![WorldSet::full(self.worlds), WorldSet::EMPTY],
            _ => up_sets(&self.frames()[self.frame]),
        };
        self.odometer = vec![0; self.leaf_count()];
    }

    fn current(&self) -> Interpretation {
        let relation = self.frames()[self.frame].clone();
        let mut m = Interpretation::numbered(relation, self.kind);
        for (atom, &i) in self.atoms.iter().zip(&self.odometer) {
            m.set_atom(atom.clone(), self.choices[i]);
        }
        if self.kind == ModelKind::Minimal {
            m.set_bottom(self.choices[*self.odometer.last().expect("bot leaf")]);
        }
        m
    }

    /// Moves to the next state; `false` once exhausted.
    fn advance(&mut self) -> bool {
        for digit in self.odometer.iter_mut().rev() {
            *digit += 1;
            if *digit < self.choices.len() {
                return true;
            }
            *digit = 0;
        }
        self.frame += 1;
        if self.frame < self.frames().len() {
            self.enter_frame();
            return true;
        }
        if self.worlds < self.max_worlds {
            self.worlds += 1;
            self.frame = 0;
            self.enter_frame();
            return true;
        }
        false
    }
}

impl Iterator for Enumeration {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        let m = self.current();
        self.done = !self.advance();
        Some(m)
    }
}

/// Every interpretation of `kind` with at most `max_worlds` worlds over
/// `atoms` (plus `bot` for minimal), using the default ceiling. Classical
/// interpretations are generated with one world only.
pub fn enumerate(kind: ModelKind, max_worlds: usize, atoms: &[Atom]) -> Result<Enumeration, Error> {
    enumerate_with_ceiling(kind, max_worlds, atoms, Ceiling::default())
}

pub fn enumerate_with_ceiling(
    kind: ModelKind,
    max_worlds: usize,
    atoms: &[Atom],
    ceiling: Ceiling,
) -> Result<Enumeration, Error> {
    if max_worlds == 0 {
        return Err(Error::InvalidQuery("max worlds must be at least 1".into()));
    }
    let max_worlds = if kind == ModelKind::Classical { 1 } else { max_worlds };
    let leaves = atoms.len() + usize::from(kind == ModelKind::Minimal);
    let cells = max_worlds * leaves;
    if cells > ceiling.0 {
        return Err(Error::CeilingExceeded {
            cells,
            ceiling: ceiling.0,
        });
    }
    if max_worlds > MAX_ENUMERATED_WORLDS {
        return Err(Error::TooManyWorlds(max_worlds));
    }
    let mut atoms = atoms.to_vec();
    atoms.dedup();
    let mut e = Enumeration {
        kind,
        atoms,
        max_worlds,
        worlds: 1,
        frame: 0,
        choices: Vec::new(),
        odometer: Vec::new(),
        done: false,
    };
    e.enter_frame();
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate;
    use std::collections::HashSet;

    fn atoms(names: &[&str]) -> Vec<Atom> {
        names.iter().map(|n| Atom::new(*n).unwrap()).collect()
    }

    #[test]
    fn preorder_counts_match_known_sequence() {
        // Labeled preorders: 1, 4, 29, 355.
        let counts: Vec<usize> = (1..=4).map(|n| preorders(n).len()).collect();
        assert_eq!(counts, vec![1, 4, 29, 355]);
    }

    #[test]
    fn classical_is_one_world_boolean_valuations() {
        let models: Vec<_> = enumerate(ModelKind::Classical, 3, &atoms(&["a", "b"]))
            .unwrap()
            .collect();
        assert_eq!(models.len(), 4);
        assert!(models.iter().all(|m| m.world_count() == 1));
    }

    #[test]
    fn minimal_one_world_one_atom() {
        let models: Vec<_> = enumerate(ModelKind::Minimal, 1, &atoms(&["a"]))
            .unwrap()
            .collect();
        assert_eq!(models.len(), 4);
        // Most-true first: the first minimal model is the trivial one.
        assert_eq!(models[0], crate::model::trivial_model(&atoms(&["a"])));
    }

    #[test]
    fn output_is_valid_and_duplicate_free() {
        for kind in ModelKind::ALL {
            let models: Vec<_> = enumerate(kind, 3, &atoms(&["a", "b"])).unwrap().collect();
            let mut seen = HashSet::new();
            for m in &models {
                assert!(validate(m).is_empty(), "{kind}: {:?}", validate(m));
                let sig = (
                    m.world_count(),
                    m.relation().pairs().collect::<Vec<_>>(),
                    m.atoms().map(|(a, s)| (a.clone(), s)).collect::<Vec<_>>(),
                    m.bottom(),
                );
                assert!(seen.insert(sig), "duplicate model");
            }
        }
    }

    #[test]
    fn ordering_is_by_world_count_first() {
        let sizes: Vec<_> = enumerate(ModelKind::Intuitionistic, 3, &atoms(&["a"]))
            .unwrap()
            .map(|m| m.world_count())
            .collect();
        assert!(sizes.windows(2).all(|w| w[0] <= w[1]));
        assert_eq!(sizes.first(), Some(&1));
        assert_eq!(sizes.last(), Some(&3));
    }

    #[test]
    fn ceiling_and_bounds_are_enforced() {
        let a = atoms(&["a", "b", "c"]);
        assert!(matches!(
            enumerate_with_ceiling(ModelKind::Minimal, 4, &a, Ceiling(15)),
            Err(Error::CeilingExceeded { cells: 16, ceiling: 15 })
        ));
        assert!(enumerate_with_ceiling(ModelKind::Minimal, 4, &a, Ceiling(16)).is_ok());
        assert!(enumerate(ModelKind::Minimal, 0, &a).is_err());
        assert!(matches!(
            enumerate_with_ceiling(ModelKind::Intuitionistic, 6, &a[..1], Ceiling(100)),
            Err(Error::TooManyWorlds(6))
        ));
    }

    #[test]
    fn up_sets_of_a_chain() {
        let r = Relation::closure(2, [(0, 1)]);
        assert_eq!(
            up_sets(&r),
            vec![
                WorldSet::from_bits(0b11),
                WorldSet::from_bits(0b10),
                WorldSet::EMPTY
            ]
        );
    }
}
