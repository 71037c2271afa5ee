//! Canonical enumeration against a brute-force generate-and-filter oracle.

use std::collections::BTreeSet;

use kripke_st::model::{enumerate, validate};
use kripke_st::{Atom, Interpretation, ModelKind};

type Key = (usize, Vec<(usize, usize)>, Vec<u64>, u64);

fn key(m: &Interpretation, atoms: &[Atom]) -> Key {
    let pairs = m.relation().pairs().collect();
    let vals = atoms.iter().map(|a| m.atom_worlds(a).bits()).collect();
    (m.world_count(), pairs, vals, m.bottom().bits())
}

/// Every relation on `n` worlds, kept if reflexive and transitive; every
/// leaf valuation, kept if persistent and allowed by `kind`.
fn oracle(kind: ModelKind, max_worlds: usize, atoms: &[Atom]) -> BTreeSet<Key> {
    let mut out = BTreeSet::new();
    let max_worlds = if kind == ModelKind::Classical { 1 } else { max_worlds };
    for n in 1..=max_worlds {
        for rel in 0u64..(1 << (n * n)) {
            let r = |i: usize, j: usize| rel & (1 << (i * n + j)) != 0;
            if !(0..n).all(|i| r(i, i)) {
                continue;
            }
            let transitive = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r(i, j) && r(j, k)) || r(i, k))));
            if !transitive {
                continue;
            }
            let persistent = |s: u64| (0..n).all(|i| (0..n).all(|j| !(r(i, j) && s & (1 << i) != 0) || s & (1 << j) != 0));
            let sets: Vec<u64> = (0u64..(1 << n)).filter(|s| persistent(*s)).collect();
            let bottoms: Vec<u64> = if kind == ModelKind::Minimal { sets.clone() } else { vec![0] };
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| r(i, j)).collect();
            let mut vals = vec![Vec::new()];
            for _ in atoms {
                vals = vals
                    .into_iter()
                    .flat_map(|v: Vec<u64>| sets.iter().map(move |s| [v.clone(), vec![*s]].concat()))
                    .collect();
            }
            for v in &vals {
                for b in &bottoms {
                    out.insert((n, pairs.clone(), v.clone(), *b));
                }
            }
        }
    }
    out
}

fn names(list: &[&str]) -> Vec<Atom> {
    list.iter().map(|n| Atom::new(*n).unwrap()).collect()
}

fn agree(kind: ModelKind, max_worlds: usize, atoms: &[Atom]) -> usize {
    let models: Vec<Interpretation> = enumerate(kind, max_worlds, atoms).unwrap().collect();
    for m in &models {
        assert!(validate(m).is_empty(), "{kind} enumeration yielded an invalid model");
        assert_eq!(m.kind(), kind);
    }
    let keys: BTreeSet<Key> = models.iter().map(|m| key(m, atoms)).collect();
    assert_eq!(keys.len(), models.len(), "{kind} enumeration repeats a model");
    assert_eq!(keys, oracle(kind, max_worlds, atoms), "{kind} enumeration differs from oracle");
    models.len()
}

#[test]
fn intuitionistic_two_worlds_one_atom() {
    // 2 one-world models; 4 + 3 + 3 + 2 on two worlds.
    assert_eq!(agree(ModelKind::Intuitionistic, 2, &names(&["a"])), 14);
}

#[test]
fn minimal_matches_oracle() {
    agree(ModelKind::Minimal, 3, &names(&["a"]));
    agree(ModelKind::Minimal, 2, &names(&["a", "b"]));
}

#[test]
fn intuitionistic_matches_oracle() {
    agree(ModelKind::Intuitionistic, 3, &names(&["a", "b"]));
    agree(ModelKind::Intuitionistic, 4, &names(&["a"]));
}

#[test]
fn classical_is_boolean_valuations() {
    assert_eq!(agree(ModelKind::Classical, 3, &names(&["a", "b", "c"])), 8);
}

#[test]
fn no_atoms() {
    // Minimal: bot ranges over up-sets; intuitionistic: frames only.
    assert_eq!(agree(ModelKind::Intuitionistic, 3, &[]), 1 + 4 + 29);
    agree(ModelKind::Minimal, 3, &[]);
}

#[test]
fn world_counts_never_decrease() {
    let counts: Vec<usize> = enumerate(ModelKind::Minimal, 3, &names(&["a"]))
        .unwrap()
        .map(|m| m.world_count())
        .collect();
    assert!(counts.windows(2).all(|w| w[0] <= w[1]));
}
