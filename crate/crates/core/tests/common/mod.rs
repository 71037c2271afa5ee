//! A direct world-by-world evaluator, independent of the library's
//! extension-based one.
#![allow(dead_code)]

use kripke_st::{Formula, Inference, Interpretation};

pub fn value(m: &Interpretation, w: usize, f: &Formula) -> bool {
    match f {
        Formula::Atom(a) => m.atom_worlds(a).contains(w),
        Formula::Bottom => m.bottom().contains(w),
        Formula::And(l, r) => value(m, w, l) && value(m, w, r),
        Formula::Or(l, r) => value(m, w, l) || value(m, w, r),
        Formula::Implies(l, r) => (0..m.world_count())
            .filter(|&v| m.relation().contains(w, v))
            .all(|v| !value(m, v, l) || value(m, v, r)),
    }
}

pub fn is_true(m: &Interpretation, f: &Formula) -> bool {
    (0..m.world_count()).all(|w| value(m, w, f))
}

pub fn is_false(m: &Interpretation, f: &Formula) -> bool {
    is_true(m, &Formula::not(f.clone()))
}

pub fn satisfies(m: &Interpretation, inf: &Inference) -> bool {
    !(inf.antecedent.iter().all(|g| is_true(m, g)) && inf.succedent.iter().all(|d| is_false(m, d)))
}
