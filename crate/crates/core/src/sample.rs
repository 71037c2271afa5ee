//! Seeded random formulas and inferences for the property batteries.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Atom, Formula};
use crate::semantics::Inference;

pub const DEFAULT_SEED: u64 = 0x5eed_0404;

/// Default atom pool for samplers: `a`, `b`, `c`.
pub fn default_atoms() -> Vec<Atom> {
    ["a", "b", "c"].iter().map(|n| Atom::new(*n).unwrap()).collect()
}

pub struct Sampler {
    rng: ChaCha8Rng,
    atoms: Vec<Atom>,
    max_depth: usize,
}

impl Sampler {
    /// Panics if `atoms` is empty.
    pub fn new(seed: u64, atoms: Vec<Atom>, max_depth: usize) -> Sampler {
        assert!(!atoms.is_empty(), "sampler needs at least one atom");
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            atoms,
            max_depth,
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn formula(&mut self) -> Formula {
        self.formula_at(self.max_depth)
    }

    fn formula_at(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return if self.rng.gen_bool(0.1) {
                Formula::Bottom
            } else {
                let i = self.rng.gen_range(0..self.atoms.len());
                Formula::Atom(self.atoms[i].clone())
            };
        }
        match self.rng.gen_range(0..4) {
            0 => Formula::not(self.formula_at(depth - 1)),
            op => {
                let l = self.formula_at(depth - 1);
                let r = self.formula_at(depth - 1);
                match op {
                    1 => Formula::and(l, r),
                    2 => Formula::or(l, r),
                    _ => Formula::implies(l, r),
                }
            }
        }
    }

    pub fn formulas(&mut self, count: RangeInclusive<usize>) -> Vec<Formula> {
        let n = self.rng.gen_range(count);
        (0..n).map(|_| self.formula()).collect()
    }

    pub fn inference(
        &mut self,
        antecedent: RangeInclusive<usize>,
        succedent: RangeInclusive<usize>,
    ) -> Inference {
        let gamma = self.formulas(antecedent);
        let delta = self.formulas(succedent);
        Inference::new(gamma, delta)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }
}
