//! Randomised batteries comparing the exact classical checker with bounded
//! constructive search.

use std::fmt;

use super::{tarskian, Bound, Checker, Mode, Payload, Query, Verdict};
use crate::error::Error;
use crate::formula::Formula;
use crate::model::{Interpretation, ModelKind};
use crate::sample::Sampler;
use crate::semantics::Inference;

#[derive(Clone, Debug)]
pub enum DiscrepancyKind {
    /// Classical search found a countermodel but intuitionistic search did
    /// not. Classical countermodels are intuitionistic, so this is an
    /// internal error.
    ClassicalCountermodelMissed(Interpretation),
    /// The inference is classically valid yet an intuitionistic
    /// interpretation refutes it strict-tolerantly.
    ConstructiveCountermodel(Interpretation),
}

#[derive(Clone, Debug)]
pub struct Discrepancy {
    pub inference: Inference,
    pub kind: DiscrepancyKind,
}

#[derive(Clone, Debug, Default)]
pub struct CrossCheckReport {
    pub trials: usize,
    pub classically_valid: usize,
    pub classically_invalid: usize,
    pub discrepancies: Vec<Discrepancy>,
}

impl CrossCheckReport {
    pub fn passed(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

impl fmt::Display for CrossCheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} inferences: {} classically valid, {} invalid, {} discrepancies",
            self.trials,
            self.classically_valid,
            self.classically_invalid,
            self.discrepancies.len()
        )?;
        for d in &self.discrepancies {
            let what = match d.kind {
                DiscrepancyKind::ClassicalCountermodelMissed(_) => "classical countermodel missed",
                DiscrepancyKind::ConstructiveCountermodel(_) => "intuitionistic ST countermodel to a classical validity",
            };
            write!(f, "\n  {}: {what}", d.inference)?;
        }
        Ok(())
    }
}

/// Samples single-conclusion inferences and compares the exact classical
/// verdict with bounded intuitionistic strict-tolerant search. The two must
/// agree on every sample.
pub fn cross_check_st_classical(
    checker: &Checker,
    sampler: &mut Sampler,
    trials: usize,
    bound: Bound,
) -> Result<CrossCheckReport, Error> {
    let mut report = CrossCheckReport {
        trials,
        ..CrossCheckReport::default()
    };
    for _ in 0..trials {
        let inference = sampler.inference(0..=2, 1..=1);
        let payload = Payload::Inference(inference.clone());
        let classical = checker.check(&Query::new(ModelKind::Classical, Mode::St, payload.clone(), bound)?)?;
        let constructive =
            checker.check(&Query::new(ModelKind::Intuitionistic, Mode::St, payload, bound)?)?;
        match (classical, constructive) {
            (Verdict::HoldsExact, Verdict::Fails(m)) => {
                report.classically_valid += 1;
                report.discrepancies.push(Discrepancy {
                    inference,
                    kind: DiscrepancyKind::ConstructiveCountermodel(m),
                });
            }
            (Verdict::HoldsExact, _) => report.classically_valid += 1,
            (Verdict::Fails(m), Verdict::HoldsUpToBound(_) | Verdict::HoldsExact) => {
                report.classically_invalid += 1;
                report.discrepancies.push(Discrepancy {
                    inference,
                    kind: DiscrepancyKind::ClassicalCountermodelMissed(m),
                });
            }
            (Verdict::Fails(_), Verdict::Fails(_)) => report.classically_invalid += 1,
            (Verdict::HoldsUpToBound(_), _) => unreachable!("classical checks are exact"),
        }
    }
    Ok(report)
}

/// `~~(~a -> (a -> b))`: classically valid, minimally refutable.
pub fn minimal_witness() -> Formula {
    "~~(~a -> (a -> b))".parse().expect("well-formed")
}

#[derive(Clone, Debug)]
pub struct GlivenkoReport {
    pub requested: usize,
    pub tested: usize,
    pub skipped: usize,
    pub countermodels: Vec<(Inference, Interpretation)>,
    pub minimal_witness: Verdict,
    pub witness_certificate_sound: bool,
}

impl GlivenkoReport {
    pub fn passed(&self) -> bool {
        self.tested == self.requested
            && self.countermodels.is_empty()
            && self.minimal_witness.fails()
            && self.witness_certificate_sound
    }
}

impl fmt::Display for GlivenkoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} classically valid pairs tested ({} invalid skipped), {} double-negation countermodels; minimal witness {}{}",
            self.tested,
            self.requested,
            self.skipped,
            self.countermodels.len(),
            self.minimal_witness.label(),
            if self.witness_certificate_sound { "" } else { " (certificate unsound)" }
        )?;
        for (inf, _) in &self.countermodels {
            write!(f, "\n  countermodel to {inf}")?;
        }
        Ok(())
    }
}

/// Samples pairs `(G, A)`, keeps those with `G |= A` classically, and checks
/// that bounded intuitionistic search finds no countermodel to
/// `G |= ~~A`. Also runs the minimal-logic witness at two worlds, which must
/// fail.
pub fn glivenko_battery(
    checker: &Checker,
    sampler: &mut Sampler,
    trials: usize,
    bound: Bound,
) -> Result<GlivenkoReport, Error> {
    let mut tested = 0;
    let mut skipped = 0;
    let mut countermodels = Vec::new();
    let max_attempts = trials.saturating_mul(200).max(1000);
    let mut attempts = 0;
    while tested < trials && attempts < max_attempts {
        attempts += 1;
        let gamma = sampler.formulas(0..=2);
        let goal = sampler.formula();
        let classical = checker.check(&tarskian(ModelKind::Classical, gamma.clone(), goal.clone(), bound))?;
        if classical.fails() {
            skipped += 1;
            continue;
        }
        tested += 1;
        let doubled = Formula::not(Formula::not(goal));
        let q = tarskian(ModelKind::Intuitionistic, gamma, doubled, bound);
        if let Verdict::Fails(m) = checker.check(&q)? {
            let Payload::Inference(inf) = q.payload else { unreachable!() };
            countermodels.push((inf, m));
        }
    }

    let witness = tarskian(ModelKind::Minimal, Vec::new(), minimal_witness(), Bound::worlds(2));
    let minimal_witness = checker.check(&witness)?;
    let witness_certificate_sound = minimal_witness
        .certificate()
        .is_some_and(|m| checker.certificate_is_sound(m, &witness));

    Ok(GlivenkoReport {
        requested: trials,
        tested,
        skipped,
        countermodels,
        minimal_witness,
        witness_certificate_sound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::default_atoms;

    #[test]
    fn explosion_is_classically_valid_and_constructively_unrefuted() {
        let c = Checker::default();
        let inf: Inference = "a, ~a => b".parse().unwrap();
        let p = Payload::Inference(inf);
        let b = Bound::worlds(3);
        let cl = c.check(&Query::new(ModelKind::Classical, Mode::St, p.clone(), b).unwrap()).unwrap();
        let it = c.check(&Query::new(ModelKind::Intuitionistic, Mode::St, p, b).unwrap()).unwrap();
        assert_eq!(cl, Verdict::HoldsExact);
        assert_eq!(it, Verdict::HoldsUpToBound(b));
    }

    #[test]
    fn bare_atom_fails_both_ways() {
        let c = Checker::default();
        let p = Payload::Inference("=> a".parse().unwrap());
        let b = Bound::worlds(3);
        let cl = c.check(&Query::new(ModelKind::Classical, Mode::St, p.clone(), b).unwrap()).unwrap();
        let it = c.check(&Query::new(ModelKind::Intuitionistic, Mode::St, p, b).unwrap()).unwrap();
        assert!(cl.fails() && it.fails());
    }

    #[test]
    fn small_cross_check_is_clean() {
        let mut s = Sampler::new(11, default_atoms(), 3);
        let r = cross_check_st_classical(&Checker::default(), &mut s, 25, Bound::worlds(2)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.classically_valid + r.classically_invalid, 25);
    }

    #[test]
    fn witness_holds_intuitionistically_up_to_four_worlds() {
        let q = tarskian(ModelKind::Intuitionistic, Vec::new(), minimal_witness(), Bound::worlds(4));
        assert_eq!(Checker::default().check(&q).unwrap(), Verdict::HoldsUpToBound(Bound::worlds(4)));
        let q = tarskian(ModelKind::Minimal, Vec::new(), minimal_witness(), Bound::worlds(2));
        assert!(Checker::default().check(&q).unwrap().fails());
    }

    #[test]
    fn invalid_pairs_are_skipped() {
        let c = Checker::default();
        let q = tarskian(ModelKind::Classical, Vec::new(), Formula::atom("a"), Bound::default());
        assert!(c.check(&q).unwrap().fails());
    }
}
