#![allow(dead_code)]

use qsym_core::graph::Graph;
use qsym_core::ncalgebra::{integer, Poly, RelationInstance, Side, Word};
use qsym_core::prover::{
    verify_certificate, Certificate, Justification, VerificationReport, VerifyError,
};
use rand::Rng;

fn perturb(p: &Poly, rng: &mut impl Rng) -> Poly {
    let terms: Vec<(Word, _)> = p.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
    if terms.is_empty() || rng.gen_bool(0.3) {
        let r = rng.gen_range(1..=10);
        let c = rng.gen_range(1..=10);
        return p + &Poly::gen(r, c);
    }
    let (w, _) = &terms[rng.gen_range(0..terms.len())];
    p + &Poly::monomial(integer(1), w.clone())
}

fn other_id(current: usize, below: usize, rng: &mut impl Rng) -> usize {
    if below <= 1 {
        return (current + 1) % below.max(1);
    }
    loop {
        let x = rng.gen_range(0..below);
        if x != current {
            return x;
        }
    }
}

fn bump(x: usize, n: usize) -> usize {
    x % n + 1
}

fn mutate_relation(
    r: &RelationInstance,
    id: usize,
    n: usize,
    rng: &mut impl Rng,
) -> RelationInstance {
    use RelationInstance::*;
    match r.clone() {
        Comm {
            i,
            j,
            k,
            l,
            certified_by,
        } => match rng.gen_range(0..3) {
            0 => Comm {
                i: bump(i, n),
                j,
                k,
                l,
                certified_by,
            },
            1 => Comm {
                i,
                j,
                k,
                l: bump(l, n),
                certified_by,
            },
            _ => Comm {
                i,
                j,
                k,
                l,
                certified_by: other_id(certified_by, id, rng),
            },
        },
        RowOrth { i, j, k } => RowOrth {
            i: bump(i, n),
            j,
            k,
        },
        ColOrth { j, k, i } => ColOrth {
            j,
            k,
            i: bump(i, n),
        },
        Idem { i, j } => Idem { i, j: bump(j, n) },
        VanishA { j, i, l, k } => VanishA {
            j,
            i,
            l,
            k: bump(k, n),
        },
        VanishB { i, j, k, l } => VanishB {
            i: bump(i, n),
            j,
            k,
            l,
        },
        other => other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationKind {
    Claim,
    Justification,
}

/// Applies one random mutation to one random step.
pub fn mutate(cert: &mut Certificate, rng: &mut impl Rng) -> (usize, MutationKind) {
    let n = cert.n;
    let id = rng.gen_range(0..cert.steps.len());
    let step = &mut cert.steps[id];
    match rng.gen_range(0..3) {
        0 => {
            step.lhs = perturb(&step.lhs, rng);
            return (id, MutationKind::Claim);
        }
        1 => {
            step.rhs = perturb(&step.rhs, rng);
            return (id, MutationKind::Claim);
        }
        _ => {
            step.justification = match step.justification.clone() {
                Justification::RelationApplication { relation, position } => {
                    if rng.gen_bool(0.5) {
                        Justification::RelationApplication {
                            relation,
                            position: position + 1,
                        }
                    } else {
                        Justification::RelationApplication {
                            relation: mutate_relation(&relation, id, n, rng),
                            position,
                        }
                    }
                }
                Justification::ExpandUnity {
                    position,
                    index,
                    side,
                } => match rng.gen_range(0..3) {
                    0 => Justification::ExpandUnity {
                        position: position + 1,
                        index,
                        side,
                    },
                    1 => Justification::ExpandUnity {
                        position,
                        index: bump(index, n),
                        side,
                    },
                    _ => Justification::ExpandUnity {
                        position,
                        index,
                        side: match side {
                            Side::Row => Side::Column,
                            Side::Column => Side::Row,
                        },
                    },
                },
                Justification::LocalReduce if id > 0 => Justification::StarOfStep {
                    step: other_id(id, id, rng),
                },
                Justification::LocalReduce => Justification::ExpandUnity {
                    position: usize::MAX,
                    index: 1,
                    side: Side::Row,
                },
                Justification::StarOfStep { step } => Justification::StarOfStep {
                    step: other_id(step, id, rng),
                },
                Justification::LemmaCom { step } => Justification::LemmaCom {
                    step: other_id(step, id, rng),
                },
                Justification::Substitution {
                    target,
                    rule,
                    reverse,
                } => match rng.gen_range(0..3) {
                    0 => Justification::Substitution {
                        target,
                        rule,
                        reverse: !reverse,
                    },
                    1 => Justification::Substitution {
                        target: other_id(target, id, rng),
                        rule,
                        reverse,
                    },
                    _ => Justification::Substitution {
                        target,
                        rule: other_id(rule, id, rng),
                        reverse,
                    },
                },
            }
        }
    }
    (id, MutationKind::Justification)
}

/// The step a rejection names, if the certificate was rejected.
pub fn rejected_step(result: &Result<VerificationReport, VerifyError>) -> Option<usize> {
    match result {
        Ok(r) if !r.valid => r.first_failure.as_ref().and_then(|f| f.step),
        Err(VerifyError::DanglingReference { step, .. }) => Some(*step),
        _ => None,
    }
}

#[derive(Debug, Default)]
pub struct FuzzSummary {
    pub attempts: usize,
    pub rejected: usize,
    /// Justification swaps that still derive the same claim; not corruptions.
    pub neutral: Vec<usize>,
    /// Mutations accepted although they changed a claim, or rejected without a step.
    pub missed: Vec<String>,
}

impl FuzzSummary {
    pub fn passed(&self, wanted: usize) -> bool {
        self.missed.is_empty()
            && self.rejected >= wanted
            && self.neutral.len() * 50 <= self.attempts
    }
}

/// Mutates `cert` until `wanted` mutations have been rejected or the attempt budget
/// runs out.
pub fn fuzz(g: &Graph, cert: &Certificate, wanted: usize, rng: &mut impl Rng) -> FuzzSummary {
    let mut summary = FuzzSummary::default();
    while summary.rejected < wanted && summary.attempts < 2 * wanted {
        let mut m = cert.clone();
        let (id, kind) = mutate(&mut m, rng);
        if m == *cert {
            continue;
        }
        summary.attempts += 1;
        let result = verify_certificate(g, &m);
        match (rejected_step(&result), kind, &result) {
            (Some(_), _, _) => summary.rejected += 1,
            (None, MutationKind::Justification, Ok(r)) if r.valid => summary.neutral.push(id),
            _ => summary
                .missed
                .push(format!("step {id} ({kind:?}): {:?}", m.steps[id])),
        }
    }
    summary
}
