//! Certificate checker. It re-derives every claim from ncalgebra primitives and the
//! graph alone and shares nothing with the producer.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use super::certificate::{
    Certificate, ConclusionKind, Justification, ProofStep, Scope, StepId, CERTIFICATE_VERSION,
};
use crate::graph::Graph;
use crate::ncalgebra::{
    apply_relation, expand_unity, local_reduce, replace_first, Poly, RelationInstance,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("certificate digest {found} does not match graph digest {expected}")]
    DigestMismatch { expected: String, found: String },
    #[error("step {step} refers to step {target}, which does not precede it")]
    DanglingReference { step: StepId, target: StepId },
    #[error("conclusion {index} refers to missing step {target}")]
    DanglingConclusion { index: usize, target: StepId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    /// The offending step, when the failure is attributable to one.
    pub step: Option<StepId>,
    pub reason: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(s) => write!(f, "step {s}: {}", self.reason),
            None => f.write_str(&self.reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub valid: bool,
    pub steps_checked: usize,
    pub conclusions_checked: usize,
    pub first_failure: Option<Failure>,
}

fn fail(step: StepId, reason: impl Into<String>) -> Failure {
    Failure {
        step: Some(step),
        reason: reason.into(),
    }
}

fn monic_pairs(p: &Poly) -> Option<Vec<(usize, usize)>> {
    p.as_monic_word()
        .map(|w| w.factors().iter().map(|g| (g.row, g.col)).collect())
}

struct Checker<'a> {
    g: &'a Graph,
    steps: &'a [ProofStep],
    /// step id -> quadruples it is a `Commutes` conclusion for
    commutes_at: BTreeMap<StepId, Vec<(usize, usize, usize, usize)>>,
}

impl Checker<'_> {
    fn check_comm_certificate(
        &self,
        id: StepId,
        relation: &RelationInstance,
    ) -> Result<(), Failure> {
        let RelationInstance::Comm {
            i,
            j,
            k,
            l,
            certified_by,
        } = *relation
        else {
            return Ok(());
        };
        let cert = &self.steps[certified_by];
        if cert.lhs != Poly::word(&[(i, j), (k, l)]) || cert.rhs != Poly::word(&[(k, l), (i, j)]) {
            return Err(fail(
                id,
                format!("step {certified_by} does not prove {relation}"),
            ));
        }
        let concluded = self
            .commutes_at
            .get(&certified_by)
            .is_some_and(|qs| qs.contains(&(i, j, k, l)));
        if !concluded {
            return Err(fail(
                id,
                format!("step {certified_by} is not a Commutes({i},{j},{k},{l}) conclusion"),
            ));
        }
        Ok(())
    }

    fn check_step(&self, id: StepId) -> Result<(), Failure> {
        let step = &self.steps[id];
        if step.id != id {
            return Err(fail(id, format!("id {} out of sequence", step.id)));
        }
        let (lhs, rhs) = (&step.lhs, &step.rhs);
        let mismatch = |what: &str, expected: &Poly| {
            fail(
                id,
                format!("{what} mismatch: claimed {rhs}, derived {expected}"),
            )
        };
        match &step.justification {
            Justification::RelationApplication { relation, position } => {
                self.check_comm_certificate(id, relation)?;
                let derived = apply_relation(self.g, lhs, relation, *position)
                    .map_err(|e| fail(id, e.to_string()))?;
                if derived != *rhs {
                    return Err(mismatch("relation application", &derived));
                }
            }
            Justification::ExpandUnity {
                position,
                index,
                side,
            } => {
                let expanded = expand_unity(lhs, *position, *index, *side, self.g.n())
                    .map_err(|e| fail(id, e.to_string()))?;
                let derived = local_reduce(self.g, &expanded);
                if derived != *rhs {
                    return Err(mismatch("unity expansion", &derived));
                }
            }
            Justification::LocalReduce => {
                let (a, b) = (local_reduce(self.g, lhs), local_reduce(self.g, rhs));
                if a != b {
                    return Err(fail(id, format!("normal forms differ: {a} vs {b}")));
                }
            }
            Justification::StarOfStep { step: src } => {
                let src = &self.steps[*src];
                if *lhs != src.lhs.star() || *rhs != src.rhs.star() {
                    return Err(fail(id, "not the adjoint of the referenced step"));
                }
            }
            Justification::Substitution {
                target,
                rule,
                reverse,
            } => {
                let (t, r) = (&self.steps[*target], &self.steps[*rule]);
                if *lhs != t.lhs {
                    return Err(fail(id, "left side differs from the target step"));
                }
                let (pattern, replacement) = if *reverse {
                    (&r.rhs, &r.lhs)
                } else {
                    (&r.lhs, &r.rhs)
                };
                let derived = if *pattern == t.rhs {
                    replacement.clone()
                } else {
                    let word = pattern.as_monic_word().ok_or_else(|| {
                        fail(id, "pattern is neither the whole side nor a monic word")
                    })?;
                    replace_first(&t.rhs, word, replacement)
                        .ok_or_else(|| fail(id, format!("pattern {pattern} does not occur")))?
                };
                if derived != *rhs {
                    return Err(mismatch("substitution", &derived));
                }
            }
            Justification::LemmaCom { step: starred } => {
                let Justification::StarOfStep { step: base } = self.steps[*starred].justification
                else {
                    return Err(fail(id, "premise is not a starred step"));
                };
                let base = &self.steps[base];
                let (Some(ab), Some(aba)) = (monic_pairs(&base.lhs), monic_pairs(&base.rhs)) else {
                    return Err(fail(id, "premise sides are not monic words"));
                };
                if ab.len() != 2 || aba != [ab[0], ab[1], ab[0]] {
                    return Err(fail(id, "premise is not of the form ab = aba"));
                }
                if *lhs != Poly::word(&ab) || *rhs != Poly::word(&[ab[1], ab[0]]) {
                    return Err(fail(id, "conclusion is not ab = ba"));
                }
            }
        }
        Ok(())
    }
}

fn expected_quadruples(g: &Graph, scope: Scope) -> Vec<(usize, usize, usize, usize)> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    if scope == Scope::AllPairs || (g.is_adjacent(i, k) && g.is_adjacent(j, l)) {
                        out.push((i, j, k, l));
                    }
                }
            }
        }
    }
    out
}

/// Checks every step in order, then every conclusion, then coverage of the declared
/// scope. Every step must feed a later step or a conclusion.
pub fn verify_certificate(
    g: &Graph,
    cert: &Certificate,
) -> Result<VerificationReport, VerifyError> {
    let expected = g.digest();
    if cert.graph_digest != expected {
        return Err(VerifyError::DigestMismatch {
            expected,
            found: cert.graph_digest.clone(),
        });
    }
    let steps = &cert.steps[..];
    for (idx, step) in steps.iter().enumerate() {
        let refs = step
            .justification
            .premises()
            .into_iter()
            .chain(step.justification.certified_by());
        for target in refs {
            if target >= idx {
                return Err(VerifyError::DanglingReference { step: idx, target });
            }
        }
    }
    for (index, c) in cert.conclusions.iter().enumerate() {
        if c.step >= steps.len() {
            return Err(VerifyError::DanglingConclusion {
                index,
                target: c.step,
            });
        }
    }

    let mut report = VerificationReport {
        valid: false,
        steps_checked: 0,
        conclusions_checked: 0,
        first_failure: None,
    };
    let header_failure = if cert.version != CERTIFICATE_VERSION {
        Some(format!("unsupported certificate version {}", cert.version))
    } else if cert.n != g.n() {
        Some(format!(
            "certificate is for {} vertices, graph has {}",
            cert.n,
            g.n()
        ))
    } else {
        None
    };
    if let Some(reason) = header_failure {
        report.first_failure = Some(Failure { step: None, reason });
        return Ok(report);
    }

    let mut commutes_at: BTreeMap<StepId, Vec<_>> = BTreeMap::new();
    for c in &cert.conclusions {
        if c.kind == ConclusionKind::Commutes {
            commutes_at.entry(c.step).or_default().push(c.quadruple());
        }
    }
    let checker = Checker {
        g,
        steps,
        commutes_at,
    };
    for id in 0..steps.len() {
        if let Err(f) = checker.check_step(id) {
            report.first_failure = Some(f);
            return Ok(report);
        }
        report.steps_checked += 1;
    }

    let mut used = vec![false; steps.len()];
    for step in steps {
        for r in step
            .justification
            .premises()
            .into_iter()
            .chain(step.justification.certified_by())
        {
            used[r] = true;
        }
    }
    let mut seen = HashSet::new();
    for c in &cert.conclusions {
        let step = &steps[c.step];
        let (lhs, rhs) = c.claim();
        if step.lhs != lhs || step.rhs != rhs {
            report.first_failure = Some(fail(
                c.step,
                format!(
                    "claim does not match conclusion {:?}{:?}",
                    c.kind,
                    c.quadruple()
                ),
            ));
            return Ok(report);
        }
        if !seen.insert(c.quadruple()) {
            report.first_failure = Some(fail(
                c.step,
                format!("quadruple {:?} concluded twice", c.quadruple()),
            ));
            return Ok(report);
        }
        used[c.step] = true;
        report.conclusions_checked += 1;
    }
    if let Some(unused) = used.iter().position(|&u| !u) {
        report.first_failure = Some(fail(unused, "step is never used"));
        return Ok(report);
    }
    let wanted = expected_quadruples(g, cert.scope);
    if let Some(missing) = wanted.iter().find(|q| !seen.contains(*q)) {
        report.first_failure = Some(Failure {
            step: None,
            reason: format!("no conclusion for quadruple {missing:?}"),
        });
        return Ok(report);
    }
    if seen.len() != wanted.len() {
        report.first_failure = Some(Failure {
            step: None,
            reason: "conclusions outside the declared scope".into(),
        });
        return Ok(report);
    }
    report.valid = true;
    Ok(report)
}
