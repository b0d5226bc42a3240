use serde::{Deserialize, Serialize};

use crate::ncalgebra::{Poly, RelationInstance, Side};

pub const CERTIFICATE_VERSION: u32 = 1;

pub type StepId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Justification {
    /// `rhs` is `lhs` with `relation` rewritten at `position` in every matching term.
    RelationApplication {
        relation: RelationInstance,
        position: usize,
    },
    /// `rhs` is the local normal form of `lhs` with a row or column sum inserted at
    /// `position`.
    ExpandUnity {
        position: usize,
        index: usize,
        side: Side,
    },
    /// Both sides have the same local normal form.
    LocalReduce,
    /// Adjoint of both sides of an earlier step.
    StarOfStep { step: StepId },
    /// `lhs` is the left side of `target`; `rhs` is the right side of `target` with one
    /// side of `rule` substituted by the other (`reverse` swaps the direction). The
    /// pattern is either the whole right side of `target` or a monic word, replaced at
    /// its first occurrence in each term.
    Substitution {
        target: StepId,
        rule: StepId,
        reverse: bool,
    },
    /// From `ab = aba` (the step starred by `step`) conclude `ab = ba`.
    LemmaCom { step: StepId },
}

impl Justification {
    /// Step ids this justification depends on, excluding `Comm` certifications.
    pub fn premises(&self) -> Vec<StepId> {
        match *self {
            Justification::StarOfStep { step } | Justification::LemmaCom { step } => vec![step],
            Justification::Substitution { target, rule, .. } => vec![target, rule],
            _ => Vec::new(),
        }
    }

    pub fn certified_by(&self) -> Option<StepId> {
        match self {
            Justification::RelationApplication { relation, .. } => relation.certified_by(),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofStep {
    pub id: StepId,
    pub lhs: Poly,
    pub rhs: Poly,
    pub justification: Justification,
}

impl ProofStep {
    /// Renumbers the step and its premises by `offset`. `Comm` certifications point
    /// outside the block and are left alone.
    pub(crate) fn shifted(mut self, offset: usize) -> Self {
        self.id += offset;
        match &mut self.justification {
            Justification::StarOfStep { step } | Justification::LemmaCom { step } => {
                *step += offset
            }
            Justification::Substitution { target, rule, .. } => {
                *target += offset;
                *rule += offset;
            }
            _ => {}
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConclusionKind {
    /// `u_ij u_kl = 0`
    ZeroProduct,
    /// `u_ij u_kl = u_kl u_ij`
    Commutes,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conclusion {
    pub kind: ConclusionKind,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    /// The step whose claim is exactly this conclusion.
    pub step: StepId,
}

impl Conclusion {
    pub fn quadruple(&self) -> (usize, usize, usize, usize) {
        (self.i, self.j, self.k, self.l)
    }

    pub fn claim(&self) -> (Poly, Poly) {
        let (i, j, k, l) = self.quadruple();
        let lhs = Poly::word(&[(i, j), (k, l)]);
        match self.kind {
            ConclusionKind::ZeroProduct => (lhs, Poly::zero()),
            ConclusionKind::Commutes => (lhs, Poly::word(&[(k, l), (i, j)])),
        }
    }
}

/// Which generator pairs the conclusions must cover, each exactly once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// `(i,j,k,l)` with `(i,k)` and `(j,l)` both edges.
    EdgePairs,
    /// All `n^4` ordered generator pairs.
    AllPairs,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub version: u32,
    pub graph_digest: String,
    pub n: usize,
    pub scope: Scope,
    pub steps: Vec<ProofStep>,
    pub conclusions: Vec<Conclusion>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn count(&self, kind: ConclusionKind) -> usize {
        self.conclusions.iter().filter(|c| c.kind == kind).count()
    }
}
