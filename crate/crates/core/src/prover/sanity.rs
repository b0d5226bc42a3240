//! Soundness spot-check of certificate conclusions in the permutation representation.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use super::certificate::{Certificate, ConclusionKind};
use crate::autgroup::{automorphism_group, AutError, Permutation};
use crate::graph::Graph;
use crate::ncalgebra::{commutator, evaluate_perm, AlgebraError, Poly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SanityReport {
    pub trials: usize,
    pub evaluations: usize,
    pub zero_product_failures: usize,
    pub commutes_failures: usize,
}

impl SanityReport {
    pub fn passed(&self) -> bool {
        self.zero_product_failures == 0 && self.commutes_failures == 0
    }
}

/// Evaluates every conclusion under each of `perms`.
pub fn sanity_eval_with(
    g: &Graph,
    cert: &Certificate,
    perms: &[Permutation],
) -> Result<SanityReport, AlgebraError> {
    let mut report = SanityReport {
        trials: perms.len(),
        evaluations: 0,
        zero_product_failures: 0,
        commutes_failures: 0,
    };
    for sigma in perms {
        for c in &cert.conclusions {
            let (i, j, k, l) = c.quadruple();
            let (a, b) = (Poly::gen(i, j), Poly::gen(k, l));
            let value = match c.kind {
                ConclusionKind::ZeroProduct => evaluate_perm(g, sigma, &(&a * &b))?,
                ConclusionKind::Commutes => evaluate_perm(g, sigma, &commutator(&a, &b))?,
            };
            report.evaluations += 1;
            if !value.is_zero() {
                match c.kind {
                    ConclusionKind::ZeroProduct => report.zero_product_failures += 1,
                    ConclusionKind::Commutes => report.commutes_failures += 1,
                }
            }
        }
    }
    Ok(report)
}

#[derive(Debug, thiserror::Error)]
pub enum SanityError {
    #[error(transparent)]
    Aut(#[from] AutError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Draws `trials` automorphisms of `g` (uniformly from the element list when it is
/// available, otherwise as random products of generators) and evaluates every
/// conclusion under each.
pub fn sanity_eval<R: Rng>(
    g: &Graph,
    cert: &Certificate,
    trials: usize,
    rng: &mut R,
) -> Result<SanityReport, SanityError> {
    let group = automorphism_group(g)?;
    let perms: Vec<Permutation> = (0..trials)
        .map(|_| match &group.elements {
            Some(els) => els.choose(rng).cloned().expect("group has the identity"),
            None => {
                let mut p = Permutation::identity(g.n());
                for _ in 0..4 * g.n() {
                    if let Some(s) = group.generators.choose(rng) {
                        p = s.compose(&p);
                    }
                }
                p
            }
        })
        .collect();
    Ok(sanity_eval_with(g, cert, &perms)?)
}
