//! Proof replay. Each generator quadruple gets its own block of steps; blocks are built
//! independently (in parallel) and then concatenated in quadruple order.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::certificate::{
    Certificate, Conclusion, ConclusionKind, Justification, ProofStep, Scope, StepId,
    CERTIFICATE_VERSION,
};
use super::ProofError;
use crate::graph::{check_moore_conditions, Graph};
use crate::ncalgebra::{
    apply_relation, expand_unity, local_reduce, replace_first, Poly, RelationInstance, Side,
};

type Quad = (usize, usize, usize, usize);

/// An append-only list of steps with helpers that compute each claim from its
/// justification.
#[derive(Debug, Default, Clone)]
pub struct ProofLog {
    steps: Vec<ProofStep>,
}

impl ProofLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn steps(&self) -> &[ProofStep] {
        &self.steps
    }

    pub fn step(&self, id: StepId) -> &ProofStep {
        &self.steps[id]
    }

    pub fn into_steps(self) -> Vec<ProofStep> {
        self.steps
    }

    /// Appends a step as given. No checking happens here.
    pub fn push(&mut self, lhs: Poly, rhs: Poly, justification: Justification) -> StepId {
        let id = self.steps.len();
        self.steps.push(ProofStep {
            id,
            lhs,
            rhs,
            justification,
        });
        id
    }

    pub fn expand(
        &mut self,
        g: &Graph,
        lhs: Poly,
        position: usize,
        index: usize,
        side: Side,
    ) -> Result<StepId, ProofError> {
        let rhs = local_reduce(g, &expand_unity(&lhs, position, index, side, g.n())?);
        Ok(self.push(
            lhs,
            rhs,
            Justification::ExpandUnity {
                position,
                index,
                side,
            },
        ))
    }

    pub fn apply(
        &mut self,
        g: &Graph,
        lhs: Poly,
        relation: RelationInstance,
        position: usize,
    ) -> Result<StepId, ProofError> {
        let rhs = apply_relation(g, &lhs, &relation, position)?;
        Ok(self.push(
            lhs,
            rhs,
            Justification::RelationApplication { relation, position },
        ))
    }

    pub fn reduce(&mut self, lhs: Poly, rhs: Poly) -> StepId {
        self.push(lhs, rhs, Justification::LocalReduce)
    }

    pub fn star(&mut self, step: StepId) -> StepId {
        let (lhs, rhs) = (self.steps[step].lhs.star(), self.steps[step].rhs.star());
        self.push(lhs, rhs, Justification::StarOfStep { step })
    }

    pub fn substitute(
        &mut self,
        target: StepId,
        rule: StepId,
        reverse: bool,
    ) -> Result<StepId, ProofError> {
        let (t, r) = (&self.steps[target], &self.steps[rule]);
        let (pattern, replacement) = if reverse {
            (&r.rhs, &r.lhs)
        } else {
            (&r.lhs, &r.rhs)
        };
        let rhs = if *pattern == t.rhs {
            replacement.clone()
        } else {
            let word = pattern.as_monic_word().ok_or_else(|| {
                ProofError::Internal(format!(
                    "step {rule}: substitution pattern is not a monic word"
                ))
            })?;
            replace_first(&t.rhs, word, replacement).ok_or_else(|| {
                ProofError::Internal(format!("step {rule}: pattern absent from step {target}"))
            })?
        };
        let lhs = t.lhs.clone();
        Ok(self.push(
            lhs,
            rhs,
            Justification::Substitution {
                target,
                rule,
                reverse,
            },
        ))
    }

    /// Asserts that step `id` claims exactly `lhs = rhs`.
    fn expect_claim(&self, id: StepId, lhs: &Poly, rhs: &Poly) -> Result<(), ProofError> {
        let s = &self.steps[id];
        if s.lhs == *lhs && s.rhs == *rhs {
            Ok(())
        } else {
            Err(ProofError::Internal(format!(
                "step {id} derived {} = {}, expected {} = {}",
                s.lhs, s.rhs, lhs, rhs
            )))
        }
    }
}

/// Splits a monic word into its factors as `(row, col)` pairs.
fn monic_pairs(p: &Poly) -> Option<Vec<(usize, usize)>> {
    p.as_monic_word()
        .map(|w| w.factors().iter().map(|g| (g.row, g.col)).collect())
}

/// From a step claiming `u_ij u_kl = u_ij u_kl u_ij`, derive `u_ij u_kl = u_kl u_ij`:
/// star both sides (`u_kl u_ij = u_ij u_kl u_ij`, using self-adjoint generators) and
/// chain through the common right side.
pub fn lemma_com(log: &mut ProofLog, step: StepId) -> Result<StepId, ProofError> {
    let s = log.step(step);
    let shape = |reason: &str| ProofError::ShapeMismatch {
        step,
        reason: reason.to_string(),
    };
    let lhs = monic_pairs(&s.lhs).ok_or_else(|| shape("left side is not a monic word"))?;
    let rhs = monic_pairs(&s.rhs).ok_or_else(|| shape("right side is not a monic word"))?;
    if lhs.len() != 2 || rhs != [lhs[0], lhs[1], lhs[0]] {
        return Err(shape("expected u_ij u_kl = u_ij u_kl u_ij"));
    }
    let (a, b) = (lhs[0], lhs[1]);
    let starred = log.star(step);
    Ok(log.push(
        Poly::word(&[a, b]),
        Poly::word(&[b, a]),
        Justification::LemmaCom { step: starred },
    ))
}

/// Steps and conclusions for one quadruple, numbered from 0.
struct Block {
    steps: Vec<ProofStep>,
    conclusion: Conclusion,
}

impl Block {
    fn new(log: ProofLog, kind: ConclusionKind, (i, j, k, l): Quad, step: StepId) -> Self {
        Block {
            steps: log.into_steps(),
            conclusion: Conclusion {
                kind,
                i,
                j,
                k,
                l,
                step,
            },
        }
    }
}

fn directed_edges(g: &Graph) -> Vec<(usize, usize)> {
    (1..=g.n())
        .flat_map(|i| g.neighbors(i).iter().map(move |&k| (i, k)))
        .collect()
}

fn edge_quadruples(g: &Graph) -> Vec<Quad> {
    let edges = directed_edges(g);
    let mut quads: Vec<Quad> = edges
        .iter()
        .flat_map(|&(i, k)| edges.iter().map(move |&(j, l)| (i, j, k, l)))
        .collect();
    quads.sort_unstable();
    quads
}

/// `u_ij u_kl = u_kl u_ij` for `(i,k), (j,l) ∈ E`.
///
/// Insert `Σ_s u_is` after `u_kl` (only `s ∈ N(l)` survive), then show each
/// `u_ij u_kl u_is` with `s != j` vanishes: inserting `Σ_a u_ka` into `u_ij u_is` leaves
/// only `a = l` because `l` is the unique common neighbor of `j` and `s`, while
/// `u_ij u_is = 0` directly.
fn qa5_block(g: &Graph, (i, j, k, l): Quad) -> Result<Block, ProofError> {
    let mut log = ProofLog::new();
    let target = Poly::word(&[(i, j), (k, l)]);
    let mut cur = log.expand(g, target.clone(), 2, i, Side::Row)?;
    for &s in g.neighbors(l).iter().filter(|&&s| s != j) {
        let short = Poly::word(&[(i, j), (i, s)]);
        let inner = log.expand(g, short.clone(), 1, k, Side::Row)?;
        log.expect_claim(inner, &short, &Poly::word(&[(i, j), (k, l), (i, s)]))?;
        let vanish = log.reduce(short, Poly::zero());
        let back = log.substitute(cur, inner, true)?;
        cur = log.substitute(back, vanish, false)?;
    }
    log.expect_claim(cur, &target, &Poly::word(&[(i, j), (k, l), (i, j)]))?;
    let done = lemma_com(&mut log, cur)?;
    Ok(Block::new(
        log,
        ConclusionKind::Commutes,
        (i, j, k, l),
        done,
    ))
}

fn unique_common_neighbor(g: &Graph, u: usize, v: usize) -> Result<usize, ProofError> {
    match g
        .common_neighbors(u, v)
        .map_err(|e| ProofError::Internal(e.to_string()))?[..]
    {
        [w] => Ok(w),
        ref other => Err(ProofError::Internal(format!(
            "pair ({u},{v}) has {} common neighbors",
            other.len()
        ))),
    }
}

/// `u_ij u_kl = u_kl u_ij` for `(i,k), (j,l) ∉ E`, `i != k`, `j != l`, with
/// `s` the common neighbor of `i, k` and `t` the common neighbor of `j, l`.
fn non_edge_block(
    g: &Graph,
    comm: &BTreeMap<Quad, StepId>,
    (i, j, k, l): Quad,
) -> Result<Block, ProofError> {
    let s = unique_common_neighbor(g, i, k)?;
    let t = unique_common_neighbor(g, j, l)?;
    let certified = |q: Quad| -> Result<RelationInstance, ProofError> {
        let id = *comm
            .get(&q)
            .ok_or_else(|| ProofError::Internal(format!("no certified commutation for {q:?}")))?;
        Ok(RelationInstance::Comm {
            i: q.0,
            j: q.1,
            k: q.2,
            l: q.3,
            certified_by: id,
        })
    };
    let w = Poly::word;
    let mut log = ProofLog::new();
    let target = w(&[(i, j), (k, l)]);

    // u_ij u_kl = u_ij u_st u_kl
    let step1 = log.expand(g, target.clone(), 1, s, Side::Row)?;
    log.expect_claim(step1, &target, &w(&[(i, j), (s, t), (k, l)]))?;

    // u_ij u_kl = Σ_{p ∈ N(t)} u_ij u_st u_kl u_ip
    let swap = log.apply(g, w(&[(i, j), (s, t), (k, l)]), certified((s, t, k, l))?, 1)?;
    let moved = log.substitute(step1, swap, false)?;
    let tail = log.expand(g, w(&[(i, j), (k, l), (s, t)]), 3, i, Side::Row)?;
    let expanded = log.substitute(moved, tail, false)?;
    let tail_rhs = log.step(tail).rhs.clone();
    let swap_back = log.apply(g, tail_rhs, certified((k, l, s, t))?, 1)?;
    let step2 = log.substitute(expanded, swap_back, false)?;

    // the p = l term dies by column orthogonality
    let col = log.reduce(w(&[(i, j), (s, t), (k, l), (i, l)]), Poly::zero());
    let mut cur = log.substitute(step2, col, false)?;

    // remaining neighbors q of t: u_ij u_st u_kl u_iq = u_ij u_st u_iq = u_st u_ij u_iq = 0
    for &q in g.neighbors(t).iter().filter(|&&q| q != j && q != l) {
        let short = w(&[(i, j), (s, t), (i, q)]);
        let long = w(&[(i, j), (s, t), (k, l), (i, q)]);
        let via_j = w(&[(i, j), (s, t), (k, j), (i, q)]);
        let ins = log.expand(g, short.clone(), 2, k, Side::Row)?;
        log.expect_claim(ins, &short, &(&via_j + &long))?;
        let swap_j = log.apply(g, via_j, certified((s, t, k, j))?, 1)?;
        let kill_j = log.reduce(w(&[(i, j), (k, j), (s, t), (i, q)]), Poly::zero());
        let partial = log.substitute(ins, swap_j, false)?;
        let short_eq_long = log.substitute(partial, kill_j, false)?;
        log.expect_claim(short_eq_long, &short, &long)?;
        let swap_front = log.apply(g, short, certified((i, j, s, t))?, 0)?;
        let kill_front = log.reduce(w(&[(s, t), (i, j), (i, q)]), Poly::zero());
        let a = log.substitute(cur, short_eq_long, true)?;
        let b = log.substitute(a, swap_front, false)?;
        cur = log.substitute(b, kill_front, false)?;
    }
    log.expect_claim(cur, &target, &w(&[(i, j), (s, t), (k, l), (i, j)]))?;

    // undo the insertion of step 1: u_ij u_kl = u_ij u_kl u_ij
    let step4 = log.substitute(cur, step1, true)?;
    log.expect_claim(step4, &target, &w(&[(i, j), (k, l), (i, j)]))?;
    let done = lemma_com(&mut log, step4)?;
    Ok(Block::new(
        log,
        ConclusionKind::Commutes,
        (i, j, k, l),
        done,
    ))
}

/// Quadruples not covered by the edge/edge argument: mixed adjacency and degenerate
/// index coincidences are settled by local reduction alone.
fn direct_block(g: &Graph, comm: &BTreeMap<Quad, StepId>, quad: Quad) -> Result<Block, ProofError> {
    let (i, j, k, l) = quad;
    let product = Poly::word(&[(i, j), (k, l)]);
    let (ik, jl) = (g.is_adjacent(i, k), g.is_adjacent(j, l));
    if ik != jl || (i == k) != (j == l) {
        let mut log = ProofLog::new();
        let id = log.reduce(product, Poly::zero());
        return Ok(Block::new(log, ConclusionKind::ZeroProduct, quad, id));
    }
    if i == k && j == l {
        let mut log = ProofLog::new();
        let id = log.reduce(product.clone(), product);
        return Ok(Block::new(log, ConclusionKind::Commutes, quad, id));
    }
    non_edge_block(g, comm, quad)
}

fn assemble(blocks: Vec<Block>, steps: &mut Vec<ProofStep>, conclusions: &mut Vec<Conclusion>) {
    for block in blocks {
        let offset = steps.len();
        steps.extend(block.steps.into_iter().map(|s| s.shifted(offset)));
        let mut c = block.conclusion;
        c.step += offset;
        conclusions.push(c);
    }
}

fn require_conditions(g: &Graph) -> Result<usize, ProofError> {
    let report = check_moore_conditions(g);
    match (report.holds, report.k, report.failure) {
        (true, Some(k), _) => Ok(k),
        (_, _, Some(failure)) => Err(ProofError::ConditionsNotMet(failure)),
        _ => unreachable!("a failing report carries its reason"),
    }
}

fn qa5_parts(g: &Graph) -> Result<(Vec<ProofStep>, Vec<Conclusion>), ProofError> {
    let blocks = edge_quadruples(g)
        .into_par_iter()
        .map(|q| qa5_block(g, q))
        .collect::<Result<Vec<_>, _>>()?;
    let (mut steps, mut conclusions) = (Vec::new(), Vec::new());
    assemble(blocks, &mut steps, &mut conclusions);
    Ok((steps, conclusions))
}

/// Certificate that generators on edge pairs commute, for graphs satisfying the
/// lambda = 0, mu = 1 hypotheses.
pub fn derive_qa5(g: &Graph) -> Result<Certificate, ProofError> {
    require_conditions(g)?;
    let (steps, conclusions) = qa5_parts(g)?;
    Ok(Certificate {
        version: CERTIFICATE_VERSION,
        graph_digest: g.digest(),
        n: g.n(),
        scope: Scope::EdgePairs,
        steps,
        conclusions,
    })
}

/// Largest degree the non-edge argument supports: beyond it, `t` has two or more
/// neighbors besides `j` and `l`, and the cross terms `u_kq' u_iq` have no relation
/// that kills them.
pub const MAX_SUPPORTED_DEGREE: usize = 3;

/// Certificate classifying every ordered generator pair as vanishing or commuting.
pub fn prove_no_quantum_symmetry(g: &Graph) -> Result<Certificate, ProofError> {
    let k = require_conditions(g)?;
    if k > MAX_SUPPORTED_DEGREE {
        return Err(ProofError::UnsupportedDegree { k });
    }
    let (mut steps, mut conclusions) = qa5_parts(g)?;
    let comm: BTreeMap<Quad, StepId> = conclusions
        .iter()
        .map(|c| (c.quadruple(), c.step))
        .collect();

    let n = g.n();
    let rest: Vec<Quad> = (1..=n)
        .flat_map(|i| {
            (1..=n).flat_map(move |j| (1..=n).flat_map(move |k| (1..=n).map(move |l| (i, j, k, l))))
        })
        .filter(|&(i, j, k, l)| !(g.is_adjacent(i, k) && g.is_adjacent(j, l)))
        .collect();
    let blocks = rest
        .into_par_iter()
        .map(|q| direct_block(g, &comm, q))
        .collect::<Result<Vec<_>, _>>()?;
    assemble(blocks, &mut steps, &mut conclusions);
    conclusions.sort_by_key(Conclusion::quadruple);

    Ok(Certificate {
        version: CERTIFICATE_VERSION,
        graph_digest: g.digest(),
        n,
        scope: Scope::AllPairs,
        steps,
        conclusions,
    })
}
