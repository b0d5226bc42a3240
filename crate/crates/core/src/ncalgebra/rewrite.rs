use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{Coeff, Gen, Poly, Word};
use super::AlgebraError;
use crate::autgroup::Permutation;
use crate::graph::Graph;

/// Local rules on a pair of adjacent factors, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairRule {
    /// `u_ij u_ij = u_ij`
    Idem,
    /// `u_ij u_ik = 0`, `j != k`
    RowOrth,
    /// `u_ji u_ki = 0`, `j != k`
    ColOrth,
    /// rows adjacent, columns not: `u_ji u_lk = 0` with `(j,l) ∈ E`, `(i,k) ∉ E`
    VanishA,
    /// rows not adjacent, columns adjacent: `u_ij u_kl = 0` with `(i,k) ∉ E`, `(j,l) ∈ E`
    VanishB,
}

pub fn pair_rule(g: &Graph, a: Gen, b: Gen) -> Option<PairRule> {
    if a == b {
        Some(PairRule::Idem)
    } else if a.row == b.row {
        Some(PairRule::RowOrth)
    } else if a.col == b.col {
        Some(PairRule::ColOrth)
    } else {
        let rows = g.is_adjacent(a.row, b.row);
        let cols = g.is_adjacent(a.col, b.col);
        match (rows, cols) {
            (true, false) => Some(PairRule::VanishA),
            (false, true) => Some(PairRule::VanishB),
            _ => None,
        }
    }
}

/// Leftmost-first reduction of one word; `None` if it vanishes. The kept prefix is
/// always irreducible, so only the pair formed with the incoming factor can fire.
pub fn reduce_word(g: &Graph, w: &Word) -> Option<Word> {
    let mut out: Vec<Gen> = Vec::with_capacity(w.len());
    for &f in w.factors() {
        if let Some(&top) = out.last() {
            match pair_rule(g, top, f) {
                Some(PairRule::Idem) => continue,
                Some(_) => return None,
                None => {}
            }
        }
        out.push(f);
    }
    Some(Word::new(out))
}

/// Applies idempotence, row/column orthogonality and the two adjacency-vanishing
/// families to a fixpoint. Sums of rows or columns are never used here.
pub fn local_reduce(g: &Graph, p: &Poly) -> Poly {
    Poly::from_terms(
        p.terms()
            .filter_map(|(w, c)| reduce_word(g, w).map(|r| (r, c.clone()))),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Row,
    Column,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Row => "row",
            Side::Column => "column",
        })
    }
}

/// Inserts `Σ_a u[index, a]` (row) or `Σ_a u[a, index]` (column) at `position` in
/// every word of `p`.
pub fn expand_unity(
    p: &Poly,
    position: usize,
    index: usize,
    side: Side,
    n: usize,
) -> Result<Poly, AlgebraError> {
    if index == 0 || index > n {
        return Err(AlgebraError::IndexOutOfRange { index, n });
    }
    let mut out = Poly::zero();
    for (w, c) in p.terms() {
        if position > w.len() {
            return Err(AlgebraError::InvalidPosition {
                position,
                len: w.len(),
            });
        }
        let (left, right) = w.factors().split_at(position);
        for a in 1..=n {
            let inserted = match side {
                Side::Row => Gen::new(index, a),
                Side::Column => Gen::new(a, index),
            };
            let mut factors = Vec::with_capacity(w.len() + 1);
            factors.extend_from_slice(left);
            factors.push(inserted);
            factors.extend_from_slice(right);
            out.add_term(Word::new(factors), c.clone());
        }
    }
    Ok(out)
}

/// Replaces the first occurrence of `pattern` in each term by `replacement`. Terms
/// without an occurrence are kept. `None` if no term contains the pattern.
pub fn replace_first(p: &Poly, pattern: &Word, replacement: &Poly) -> Option<Poly> {
    let mut out = Poly::zero();
    let mut hit = false;
    for (w, c) in p.terms() {
        match w.find(pattern) {
            Some(at) => {
                hit = true;
                let left = Word::new(w.factors()[..at].to_vec());
                let right = Word::new(w.factors()[at + pattern.len()..].to_vec());
                for (rw, rc) in replacement.sandwich(&left, &right).terms() {
                    out.add_term(rw.clone(), c * rc);
                }
            }
            None => out.add_term(w.clone(), c.clone()),
        }
    }
    hit.then_some(out)
}

/// Rewrites, in every term, the factor starting at `position` with the first rule
/// whose pattern matches there. `None` if no term matched.
pub fn rewrite_at(p: &Poly, position: usize, rules: &[(Word, Poly)]) -> Option<Poly> {
    let mut out = Poly::zero();
    let mut hit = false;
    for (w, c) in p.terms() {
        match rules.iter().find(|(pat, _)| w.matches_at(pat, position)) {
            Some((pat, rep)) => {
                hit = true;
                let left = Word::new(w.factors()[..position].to_vec());
                let right = Word::new(w.factors()[position + pat.len()..].to_vec());
                for (rw, rc) in rep.sandwich(&left, &right).terms() {
                    out.add_term(rw.clone(), c * rc);
                }
            }
            None => out.add_term(w.clone(), c.clone()),
        }
    }
    hit.then_some(out)
}

/// Evaluates `p` in the permutation representation `u_ij ↦ [i = σ(j)]`.
pub fn evaluate_perm(g: &Graph, sigma: &Permutation, p: &Poly) -> Result<Coeff, AlgebraError> {
    if sigma.len() != g.n() {
        return Err(AlgebraError::LengthMismatch {
            expected: g.n(),
            got: sigma.len(),
        });
    }
    let mut total = Coeff::default();
    for (w, c) in p.terms() {
        let mut value = true;
        for f in w.factors() {
            if f.row == 0 || f.row > g.n() || f.col == 0 || f.col > g.n() {
                return Err(AlgebraError::IndexOutOfRange {
                    index: f.row.max(f.col),
                    n: g.n(),
                });
            }
            value &= f.row == sigma.apply(f.col);
        }
        if value {
            total += c;
        }
    }
    Ok(total)
}
