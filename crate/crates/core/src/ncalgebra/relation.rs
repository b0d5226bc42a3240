use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{Poly, Word};
use super::rewrite::rewrite_at;
use super::AlgebraError;
use crate::graph::Graph;

/// An index-instantiated defining relation of the quantum automorphism algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelationInstance {
    /// `u_ij u_ik = 0`, `j != k`
    RowOrth { i: usize, j: usize, k: usize },
    /// `u_ji u_ki = 0`, `j != k`
    ColOrth { j: usize, k: usize, i: usize },
    /// `u_ij u_ij = u_ij`
    Idem { i: usize, j: usize },
    /// `u_ij* = u_ij`
    SelfAdj { i: usize, j: usize },
    /// `Σ_l u_il = 1`
    RowSum { i: usize },
    /// `Σ_l u_li = 1`
    ColSum { i: usize },
    /// `u_ji u_lk = u_lk u_ji = 0` for `(i,k) ∉ E`, `(j,l) ∈ E`
    VanishA {
        j: usize,
        i: usize,
        l: usize,
        k: usize,
    },
    /// `u_ij u_kl = u_kl u_ij = 0` for `(i,k) ∉ E`, `(j,l) ∈ E`
    VanishB {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
    },
    /// `u_ij u_kl = u_kl u_ij` for `(i,k), (j,l) ∈ E`, usable only with the id of the
    /// earlier certificate step that established it.
    Comm {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        certified_by: usize,
    },
}

impl RelationInstance {
    fn indices(&self) -> Vec<usize> {
        use RelationInstance::*;
        match *self {
            RowOrth { i, j, k } | ColOrth { j, k, i } => vec![i, j, k],
            Idem { i, j } | SelfAdj { i, j } => vec![i, j],
            RowSum { i } | ColSum { i } => vec![i],
            VanishA { j, i, l, k } | VanishB { i, j, k, l } | Comm { i, j, k, l, .. } => {
                vec![i, j, k, l]
            }
        }
    }

    /// Checks index ranges, distinctness and adjacency side conditions against `g`.
    /// The certification of `Comm` is checked by whoever holds the certificate.
    pub fn validate(&self, g: &Graph) -> Result<(), AlgebraError> {
        use RelationInstance::*;
        for index in self.indices() {
            if !g.contains_vertex(index) {
                return Err(AlgebraError::IndexOutOfRange { index, n: g.n() });
            }
        }
        let side = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(AlgebraError::SideCondition(format!("{self}: {what}")))
            }
        };
        match *self {
            RowOrth { j, k, .. } | ColOrth { j, k, .. } => side(j != k, "indices j, k must differ"),
            Idem { .. } | SelfAdj { .. } | RowSum { .. } | ColSum { .. } => Ok(()),
            VanishA { j, i, l, k } | VanishB { i, j, k, l } => side(
                !g.is_adjacent(i, k) && g.is_adjacent(j, l),
                "requires (i,k) not an edge and (j,l) an edge",
            ),
            Comm { i, j, k, l, .. } => side(
                g.is_adjacent(i, k) && g.is_adjacent(j, l),
                "requires (i,k) and (j,l) to be edges",
            ),
        }
    }

    /// The relation as equations `lhs = rhs`.
    pub fn equations(&self, n: usize) -> Vec<(Poly, Poly)> {
        use RelationInstance::*;
        let w = |pairs: &[(usize, usize)]| Poly::word(pairs);
        match *self {
            RowOrth { i, j, k } => vec![(w(&[(i, j), (i, k)]), Poly::zero())],
            ColOrth { j, k, i } => vec![(w(&[(j, i), (k, i)]), Poly::zero())],
            Idem { i, j } => vec![(w(&[(i, j), (i, j)]), Poly::gen(i, j))],
            SelfAdj { i, j } => vec![(Poly::gen(i, j).star(), Poly::gen(i, j))],
            RowSum { i } => vec![(
                (1..=n).fold(Poly::zero(), |acc, l| &acc + &Poly::gen(i, l)),
                Poly::one(),
            )],
            ColSum { i } => vec![(
                (1..=n).fold(Poly::zero(), |acc, l| &acc + &Poly::gen(l, i)),
                Poly::one(),
            )],
            VanishA { j, i, l, k } => vec![
                (w(&[(j, i), (l, k)]), Poly::zero()),
                (w(&[(l, k), (j, i)]), Poly::zero()),
            ],
            VanishB { i, j, k, l } => vec![
                (w(&[(i, j), (k, l)]), Poly::zero()),
                (w(&[(k, l), (i, j)]), Poly::zero()),
            ],
            Comm { i, j, k, l, .. } => vec![(w(&[(i, j), (k, l)]), w(&[(k, l), (i, j)]))],
        }
    }

    /// Word rewrite rules `pattern -> replacement`. Unit sums and self-adjointness are
    /// not word rewrites.
    pub fn rewrite_rules(&self) -> Vec<(Word, Poly)> {
        match self {
            RelationInstance::SelfAdj { .. }
            | RelationInstance::RowSum { .. }
            | RelationInstance::ColSum { .. } => Vec::new(),
            _ => self
                .equations(0)
                .into_iter()
                .map(|(lhs, rhs)| {
                    let word = lhs.as_monic_word().expect("monomial pattern").clone();
                    (word, rhs)
                })
                .collect(),
        }
    }

    pub fn certified_by(&self) -> Option<usize> {
        match *self {
            RelationInstance::Comm { certified_by, .. } => Some(certified_by),
            _ => None,
        }
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RelationInstance::*;
        match *self {
            RowOrth { i, j, k } => write!(f, "RowOrth({i};{j},{k})"),
            ColOrth { j, k, i } => write!(f, "ColOrth({j},{k};{i})"),
            Idem { i, j } => write!(f, "Idem({i},{j})"),
            SelfAdj { i, j } => write!(f, "SelfAdj({i},{j})"),
            RowSum { i } => write!(f, "RowSum({i})"),
            ColSum { i } => write!(f, "ColSum({i})"),
            VanishA { j, i, l, k } => write!(f, "VanishA({j},{i},{l},{k})"),
            VanishB { i, j, k, l } => write!(f, "VanishB({i},{j},{k},{l})"),
            Comm {
                i,
                j,
                k,
                l,
                certified_by,
            } => {
                write!(f, "Comm({i},{j},{k},{l})@{certified_by}")
            }
        }
    }
}

/// Validates `relation` against `g` and rewrites `p` with it at `position`.
pub fn apply_relation(
    g: &Graph,
    p: &Poly,
    relation: &RelationInstance,
    position: usize,
) -> Result<Poly, AlgebraError> {
    relation.validate(g)?;
    let rules = relation.rewrite_rules();
    if rules.is_empty() {
        return Err(AlgebraError::NotRewritable(relation.to_string()));
    }
    rewrite_at(p, position, &rules).ok_or(AlgebraError::NoMatch {
        relation: relation.to_string(),
        position,
    })
}

/// Every relation instance from the word-level families that is valid for `g`
/// (all but `Comm`, which needs a certificate).
pub fn all_instances(g: &Graph) -> Vec<RelationInstance> {
    use RelationInstance::*;
    let n = g.n();
    let mut out = Vec::new();
    for i in 1..=n {
        out.push(RowSum { i });
        out.push(ColSum { i });
        for j in 1..=n {
            out.push(Idem { i, j });
            out.push(SelfAdj { i, j });
            for k in 1..=n {
                if j != k {
                    out.push(RowOrth { i, j, k });
                    out.push(ColOrth { j, k, i });
                }
                for l in 1..=n {
                    if !g.is_adjacent(i, k) && g.is_adjacent(j, l) {
                        out.push(VanishA { j, i, l, k });
                        out.push(VanishB { i, j, k, l });
                    }
                }
            }
        }
    }
    out
}
