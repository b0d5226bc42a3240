//! Classical automorphism groups by backtracking over partial vertex maps.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{subsets, Graph};

/// Default vertex bound for [`automorphism_group`].
pub const DEFAULT_MAX_VERTICES: usize = 16;

/// Groups larger than this are described by order and generators only.
pub const ELEMENT_LISTING_LIMIT: u64 = 100_000;
const ELEMENT_LISTING_MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("permutation has length {got}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("not a bijection of 1..={0}")]
    NotBijection(usize),
    #[error("graph has {n} vertices, search bound is {bound}")]
    BoundExceeded { n: usize, bound: usize },
    #[error("expected a graph on {expected} vertices, got {got}")]
    WrongVertexCount { expected: usize, got: usize },
}

/// A bijection of `{1..n}`; `images[v - 1] = σ(v)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self, AutError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(AutError::NotBijection(n));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&x| self.images[x - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x - 1] = i + 1;
        }
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

pub fn is_automorphism(g: &Graph, sigma: &Permutation) -> Result<bool, AutError> {
    if sigma.len() != g.n() {
        return Err(AutError::LengthMismatch {
            expected: g.n(),
            got: sigma.len(),
        });
    }
    Ok((1..=g.n()).all(|u| {
        (u..=g.n()).all(|v| g.is_adjacent(u, v) == g.is_adjacent(sigma.apply(u), sigma.apply(v)))
    }))
}

#[derive(Debug, Clone)]
pub struct AutGroup {
    pub order: u64,
    pub generators: Vec<Permutation>,
    /// Sorted lexicographically by image sequence; present for small groups on at most
    /// 12 vertices.
    pub elements: Option<Vec<Permutation>>,
}

impl AutGroup {
    pub fn contains_identity(&self) -> bool {
        self.elements
            .as_ref()
            .is_none_or(|els| els.iter().any(Permutation::is_identity))
    }
}

/// Color refinement: start from degrees, then repeatedly split by the multiset of
/// neighbor colors. Automorphisms preserve the resulting colors.
fn refine_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = (1..=n).map(|v| g.neighbors(v).len()).collect();
    let mut classes = usize::MAX;
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (1..=n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w - 1]).collect();
                nb.sort_unstable();
                (colors[v - 1], nb)
            })
            .collect();
        let mut ids = BTreeMap::new();
        for s in &signatures {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        let next: Vec<usize> = signatures.iter().map(|s| ids[s]).collect();
        if ids.len() == classes {
            return next;
        }
        classes = ids.len();
        colors = next;
    }
}

/// Backtracking over maps from `source` vertices to `target` vertices, assigning
/// source vertices in ascending order and trying targets in ascending order.
struct Search<'a> {
    source: &'a Graph,
    target: &'a Graph,
    source_colors: Vec<usize>,
    target_colors: Vec<usize>,
}

impl Search<'_> {
    fn consistent(&self, map: &[usize], v: usize, w: usize) -> bool {
        if self.source_colors[v - 1] != self.target_colors[w - 1] {
            return false;
        }
        (1..=self.source.n()).all(|u| {
            let image = map[u - 1];
            image == 0 || self.source.is_adjacent(u, v) == self.target.is_adjacent(image, w)
        })
    }

    /// Calls `leaf` on every completion of `map` (0 marks unmapped). Returns `true` as
    /// soon as `leaf` asks to stop.
    fn run(
        &self,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        leaf: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let Some(v) = (1..=self.source.n()).find(|&v| map[v - 1] == 0) else {
            return leaf(map);
        };
        for w in 1..=self.target.n() {
            if used[w - 1] || !self.consistent(map, v, w) {
                continue;
            }
            map[v - 1] = w;
            used[w - 1] = true;
            let stop = self.run(map, used, leaf);
            map[v - 1] = 0;
            used[w - 1] = false;
            if stop {
                return true;
            }
        }
        false
    }

    fn first_extension(&self, prefix: &[(usize, usize)]) -> Option<Permutation> {
        let n = self.source.n();
        let mut map = vec![0; n];
        let mut used = vec![false; n];
        for &(v, w) in prefix {
            if used[w - 1] || !self.consistent(&map, v, w) {
                return None;
            }
            map[v - 1] = w;
            used[w - 1] = true;
        }
        let mut found = None;
        self.run(&mut map, &mut used, &mut |m| {
            found = Some(Permutation { images: m.to_vec() });
            true
        });
        found
    }
}

fn closure(generators: &[Permutation], n: usize) -> HashSet<Permutation> {
    let mut set = HashSet::from([Permutation::identity(n)]);
    let mut frontier = vec![Permutation::identity(n)];
    while let Some(p) = frontier.pop() {
        for g in generators {
            let q = g.compose(&p);
            if set.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    set
}

pub fn automorphism_group(g: &Graph) -> Result<AutGroup, AutError> {
    automorphism_group_bounded(g, DEFAULT_MAX_VERTICES)
}

/// Order via orbit-stabilizer along the base `1, 2, ..., n`: at level `t` every
/// candidate image of `t` (with `1..t` fixed) is tested for an extension to a full
/// automorphism. The extensions found form a transversal, and together they generate
/// the group.
pub fn automorphism_group_bounded(g: &Graph, max_vertices: usize) -> Result<AutGroup, AutError> {
    let n = g.n();
    if n > max_vertices {
        return Err(AutError::BoundExceeded {
            n,
            bound: max_vertices,
        });
    }
    let colors = refine_colors(g);
    let search = Search {
        source: g,
        target: g,
        source_colors: colors.clone(),
        target_colors: colors,
    };

    let mut order: u64 = 1;
    let mut transversal = Vec::new();
    for t in 1..=n {
        let mut prefix: Vec<(usize, usize)> = (1..t).map(|v| (v, v)).collect();
        let mut orbit = 1u64;
        for w in t + 1..=n {
            prefix.push((t, w));
            if let Some(p) = search.first_extension(&prefix) {
                orbit += 1;
                transversal.push(p);
            }
            prefix.pop();
        }
        order *= orbit;
    }

    let small = order <= ELEMENT_LISTING_LIMIT;
    let generators = if small {
        // deepest stabilizer levels first, keep an element only if it enlarges the group
        let mut kept: Vec<Permutation> = Vec::new();
        let mut group = closure(&kept, n);
        for p in transversal.iter().rev() {
            if !group.contains(p) {
                kept.push(p.clone());
                group = closure(&kept, n);
            }
        }
        debug_assert_eq!(group.len() as u64, order);
        kept
    } else {
        transversal
    };

    let elements = (small && n <= ELEMENT_LISTING_MAX_N).then(|| {
        let mut all = Vec::new();
        let mut map = vec![0; n];
        let mut used = vec![false; n];
        search.run(&mut map, &mut used, &mut |m| {
            all.push(Permutation { images: m.to_vec() });
            false
        });
        all.sort();
        all
    });
    if let Some(els) = &elements {
        debug_assert_eq!(els.len() as u64, order);
    }

    Ok(AutGroup {
        order,
        generators,
        elements,
    })
}

/// A relabeling `σ` with `(u, v) ∈ E(g)` iff `(σ(u), σ(v)) ∈ E(h)`, if one exists.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Option<Permutation> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return None;
    }
    let degrees = |x: &Graph| (1..=x.n()).map(|v| x.neighbors(v).len()).collect();
    Search {
        source: g,
        target: h,
        source_colors: degrees(g),
        target_colors: degrees(h),
    }
    .first_extension(&[])
}

/// All permutations of `1..=m` in lexicographic order.
fn symmetric_group(m: usize) -> Vec<Vec<usize>> {
    fn go(m: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in 1..=m {
            if !used[x - 1] {
                used[x - 1] = true;
                cur.push(x);
                go(m, cur, used, out);
                cur.pop();
                used[x - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(m, &mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Permutation of the 2-subsets of `{1..5}` (lexicographic labels) induced by `pi`.
pub fn induced_on_pairs(pi: &[usize]) -> Permutation {
    let labels = subsets(pi.len(), 2);
    let images = labels
        .iter()
        .map(|pair| {
            let mut image = [pi[pair[0] - 1], pi[pair[1] - 1]];
            image.sort_unstable();
            labels.iter().position(|l| l[..] == image).unwrap() + 1
        })
        .collect();
    Permutation { images }
}

/// Checks that the 120 maps induced by `S5` on 2-subsets are distinct automorphisms of
/// `g` and that they exhaust its automorphism group.
pub fn verify_s5_action(g: &Graph) -> Result<bool, AutError> {
    if g.n() != 10 {
        return Err(AutError::WrongVertexCount {
            expected: 10,
            got: g.n(),
        });
    }
    let mut seen = HashSet::new();
    for pi in symmetric_group(5) {
        let sigma = induced_on_pairs(&pi);
        if !is_automorphism(g, &sigma)? || !seen.insert(sigma) {
            return Ok(false);
        }
    }
    Ok(seen.len() == 120 && automorphism_group(g)?.order == 120)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complement, complete, complete_bipartite, cycle, empty, petersen};

    fn brute_force_order(g: &Graph) -> usize {
        symmetric_group(g.n())
            .into_iter()
            .filter(|p| is_automorphism(g, &Permutation::from_images(p.clone()).unwrap()).unwrap())
            .count()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_images(vec![2, 3, 1]).unwrap();
        assert_eq!(p.to_string(), "2 3 1");
        assert!(p.compose(&p.inverse()).is_identity());
        assert_eq!(p.compose(&p).images(), &[3, 1, 2]);
        assert!(Permutation::from_images(vec![1, 1, 2]).is_err());
        assert!(Permutation::from_images(vec![0, 1]).is_err());
    }

    #[test]
    fn automorphism_checks() {
        let p = petersen();
        assert!(is_automorphism(&p, &Permutation::identity(10)).unwrap());
        assert!(is_automorphism(&p, &induced_on_pairs(&[2, 1, 3, 4, 5])).unwrap());
        let c5 = cycle(5).unwrap();
        let swap = Permutation::from_images(vec![2, 1, 3, 4, 5]).unwrap();
        assert!(!is_automorphism(&c5, &swap).unwrap());
        assert_eq!(
            is_automorphism(&c5, &Permutation::identity(4)),
            Err(AutError::LengthMismatch {
                expected: 5,
                got: 4
            })
        );
    }

    #[test]
    fn group_orders() {
        let c5 = cycle(5).unwrap();
        assert_eq!(brute_force_order(&c5), 10);
        assert_eq!(automorphism_group(&c5).unwrap().order, 10);
        assert_eq!(automorphism_group(&complete(4).unwrap()).unwrap().order, 24);
        assert_eq!(automorphism_group(&petersen()).unwrap().order, 120);
        assert_eq!(automorphism_group(&empty(5).unwrap()).unwrap().order, 120);
        let k33 = complete_bipartite(3, 3).unwrap();
        assert_eq!(
            automorphism_group(&k33).unwrap().order,
            brute_force_order(&k33) as u64
        );
        let path = Graph::from_edge_list(4, &[(1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(automorphism_group(&path).unwrap().order, 2);
    }

    #[test]
    fn large_groups_without_listing() {
        let k16 = complete(16).unwrap();
        let g = automorphism_group(&k16).unwrap();
        assert_eq!(g.order, 20_922_789_888_000);
        assert!(g.elements.is_none());
        assert!(matches!(
            automorphism_group(&complete(17).unwrap()),
            Err(AutError::BoundExceeded { n: 17, bound: 16 })
        ));
    }

    #[test]
    fn listing_and_generators() {
        let g = automorphism_group(&petersen()).unwrap();
        let els = g.elements.as_ref().unwrap();
        assert_eq!(els.len(), 120);
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert!(g.contains_identity());
        assert_eq!(closure(&g.generators, 10).len(), 120);
        assert!(g.generators.len() <= 4);
        for s in &g.generators {
            assert!(is_automorphism(&petersen(), s).unwrap());
        }
    }

    #[test]
    fn s5_action() {
        assert!(verify_s5_action(&petersen()).unwrap());
        assert!(verify_s5_action(&complement(&petersen())).unwrap());
        assert_eq!(
            verify_s5_action(&cycle(5).unwrap()),
            Err(AutError::WrongVertexCount {
                expected: 10,
                got: 5
            })
        );
    }

    #[test]
    fn isomorphism_with_drawing() {
        // outer pentagon 1..5, spokes, inner pentagram 6..10
        let drawn = Graph::from_edge_list(
            10,
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 1),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 10),
                (6, 8),
                (8, 10),
                (10, 7),
                (7, 9),
                (9, 6),
            ],
        )
        .unwrap();
        let sigma = find_isomorphism(&drawn, &petersen()).unwrap();
        assert_eq!(drawn.relabel(sigma.images()).unwrap(), petersen());
        assert!(find_isomorphism(&cycle(5).unwrap(), &complete(5).unwrap()).is_none());
        let c10 = cycle(10).unwrap();
        assert!(find_isomorphism(&c10, &petersen()).is_none());
    }
}
