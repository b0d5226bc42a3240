//! Finite simple undirected graphs and the structural hypotheses the prover relies on.
//!
//! Vertices are labeled `1..=n`. Every constructor returns a graph with a symmetric
//! 0/1 adjacency matrix and an empty diagonal.

use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    neighbors: Vec<Vec<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    fn from_adjacency(n: usize, adj: Vec<bool>) -> Self {
        let neighbors = (0..n)
            .map(|i| (0..n).filter(|&j| adj[i * n + j]).map(|j| j + 1).collect())
            .collect();
        Graph { n, adj, neighbors }
    }

    /// Builds a graph from 1-based vertex pairs. Loops and repeated edges are rejected.
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![false; n * n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            let (a, b) = (u - 1, v - 1);
            if adj[a * n + b] {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[a * n + b] = true;
            adj[b * n + a] = true;
        }
        Ok(Self::from_adjacency(n, adj))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&x| x).count() / 2
    }

    /// Adjacency test on 1-based vertices. Out-of-range vertices are never adjacent.
    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        if u == 0 || v == 0 || u > self.n || v > self.n {
            return false;
        }
        self.adj[(u - 1) * self.n + (v - 1)]
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        (1..=self.n).contains(&v)
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    /// Sorted neighbor list of `v`. Panics if `v` is not a vertex.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v - 1]
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        Ok(self.neighbors[v - 1].len())
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<Vec<usize>, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::SameVertex(u));
        }
        Ok(self
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&w| self.is_adjacent(v, w))
            .collect())
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Common degree if the graph is regular. The graph with no vertices is not regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.neighbors.first()?.len();
        self.neighbors.iter().all(|nb| nb.len() == k).then_some(k)
    }

    /// Returns the image of this graph under `images`, where `images[v - 1]` is the new
    /// label of vertex `v`.
    pub fn relabel(&self, images: &[usize]) -> Result<Graph, GraphError> {
        if images.len() != self.n {
            return Err(GraphError::InvalidParameter(format!(
                "relabeling has length {} but graph has {} vertices",
                images.len(),
                self.n
            )));
        }
        let edges: Vec<_> = self
            .edges()
            .map(|(u, v)| (images[u - 1], images[v - 1]))
            .collect();
        let g = Graph::from_edge_list(self.n, &edges)?;
        if g.edge_count() != self.edge_count() {
            return Err(GraphError::InvalidParameter(
                "relabeling is not a bijection".into(),
            ));
        }
        Ok(g)
    }

    /// Canonical text form: `n m` followed by the edges `u v` with `u < v` in
    /// lexicographic order, one per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edge_count());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(GraphError::Parse {
                    line: line_no,
                    message: format!("expected two integers, found {:?}", line),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: line_no,
                    message: format!("not a non-negative integer: {s:?}"),
                })
            };
            let (a, b) = (parse(fields[0])?, parse(fields[1])?);
            match header {
                None => header = Some((a, b)),
                Some((n, m)) => {
                    if edges.len() == m {
                        return Err(GraphError::Parse {
                            line: line_no,
                            message: format!("more than the declared {m} edges"),
                        });
                    }
                    for w in [a, b] {
                        if w == 0 || w > n {
                            return Err(GraphError::Parse {
                                line: line_no,
                                message: format!("vertex {w} out of range 1..={n}"),
                            });
                        }
                    }
                    edges.push((a, b));
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(GraphError::Parse {
                line: last_line.max(1),
                message: "missing header line \"n m\"".into(),
            });
        };
        if edges.len() != m {
            return Err(GraphError::Parse {
                line: last_line.max(1),
                message: format!("declared {m} edges but found {}", edges.len()),
            });
        }
        Graph::from_edge_list(n, &edges)
    }

    /// Lowercase hex SHA-256 of [`Graph::to_text`].
    pub fn digest(&self) -> String {
        Sha256::digest(self.to_text().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

/// The `s`-element subsets of `{1..m}` in lexicographic order.
pub fn subsets(m: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for x in start..=m {
            cur.push(x);
            go(x + 1, m, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, s, &mut Vec::with_capacity(s), &mut out);
    out
}

/// Kneser graph K(m, s): `s`-subsets of `{1..m}` (lexicographic labels), adjacent iff disjoint.
pub fn kneser(m: usize, s: usize) -> Result<Graph, GraphError> {
    if s == 0 || m < 2 * s {
        return Err(GraphError::InvalidParameter(format!(
            "kneser({m},{s}) requires m >= 2s >= 2"
        )));
    }
    let labels = subsets(m, s);
    let mut edges = Vec::new();
    for (a, x) in labels.iter().enumerate() {
        for (b, y) in labels.iter().enumerate().skip(a + 1) {
            if x.iter().all(|v| !y.contains(v)) {
                edges.push((a + 1, b + 1));
            }
        }
    }
    Graph::from_edge_list(labels.len(), &edges)
}

/// The Petersen graph in its Kneser K(5,2) labeling.
pub fn petersen() -> Graph {
    kneser(5, 2).expect("K(5,2) parameters are valid")
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(format!(
            "cycle needs n >= 3, got {n}"
        )));
    }
    let edges: Vec<_> = (1..=n).map(|v| (v, v % n + 1)).collect();
    Graph::from_edge_list(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter(
            "complete graph needs n >= 1".into(),
        ));
    }
    Ok(complement(&Graph::from_adjacency(n, vec![false; n * n])))
}

pub fn empty(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter(
            "empty graph needs n >= 1".into(),
        ));
    }
    Ok(Graph::from_adjacency(n, vec![false; n * n]))
}

/// Complete bipartite graph with parts `1..=a` and `a+1..=a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, GraphError> {
    if a == 0 || b == 0 {
        return Err(GraphError::InvalidParameter(
            "both parts must be non-empty".into(),
        ));
    }
    let edges: Vec<_> = (1..=a)
        .flat_map(|u| (a + 1..=a + b).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(a + b, &edges)
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.n;
    let adj = (0..n * n)
        .map(|idx| idx / n != idx % n && !g.adj[idx])
        .collect();
    Graph::from_adjacency(n, adj)
}

/// Hoffman-Singleton graph (Robertson's pentagon/pentagram model).
///
/// Vertex `5h + j + 1` is `j` on pentagon `h`; vertex `25 + 5i + j + 1` is `j` on
/// pentagram `i`. Pentagon vertex `(h, j)` is joined to pentagram vertex `(i, hi + j)`.
pub fn hoffman_singleton() -> Graph {
    let p = |h: usize, j: usize| 5 * h + (j % 5) + 1;
    let q = |i: usize, j: usize| 25 + 5 * i + (j % 5) + 1;
    let mut edges = Vec::new();
    for h in 0..5 {
        for j in 0..5 {
            edges.push((p(h, j), p(h, j + 1)));
            edges.push((q(h, j), q(h, j + 2)));
            for i in 0..5 {
                edges.push((p(h, j), q(i, h * i + j)));
            }
        }
    }
    Graph::from_edge_list(50, &edges).expect("Robertson construction is simple")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SrgParams {
    pub n: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    /// `k(k - lambda - 1) = (n - k - 1) mu`
    pub fn is_consistent(&self) -> bool {
        let lhs = self.k as i64 * (self.k as i64 - self.lambda as i64 - 1);
        let rhs = (self.n as i64 - self.k as i64 - 1) * self.mu as i64;
        lhs == rhs
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "srg({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

fn distinct_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |u| (u + 1..=n).map(move |v| (u, v)))
}

fn common_count(g: &Graph, u: usize, v: usize) -> usize {
    g.neighbors(u)
        .iter()
        .filter(|&&w| g.is_adjacent(v, w))
        .count()
}

/// Strong-regularity parameters, or `None`. Complete and empty graphs have no
/// non-adjacent (resp. adjacent) pair to witness `mu` (resp. `lambda`) and are
/// reported as not strongly regular.
pub fn srg_params(g: &Graph) -> Option<SrgParams> {
    let k = g.regular_degree()?;
    let mut lambda = None;
    let mut mu = None;
    for (u, v) in distinct_pairs(g.n()) {
        let c = common_count(g, u, v);
        let slot = if g.is_adjacent(u, v) {
            &mut lambda
        } else {
            &mut mu
        };
        match *slot {
            None => *slot = Some(c),
            Some(prev) if prev != c => return None,
            Some(_) => {}
        }
    }
    Some(SrgParams {
        n: g.n(),
        k,
        lambda: lambda?,
        mu: mu?,
    })
}

/// Why a graph fails the lambda = 0, mu = 1 hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MooreFailure {
    NotRegular {
        u: usize,
        v: usize,
        deg_u: usize,
        deg_v: usize,
    },
    AdjacentCommonNeighbors {
        u: usize,
        v: usize,
        count: usize,
    },
    NonAdjacentCommonNeighbors {
        u: usize,
        v: usize,
        count: usize,
    },
    NoAdjacentPair,
    NoNonAdjacentPair,
}

impl MooreFailure {
    pub fn witness(&self) -> Option<(usize, usize)> {
        match *self {
            MooreFailure::NotRegular { u, v, .. }
            | MooreFailure::AdjacentCommonNeighbors { u, v, .. }
            | MooreFailure::NonAdjacentCommonNeighbors { u, v, .. } => Some((u, v)),
            MooreFailure::NoAdjacentPair | MooreFailure::NoNonAdjacentPair => None,
        }
    }
}

impl fmt::Display for MooreFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MooreFailure::NotRegular { u, v, deg_u, deg_v } => write!(
                f,
                "not regular: vertex {u} has degree {deg_u}, vertex {v} has degree {deg_v}"
            ),
            MooreFailure::AdjacentCommonNeighbors { u, v, count } => write!(
                f,
                "adjacent pair ({u},{v}) has {count} common neighbors (need 0)"
            ),
            MooreFailure::NonAdjacentCommonNeighbors { u, v, count } => write!(
                f,
                "non-adjacent pair ({u},{v}) has {count} common neighbors (need exactly 1)"
            ),
            MooreFailure::NoAdjacentPair => write!(f, "graph has no edges"),
            MooreFailure::NoNonAdjacentPair => write!(f, "graph has no non-adjacent pair"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreReport {
    pub holds: bool,
    pub k: Option<usize>,
    pub failure: Option<MooreFailure>,
}

impl MooreReport {
    pub fn witness(&self) -> Option<(usize, usize)> {
        self.failure.as_ref().and_then(MooreFailure::witness)
    }
}

/// Checks regularity, "adjacent pairs share no neighbor" and "distinct non-adjacent
/// pairs share exactly one neighbor". The first violated condition is reported with a
/// witnessing pair.
pub fn check_moore_conditions(g: &Graph) -> MooreReport {
    let fail = |k, failure| MooreReport {
        holds: false,
        k,
        failure: Some(failure),
    };
    let k = g.regular_degree();
    if k.is_none() {
        let deg_u = g.neighbors.first().map_or(0, Vec::len);
        if let Some(v) = (2..=g.n()).find(|&v| g.neighbors(v).len() != deg_u) {
            let deg_v = g.neighbors(v).len();
            return fail(
                None,
                MooreFailure::NotRegular {
                    u: 1,
                    v,
                    deg_u,
                    deg_v,
                },
            );
        }
        return fail(None, MooreFailure::NoAdjacentPair);
    }
    let mut seen_adjacent = false;
    let mut seen_non_adjacent = false;
    for (u, v) in distinct_pairs(g.n()) {
        if g.is_adjacent(u, v) {
            seen_adjacent = true;
            let count = common_count(g, u, v);
            if count != 0 {
                return fail(k, MooreFailure::AdjacentCommonNeighbors { u, v, count });
            }
        }
    }
    for (u, v) in distinct_pairs(g.n()) {
        if !g.is_adjacent(u, v) {
            seen_non_adjacent = true;
            let count = common_count(g, u, v);
            if count != 1 {
                return fail(k, MooreFailure::NonAdjacentCommonNeighbors { u, v, count });
            }
        }
    }
    if !seen_adjacent {
        return fail(k, MooreFailure::NoAdjacentPair);
    }
    if !seen_non_adjacent {
        return fail(k, MooreFailure::NoNonAdjacentPair);
    }
    MooreReport {
        holds: true,
        k,
        failure: None,
    }
}
