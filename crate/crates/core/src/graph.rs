//! Immutable simple undirected graphs and canonical edge sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{EdgeMask, VertexSet, MAX_VERTICES};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph on {0} vertices exceeds the {MAX_VERTICES}-vertex cap")]
    TooLarge(usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("({0}, {1}) is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("malformed edge token {0:?}")]
    BadEdgeToken(String),
}

/// An unordered vertex pair stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.u, e.v]
    }
}

impl From<[usize; 2]> for Edge {
    fn from(p: [usize; 2]) -> Self {
        Edge::new(p[0], p[1])
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.u, self.v)
    }
}

/// Canonical set of unordered pairs, kept sorted and deduplicated.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<Edge>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        pairs.into_iter().map(|(a, b)| Edge::new(a, b)).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.binary_search(e).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[Edge] {
        &self.0
    }

    pub fn insert(&mut self, e: Edge) {
        if let Err(pos) = self.0.binary_search(&e) {
            self.0.insert(pos, e);
        }
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        match self.0.binary_search(e) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn is_disjoint(&self, other: &EdgeSet) -> bool {
        self.0.iter().all(|e| !other.contains(e))
    }

    /// Vertices covered by the set.
    pub fn vertices(&self) -> VertexSet {
        self.0.iter().flat_map(|e| [e.u, e.v]).collect()
    }
}

impl FromIterator<Edge> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut v: Vec<Edge> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        EdgeSet(v)
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Parses `"0-1,3-4"`; whitespace around tokens is ignored.
impl FromStr for EdgeSet {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || GraphError::BadEdgeToken(tok.to_string());
            let (a, b) = tok.split_once('-').ok_or_else(bad)?;
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            out.push(Edge::new(a, b));
        }
        Ok(out.into_iter().collect())
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Adjacency is held as bit rows; `edges` lists every pair `(u, v)` with
/// `u < v` in lexicographic order and defines the edge indices used by the
/// solvers.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<Edge>,
    incident: Vec<Vec<(usize, usize)>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph, collapsing duplicate pairs.
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let mut adj = vec![VertexSet::new(); n];
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(adj: Vec<VertexSet>) -> Self {
        let n = adj.len();
        let mut edges = Vec::new();
        for (u, row) in adj.iter().enumerate() {
            edges.extend(row.iter().filter(|&v| v > u).map(|v| Edge { u, v }));
        }
        let mut incident = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            incident[e.u].push((e.v, id));
            incident[e.v].push((e.u, id));
        }
        for list in incident.iter_mut() {
            list.sort_unstable();
        }
        Graph {
            n,
            adj,
            edges,
            incident,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet(self.edges.clone())
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    pub fn adj(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// `(neighbor, edge index)` pairs sorted by neighbor.
    #[inline]
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incident[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.incident[v].iter().map(|&(w, _)| w)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// The common degree when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let k = self.degree(0);
        (0..self.n).all(|v| self.degree(v) == k).then_some(k)
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&Edge::new(u, v)).ok()
    }

    /// Edge indices of `set`, failing on the first pair that is not an edge.
    pub fn edge_ids(&self, set: &EdgeSet) -> Result<Vec<usize>, GraphError> {
        set.iter()
            .map(|e| self.edge_id(e.u, e.v).ok_or(GraphError::NotAnEdge(e.u, e.v)))
            .collect()
    }

    pub fn edge_mask(&self, set: &EdgeSet) -> Result<EdgeMask, GraphError> {
        Ok(EdgeMask::from_indices(self.m(), self.edge_ids(set)?))
    }

    pub fn edges_of_mask(&self, mask: &EdgeMask) -> EdgeSet {
        EdgeSet(mask.iter().map(|id| self.edges[id]).collect())
    }

    pub fn edges_of_ids(&self, ids: &[usize]) -> EdgeSet {
        ids.iter().map(|&id| self.edges[id]).collect()
    }

    /// All edges incident to `v`.
    pub fn star(&self, v: usize) -> EdgeSet {
        self.incident[v].iter().map(|&(w, _)| Edge::new(v, w)).collect()
    }

    /// The vertex whose star equals `set`, if any.
    pub fn star_center(&self, set: &EdgeSet) -> Option<usize> {
        let first = set.iter().next()?;
        [first.u, first.v]
            .into_iter()
            .find(|&c| self.degree(c) == set.len() && set.iter().all(|e| e.touches(c)))
    }

    /// Copy of the graph with the edges of `set` deleted.
    pub fn without_edges(&self, set: &EdgeSet) -> Result<Graph, GraphError> {
        let mut adj = self.adj.clone();
        for e in set {
            if !self.has_edge(e.u, e.v) {
                return Err(GraphError::NotAnEdge(e.u, e.v));
            }
            adj[e.u].remove(e.v);
            adj[e.v].remove(e.u);
        }
        Ok(Self::from_adjacency(adj))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![VertexSet::new(); self.n];
        for e in &self.edges {
            adj[perm[e.u]].insert(perm[e.v]);
            adj[perm[e.v]].insert(perm[e.u]);
        }
        Self::from_adjacency(adj)
    }

    /// Connected components of the subgraph induced by `within`, each sorted,
    /// ordered by smallest vertex.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = VertexSet::new();
        let mut out = Vec::new();
        for s in within.iter() {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::singleton(s);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::new();
                for v in frontier.iter() {
                    next |= self.adj[v];
                }
                next = (next & *within) - comp;
                comp |= next;
                frontier = next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Two-colouring with vertex 0 of each component coloured 0, or `None`
    /// when an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color = vec![u8::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * (self.n - 1) / 2
    }

    /// Connected and 2-regular.
    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.regular_degree() == Some(2) && self.is_connected()
    }

    /// Cartesian product; vertex `(a, x)` maps to `a * h.n() + x`.
    pub fn cartesian_product(&self, h: &Graph) -> Result<Graph, GraphError> {
        let n = self.n * h.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge(n));
        }
        let idx = |a: usize, x: usize| a * h.n + x;
        let mut pairs = Vec::new();
        for a in 0..self.n {
            for e in &h.edges {
                pairs.push((idx(a, e.u), idx(a, e.v)));
            }
        }
        for e in &self.edges {
            for x in 0..h.n {
                pairs.push((idx(e.u, x), idx(e.v, x)));
            }
        }
        Graph::new(n, pairs)
    }
}
