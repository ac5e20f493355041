//! Structural predicates: girth, edge connectivity and minimum cuts,
//! cliques, independent sets, automorphism orbits and isomorphism.

mod cliques;
mod connectivity;
mod iso;

use std::collections::VecDeque;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

pub use cliques::{clique_partition, find_clique, independent_set_of_size};
pub use connectivity::{
    cut_has_clique_structure, edge_connectivity, is_super_lambda, minimum_edge_cuts, CutEnumeration,
    CutStrategy, MinCut,
};
pub use iso::{
    are_isomorphic, automorphism_orbits, circulant_connection_set, find_isomorphism, invariants, Invariants,
    Orbits, DEFAULT_ISO_BUDGET, MAX_ORBIT_VERTICES,
};

/// Default number of candidate cuts examined by [`minimum_edge_cuts`].
pub const DEFAULT_CUT_BUDGET: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StructureError {
    #[error("not applicable ({0})")]
    NotApplicable(&'static str),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not regular")]
    NotRegular,
    #[error("{what} needs {needed} candidates, budget is {budget}")]
    BudgetExhausted {
        what: &'static str,
        needed: u128,
        budget: u64,
    },
    #[error("{what} exhausted its budget of {budget} nodes")]
    SearchExhausted { what: &'static str, budget: u64 },
    #[error("{n} vertices exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
}

/// Length of a shortest cycle.
pub fn girth(g: &Graph) -> Option<usize> {
    shortest_closed_walk(g, false)
}

/// Length of a shortest odd cycle; `None` for bipartite graphs.
pub fn odd_girth(g: &Graph) -> Option<usize> {
    shortest_closed_walk(g, true)
}

/// Breadth-first search from every root. A non-tree edge `vw` closes a
/// walk of length `d(v) + d(w) + 1` through the root; taking the minimum
/// over all roots gives the girth, and restricting to edges inside one
/// level gives the odd girth.
fn shortest_closed_walk(g: &Graph, odd_only: bool) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.fill(usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[v] + 1 >= b) {
                break;
            }
            for w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if w != parent[v] && (!odd_only || dist[w] == dist[v]) {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Whether every minimum edge cut is a vertex star.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuperLambda {
    Yes,
    No,
    NotApplicable(&'static str),
    Unknown,
}

impl Serialize for SuperLambda {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SuperLambda::Yes => s.serialize_bool(true),
            SuperLambda::No => s.serialize_bool(false),
            SuperLambda::NotApplicable(why) => s.serialize_str(&format!("not applicable ({why})")),
            SuperLambda::Unknown => s.serialize_str("unknown (budget exhausted)"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureBudgets {
    pub cuts: u64,
    pub iso_nodes: u64,
}

impl Default for StructureBudgets {
    fn default() -> Self {
        StructureBudgets {
            cuts: DEFAULT_CUT_BUDGET,
            iso_nodes: DEFAULT_ISO_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub regular: bool,
    pub k: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    /// `None` when acyclic.
    pub girth: Option<usize>,
    /// `None` when bipartite.
    pub odd_girth: Option<usize>,
    pub lambda: usize,
    pub super_lambda: SuperLambda,
    /// A `k`-clique for regular graphs of degree `k`.
    pub k_clique: Option<VertexSet>,
    /// `None` when the orbit search ran out of budget.
    pub vertex_transitive: Option<bool>,
    pub orbit_count: Option<usize>,
}

pub fn structure_report(g: &Graph, budgets: &StructureBudgets) -> StructureReport {
    let k = g.regular_degree();
    let super_lambda = match is_super_lambda(g, budgets.cuts) {
        Ok(true) => SuperLambda::Yes,
        Ok(false) => SuperLambda::No,
        Err(StructureError::NotApplicable(why)) => SuperLambda::NotApplicable(why),
        Err(StructureError::Disconnected) => SuperLambda::NotApplicable("disconnected"),
        Err(StructureError::NotRegular) => SuperLambda::NotApplicable("not regular"),
        Err(_) => SuperLambda::Unknown,
    };
    let orbits = automorphism_orbits(g, budgets.iso_nodes).ok();
    StructureReport {
        n: g.n(),
        m: g.m(),
        min_degree: g.min_degree(),
        max_degree: g.max_degree(),
        regular: k.is_some(),
        k,
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        girth: girth(g),
        odd_girth: odd_girth(g),
        lambda: edge_connectivity(g),
        super_lambda,
        k_clique: k.and_then(|k| find_clique(g, k)),
        vertex_transitive: orbits.as_ref().map(|o| o.transitive),
        orbit_count: orbits.as_ref().map(|o| o.orbits.len()),
    }
}
