//! Maximum matching, perfect-matching tests under edge deletion,
//! perfect-matching enumeration and Hall/Tutte certificates.

mod blossom;
mod witness;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::{EdgeMask, VertexSet};
use crate::graph::{EdgeSet, Graph, GraphError};

pub use blossom::BlossomWorkspace;
pub use witness::{hall_witness, hall_witness_avoiding, tutte_witness, Witness, DEFAULT_WITNESS_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatchingError {
    #[error("Hall witnesses need a bipartite graph")]
    NotBipartite,
    #[error("Tutte witnesses need an even number of vertices, got {0}")]
    OddOrder(usize),
    #[error("witness search exhausted its budget of {0} candidate sets")]
    BudgetExhausted(u64),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A set of pairwise vertex-disjoint edges of a host graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Matching {
    pub edges: EdgeSet,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_perfect_in(&self, g: &Graph) -> bool {
        2 * self.len() == g.n() && self.is_valid_in(g)
    }

    /// Edges present in `g` and pairwise disjoint.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let mut seen = VertexSet::new();
        for e in &self.edges {
            if !g.has_edge(e.u, e.v) || seen.contains(e.u) || seen.contains(e.v) {
                return false;
            }
            seen.insert(e.u);
            seen.insert(e.v);
        }
        true
    }

    fn from_mates(mate: &[usize]) -> Self {
        Matching {
            edges: EdgeSet::from_pairs(
                mate.iter()
                    .enumerate()
                    .filter(|&(v, &w)| w != blossom::NONE && v < w)
                    .map(|(v, &w)| (v, w)),
            ),
        }
    }
}

pub fn maximum_matching(g: &Graph) -> Matching {
    let mut ws = BlossomWorkspace::new(g.n());
    ws.solve(g, None);
    Matching::from_mates(ws.mate())
}

pub fn has_perfect_matching(g: &Graph) -> bool {
    BlossomWorkspace::new(g.n()).has_perfect(g, None)
}

/// A perfect matching of `g` using no edge of `f`.
pub fn perfect_matching_avoiding(g: &Graph, f: &EdgeSet) -> Result<Option<Matching>, MatchingError> {
    let deleted = g.edge_mask(f)?;
    let mut ws = BlossomWorkspace::new(g.n());
    Ok(ws
        .has_perfect(g, Some(&deleted))
        .then(|| Matching::from_mates(ws.mate())))
}

/// Result of [`enumerate_perfect_matchings`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub matchings: Vec<Matching>,
    pub truncated: bool,
}

/// Perfect matchings in lexicographic order of their sorted edge indices,
/// stopping after `cap` of them.
pub fn enumerate_perfect_matchings(g: &Graph, cap: usize) -> Enumeration {
    let mut out = Vec::new();
    let mut truncated = false;
    if g.n() % 2 == 0 && cap > 0 {
        let mut chosen = Vec::with_capacity(g.n() / 2);
        let mut free = g.vertices();
        enumerate_rec(g, &mut free, &mut chosen, cap, &mut out, &mut truncated);
    }
    Enumeration {
        matchings: out
            .into_iter()
            .map(|ids| Matching {
                edges: g.edges_of_ids(&ids),
            })
            .collect(),
        truncated,
    }
}

fn enumerate_rec(
    g: &Graph,
    free: &mut VertexSet,
    chosen: &mut Vec<usize>,
    cap: usize,
    out: &mut Vec<Vec<usize>>,
    truncated: &mut bool,
) {
    let Some(u) = free.first() else {
        if out.len() == cap {
            *truncated = true;
        } else {
            out.push(chosen.clone());
        }
        return;
    };
    // a free vertex without free neighbours kills the branch
    if free.iter().any(|v| !g.adj(v).intersects(free)) {
        return;
    }
    free.remove(u);
    for &(w, id) in g.incident(u) {
        if *truncated {
            break;
        }
        if !free.contains(w) {
            continue;
        }
        free.remove(w);
        chosen.push(id);
        enumerate_rec(g, free, chosen, cap, out, truncated);
        chosen.pop();
        free.insert(w);
    }
    free.insert(u);
}

/// Perfect-matching tests against a fixed host graph under many deletion
/// sets. Recently found perfect matchings are kept in a small pool and
/// checked first; the blossom engine runs only when none of them survives.
pub struct AvoidanceOracle<'g> {
    g: &'g Graph,
    ws: BlossomWorkspace,
    pool: Vec<EdgeMask>,
    pool_cap: usize,
    pub blossom_calls: u64,
}

impl<'g> AvoidanceOracle<'g> {
    pub fn new(g: &'g Graph) -> Self {
        AvoidanceOracle {
            g,
            ws: BlossomWorkspace::new(g.n()),
            pool: Vec::new(),
            pool_cap: 48,
            blossom_calls: 0,
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    /// A perfect matching (as an edge mask) disjoint from `deleted`.
    pub fn find_avoiding(&mut self, deleted: &EdgeMask) -> Option<&EdgeMask> {
        if let Some(pos) = self.pool.iter().position(|pm| !pm.intersects(deleted)) {
            if pos > 0 {
                self.pool[..=pos].rotate_right(1);
            }
            return Some(&self.pool[0]);
        }
        self.blossom_calls += 1;
        if !self.ws.has_perfect(self.g, Some(deleted)) {
            return None;
        }
        let mate = self.ws.mate();
        let mut pm = EdgeMask::new(self.g.m());
        for (v, &w) in mate.iter().enumerate() {
            if v < w {
                pm.insert(self.g.edge_id(v, w).expect("matched pair is an edge"));
            }
        }
        if self.pool.len() == self.pool_cap {
            self.pool.pop();
        }
        self.pool.insert(0, pm);
        Some(&self.pool[0])
    }

    pub fn survives(&mut self, deleted: &EdgeMask) -> bool {
        self.find_avoiding(deleted).is_some()
    }

    pub fn survives_ids(&mut self, deleted: &[usize]) -> bool {
        let mask = EdgeMask::from_indices(self.g.m(), deleted.iter().copied());
        self.survives(&mask)
    }
}
