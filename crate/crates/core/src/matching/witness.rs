use serde::Serialize;

use super::blossom::{BlossomWorkspace, NONE};
use super::MatchingError;
use crate::bitset::VertexSet;
use crate::combinatorics::Combinations;
use crate::graph::{EdgeSet, Graph};

/// Default number of candidate Tutte sets examined before giving up.
pub const DEFAULT_WITNESS_BUDGET: u64 = 1 << 21;

/// Certificate that a graph has no perfect matching.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `u` lies in colour class `side`; `nu` is its whole neighbourhood and
    /// is smaller than `u`.
    Hall { side: u8, u: VertexSet, nu: VertexSet },
    /// Removing `s` leaves at least `|s| + 2` odd components.
    Tutte {
        s: VertexSet,
        odd_components: Vec<VertexSet>,
    },
}

impl Witness {
    /// Recounts the certificate against `g`.
    pub fn check(&self, g: &Graph) -> bool {
        let all = g.vertices();
        match self {
            Witness::Hall { u, nu, .. } => {
                if u.is_empty() || !u.is_subset(&all) || u.intersects(nu) {
                    return false;
                }
                let mut nb = VertexSet::new();
                for v in u.iter() {
                    nb |= *g.adj(v);
                }
                nb == *nu && nu.len() < u.len()
            }
            Witness::Tutte { s, odd_components } => {
                if !s.is_subset(&all) {
                    return false;
                }
                let odd: Vec<VertexSet> = g
                    .components_within(&(all - *s))
                    .into_iter()
                    .filter(|c| c.len() % 2 == 1)
                    .collect();
                odd == *odd_components && odd.len() >= s.len() + 2
            }
        }
    }

    /// Odd-component surplus `c_o - |S|` for Tutte witnesses.
    pub fn tutte_surplus(&self) -> Option<usize> {
        match self {
            Witness::Tutte { s, odd_components } => Some(odd_components.len() - s.len()),
            Witness::Hall { .. } => None,
        }
    }
}

/// Hall violator from alternating reachability out of the lowest exposed
/// vertex of a maximum matching. Sides follow the 2-colouring of `g` in
/// which the smallest vertex of every component gets colour 0.
pub fn hall_witness(g: &Graph) -> Result<Option<Witness>, MatchingError> {
    let color = g.bipartition().ok_or(MatchingError::NotBipartite)?;
    hall_with_colors(g, &color)
}

/// Hall violator for `host - f`, with sides named by the colouring of `host`.
pub fn hall_witness_avoiding(host: &Graph, f: &EdgeSet) -> Result<Option<Witness>, MatchingError> {
    let color = host.bipartition().ok_or(MatchingError::NotBipartite)?;
    hall_with_colors(&host.without_edges(f)?, &color)
}

fn hall_with_colors(g: &Graph, color: &[u8]) -> Result<Option<Witness>, MatchingError> {
    let mut ws = BlossomWorkspace::new(g.n());
    let size = ws.solve(g, None);
    if 2 * size == g.n() {
        return Ok(None);
    }
    let mate = ws.mate();
    let root = (0..g.n()).find(|&v| mate[v] == NONE).expect("matching is not perfect");
    let mut u = VertexSet::singleton(root);
    let mut nu = VertexSet::new();
    let mut frontier = u;
    while !frontier.is_empty() {
        let mut reach = VertexSet::new();
        for v in frontier.iter() {
            reach |= *g.adj(v);
        }
        let fresh = reach - nu;
        nu |= fresh;
        let mut next = VertexSet::new();
        for w in fresh.iter() {
            // maximality: every vertex reached this way is matched
            debug_assert_ne!(mate[w], NONE);
            next.insert(mate[w]);
        }
        frontier = next - u;
        u |= frontier;
    }
    Ok(Some(Witness::Hall {
        side: color[root],
        u,
        nu,
    }))
}

/// Smallest Tutte set, found by scanning vertex subsets by size and then
/// lexicographically.
pub fn tutte_witness(g: &Graph, budget: u64) -> Result<Option<Witness>, MatchingError> {
    let n = g.n();
    if n % 2 == 1 {
        return Err(MatchingError::OddOrder(n));
    }
    if BlossomWorkspace::new(n).has_perfect(g, None) {
        return Ok(None);
    }
    let all = g.vertices();
    let mut examined = 0u64;
    for size in 0..=n {
        let mut subsets = Combinations::new(n, size);
        while let Some(sub) = subsets.next_subset() {
            examined += 1;
            if examined > budget {
                return Err(MatchingError::BudgetExhausted(budget));
            }
            let s: VertexSet = sub.iter().copied().collect();
            let odd: Vec<VertexSet> = g
                .components_within(&(all - s))
                .into_iter()
                .filter(|c| c.len() % 2 == 1)
                .collect();
            if odd.len() >= size + 2 {
                return Ok(Some(Witness::Tutte {
                    s,
                    odd_components: odd,
                }));
            }
        }
    }
    unreachable!("Tutte's theorem guarantees a witness when no perfect matching exists")
}
