use std::collections::VecDeque;

use serde::Serialize;

use super::cliques::clique_partition;
use super::StructureError;
use crate::bitset::{EdgeMask, VertexSet};
use crate::combinatorics::{binomial, Combinations};
use crate::graph::{EdgeSet, Graph};

/// Global minimum edge-cut size from `n - 1` unit-capacity max-flows out of
/// vertex 0. Disconnected graphs give 0.
pub fn edge_connectivity(g: &Graph) -> usize {
    if g.n() == 1 || !g.is_connected() {
        return 0;
    }
    let mut flow = UnitFlow::new(g);
    let mut best = g.min_degree();
    for t in 1..g.n() {
        best = best.min(flow.max_flow(0, t, best));
        if best == 1 {
            break;
        }
    }
    best
}

/// Edmonds-Karp on an undirected graph with capacity one per edge.
struct UnitFlow<'g> {
    g: &'g Graph,
    // +1: one unit from e.u to e.v, -1: the reverse
    flow: Vec<i8>,
    pred: Vec<(usize, usize)>,
    queue: VecDeque<usize>,
}

impl<'g> UnitFlow<'g> {
    fn new(g: &'g Graph) -> Self {
        UnitFlow {
            g,
            flow: vec![0; g.m()],
            pred: vec![(usize::MAX, 0); g.n()],
            queue: VecDeque::new(),
        }
    }

    fn residual(&self, from: usize, id: usize) -> bool {
        let dir = if self.g.edge(id).u == from { 1 } else { -1 };
        self.flow[id] != dir
    }

    /// Flow value from `s` to `t`, stopping early once `limit` is reached.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        self.flow.fill(0);
        let mut value = 0;
        while value < limit {
            self.pred.fill((usize::MAX, 0));
            self.pred[s] = (s, usize::MAX);
            self.queue.clear();
            self.queue.push_back(s);
            'bfs: while let Some(v) = self.queue.pop_front() {
                for &(w, id) in self.g.incident(v) {
                    if self.pred[w].0 == usize::MAX && self.residual(v, id) {
                        self.pred[w] = (v, id);
                        if w == t {
                            break 'bfs;
                        }
                        self.queue.push_back(w);
                    }
                }
            }
            if self.pred[t].0 == usize::MAX {
                break;
            }
            let mut w = t;
            while w != s {
                let (v, id) = self.pred[w];
                self.flow[id] += if self.g.edge(id).u == v { 1 } else { -1 };
                w = v;
            }
            value += 1;
        }
        value
    }
}

/// How [`minimum_edge_cuts`] enumerated candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CutStrategy {
    EdgeSubsets,
    VertexBipartitions,
}

/// An edge cut of minimum size together with the two sides it separates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinCut {
    pub edges: EdgeSet,
    /// The side containing vertex 0.
    pub side: VertexSet,
    pub other: VertexSet,
}

impl MinCut {
    /// Isolates a single vertex.
    pub fn is_trivial(&self) -> bool {
        self.side.len() == 1 || self.other.len() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutEnumeration {
    pub lambda: usize,
    pub strategy: CutStrategy,
    pub cuts: Vec<MinCut>,
}

/// Every edge cut of size `lambda(g)`, in lexicographic order of edge
/// indices. Uses whichever of edge-subset or vertex-bipartition
/// enumeration is cheaper, and refuses when both exceed `budget`.
pub fn minimum_edge_cuts(g: &Graph, budget: u64) -> Result<CutEnumeration, StructureError> {
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let lambda = edge_connectivity(g);
    let by_edges = binomial(g.m(), lambda);
    let by_sides = if g.n() > 100 {
        u128::MAX
    } else {
        (1u128 << (g.n() - 1)) - 1
    };
    let needed = by_edges.min(by_sides);
    if needed > budget as u128 {
        return Err(StructureError::BudgetExhausted {
            what: "minimum edge-cut enumeration",
            needed,
            budget,
        });
    }
    let (strategy, mut cuts) = if g.n() == 1 {
        (CutStrategy::VertexBipartitions, Vec::new())
    } else if by_edges <= by_sides {
        (CutStrategy::EdgeSubsets, cuts_by_edges(g, lambda))
    } else {
        (CutStrategy::VertexBipartitions, cuts_by_sides(g, lambda))
    };
    cuts.sort_by_cached_key(|c| g.edge_ids(&c.edges).expect("cut edges belong to g"));
    Ok(CutEnumeration {
        lambda,
        strategy,
        cuts,
    })
}

fn reach_from_zero(g: &Graph, deleted: &EdgeMask) -> VertexSet {
    let mut seen = VertexSet::singleton(0);
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        for &(w, id) in g.incident(v) {
            if !deleted.contains(id) && !seen.contains(w) {
                seen.insert(w);
                stack.push(w);
            }
        }
    }
    seen
}

fn cuts_by_edges(g: &Graph, lambda: usize) -> Vec<MinCut> {
    let all = g.vertices();
    let mut out = Vec::new();
    let mut mask = EdgeMask::new(g.m());
    let mut subsets = Combinations::new(g.m(), lambda);
    while let Some(ids) = subsets.next_subset() {
        mask.clear();
        for &id in ids {
            mask.insert(id);
        }
        let side = reach_from_zero(g, &mask);
        if side != all {
            out.push(MinCut {
                edges: g.edges_of_ids(ids),
                side,
                other: all - side,
            });
        }
    }
    out
}

fn cuts_by_sides(g: &Graph, lambda: usize) -> Vec<MinCut> {
    let n = g.n();
    let all = g.vertices();
    let mut out = Vec::new();
    // bit i of `bits` places vertex i + 1 next to vertex 0
    for bits in 0..(1u128 << (n - 1)) - 1 {
        let mut side = VertexSet::singleton(0);
        for i in 0..n - 1 {
            if bits >> i & 1 == 1 {
                side.insert(i + 1);
            }
        }
        let mut size = 0;
        for v in side.iter() {
            size += (*g.adj(v) - side).len();
            if size > lambda {
                break;
            }
        }
        if size == lambda {
            let edges = side
                .iter()
                .flat_map(|v| (*g.adj(v) - side).iter().map(move |w| (v, w)).collect::<Vec<_>>())
                .collect::<Vec<_>>();
            out.push(MinCut {
                edges: EdgeSet::from_pairs(edges),
                side,
                other: all - side,
            });
        }
    }
    out
}

/// Whether every minimum edge cut isolates a vertex. Only meaningful for
/// connected regular graphs that are neither complete nor cycles.
pub fn is_super_lambda(g: &Graph, budget: u64) -> Result<bool, StructureError> {
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    if g.regular_degree().is_none() {
        return Err(StructureError::NotRegular);
    }
    if g.is_complete() || g.is_cycle() {
        return Err(StructureError::NotApplicable("complete graph or cycle"));
    }
    Ok(minimum_edge_cuts(g, budget)?.cuts.iter().all(MinCut::is_trivial))
}

/// A `k`-cut either isolates a vertex, or splits the graph into two parts
/// that each partition into `k`-cliques.
pub fn cut_has_clique_structure(g: &Graph, cut: &MinCut, k: usize) -> bool {
    if cut.is_trivial() {
        return true;
    }
    let h = match g.without_edges(&cut.edges) {
        Ok(h) => h,
        Err(_) => return false,
    };
    h.components().len() == 2
        && clique_partition(g, &cut.side, k).is_some()
        && clique_partition(g, &cut.other, k).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    #[test]
    fn connectivity_values() {
        assert_eq!(edge_connectivity(&gen("petersen")), 3);
        assert_eq!(edge_connectivity(&gen("cycle:8")), 2);
        assert_eq!(edge_connectivity(&gen("fq:4")), 4);
        assert_eq!(edge_connectivity(&gen("complete:6")), 5);
        let barbell = Graph::new(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert_eq!(edge_connectivity(&barbell), 1);
        let split = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(edge_connectivity(&split), 0);
    }

    #[test]
    fn both_strategies_agree() {
        for s in ["cycle:4", "petersen", "circulant:6:2,4,3", "complete:4", "hypercube:3"] {
            let g = gen(s);
            let lambda = edge_connectivity(&g);
            let mut a = cuts_by_edges(&g, lambda);
            let mut b = cuts_by_sides(&g, lambda);
            a.sort_by_key(|c| g.edge_ids(&c.edges).unwrap());
            b.sort_by_key(|c| g.edge_ids(&c.edges).unwrap());
            assert_eq!(a, b, "{s}");
        }
    }

    #[test]
    fn cut_lists() {
        let c4 = minimum_edge_cuts(&gen("cycle:4"), 1000).unwrap();
        assert_eq!(c4.lambda, 2);
        assert_eq!(c4.cuts.len(), 6);
        assert_eq!(c4.cuts.iter().filter(|c| c.is_trivial()).count(), 4);

        let p = minimum_edge_cuts(&gen("petersen"), 1000).unwrap();
        assert_eq!(p.cuts.len(), 10);
        assert!(p.cuts.iter().all(MinCut::is_trivial));

        let prism = gen("circulant:6:2,4,3");
        let cuts = minimum_edge_cuts(&prism, 1000).unwrap();
        let across = EdgeSet::from_pairs([(0, 3), (1, 4), (2, 5)]);
        let split = cuts.cuts.iter().find(|c| c.edges == across).unwrap();
        assert_eq!(split.side.to_vec(), vec![0, 2, 4]);
        assert!(cut_has_clique_structure(&prism, split, 3));

        assert!(matches!(
            minimum_edge_cuts(&gen("hypercube:4"), 10),
            Err(StructureError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn super_lambda() {
        assert_eq!(is_super_lambda(&gen("petersen"), 1000), Ok(true));
        assert_eq!(is_super_lambda(&gen("circulant:6:2,4,3"), 1000), Ok(false));
        assert!(matches!(
            is_super_lambda(&gen("cycle:8"), 1000),
            Err(StructureError::NotApplicable(_))
        ));
        assert!(matches!(
            is_super_lambda(&gen("complete:5"), 1000),
            Err(StructureError::NotApplicable(_))
        ));
    }
}
