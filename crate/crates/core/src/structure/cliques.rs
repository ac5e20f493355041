use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Lexicographically least clique on `k` vertices.
pub fn find_clique(g: &Graph, k: usize) -> Option<VertexSet> {
    if k == 0 {
        return Some(VertexSet::new());
    }
    let cand: VertexSet = (0..g.n()).filter(|&v| g.degree(v) + 1 >= k).collect();
    let mut chosen = Vec::with_capacity(k);
    grow_clique(g, k, cand, &mut chosen).then(|| chosen.into_iter().collect())
}

fn grow_clique(g: &Graph, k: usize, cand: VertexSet, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    if chosen.len() + cand.len() < k {
        return false;
    }
    for v in cand.iter() {
        let rest = cand & *g.adj(v);
        // only vertices after v keep the order lexicographic
        let rest: VertexSet = rest.iter().filter(|&w| w > v).collect();
        chosen.push(v);
        if grow_clique(g, k, rest, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Lexicographically least independent set with exactly `t` vertices.
pub fn independent_set_of_size(g: &Graph, t: usize) -> Option<VertexSet> {
    if t > g.n() {
        return None;
    }
    let mut chosen = Vec::with_capacity(t);
    grow_independent(g, t, g.vertices(), &mut chosen).then(|| chosen.into_iter().collect())
}

fn grow_independent(g: &Graph, t: usize, cand: VertexSet, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == t {
        return true;
    }
    if chosen.len() + cand.len() < t {
        return false;
    }
    for v in cand.iter() {
        let rest: VertexSet = (cand - *g.adj(v)).iter().filter(|&w| w > v).collect();
        chosen.push(v);
        if grow_independent(g, t, rest, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Splits `set` into vertex-disjoint `k`-cliques of `g`, if possible.
pub fn clique_partition(g: &Graph, set: &VertexSet, k: usize) -> Option<Vec<VertexSet>> {
    if k == 0 || set.len() % k != 0 {
        return None;
    }
    let mut parts = Vec::new();
    partition_rec(g, *set, k, &mut parts).then_some(parts)
}

fn partition_rec(g: &Graph, left: VertexSet, k: usize, parts: &mut Vec<VertexSet>) -> bool {
    let Some(v) = left.first() else {
        return true;
    };
    let cand = *g.adj(v) & left;
    let mut chosen = vec![v];
    cliques_through(g, k, cand, &mut chosen, &mut |clique| {
        parts.push(clique);
        if partition_rec(g, left - clique, k, parts) {
            return true;
        }
        parts.pop();
        false
    })
}

/// Calls `visit` on each `k`-clique extending `chosen` inside `cand`, until
/// it returns true.
fn cliques_through(
    g: &Graph,
    k: usize,
    cand: VertexSet,
    chosen: &mut Vec<usize>,
    visit: &mut dyn FnMut(VertexSet) -> bool,
) -> bool {
    if chosen.len() == k {
        return visit(chosen.iter().copied().collect());
    }
    if chosen.len() + cand.len() < k {
        return false;
    }
    for v in cand.iter() {
        let rest: VertexSet = (cand & *g.adj(v)).iter().filter(|&w| w > v).collect();
        chosen.push(v);
        if cliques_through(g, k, rest, chosen, visit) {
            return true;
        }
        chosen.pop();
    }
    false
}
