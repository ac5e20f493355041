#![allow(dead_code)]

//! Brute-force reference implementations used as test oracles. They work
//! from the raw edge list with plain adjacency matrices and share no code
//! with the library algorithms.

use mplab_core::corpus::default_specs;
use mplab_core::{FamilySpec, Graph};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn gen(s: &str) -> Graph {
    s.parse::<FamilySpec>().unwrap().generate().unwrap()
}

pub fn corpus() -> Vec<(String, Graph)> {
    default_specs()
        .into_iter()
        .map(|s| (s.to_string(), s.generate().unwrap()))
        .collect()
}

pub fn matrix(g: &Graph) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; g.n()]; g.n()];
    for e in g.edges() {
        a[e.u][e.v] = true;
        a[e.v][e.u] = true;
    }
    a
}

/// Random simple graph on `1..=max_n` vertices.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.1f64..0.9).prop_flat_map(|(n, p)| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(proptest::bool::weighted(p), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, edges).unwrap()
        })
    })
}

/// Odd components of `g` restricted to the vertices with `keep[v]`.
pub fn odd_components(a: &[Vec<bool>], keep: &[bool]) -> usize {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut odd = 0;
    for s in 0..n {
        if !keep[s] || seen[s] {
            continue;
        }
        let mut stack = vec![s];
        seen[s] = true;
        let mut size = 0;
        while let Some(v) = stack.pop() {
            size += 1;
            for w in 0..n {
                if a[v][w] && keep[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        odd += size % 2;
    }
    odd
}

/// `(n - max_S (c_o(G - S) - |S|)) / 2` over every vertex subset.
pub fn tutte_berge(g: &Graph) -> usize {
    let a = matrix(g);
    let n = g.n();
    let mut best: i64 = 0;
    for mask in 0u32..(1 << n) {
        let keep: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 0).collect();
        let removed = mask.count_ones() as i64;
        best = best.max(odd_components(&a, &keep) as i64 - removed);
    }
    ((n as i64 - best) / 2) as usize
}

/// All perfect matchings as sorted lists of `(u, v)` pairs, sorted.
pub fn naive_perfect_matchings(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    fn rec(a: &[Vec<bool>], used: &mut Vec<bool>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some(u) = used.iter().position(|&x| !x) else {
            let mut m = cur.clone();
            m.sort();
            out.push(m);
            return;
        };
        used[u] = true;
        for w in 0..a.len() {
            if a[u][w] && !used[w] {
                used[w] = true;
                cur.push((u.min(w), u.max(w)));
                rec(a, used, cur, out);
                cur.pop();
                used[w] = false;
            }
        }
        used[u] = false;
    }
    let mut out = Vec::new();
    if g.n() % 2 == 0 {
        rec(&matrix(g), &mut vec![false; g.n()], &mut Vec::new(), &mut out);
    }
    out.sort();
    out
}

pub fn naive_has_pm(a: &[Vec<bool>]) -> bool {
    fn rec(a: &[Vec<bool>], used: &mut [bool]) -> bool {
        let Some(u) = used.iter().position(|&x| !x) else {
            return true;
        };
        used[u] = true;
        for w in 0..a.len() {
            if a[u][w] && !used[w] {
                used[w] = true;
                if rec(a, used) {
                    return true;
                }
                used[w] = false;
            }
        }
        used[u] = false;
        false
    }
    a.len() % 2 == 0 && rec(a, &mut vec![false; a.len()])
}

/// Every minimum preclusion set, by scanning all edge subsets in order of size.
pub fn naive_optimal_sets(g: &Graph) -> (usize, Vec<Vec<(usize, usize)>>) {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let base = matrix(g);
    let m = edges.len();
    let mut by_size: Vec<Vec<Vec<(usize, usize)>>> = vec![Vec::new(); m + 1];
    for mask in 0u64..(1 << m) {
        let mut a = base.clone();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                a[u][v] = false;
                a[v][u] = false;
            }
        }
        if !naive_has_pm(&a) {
            let set = edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            by_size[mask.count_ones() as usize].push(set);
        }
    }
    let mp = by_size.iter().position(|s| !s.is_empty()).unwrap_or(0);
    let mut sets = std::mem::take(&mut by_size[mp]);
    sets.sort();
    (mp, sets)
}

pub fn shortest_odd_cycle(g: &Graph) -> Option<usize> {
    // an odd closed walk of length l through a vertex exists iff the
    // parity-layered BFS reaches the root's odd copy in l steps
    let n = g.n();
    let a = matrix(g);
    let mut best: Option<usize> = None;
    for r in 0..n {
        let mut dist = vec![[usize::MAX; 2]; n];
        dist[r][0] = 0;
        let mut queue = std::collections::VecDeque::from([(r, 0usize)]);
        while let Some((v, p)) = queue.pop_front() {
            let d = dist[v][p];
            for w in 0..n {
                if a[v][w] && dist[w][1 - p] == usize::MAX {
                    dist[w][1 - p] = d + 1;
                    queue.push_back((w, 1 - p));
                }
            }
        }
        if dist[r][1] != usize::MAX {
            best = Some(best.map_or(dist[r][1], |b: usize| b.min(dist[r][1])));
        }
    }
    best
}

pub fn permutations(n: usize, count: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect()
}
