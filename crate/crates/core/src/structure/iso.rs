//! Colour refinement with individualization backtracking: automorphism
//! orbits and isomorphism tests.

use serde::Serialize;

use super::{girth, odd_girth, StructureError};
use crate::bitset::VertexSet;
use crate::graph::Graph;

pub const DEFAULT_ISO_BUDGET: u64 = 1 << 20;
pub const MAX_ORBIT_VERTICES: usize = 128;

/// One refinement round: the distinct (colour, sorted neighbour colours)
/// signatures with their multiplicities.
type Round = Vec<((u32, Vec<u32>), usize)>;

/// Refines `colors` to the coarsest equitable partition below it. Colour
/// ids are ranks of signatures, so two graphs with equal traces have
/// corresponding colour classes.
fn refine(g: &Graph, colors: &mut [u32]) -> Vec<Round> {
    let mut trace = Vec::new();
    let mut classes = count_classes(colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..g.n())
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        let mut round: Round = Vec::new();
        for s in sorted {
            match round.last_mut() {
                Some((last, count)) if *last == s => *count += 1,
                _ => round.push((s, 1)),
            }
        }
        for (v, s) in sigs.iter().enumerate() {
            colors[v] = round.binary_search_by(|(r, _)| r.cmp(s)).expect("signature present") as u32;
        }
        let stable = round.len() == classes;
        classes = round.len();
        trace.push(round);
        if stable {
            return trace;
        }
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Isomorphism from coloured `g` to coloured `h`; both colourings are
    /// already refined with equal traces.
    fn run(&mut self, cg: &[u32], ch: &[u32]) -> Result<Option<Vec<usize>>, StructureError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(StructureError::SearchExhausted {
                what: "isomorphism search",
                budget: self.budget,
            });
        }
        let ncolors = cg.iter().max().map_or(0, |&c| c as usize + 1);
        let mut sizes = vec![0usize; ncolors];
        for &c in cg {
            sizes[c as usize] += 1;
        }
        let target = (0..ncolors).filter(|&c| sizes[c] > 1).min_by_key(|&c| sizes[c]);
        let Some(target) = target else {
            let mut map = vec![0; self.g.n()];
            for v in 0..self.g.n() {
                map[v] = ch.iter().position(|&c| c == cg[v]).expect("same colour classes");
            }
            let ok = self.g.edges().iter().all(|e| self.h.has_edge(map[e.u], map[e.v]));
            return Ok(ok.then_some(map));
        };
        let v = cg.iter().position(|&c| c as usize == target).expect("class is non-empty");
        let mut cg2 = cg.to_vec();
        cg2[v] = ncolors as u32;
        let tg = refine(self.g, &mut cg2);
        for w in (0..self.h.n()).filter(|&w| ch[w] as usize == target) {
            let mut ch2 = ch.to_vec();
            ch2[w] = ncolors as u32;
            if refine(self.h, &mut ch2) != tg {
                continue;
            }
            if let Some(map) = self.run(&cg2, &ch2)? {
                return Ok(Some(map));
            }
        }
        Ok(None)
    }
}

/// Vertex orbits of the automorphism group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbits {
    pub orbits: Vec<VertexSet>,
    pub transitive: bool,
}

pub fn automorphism_orbits(g: &Graph, budget: u64) -> Result<Orbits, StructureError> {
    let n = g.n();
    if n > MAX_ORBIT_VERTICES {
        return Err(StructureError::TooLarge {
            n,
            max: MAX_ORBIT_VERTICES,
        });
    }
    let mut base = vec![0u32; n];
    refine(g, &mut base);
    let ncolors = base.iter().max().map_or(0, |&c| c + 1);
    let mut parent: Vec<usize> = (0..n).collect();
    let mut search = Search {
        g,
        h: g,
        nodes: 0,
        budget,
    };
    for w in 0..n {
        if find(&mut parent, w) != w {
            continue;
        }
        let mut cw = base.clone();
        cw[w] = ncolors;
        let tw = refine(g, &mut cw);
        for r in 0..w {
            if base[r] != base[w] || find(&mut parent, r) != r {
                continue;
            }
            let mut cr = base.clone();
            cr[r] = ncolors;
            if refine(g, &mut cr) != tw {
                continue;
            }
            if let Some(phi) = search.run(&cr, &cw)? {
                for (x, &y) in phi.iter().enumerate() {
                    union(&mut parent, x, y);
                }
                break;
            }
        }
    }
    let mut orbits: Vec<VertexSet> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for v in 0..n {
        let root = find(&mut parent, v);
        if slot[root] == usize::MAX {
            slot[root] = orbits.len();
            orbits.push(VertexSet::new());
        }
        orbits[slot[root]].insert(v);
    }
    Ok(Orbits {
        transitive: orbits.len() == 1,
        orbits,
    })
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Union keeping the smaller vertex as root.
fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        parent[hi] = lo;
    }
}

/// Connection set `N(0)` when `i -> i + 1 mod n` is an automorphism.
pub fn circulant_connection_set(g: &Graph) -> Option<VertexSet> {
    let n = g.n();
    g.edges()
        .iter()
        .all(|e| g.has_edge((e.u + 1) % n, (e.v + 1) % n))
        .then(|| *g.adj(0))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A multiplier `a` with `a * S_g = S_h`, as the map `x -> a x mod n`.
fn multiplier_map(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let sg = circulant_connection_set(g)?;
    let sh = circulant_connection_set(h)?;
    (1..n.max(2)).filter(|&a| gcd(a, n) == 1).find_map(|a| {
        let image: VertexSet = sg.iter().map(|s| a * s % n).collect();
        (image == sh).then(|| (0..n).map(|x| a * x % n).collect())
    })
}

/// Cheap isomorphism invariants plus the stable refinement of the unit
/// partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub n: usize,
    pub m: usize,
    pub degrees: Vec<usize>,
    pub girth: Option<usize>,
    pub odd_girth: Option<usize>,
    pub triangles: usize,
    refinement: Round,
}

pub fn invariants(g: &Graph) -> Invariants {
    let mut degrees = g.degree_sequence();
    degrees.sort_unstable();
    let triangles = g
        .edges()
        .iter()
        .map(|e| (*g.adj(e.u) & *g.adj(e.v)).len())
        .sum::<usize>()
        / 3;
    let mut colors = vec![0; g.n()];
    let refinement = refine(g, &mut colors).pop().unwrap_or_default();
    Invariants {
        n: g.n(),
        m: g.m(),
        degrees,
        girth: girth(g),
        odd_girth: odd_girth(g),
        triangles,
        refinement,
    }
}

/// An isomorphism as the image `map[v]` in `h` of each vertex `v` of `g`.
pub fn find_isomorphism(g: &Graph, h: &Graph, budget: u64) -> Result<Option<Vec<usize>>, StructureError> {
    if g.n() != h.n() || g.m() != h.m() {
        return Ok(None);
    }
    let (ig, ih) = (invariants(g), invariants(h));
    if ig != ih {
        return Ok(None);
    }
    if let Some(map) = multiplier_map(g, h) {
        return Ok(Some(map));
    }
    let mut cg = vec![0; g.n()];
    let mut ch = vec![0; h.n()];
    if refine(g, &mut cg) != refine(h, &mut ch) {
        return Ok(None);
    }
    Search {
        g,
        h,
        nodes: 0,
        budget,
    }
    .run(&cg, &ch)
}

pub fn are_isomorphic(g: &Graph, h: &Graph, budget: u64) -> Result<bool, StructureError> {
    Ok(find_isomorphism(g, h, budget)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    fn is_iso(map: &[usize], g: &Graph, h: &Graph) -> bool {
        let mut seen = VertexSet::new();
        map.iter().all(|&w| {
            let fresh = !seen.contains(w);
            seen.insert(w);
            fresh
        }) && g.edges().iter().all(|e| h.has_edge(map[e.u], map[e.v]))
            && g.m() == h.m()
    }

    #[test]
    fn orbits() {
        let p = automorphism_orbits(&gen("petersen"), DEFAULT_ISO_BUDGET).unwrap();
        assert!(p.transitive);
        assert_eq!(p.orbits[0].len(), 10);

        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let o = automorphism_orbits(&path, DEFAULT_ISO_BUDGET).unwrap();
        assert_eq!(o.orbits, vec![[0, 2].into_iter().collect(), VertexSet::singleton(1)]);
        assert!(!o.transitive);

        assert!(automorphism_orbits(&gen("fq:4"), DEFAULT_ISO_BUDGET).unwrap().transitive);
    }

    #[test]
    fn regular_but_not_transitive() {
        // prism and K4 side by side: cubic everywhere, two orbits
        let g = Graph::new(10, [
            (0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5),
            (6, 7), (7, 8), (8, 9), (9, 6), (6, 8), (7, 9),
        ])
        .unwrap();
        let o = automorphism_orbits(&g, DEFAULT_ISO_BUDGET).unwrap();
        assert_eq!(o.orbits.len(), 2);
    }

    #[test]
    fn isomorphisms() {
        let b = DEFAULT_ISO_BUDGET;
        let (fq3, k4) = (gen("fq:3"), gen("complete:4"));
        let map = find_isomorphism(&fq3, &k4, b).unwrap().unwrap();
        assert!(is_iso(&map, &fq3, &k4));
        let (fq4, k44) = (gen("fq:4"), gen("bipartite:4,4"));
        let map = find_isomorphism(&fq4, &k44, b).unwrap().unwrap();
        assert!(is_iso(&map, &fq4, &k44));
        assert!(!are_isomorphic(&gen("petersen"), &gen("circulant:10:2,8,5"), b).unwrap());

        let prism = gen("product:cycle:3*complete:2");
        assert!(are_isomorphic(&prism, &gen("circulant:6:2,4,3"), b).unwrap());
        assert!(are_isomorphic(&gen("hypercube:4"), &gen("torus:4x4"), b).unwrap());
        assert!(are_isomorphic(&gen("circulant:8:1,7,4"), &gen("circulant:8:3,5,4"), b).unwrap());
    }

    #[test]
    fn budget_is_enforced() {
        let q = gen("hypercube:4");
        let shuffled = q.relabel(&[3, 0, 1, 2, 7, 4, 5, 6, 11, 8, 9, 10, 15, 12, 13, 14]);
        assert!(matches!(
            find_isomorphism(&q, &shuffled, 1),
            Err(StructureError::SearchExhausted { .. })
        ));
    }
}
