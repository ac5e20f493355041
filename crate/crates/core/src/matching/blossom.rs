//! Edmonds' maximum-cardinality matching with odd-cycle contraction.
//!
//! The workspace owns all scratch buffers so repeated calls (the preclusion
//! solvers run millions of them) never allocate.

use std::collections::VecDeque;

use crate::bitset::EdgeMask;
use crate::graph::Graph;

pub(crate) const NONE: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct BlossomWorkspace {
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    in_blossom: Vec<bool>,
    on_path: Vec<bool>,
    queue: VecDeque<usize>,
}

impl BlossomWorkspace {
    pub fn new(n: usize) -> Self {
        BlossomWorkspace {
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            in_blossom: vec![false; n],
            on_path: vec![false; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    fn ensure(&mut self, n: usize) {
        if self.mate.len() != n {
            *self = Self::new(n);
        }
    }

    /// Mate of each vertex after the last solve, `usize::MAX` when exposed.
    pub fn mate(&self) -> &[usize] {
        &self.mate
    }

    /// Maximum matching of `g` minus the edges in `deleted`; returns its size.
    pub fn solve(&mut self, g: &Graph, deleted: Option<&EdgeMask>) -> usize {
        self.run(g, deleted, false)
    }

    /// Whether `g` minus `deleted` has a perfect matching. Stops at the first
    /// vertex that cannot be matched.
    pub fn has_perfect(&mut self, g: &Graph, deleted: Option<&EdgeMask>) -> bool {
        g.n() % 2 == 0 && self.run(g, deleted, true) * 2 == g.n()
    }

    fn run(&mut self, g: &Graph, deleted: Option<&EdgeMask>, stop_on_exposed: bool) -> usize {
        let n = g.n();
        self.ensure(n);
        self.mate.fill(NONE);
        let live = |id: usize| deleted.is_none_or(|d| !d.contains(id));

        let mut size = 0;
        for v in 0..n {
            if self.mate[v] != NONE {
                continue;
            }
            if let Some(&(w, _)) = g
                .incident(v)
                .iter()
                .find(|&&(w, id)| self.mate[w] == NONE && live(id))
            {
                self.mate[v] = w;
                self.mate[w] = v;
                size += 1;
            }
        }
        for root in 0..n {
            if self.mate[root] != NONE {
                continue;
            }
            match self.find_augmenting(g, root, &live) {
                Some(end) => {
                    self.augment(end);
                    size += 1;
                }
                // A vertex with no augmenting path stays exposed for good.
                None if stop_on_exposed => return size,
                None => {}
            }
        }
        size
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let next = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = next;
        }
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.on_path.fill(false);
        loop {
            a = self.base[a];
            self.on_path[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.on_path[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_augmenting(&mut self, g: &Graph, root: usize, live: &impl Fn(usize) -> bool) -> Option<usize> {
        let n = g.n();
        self.in_tree.fill(false);
        self.parent.fill(NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.in_tree[root] = true;
        self.queue.clear();
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for &(to, id) in g.incident(v) {
                if !live(id) || self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // odd cycle: contract it into its base
                    let cur = self.lca(v, to);
                    self.in_blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.in_tree[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}
