//! Minimum edge sets meeting every perfect matching, by branch and bound
//! over lazily generated perfect-matching constraints.
//!
//! A constraint is a perfect matching seen so far; a candidate set that
//! meets all of them is checked against the blossom engine, which either
//! confirms it or returns a new perfect matching to add.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use crate::bitset::EdgeMask;
use crate::graph::Graph;
use crate::matching::AvoidanceOracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct NodesExhausted;

struct Worker<'g, 'c> {
    m: usize,
    oracle: AvoidanceOracle<'g>,
    constraints: Vec<EdgeMask>,
    target: usize,
    collect_all: bool,
    found: Vec<Vec<usize>>,
    nodes: &'c AtomicU64,
    budget: u64,
}

impl Worker<'_, '_> {
    /// Returns `Ok(true)` once a solution is found in find-one mode.
    fn dfs(&mut self, chosen: &mut EdgeMask, size: usize, excluded: &mut EdgeMask) -> Result<bool, NodesExhausted> {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(NodesExhausted);
        }
        let mut unhit: Vec<usize> = (0..self.constraints.len())
            .filter(|&i| !self.constraints[i].intersects(chosen))
            .collect();
        if unhit.is_empty() {
            match self.oracle.find_avoiding(chosen) {
                None => {
                    self.found.push(chosen.iter().collect());
                    return Ok(!self.collect_all);
                }
                Some(pm) => {
                    self.constraints.push(pm.clone());
                    unhit.push(self.constraints.len() - 1);
                }
            }
        }
        if size == self.target {
            return Ok(false);
        }

        // greedy packing of constraints with pairwise disjoint free edges
        let mut free: Vec<(usize, usize)> = unhit
            .iter()
            .map(|&i| (self.constraints[i].count_outside(excluded), i))
            .collect();
        free.sort_unstable();
        if free[0].0 == 0 {
            return Ok(false);
        }
        let mut used = EdgeMask::new(self.m);
        let mut packed = 0;
        for &(_, i) in &free {
            let c = &self.constraints[i];
            if !free_intersects(c, excluded, &used) {
                packed += 1;
                for e in c.iter().filter(|&e| !excluded.contains(e)) {
                    used.insert(e);
                }
            }
        }
        if size + packed > self.target {
            return Ok(false);
        }

        let branch: Vec<usize> = self.constraints[free[0].1]
            .iter()
            .filter(|&e| !excluded.contains(e))
            .collect();
        let mut shut = Vec::with_capacity(branch.len());
        let mut stop = false;
        for e in branch {
            chosen.insert(e);
            let r = self.dfs(chosen, size + 1, excluded);
            chosen.remove(e);
            match r {
                Ok(true) => {
                    stop = true;
                    break;
                }
                Ok(false) => {}
                Err(x) => {
                    for &s in &shut {
                        excluded.remove(s);
                    }
                    return Err(x);
                }
            }
            excluded.insert(e);
            shut.push(e);
        }
        for &s in &shut {
            excluded.remove(s);
        }
        Ok(stop)
    }
}

fn free_intersects(c: &EdgeMask, excluded: &EdgeMask, used: &EdgeMask) -> bool {
    c.iter().any(|e| !excluded.contains(e) && used.contains(e))
}

/// Edge sets of size at most `target` meeting every perfect matching, as
/// sorted edge-index lists in lexicographic order. With `collect_all`
/// false, stops after the first per root branch and returns the least of
/// those.
pub(crate) fn search(
    g: &Graph,
    target: usize,
    collect_all: bool,
    budget: u64,
) -> Result<Vec<Vec<usize>>, NodesExhausted> {
    let m = g.m();
    let mut root_oracle = AvoidanceOracle::new(g);
    let empty = EdgeMask::new(m);
    let Some(first) = root_oracle.find_avoiding(&empty).cloned() else {
        return Ok(vec![Vec::new()]);
    };
    if target == 0 {
        return Ok(Vec::new());
    }
    let branch: Vec<usize> = first.iter().collect();
    let nodes = AtomicU64::new(1);
    let per_branch: Vec<Result<Vec<Vec<usize>>, NodesExhausted>> = (0..branch.len())
        .into_par_iter()
        .map(|i| {
            let mut w = Worker {
                m,
                oracle: AvoidanceOracle::new(g),
                constraints: vec![first.clone()],
                target,
                collect_all,
                found: Vec::new(),
                nodes: &nodes,
                budget,
            };
            let mut chosen = EdgeMask::from_indices(m, [branch[i]]);
            let mut excluded = EdgeMask::from_indices(m, branch[..i].iter().copied());
            w.dfs(&mut chosen, 1, &mut excluded)?;
            Ok(w.found)
        })
        .collect();
    let mut solutions = Vec::new();
    for r in per_branch {
        solutions.extend(r?);
    }
    solutions.sort();
    if !collect_all {
        solutions.truncate(1);
    }
    Ok(solutions)
}
