//! Lexicographic scan over all edge subsets of a fixed size.

use rayon::prelude::*;

use crate::bitset::EdgeMask;
use crate::combinatorics::PrefixedCombinations;
use crate::graph::Graph;
use crate::matching::AvoidanceOracle;

/// Lexicographically least `s`-subset of edge indices whose removal leaves
/// no perfect matching.
pub(crate) fn first_preclusion_set(g: &Graph, s: usize) -> Option<Vec<usize>> {
    if s == 0 {
        let mut oracle = AvoidanceOracle::new(g);
        return (!oracle.survives(&EdgeMask::new(g.m()))).then(Vec::new);
    }
    (0..g.m())
        .into_par_iter()
        .map_init(
            || AvoidanceOracle::new(g),
            |oracle, first| {
                let mut mask = EdgeMask::new(g.m());
                let mut subsets = PrefixedCombinations::new(g.m(), s, first);
                while let Some(ids) = subsets.next_subset() {
                    fill(&mut mask, ids);
                    if !oracle.survives(&mask) {
                        return Some(ids.to_vec());
                    }
                }
                None
            },
        )
        .find_map_first(|found| found)
}

/// Every `s`-subset of edge indices whose removal leaves no perfect
/// matching, in lexicographic order.
pub(crate) fn all_preclusion_sets(g: &Graph, s: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return first_preclusion_set(g, 0).into_iter().collect();
    }
    (0..g.m())
        .into_par_iter()
        .map_init(
            || AvoidanceOracle::new(g),
            |oracle, first| {
                let mut out = Vec::new();
                let mut mask = EdgeMask::new(g.m());
                let mut subsets = PrefixedCombinations::new(g.m(), s, first);
                while let Some(ids) = subsets.next_subset() {
                    fill(&mut mask, ids);
                    if !oracle.survives(&mask) {
                        out.push(ids.to_vec());
                    }
                }
                out
            },
        )
        .flatten_iter()
        .collect()
}

fn fill(mask: &mut EdgeMask, ids: &[usize]) {
    mask.clear();
    for &id in ids {
        mask.insert(id);
    }
}
