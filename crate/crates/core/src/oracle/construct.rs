//! Explicit non-trivial optimal preclusion sets for each exceptional class.
//!
//! Circulant constructions are written on the 1-indexed labels of `Z_m`
//! and translated by `l -> (l - 1) mod m`, then carried onto the input
//! graph through an isomorphism from the canonical member.

use serde::Serialize;

use super::{ExceptionClass, OracleError};
use crate::bitset::{EdgeMask, VertexSet};
use crate::combinatorics::Combinations;
use crate::family::FamilySpec;
use crate::graph::{EdgeSet, Graph};
use crate::matching::{tutte_witness, AvoidanceOracle, Witness, DEFAULT_WITNESS_BUDGET};
use crate::preclusion::{verify_preclusion_set, SolverOptions};
use crate::structure::{find_isomorphism, DEFAULT_ISO_BUDGET};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionConstruction {
    pub case: char,
    pub f: EdgeSet,
    /// Tutte set of `G - F`.
    pub s: Option<VertexSet>,
}

fn label(m: usize, l: usize) -> usize {
    (l + m - 1) % m
}

fn pairs(m: usize, ls: &[(usize, usize)]) -> EdgeSet {
    EdgeSet::from_pairs(ls.iter().map(|&(a, b)| (label(m, a), label(m, b))))
}

fn labels(m: usize, ls: impl IntoIterator<Item = usize>) -> VertexSet {
    ls.into_iter().map(|l| label(m, l)).collect()
}

/// Cycle order starting at 0 and stepping first to the smaller neighbour.
fn cycle_order(g: &Graph) -> Vec<usize> {
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    while order.len() < g.n() {
        let next = g.neighbors(cur).find(|&w| w != prev && w != 0).expect("cycle continues");
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

/// The lexicographically least preclusion set of size 3 on the Petersen
/// graph that is not a vertex star, by edge index.
fn petersen_set(p: &Graph) -> EdgeSet {
    let mut oracle = AvoidanceOracle::new(p);
    let mut subsets = Combinations::new(p.m(), 3);
    while let Some(ids) = subsets.next_subset() {
        let f = p.edges_of_ids(ids);
        if p.star_center(&f).is_none() && !oracle.survives(&EdgeMask::from_indices(p.m(), ids.iter().copied())) {
            return f;
        }
    }
    unreachable!("the Petersen graph has non-trivial optimal sets")
}

fn tutte_set(g: &Graph, f: &EdgeSet) -> Result<Option<VertexSet>, OracleError> {
    let h = g.without_edges(f).map_err(crate::preclusion::PreclusionError::from)?;
    Ok(
        match tutte_witness(&h, DEFAULT_WITNESS_BUDGET).map_err(crate::preclusion::PreclusionError::from)? {
            Some(Witness::Tutte { s, .. }) => Some(s),
            _ => None,
        },
    )
}

/// The construction on the canonical member of a circulant class.
fn on_canonical(class: &ExceptionClass) -> Result<(Graph, EdgeSet, Option<VertexSet>), OracleError> {
    let canon = class.canonical().expect("circulant or Petersen class").generate()?;
    let (f, s) = match *class {
        ExceptionClass::MoebiusLadder { n } => {
            let m = 4 * n;
            let f = pairs(m, &[(1, 2), (1, 2 * n + 1), (2 * n + 1, 2 * n)]);
            let s = labels(m, (1..n).map(|i| 2 * i + 1).chain((n + 1..=2 * n).map(|i| 2 * i)));
            (f, Some(s))
        }
        ExceptionClass::OddPrism { n } => {
            let m = 4 * n + 2;
            let f = pairs(m, &[(4 * n + 1, 1), (1, 2 * n + 2), (2 * n + 2, 2 * n + 4)]);
            let s = labels(m, (1..=n).map(|i| 4 * i - 1).chain((1..=n).map(|i| 2 * n + 2 + 4 * i)));
            (f, Some(s))
        }
        ExceptionClass::QuadCirculant { n } => {
            let m = 4 * n + 2;
            let f = pairs(m, &[(1, 2), (2, 2 * n + 2), (2 * n + 2, 2 * n + 3), (2 * n + 3, 1)]);
            let s = labels(m, (1..=n).map(|i| 2 * i + 1).chain((n + 2..=2 * n + 1).map(|i| 2 * i)));
            (f, Some(s))
        }
        ExceptionClass::Petersen => {
            let f = petersen_set(&canon);
            let s = tutte_set(&canon, &f)?;
            (f, s)
        }
        _ => unreachable!("handled on the input graph"),
    };
    Ok((canon, f, s))
}

/// A non-trivial optimal preclusion set for `g`, which must belong to
/// `class`.
pub fn construct_exception_solution(class: &ExceptionClass, g: &Graph) -> Result<ExceptionConstruction, OracleError> {
    let mismatch = || OracleError::ClassMismatch(class.name().to_string());
    let (f, s) = match class {
        ExceptionClass::KCliqueOddK { clique } => {
            let k = g.regular_degree().ok_or_else(mismatch)?;
            let is_clique = clique.iter().all(|v| (*g.adj(v) & *clique).len() + 1 == clique.len());
            if clique.len() != k || !is_clique {
                return Err(mismatch());
            }
            let f = EdgeSet::from_pairs(
                g.edges()
                    .iter()
                    .filter(|e| clique.contains(e.u) != clique.contains(e.v))
                    .map(|e| (e.u, e.v)),
            );
            (f, None)
        }
        ExceptionClass::LongCycle { length } => {
            if !g.is_cycle() || g.n() != *length || *length < 5 {
                return Err(mismatch());
            }
            let v = cycle_order(g);
            (EdgeSet::from_pairs([(v[0], v[1]), (v[3], v[4])]), None)
        }
        _ => {
            let (canon, f, s) = on_canonical(class)?;
            let phi = find_isomorphism(&canon, g, DEFAULT_ISO_BUDGET)?.ok_or_else(mismatch)?;
            let f = EdgeSet::from_pairs(f.iter().map(|e| (phi[e.u], phi[e.v])));
            let s = s.map(|s| s.iter().map(|v| phi[v]).collect());
            (f, s)
        }
    };
    Ok(ExceptionConstruction { case: class.case(), f, s })
}

/// Independent verification of a construction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionCheck {
    pub size: usize,
    pub k: Option<usize>,
    pub preclusion: bool,
    pub optimal: bool,
    pub minimal: bool,
    pub nontrivial: bool,
    pub tutte_set_size: Option<usize>,
    /// Odd components of `(G - F) - S`.
    pub odd_components: Option<usize>,
    pub all_singletons: Option<bool>,
}

impl ConstructionCheck {
    /// Size `k`, optimal, minimal, non-trivial; with a Tutte set, exactly
    /// `|S| + 2` odd components, all of them single vertices when
    /// `singletons_required`.
    pub fn passed(&self, singletons_required: bool) -> bool {
        let tutte_ok = match (self.tutte_set_size, self.odd_components) {
            (Some(s), Some(c)) => c == s + 2 && (!singletons_required || self.all_singletons == Some(true)),
            _ => !singletons_required,
        };
        self.preclusion && self.optimal && self.minimal && self.nontrivial && Some(self.size) == self.k && tutte_ok
    }
}

pub fn check_construction(
    g: &Graph,
    c: &ExceptionConstruction,
    opts: &SolverOptions,
) -> Result<ConstructionCheck, OracleError> {
    let v = verify_preclusion_set(g, &c.f, opts)?;
    let (odd_components, all_singletons) = match &c.s {
        Some(s) => {
            let h = g.without_edges(&c.f).map_err(crate::preclusion::PreclusionError::from)?;
            let comps = h.components_within(&(g.vertices() - *s));
            (
                Some(comps.iter().filter(|c| c.len() % 2 == 1).count()),
                Some(comps.iter().all(|c| c.len() == 1)),
            )
        }
        None => (None, None),
    };
    Ok(ConstructionCheck {
        size: c.f.len(),
        k: g.regular_degree(),
        preclusion: v.is_preclusion,
        optimal: v.is_optimal,
        minimal: v.is_minimal,
        nontrivial: !v.is_trivial,
        tutte_set_size: c.s.map(|s| s.len()),
        odd_components,
        all_singletons,
    })
}

/// Edge list of the derived Petersen set on the Kneser labelling, for
/// pinning in fixtures.
pub fn petersen_reference() -> (EdgeSet, Option<VertexSet>) {
    let p = FamilySpec::Petersen.generate().expect("valid spec");
    let f = petersen_set(&p);
    let s = tutte_set(&p, &f).ok().flatten();
    (f, s)
}
