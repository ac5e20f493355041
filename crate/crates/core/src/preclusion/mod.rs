//! Matching preclusion number, optimal preclusion sets and certificates.

mod enumerate;
mod hitting;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::EdgeMask;
use crate::combinatorics::binomial;
use crate::graph::{EdgeSet, Graph, GraphError};
use crate::matching::{hall_witness_avoiding, tutte_witness, AvoidanceOracle, MatchingError, Witness, DEFAULT_WITNESS_BUDGET};
use crate::structure::edge_connectivity;

pub const DEFAULT_SUBSET_BUDGET: u64 = 5_000_000;
pub const DEFAULT_NODE_BUDGET: u64 = 2_000_000;
pub const DEFAULT_SOLUTION_CAP: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreclusionError {
    #[error("odd order: {0} vertices")]
    OddOrder(usize),
    #[error("subset enumeration needs {needed} tests, budget is {budget}")]
    SubsetBudget { needed: u128, budget: u64 },
    #[error("branch and bound exceeded {0} nodes")]
    NodeBudget(u64),
    #[error("backends disagree: {0}")]
    BackendMismatch(String),
    #[error("reported set {0} is not a minimal preclusion set")]
    NotMinimal(EdgeSet),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Matching(#[from] MatchingError),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    /// Subset enumeration when `C(|E|, δ)` fits the subset budget, else
    /// branch and bound.
    #[default]
    Auto,
    Enumeration,
    HittingSet,
    Both,
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "auto" => Ok(Backend::Auto),
            "enum" | "enumeration" => Ok(Backend::Enumeration),
            "hitting" | "hitting-set" => Ok(Backend::HittingSet),
            "both" => Ok(Backend::Both),
            other => Err(format!("unknown backend {other:?}; expected auto, enum, hitting or both")),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Auto => "auto",
            Backend::Enumeration => "enumeration",
            Backend::HittingSet => "hitting-set",
            Backend::Both => "both",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub backend: Backend,
    pub subset_budget: u64,
    pub node_budget: u64,
    /// Enumeration may exceed the subset budget.
    pub force: bool,
    pub solution_cap: usize,
    pub witness_budget: u64,
    /// Start the search at the Plesník bound when it applies.
    pub use_plesnik: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            backend: Backend::Auto,
            subset_budget: DEFAULT_SUBSET_BUDGET,
            node_budget: DEFAULT_NODE_BUDGET,
            force: false,
            solution_cap: DEFAULT_SOLUTION_CAP,
            witness_budget: DEFAULT_WITNESS_BUDGET,
            use_plesnik: true,
        }
    }
}

/// Lower bound `k` for `mp` when `g` is `k`-regular of even order and
/// `(k-1)`-edge-connected.
pub fn plesnik_precondition(g: &Graph) -> Option<usize> {
    let k = g.regular_degree()?;
    (k >= 1 && g.n() % 2 == 0 && edge_connectivity(g) + 1 >= k).then_some(k)
}

/// Backend actually run after resolving [`Backend::Auto`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendUsed {
    Enumeration,
    HittingSet,
    Both,
    /// Lower and upper bound coincide; no search ran.
    Bounds,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MpResult {
    pub mp: usize,
    pub sample: EdgeSet,
    /// The graph has no perfect matching to begin with.
    pub degenerate: bool,
    pub lower_bound: usize,
    pub upper_bound: usize,
    pub backend: BackendUsed,
}

fn resolve(g: &Graph, opts: &SolverOptions) -> Backend {
    match opts.backend {
        Backend::Auto if binomial(g.m(), g.min_degree()) <= opts.subset_budget as u128 => Backend::Enumeration,
        Backend::Auto => Backend::HittingSet,
        b => b,
    }
}

fn check_subset_budget(g: &Graph, opts: &SolverOptions) -> Result<(), PreclusionError> {
    let needed = binomial(g.m(), g.min_degree());
    if !opts.force && needed > opts.subset_budget as u128 {
        return Err(PreclusionError::SubsetBudget {
            needed,
            budget: opts.subset_budget,
        });
    }
    Ok(())
}

fn has_pm(g: &Graph) -> bool {
    AvoidanceOracle::new(g).survives(&EdgeMask::new(g.m()))
}

/// `mp(g)` with one optimal set. A graph without perfect matchings gets
/// `mp = 0` and the degenerate flag.
pub fn mp_exact(g: &Graph, opts: &SolverOptions) -> Result<MpResult, PreclusionError> {
    if g.n() % 2 == 1 {
        return Err(PreclusionError::OddOrder(g.n()));
    }
    let delta = g.min_degree();
    if !has_pm(g) {
        return Ok(MpResult {
            mp: 0,
            sample: EdgeSet::new(),
            degenerate: true,
            lower_bound: 0,
            upper_bound: 0,
            backend: BackendUsed::Bounds,
        });
    }
    let star = g.star((0..g.n()).find(|&v| g.degree(v) == delta).expect("n >= 1"));
    let lower = if opts.use_plesnik {
        plesnik_precondition(g).unwrap_or(1)
    } else {
        1
    };
    let done = |mp: usize, sample: EdgeSet, backend| MpResult {
        mp,
        sample,
        degenerate: false,
        lower_bound: lower,
        upper_bound: delta,
        backend,
    };
    if lower >= delta {
        return Ok(done(delta, star, BackendUsed::Bounds));
    }
    let by_enum = || -> Result<(usize, Option<Vec<usize>>), PreclusionError> {
        check_subset_budget(g, opts)?;
        for s in lower..delta {
            if let Some(ids) = enumerate::first_preclusion_set(g, s) {
                return Ok((s, Some(ids)));
            }
        }
        Ok((delta, None))
    };
    let by_hitting = || -> Result<(usize, Option<Vec<usize>>), PreclusionError> {
        for s in lower..delta {
            let out = hitting::search(g, s, false, opts.node_budget)
                .map_err(|_| PreclusionError::NodeBudget(opts.node_budget))?;
            if let Some(ids) = out.into_iter().next() {
                return Ok((s, Some(ids)));
            }
        }
        Ok((delta, None))
    };
    let (mp, ids, used) = match resolve(g, opts) {
        Backend::Enumeration => {
            let (mp, ids) = by_enum()?;
            (mp, ids, BackendUsed::Enumeration)
        }
        Backend::HittingSet => {
            let (mp, ids) = by_hitting()?;
            (mp, ids, BackendUsed::HittingSet)
        }
        _ => {
            let (a, ids) = by_enum()?;
            let (b, _) = by_hitting()?;
            if a != b {
                return Err(PreclusionError::BackendMismatch(format!("enumeration mp {a}, hitting-set mp {b}")));
            }
            (a, ids, BackendUsed::Both)
        }
    };
    let sample = ids.map_or(star, |ids| g.edges_of_ids(&ids));
    Ok(done(mp, sample, used))
}

/// All preclusion sets of size `mp`, lexicographic by edge indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionList {
    pub solutions: Vec<EdgeSet>,
    pub total: u64,
    pub truncated: bool,
}

/// Every edge set of size `mp` whose removal leaves no perfect matching.
/// The full list is always computed so counts are exact; only the returned
/// listing is capped.
pub fn optimal_solutions(
    g: &Graph,
    mp: usize,
    opts: &SolverOptions,
) -> Result<(SolutionList, BackendUsed), PreclusionError> {
    let by_enum = || -> Result<Vec<Vec<usize>>, PreclusionError> {
        let needed = binomial(g.m(), mp);
        if !opts.force && needed > opts.subset_budget as u128 {
            return Err(PreclusionError::SubsetBudget {
                needed,
                budget: opts.subset_budget,
            });
        }
        Ok(enumerate::all_preclusion_sets(g, mp))
    };
    let by_hitting = || -> Result<Vec<Vec<usize>>, PreclusionError> {
        hitting::search(g, mp, true, opts.node_budget)
            .map_err(|_| PreclusionError::NodeBudget(opts.node_budget))
    };
    let (all, used) = match resolve(g, opts) {
        Backend::Enumeration => (by_enum()?, BackendUsed::Enumeration),
        Backend::HittingSet => (by_hitting()?, BackendUsed::HittingSet),
        _ => {
            let a = by_enum()?;
            let b = by_hitting()?;
            if a != b {
                return Err(PreclusionError::BackendMismatch(format!(
                    "enumeration found {} optimal sets, hitting-set found {}",
                    a.len(),
                    b.len()
                )));
            }
            (a, BackendUsed::Both)
        }
    };
    let total = all.len() as u64;
    let truncated = all.len() > opts.solution_cap;
    let solutions = all
        .iter()
        .take(opts.solution_cap)
        .map(|ids| g.edges_of_ids(ids))
        .collect();
    Ok((
        SolutionList {
            solutions,
            total,
            truncated,
        },
        used,
    ))
}

/// Perfect-matching tests memoized by deleted-edge set.
pub struct MemoOracle<'g> {
    inner: AvoidanceOracle<'g>,
    memo: HashMap<EdgeMask, bool>,
}

impl<'g> MemoOracle<'g> {
    pub fn new(g: &'g Graph) -> Self {
        MemoOracle {
            inner: AvoidanceOracle::new(g),
            memo: HashMap::new(),
        }
    }

    pub fn survives(&mut self, deleted: &EdgeMask) -> bool {
        if let Some(&hit) = self.memo.get(deleted) {
            return hit;
        }
        let r = self.inner.survives(deleted);
        self.memo.insert(deleted.clone(), r);
        r
    }

    /// `g - f` has no perfect matching but `g - f + e` has one for every
    /// `e` in `f`.
    pub fn is_minimal_preclusion(&mut self, mask: &EdgeMask) -> bool {
        if self.survives(mask) {
            return false;
        }
        let mut probe = mask.clone();
        for e in mask.iter() {
            probe.remove(e);
            let back = self.survives(&probe);
            probe.insert(e);
            if !back {
                return false;
            }
        }
        true
    }
}

/// Hall witness on bipartite hosts, Tutte witness otherwise.
pub fn certificate(g: &Graph, f: &EdgeSet, witness_budget: u64) -> Result<Option<Witness>, PreclusionError> {
    if g.is_bipartite() {
        Ok(hall_witness_avoiding(g, f)?)
    } else {
        match tutte_witness(&g.without_edges(f)?, witness_budget) {
            Ok(w) => Ok(w),
            Err(MatchingError::BudgetExhausted(_)) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub solution: EdgeSet,
    /// `None` when the witness search ran out of budget.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreclusionReport {
    pub mp: usize,
    pub degenerate: bool,
    pub lower_bound: usize,
    pub upper_bound: usize,
    /// All optimal sets were enumerated.
    pub complete: bool,
    pub solution_count: Option<u64>,
    pub trivial_count: Option<u64>,
    pub nontrivial_count: Option<u64>,
    pub optimal_solutions: Vec<EdgeSet>,
    pub truncated: bool,
    pub nontrivial_solutions: Vec<EdgeSet>,
    pub super_matched: Option<bool>,
    pub certificates: Vec<Certificate>,
    pub backend: BackendUsed,
    /// Why enumeration stopped, when incomplete.
    pub incomplete_reason: Option<String>,
}

/// Full classification: `mp`, every optimal set, trivial versus
/// non-trivial, and a certificate for each non-trivial set. When only the
/// enumeration of optimal sets exceeds its budget, the report still
/// carries `mp` and is marked incomplete.
pub fn classify(g: &Graph, opts: &SolverOptions) -> Result<PreclusionReport, PreclusionError> {
    let mp = mp_exact(g, opts)?;
    let mut report = PreclusionReport {
        mp: mp.mp,
        degenerate: mp.degenerate,
        lower_bound: mp.lower_bound,
        upper_bound: mp.upper_bound,
        complete: false,
        solution_count: None,
        trivial_count: None,
        nontrivial_count: None,
        optimal_solutions: Vec::new(),
        truncated: false,
        nontrivial_solutions: Vec::new(),
        super_matched: None,
        certificates: Vec::new(),
        backend: mp.backend,
        incomplete_reason: None,
    };
    if mp.degenerate {
        report.complete = true;
        report.solution_count = Some(1);
        report.trivial_count = Some(0);
        report.nontrivial_count = Some(1);
        report.optimal_solutions = vec![EdgeSet::new()];
        report.nontrivial_solutions = vec![EdgeSet::new()];
        report.super_matched = Some(false);
        return Ok(report);
    }
    let (list, used) = match optimal_solutions(g, mp.mp, opts) {
        Ok(r) => r,
        Err(e @ (PreclusionError::SubsetBudget { .. } | PreclusionError::NodeBudget(_))) => {
            report.incomplete_reason = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    };
    if report.backend == BackendUsed::Bounds {
        report.backend = used;
    }
    let mut oracle = MemoOracle::new(g);
    let mut nontrivial = Vec::new();
    for f in &list.solutions {
        let mask = g.edge_mask(f)?;
        if !oracle.is_minimal_preclusion(&mask) {
            return Err(PreclusionError::NotMinimal(f.clone()));
        }
        if g.star_center(f).is_none() {
            nontrivial.push(f.clone());
        }
    }
    // counts from the capped list are exact only when nothing was cut off
    let trivial = if list.truncated {
        count_star_solutions(g, mp.mp, &mut oracle)
    } else {
        (list.solutions.len() - nontrivial.len()) as u64
    };
    let nontrivial_total = list.total - trivial;
    for f in &nontrivial {
        report.certificates.push(Certificate {
            solution: f.clone(),
            witness: certificate(g, f, opts.witness_budget)?,
        });
    }
    report.complete = true;
    report.solution_count = Some(list.total);
    report.trivial_count = Some(trivial);
    report.nontrivial_count = Some(nontrivial_total);
    report.super_matched = Some(nontrivial_total == 0);
    report.truncated = list.truncated;
    report.optimal_solutions = list.solutions;
    report.nontrivial_solutions = nontrivial;
    Ok(report)
}

fn count_star_solutions(g: &Graph, mp: usize, oracle: &mut MemoOracle<'_>) -> u64 {
    (0..g.n())
        .filter(|&v| g.degree(v) == mp)
        .filter(|&v| !oracle.survives(&g.edge_mask(&g.star(v)).expect("star edges exist")))
        .count() as u64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub is_preclusion: bool,
    pub is_minimal: bool,
    pub is_optimal: bool,
    pub is_trivial: bool,
    pub mp: usize,
    pub witness: Option<Witness>,
}

/// Checks a proposed preclusion set against `g`.
pub fn verify_preclusion_set(g: &Graph, f: &EdgeSet, opts: &SolverOptions) -> Result<Verification, PreclusionError> {
    let mask = g.edge_mask(f)?;
    let mut oracle = MemoOracle::new(g);
    let is_preclusion = !oracle.survives(&mask);
    let is_minimal = is_preclusion && oracle.is_minimal_preclusion(&mask);
    let mp = mp_exact(g, opts)?.mp;
    let witness = if is_preclusion {
        certificate(g, f, opts.witness_budget)?
    } else {
        None
    };
    Ok(Verification {
        is_preclusion,
        is_minimal,
        is_optimal: is_preclusion && f.len() == mp,
        is_trivial: g.star_center(f).is_some(),
        mp,
        witness,
    })
}

/// Result of checking every `(k-1)`-edge deletion of a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlesnikCheck {
    pub k: usize,
    pub subsets: u128,
    /// Deletions that left no perfect matching.
    pub violations: Vec<EdgeSet>,
}

/// Exhaustively deletes every `(k-1)`-subset of edges of a `k`-regular
/// graph and records those that destroy all perfect matchings. Returns
/// `None` when `g` is not regular or the subset count exceeds `limit`.
pub fn plesnik_exhaustive(g: &Graph, limit: u128) -> Option<PlesnikCheck> {
    let k = g.regular_degree().filter(|&k| k >= 1)?;
    let subsets = binomial(g.m(), k - 1);
    if subsets > limit || g.n() % 2 == 1 {
        return None;
    }
    let violations = enumerate::all_preclusion_sets(g, k - 1)
        .iter()
        .map(|ids| g.edges_of_ids(ids))
        .collect();
    Some(PlesnikCheck { k, subsets, violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::FamilySpec;

    fn gen(s: &str) -> Graph {
        s.parse::<FamilySpec>().unwrap().generate().unwrap()
    }

    fn raw(backend: Backend) -> SolverOptions {
        SolverOptions {
            backend,
            use_plesnik: false,
            ..SolverOptions::default()
        }
    }

    #[test]
    fn plesnik_bounds() {
        assert_eq!(plesnik_precondition(&gen("petersen")), Some(3));
        assert_eq!(plesnik_precondition(&gen("cycle:6")), Some(2));
        let paw = Graph::new(4, [(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert_eq!(plesnik_precondition(&paw), None);
    }

    #[test]
    fn small_mp_values() {
        for backend in [Backend::Enumeration, Backend::HittingSet, Backend::Both] {
            let o = raw(backend);
            assert_eq!(mp_exact(&gen("petersen"), &o).unwrap().mp, 3);
            assert_eq!(mp_exact(&gen("complete:2"), &o).unwrap().mp, 1);
            let k4 = mp_exact(&gen("complete:4"), &o).unwrap();
            assert_eq!(k4.mp, 3);
            assert!(!AvoidanceOracle::new(&gen("complete:4")).survives(&gen("complete:4").edge_mask(&k4.sample).unwrap()));
        }
        assert_eq!(mp_exact(&gen("cycle:5"), &raw(Backend::Auto)), Err(PreclusionError::OddOrder(5)));
        let two_k2_and_path = Graph::new(4, [(0, 1), (1, 2)]).unwrap();
        let d = mp_exact(&two_k2_and_path, &raw(Backend::Auto)).unwrap();
        assert!(d.degenerate);
        assert_eq!(d.mp, 0);
    }

    #[test]
    fn solution_lists() {
        let o = raw(Backend::Both);
        let (c4, _) = optimal_solutions(&gen("cycle:4"), 2, &o).unwrap();
        let stars: Vec<EdgeSet> = (0..4).map(|v| gen("cycle:4").star(v)).collect();
        let mut expected = stars.clone();
        let g = gen("cycle:4");
        expected.sort_by_key(|s| g.edge_ids(s).unwrap());
        assert_eq!(c4.solutions, expected);

        let c6 = gen("cycle:6");
        let (list, _) = optimal_solutions(&c6, 2, &o).unwrap();
        assert!(list.solutions.contains(&EdgeSet::from_pairs([(0, 1), (3, 4)])));
        assert_eq!(list.total, 9);

        let (k4, _) = optimal_solutions(&gen("complete:4"), 3, &o).unwrap();
        assert_eq!(k4.total, 8);
    }

    #[test]
    fn classification() {
        let o = SolverOptions::default();
        let p = classify(&gen("petersen"), &o).unwrap();
        assert_eq!(p.mp, 3);
        assert_eq!(p.super_matched, Some(false));
        assert!(p.certificates.iter().all(|c| matches!(c.witness, Some(Witness::Tutte { .. }))));
        let fq4 = classify(&gen("fq:4"), &o).unwrap();
        assert_eq!((fq4.mp, fq4.super_matched), (4, Some(true)));
        let c6 = classify(&gen("cycle:6"), &o).unwrap();
        assert_eq!((c6.mp, c6.super_matched), (2, Some(false)));
        assert_eq!(c6.trivial_count, Some(6));
    }

    #[test]
    fn capped_listing_keeps_exact_counts() {
        let o = SolverOptions {
            solution_cap: 2,
            ..SolverOptions::default()
        };
        let c6 = classify(&gen("cycle:6"), &o).unwrap();
        assert!(c6.truncated);
        assert_eq!(c6.optimal_solutions.len(), 2);
        assert_eq!((c6.solution_count, c6.trivial_count, c6.nontrivial_count), (Some(9), Some(6), Some(3)));
    }

    #[test]
    fn verification() {
        let o = SolverOptions::default();
        let v = verify_preclusion_set(&gen("cycle:6"), &EdgeSet::from_pairs([(0, 1), (3, 4)]), &o).unwrap();
        assert!(v.is_preclusion && v.is_optimal && v.is_minimal && !v.is_trivial);
        assert!(matches!(v.witness, Some(Witness::Hall { side: 1, .. })));

        let v = verify_preclusion_set(&gen("cycle:4"), &EdgeSet::from_pairs([(0, 1), (2, 3)]), &o).unwrap();
        assert_eq!((v.is_preclusion, v.is_optimal, v.is_trivial), (false, false, false));
        assert_eq!(v.witness, None);

        let prism = gen("circulant:6:2,4,3");
        let v = verify_preclusion_set(&prism, &EdgeSet::from_pairs([(0, 4), (0, 3), (3, 5)]), &o).unwrap();
        assert!(v.is_preclusion && v.is_optimal && !v.is_trivial);
        match v.witness {
            Some(Witness::Tutte { s, .. }) => assert_eq!(s.to_vec(), vec![1, 2]),
            other => panic!("{other:?}"),
        }

        assert!(matches!(
            verify_preclusion_set(&gen("cycle:4"), &EdgeSet::from_pairs([(0, 2)]), &o),
            Err(PreclusionError::Graph(GraphError::NotAnEdge(0, 2)))
        ));
    }

    #[test]
    fn plesnik_on_petersen() {
        let c = plesnik_exhaustive(&gen("petersen"), 1_000_000).unwrap();
        assert_eq!(c.subsets, 105);
        assert!(c.violations.is_empty());
    }
}
