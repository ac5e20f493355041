//! Named graph collections for census runs.
//!
//! A selector is `default`, `circulants:m<=N`, or a comma-separated list
//! of family specs. Commas inside a spec's parameter list are kept: a new
//! spec starts only at a comma followed by a letter.

use crate::family::{FamilyError, FamilySpec};
use crate::graph::Graph;
use crate::structure::{find_isomorphism, invariants, StructureError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub spec: FamilySpec,
    pub graph: Graph,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("bad corpus selector {0:?}")]
    Selector(String),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

pub const DEFAULT_SELECTOR: &str = "default";

/// The reference corpus of vertex-transitive topologies.
pub fn default_specs() -> Vec<FamilySpec> {
    let mut out: Vec<FamilySpec> = (4..=12).map(FamilySpec::Cycle).collect();
    out.extend([4, 6, 8].map(FamilySpec::Complete));
    out.extend([2, 3, 4].map(|a| FamilySpec::CompleteBipartite(a, a)));
    out.push(FamilySpec::Petersen);
    let circ = |m: usize, gens: &[usize]| FamilySpec::circulant(m, gens.iter().copied()).expect("symmetric");
    out.extend([8, 12, 16].map(|m| circ(m, &[1, m - 1, m / 2])));
    out.extend([6, 10, 14].map(|m| circ(m, &[2, m - 2, m / 2])));
    out.extend([6, 10].map(|m| circ(m, &[1, m - 1, (m - 2) / 2, (m + 2) / 2])));
    out.extend([3, 4].map(FamilySpec::Hypercube));
    out.extend([3, 4, 5].map(FamilySpec::FoldedCube));
    out.extend([(2, 2), (2, 4), (3, 2)].map(|(d, q)| FamilySpec::Hamming { d, q }));
    out.extend([3, 4].map(FamilySpec::HalvedCube));
    out.push(FamilySpec::Torus(vec![3, 4]));
    out.push(FamilySpec::Torus(vec![4, 4]));
    out
}

/// One representative per isomorphism class of connected circulants
/// `Z_m(S)` with `3 <= m <= max_m`; the first spec in generator order is kept.
pub fn circulant_specs(max_m: usize, iso_budget: u64) -> Result<Vec<FamilySpec>, CorpusError> {
    let mut out = Vec::new();
    for m in 3..=max_m {
        let half = m / 2;
        let mut kept: Vec<(Graph, crate::structure::Invariants)> = Vec::new();
        for bits in 1u64..(1 << half) {
            let mut gens = Vec::new();
            for g in 1..=half {
                if bits >> (g - 1) & 1 == 1 {
                    gens.push(g);
                    if g != m - g {
                        gens.push(m - g);
                    }
                }
            }
            let spec = FamilySpec::circulant(m, gens)?;
            let graph = spec.generate()?;
            if !graph.is_connected() {
                continue;
            }
            let inv = invariants(&graph);
            let mut seen = false;
            for (h, hinv) in &kept {
                if *hinv == inv && find_isomorphism(&graph, h, iso_budget)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if !seen {
                kept.push((graph, inv));
                out.push(spec);
            }
        }
    }
    Ok(out)
}

fn split_specs(list: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, c) in list.char_indices() {
        if c == ',' && list[i + 1..].trim_start().starts_with(|ch: char| ch.is_ascii_alphabetic()) {
            parts.push(list[start..i].trim());
            start = i + 1;
        }
    }
    parts.push(list[start..].trim());
    parts
}

pub fn select(selector: &str, iso_budget: u64) -> Result<Vec<CorpusEntry>, CorpusError> {
    let selector = selector.trim();
    let specs = if selector == DEFAULT_SELECTOR {
        default_specs()
    } else if let Some(bound) = selector.strip_prefix("circulants:m<=") {
        let max_m = bound
            .trim()
            .parse::<usize>()
            .map_err(|_| CorpusError::Selector(selector.to_string()))?;
        circulant_specs(max_m, iso_budget)?
    } else {
        split_specs(selector)
            .into_iter()
            .map(str::parse::<FamilySpec>)
            .collect::<Result<_, _>>()?
    };
    specs
        .into_iter()
        .map(|spec| {
            let graph = spec.generate()?;
            Ok(CorpusEntry { spec, graph })
        })
        .collect()
}
