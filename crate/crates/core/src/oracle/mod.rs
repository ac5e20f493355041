//! The classification of super matched vertex-transitive graphs as
//! executable logic: hypotheses, exception recognition, prediction and
//! explicit non-trivial optimal sets for every exceptional class.

mod construct;
mod validate;

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::family::{FamilyError, FamilySpec};
use crate::graph::Graph;
use crate::preclusion::PreclusionError;
use crate::structure::{automorphism_orbits, find_clique, find_isomorphism, StructureError, DEFAULT_ISO_BUDGET};

pub use construct::{
    check_construction, construct_exception_solution, petersen_reference, ConstructionCheck, ExceptionConstruction,
};
pub use validate::{
    cross_validate, family_claim, structure_partition_check, AgreementRecord, FamilyClaim, PartitionCheck, Verdict,
    PARTITION_MAX_VERTICES,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("{0} does not match the graph")]
    ClassMismatch(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Preclusion(#[from] PreclusionError),
}

/// The exceptional classes: graphs satisfying the hypotheses that still
/// have non-trivial optimal preclusion sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ExceptionClass {
    /// A clique on `k` vertices with `k` odd and `k <= n - 2`.
    KCliqueOddK { clique: VertexSet },
    LongCycle { length: usize },
    /// `Z_{4n}(1, 4n-1, 2n)`.
    MoebiusLadder { n: usize },
    /// `Z_{4n+2}(2, 4n, 2n+1)`.
    OddPrism { n: usize },
    /// `Z_{4n+2}(1, 4n+1, 2n, 2n+2)`.
    QuadCirculant { n: usize },
    Petersen,
}

impl ExceptionClass {
    pub fn name(&self) -> &'static str {
        match self {
            ExceptionClass::KCliqueOddK { .. } => "k_clique_odd_k",
            ExceptionClass::LongCycle { .. } => "long_cycle",
            ExceptionClass::MoebiusLadder { .. } => "moebius_ladder",
            ExceptionClass::OddPrism { .. } => "odd_prism",
            ExceptionClass::QuadCirculant { .. } => "quad_circulant",
            ExceptionClass::Petersen => "petersen",
        }
    }

    /// Construction case label, `a` through `f`.
    pub fn case(&self) -> char {
        match self {
            ExceptionClass::KCliqueOddK { .. } => 'a',
            ExceptionClass::LongCycle { .. } => 'b',
            ExceptionClass::MoebiusLadder { .. } => 'c',
            ExceptionClass::OddPrism { .. } => 'd',
            ExceptionClass::QuadCirculant { .. } => 'e',
            ExceptionClass::Petersen => 'f',
        }
    }

    /// Canonical member of a circulant or Petersen class.
    pub fn canonical(&self) -> Option<FamilySpec> {
        let spec = match *self {
            ExceptionClass::MoebiusLadder { n } => FamilySpec::circulant(4 * n, [1, 4 * n - 1, 2 * n]),
            ExceptionClass::OddPrism { n } => FamilySpec::circulant(4 * n + 2, [2, 4 * n, 2 * n + 1]),
            ExceptionClass::QuadCirculant { n } => FamilySpec::circulant(4 * n + 2, [1, 4 * n + 1, 2 * n, 2 * n + 2]),
            ExceptionClass::Petersen => Ok(FamilySpec::Petersen),
            ExceptionClass::LongCycle { length } => Ok(FamilySpec::Cycle(length)),
            ExceptionClass::KCliqueOddK { .. } => return None,
        };
        spec.ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypotheses {
    pub connected: bool,
    pub k: Option<usize>,
    pub even_order: bool,
    pub vertex_transitive: bool,
}

impl Hypotheses {
    pub fn check(g: &Graph, iso_budget: u64) -> Result<Self, OracleError> {
        Ok(Hypotheses {
            connected: g.is_connected(),
            k: g.regular_degree(),
            even_order: g.n() % 2 == 0,
            vertex_transitive: automorphism_orbits(g, iso_budget)?.transitive,
        })
    }

    pub fn hold(&self) -> bool {
        self.connected && self.k.is_some() && self.even_order && self.vertex_transitive
    }

    fn failures(&self) -> String {
        let mut out = Vec::new();
        if !self.connected {
            out.push("disconnected");
        }
        if self.k.is_none() {
            out.push("not regular");
        }
        if !self.even_order {
            out.push("odd order");
        }
        if !self.vertex_transitive {
            out.push("not vertex-transitive");
        }
        out.join(", ")
    }
}

fn isomorphic_to(g: &Graph, class: &ExceptionClass, iso_budget: u64) -> Result<bool, OracleError> {
    let canon = class.canonical().expect("circulant or Petersen class").generate()?;
    Ok(find_isomorphism(&canon, g, iso_budget)?.is_some())
}

/// Every exception clause that holds for `g`, in priority order.
/// Assumes the hypotheses were checked.
pub fn exception_clauses(g: &Graph, iso_budget: u64) -> Result<Vec<ExceptionClass>, OracleError> {
    let n = g.n();
    let k = g.regular_degree().ok_or_else(|| OracleError::Hypothesis("not regular".into()))?;
    let mut out = Vec::new();
    if k % 2 == 1 && k + 2 <= n {
        if let Some(clique) = find_clique(g, k) {
            out.push(ExceptionClass::KCliqueOddK { clique });
        }
    }
    if k == 2 && n >= 6 {
        out.push(ExceptionClass::LongCycle { length: n });
    }
    let mut candidates = Vec::new();
    if k == 3 && n % 4 == 0 {
        candidates.push(ExceptionClass::MoebiusLadder { n: n / 4 });
    }
    if k == 3 && n % 4 == 2 && n >= 6 {
        candidates.push(ExceptionClass::OddPrism { n: (n - 2) / 4 });
    }
    if k == 3 && n == 10 {
        candidates.push(ExceptionClass::Petersen);
    }
    if k == 4 && n % 4 == 2 && n >= 6 {
        candidates.push(ExceptionClass::QuadCirculant { n: (n - 2) / 4 });
    }
    for c in candidates {
        if isomorphic_to(g, &c, iso_budget)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// First exception clause that holds, after verifying the hypotheses.
pub fn recognize_exception(g: &Graph, iso_budget: u64) -> Result<Option<ExceptionClass>, OracleError> {
    let hyp = Hypotheses::check(g, iso_budget)?;
    if !hyp.hold() {
        return Err(OracleError::Hypothesis(hyp.failures()));
    }
    Ok(exception_clauses(g, iso_budget)?.into_iter().next())
}

/// How [`predict`] reached its verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Bipartite and not a cycle: super matched without further tests.
    BipartiteNonCycle,
    /// Degree at least five: only the odd-clique clause can apply.
    HighDegree,
    /// All exception clauses evaluated.
    FullRecognition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OraclePrediction {
    pub applicable: bool,
    pub hypotheses: Hypotheses,
    pub predicted_mp: Option<usize>,
    pub super_matched: Option<bool>,
    pub exception: Option<ExceptionClass>,
    pub route: Option<Route>,
}

impl OraclePrediction {
    /// The fields that do not depend on vertex labels.
    pub fn label_free(&self) -> (bool, Option<usize>, Option<bool>, Option<&'static str>, Option<Route>) {
        (
            self.applicable,
            self.predicted_mp,
            self.super_matched,
            self.exception.as_ref().map(ExceptionClass::name),
            self.route,
        )
    }
}

pub fn predict(g: &Graph, iso_budget: u64) -> Result<OraclePrediction, OracleError> {
    let hypotheses = Hypotheses::check(g, iso_budget)?;
    if !hypotheses.hold() {
        return Ok(OraclePrediction {
            applicable: false,
            hypotheses,
            predicted_mp: None,
            super_matched: None,
            exception: None,
            route: None,
        });
    }
    let k = hypotheses.k.expect("regular");
    let n = g.n();
    let (exception, route) = if g.is_bipartite() && !g.is_cycle() {
        (None, Route::BipartiteNonCycle)
    } else if k >= 5 {
        let clique = (k % 2 == 1 && k + 2 <= n).then(|| find_clique(g, k)).flatten();
        (clique.map(|clique| ExceptionClass::KCliqueOddK { clique }), Route::HighDegree)
    } else {
        (exception_clauses(g, iso_budget)?.into_iter().next(), Route::FullRecognition)
    };
    Ok(OraclePrediction {
        applicable: true,
        hypotheses,
        predicted_mp: Some(k),
        super_matched: Some(exception.is_none()),
        exception,
        route: Some(route),
    })
}

/// [`predict`] with the default isomorphism budget.
pub fn predict_default(g: &Graph) -> Result<OraclePrediction, OracleError> {
    predict(g, DEFAULT_ISO_BUDGET)
}
