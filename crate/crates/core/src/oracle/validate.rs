use serde::{Serialize, Serializer};

use super::{
    check_construction, construct_exception_solution, predict, ConstructionCheck, ExceptionClass, Hypotheses,
    OracleError, OraclePrediction,
};
use crate::bitset::VertexSet;
use crate::family::FamilySpec;
use crate::graph::Graph;
use crate::preclusion::{classify, PreclusionReport, SolverOptions};
use crate::structure::{find_isomorphism, independent_set_of_size};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Agree,
    Disagree,
    Inconclusive,
    NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Agree => "AGREE",
            Verdict::Disagree => "DISAGREE",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::NotApplicable => "NOT_APPLICABLE",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AgreementRecord {
    pub verdict: Verdict,
    /// Exhaustive or bound-based `mp` equals the predicted degree.
    pub mp_confirmed: bool,
    pub prediction: Option<OraclePrediction>,
    pub report: Option<PreclusionReport>,
    pub construction: Option<ConstructionCheck>,
    pub evidence: Vec<String>,
}

/// Runs the oracle and the exact solver on `g` and compares them.
pub fn cross_validate(g: &Graph, opts: &SolverOptions, iso_budget: u64) -> AgreementRecord {
    let mut rec = AgreementRecord {
        verdict: Verdict::Inconclusive,
        mp_confirmed: false,
        prediction: None,
        report: None,
        construction: None,
        evidence: Vec::new(),
    };
    let prediction = match predict(g, iso_budget) {
        Ok(p) => p,
        Err(e) => {
            rec.evidence.push(format!("oracle: {e}"));
            return rec;
        }
    };
    let applicable = prediction.applicable;
    rec.prediction = Some(prediction.clone());
    if g.n() % 2 == 1 {
        rec.verdict = Verdict::NotApplicable;
        rec.evidence.push("odd order".into());
        return rec;
    }
    let report = match classify(g, opts) {
        Ok(r) => r,
        Err(e) => {
            rec.verdict = if applicable { Verdict::Inconclusive } else { Verdict::NotApplicable };
            rec.evidence.push(format!("solver: {e}"));
            return rec;
        }
    };
    rec.report = Some(report.clone());
    if !applicable {
        rec.verdict = Verdict::NotApplicable;
        return rec;
    }
    let k = prediction.predicted_mp.expect("applicable");
    if report.mp != k {
        rec.verdict = Verdict::Disagree;
        rec.evidence.push(format!("predicted mp {k}, solver found {}", report.mp));
        return rec;
    }
    rec.mp_confirmed = true;
    let Some(found) = report.super_matched else {
        rec.evidence.push(format!(
            "mp = {k} confirmed; {}",
            report.incomplete_reason.as_deref().unwrap_or("solution enumeration incomplete")
        ));
        return rec;
    };
    if Some(found) != prediction.super_matched {
        rec.verdict = Verdict::Disagree;
        rec.evidence.push(format!(
            "predicted super matched {:?}, solver found {found} ({} non-trivial sets)",
            prediction.super_matched,
            report.nontrivial_count.unwrap_or(0)
        ));
        return rec;
    }
    if let Some(class) = &prediction.exception {
        match construct_exception_solution(class, g).and_then(|c| Ok((check_construction(g, &c, opts)?, c))) {
            Ok((check, c)) => {
                let listed = report.nontrivial_solutions.contains(&c.f);
                let ok = check.passed(false) && (listed || report.truncated);
                rec.construction = Some(check);
                if !ok {
                    rec.verdict = Verdict::Disagree;
                    rec.evidence.push(format!("case ({}) set {} is not a listed non-trivial optimal set", c.case, c.f));
                    return rec;
                }
            }
            Err(e) => {
                rec.verdict = Verdict::Disagree;
                rec.evidence.push(format!("construction failed: {e}"));
                return rec;
            }
        }
    }
    rec.verdict = Verdict::Agree;
    rec
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCheck {
    /// An independent set of size `(n - 2) / 2` exists.
    pub found: bool,
    pub independent_set: Option<VertexSet>,
    pub family: Option<&'static str>,
    pub consistent: Option<bool>,
}

pub const PARTITION_MAX_VERTICES: usize = 20;

/// For non-bipartite vertex-transitive graphs: if an independent set of
/// size `(n - 2) / 2` exists, the graph must be one of the four cubic or
/// quartic exceptional circulants or the Petersen graph.
pub fn structure_partition_check(g: &Graph, iso_budget: u64) -> Result<PartitionCheck, OracleError> {
    let hyp = Hypotheses::check(g, iso_budget)?;
    if !hyp.hold() || g.is_bipartite() || g.n() > PARTITION_MAX_VERTICES {
        return Err(OracleError::Hypothesis(format!(
            "needs a connected regular non-bipartite vertex-transitive graph of even order on at most {PARTITION_MAX_VERTICES} vertices"
        )));
    }
    let n = g.n();
    let Some(set) = independent_set_of_size(g, (n - 2) / 2) else {
        return Ok(PartitionCheck {
            found: false,
            independent_set: None,
            family: None,
            consistent: None,
        });
    };
    let mut family = None;
    let candidates = [
        (n % 4 == 2 && n >= 6).then(|| ExceptionClass::QuadCirculant { n: (n - 2) / 4 }),
        (n % 4 == 0).then_some(ExceptionClass::MoebiusLadder { n: n / 4 }),
        (n % 4 == 2 && n >= 6).then(|| ExceptionClass::OddPrism { n: (n - 2) / 4 }),
        (n == 10).then_some(ExceptionClass::Petersen),
    ];
    for class in candidates.into_iter().flatten() {
        let canon = class.canonical().expect("circulant or Petersen class").generate()?;
        if find_isomorphism(&canon, g, iso_budget)?.is_some() {
            family = Some(class.name());
            break;
        }
    }
    Ok(PartitionCheck {
        found: true,
        independent_set: Some(set),
        family,
        consistent: Some(family.is_some()),
    })
}

/// A published super-matchedness statement for a named family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyClaim {
    pub statement: &'static str,
    pub super_matched: bool,
}

pub fn family_claim(spec: &FamilySpec) -> Option<FamilyClaim> {
    match *spec {
        FamilySpec::FoldedCube(k) => Some(FamilyClaim {
            statement: "folded k-cube is super matched iff k >= 4",
            super_matched: k >= 4,
        }),
        FamilySpec::HalvedCube(k) => Some(FamilyClaim {
            statement: "halved k-cube is super matched iff k >= 4",
            super_matched: k >= 4,
        }),
        FamilySpec::Hamming { d, q } if spec.order() % 2 == 0 => Some(FamilyClaim {
            statement: "Hamming H(d,q) of even order is super matched iff (d,q) not in {(1,4),(2,2)}",
            super_matched: !matches!((d, q), (1, 4) | (2, 2)),
        }),
        _ => None,
    }
}
