//! Corpus-wide commands. Graphs are processed in parallel and emitted in
//! corpus order, one JSON object per line, followed by a summary line.

use std::io::Write;

use mplab_core::corpus::{select, CorpusEntry};
use mplab_core::oracle::{
    cross_validate, family_claim, predict, ConstructionCheck, ExceptionClass, OraclePrediction, Verdict,
};
use mplab_core::preclusion::{BackendUsed, PreclusionReport, SolverOptions};
use mplab_core::structure::{structure_report, StructureBudgets, StructureReport};
use mplab_core::EdgeSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::docs::SCHEMA_VERSION;
use crate::{Failure, Format, GlobalArgs, EXIT_DISAGREE};

const GENERATOR_NOTE: &str = "Moebius ladders are generated as Z_4n(1,4n-1,2n); the spelling Z_4n(1,4n,2n) \
     names the generator 4n = 0 mod 4n, which is not a valid connection set";

#[derive(Serialize)]
struct BruteForce {
    mp: usize,
    degenerate: bool,
    lower_bound: usize,
    upper_bound: usize,
    complete: bool,
    super_matched: Option<bool>,
    solution_count: Option<u64>,
    trivial_count: Option<u64>,
    nontrivial_count: Option<u64>,
    nontrivial_solutions: Vec<EdgeSet>,
    backend: BackendUsed,
    incomplete_reason: Option<String>,
}

impl From<&PreclusionReport> for BruteForce {
    fn from(r: &PreclusionReport) -> Self {
        BruteForce {
            mp: r.mp,
            degenerate: r.degenerate,
            lower_bound: r.lower_bound,
            upper_bound: r.upper_bound,
            complete: r.complete,
            super_matched: r.super_matched,
            solution_count: r.solution_count,
            trivial_count: r.trivial_count,
            nontrivial_count: r.nontrivial_count,
            nontrivial_solutions: r.nontrivial_solutions.clone(),
            backend: r.backend,
            incomplete_reason: r.incomplete_reason.clone(),
        }
    }
}

#[derive(Serialize)]
struct ClaimLine {
    statement: &'static str,
    claimed_super_matched: bool,
    brute_force_super_matched: Option<bool>,
    consistent: Option<bool>,
}

#[derive(Serialize)]
struct AgreementLine {
    schema_version: u32,
    kind: &'static str,
    family: String,
    n: usize,
    m: usize,
    k: Option<usize>,
    verdict: Verdict,
    mp_confirmed: bool,
    prediction: Option<OraclePrediction>,
    brute_force: Option<BruteForce>,
    construction: Option<ConstructionCheck>,
    family_claim: Option<ClaimLine>,
    evidence: Vec<String>,
}

#[derive(Serialize, Default)]
struct Summary {
    schema_version: u32,
    kind: &'static str,
    corpus: String,
    total: usize,
    agree: usize,
    disagree: usize,
    inconclusive: usize,
    not_applicable: usize,
    /// Applicable graphs whose exact `mp` equals the degree.
    mp_equals_degree: usize,
    flags: Vec<String>,
    notes: Vec<String>,
}

fn agreement_line(e: &CorpusEntry, opts: &SolverOptions, iso_budget: u64) -> AgreementLine {
    let g = &e.graph;
    let rec = cross_validate(g, opts, iso_budget);
    let brute_sm = rec.report.as_ref().and_then(|r| r.super_matched);
    let claim = family_claim(&e.spec).map(|c| ClaimLine {
        statement: c.statement,
        claimed_super_matched: c.super_matched,
        brute_force_super_matched: brute_sm,
        consistent: brute_sm.map(|b| b == c.super_matched),
    });
    AgreementLine {
        schema_version: SCHEMA_VERSION,
        kind: "agreement",
        family: e.spec.to_string(),
        n: g.n(),
        m: g.m(),
        k: g.regular_degree(),
        verdict: rec.verdict,
        mp_confirmed: rec.mp_confirmed,
        brute_force: rec.report.as_ref().map(BruteForce::from),
        prediction: rec.prediction,
        construction: rec.construction,
        family_claim: claim,
        evidence: rec.evidence,
    }
}

fn summarize(corpus: &str, lines: &[AgreementLine]) -> Summary {
    let mut s = Summary {
        schema_version: SCHEMA_VERSION,
        kind: "summary",
        corpus: corpus.to_string(),
        total: lines.len(),
        ..Summary::default()
    };
    let mut ladder = false;
    for l in lines {
        match l.verdict {
            Verdict::Agree => s.agree += 1,
            Verdict::Disagree => s.disagree += 1,
            Verdict::Inconclusive => s.inconclusive += 1,
            Verdict::NotApplicable => s.not_applicable += 1,
        }
        if l.mp_confirmed {
            s.mp_equals_degree += 1;
        }
        if let Some(c) = l.family_claim.as_ref().filter(|c| c.consistent == Some(false)) {
            s.flags.push(format!(
                "{}: exhaustive search finds super matched = {}, but the family statement \"{}\" gives {}",
                l.family,
                opt_bool(c.brute_force_super_matched),
                c.statement,
                c.claimed_super_matched
            ));
        }
        let is_ladder = |p: &OraclePrediction| matches!(p.exception, Some(ExceptionClass::MoebiusLadder { .. }));
        ladder |= l.prediction.as_ref().is_some_and(is_ladder);
    }
    if ladder {
        s.notes.push(GENERATOR_NOTE.to_string());
    }
    s
}

fn opt_bool(b: Option<bool>) -> String {
    b.map(|b| b.to_string()).unwrap_or_else(|| "unknown".into())
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn write_line<T: Serialize>(out: &mut dyn Write, doc: &T) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}

pub fn verify_theorem(corpus: &str, args: &GlobalArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let entries = select(corpus, args.budget_iso)?;
    let opts = args.solver();
    let lines: Vec<AgreementLine> = entries
        .par_iter()
        .map(|e| agreement_line(e, &opts, args.budget_iso))
        .collect();
    let summary = summarize(corpus, &lines);
    match args.format {
        Format::Json => {
            for l in &lines {
                write_line(out, l)?;
            }
            write_line(out, &summary)?;
        }
        Format::Csv => {
            writeln!(out, "family,n,m,k,verdict,predicted_mp,mp,predicted_super_matched,super_matched,exception")?;
            for l in &lines {
                let p = l.prediction.as_ref();
                let b = l.brute_force.as_ref();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    l.family,
                    l.n,
                    l.m,
                    opt(l.k),
                    l.verdict.as_str(),
                    opt(p.and_then(|p| p.predicted_mp)),
                    opt(b.map(|b| b.mp)),
                    opt(p.and_then(|p| p.super_matched)),
                    opt(b.and_then(|b| b.super_matched)),
                    p.and_then(|p| p.exception.as_ref()).map(ExceptionClass::name).unwrap_or("")
                )?;
            }
        }
        Format::Text => {
            for l in &lines {
                let mp = opt(l.brute_force.as_ref().map(|b| b.mp));
                writeln!(out, "{:<14} {:<24} n={:<3} k={:<3} mp={mp}", l.verdict.as_str(), l.family, l.n, opt(l.k))?;
                for ev in &l.evidence {
                    writeln!(out, "    {ev}")?;
                }
            }
            writeln!(
                out,
                "{} graphs: {} agree, {} disagree, {} inconclusive, {} not applicable",
                summary.total, summary.agree, summary.disagree, summary.inconclusive, summary.not_applicable
            )?;
            for f in summary.flags.iter().chain(&summary.notes) {
                writeln!(out, "note: {f}")?;
            }
        }
        Format::Dot => return Err(Failure::from("dot output is not available for verify-theorem")),
    }
    Ok(if summary.disagree > 0 { EXIT_DISAGREE } else { 0 })
}

#[derive(Serialize)]
struct CensusLine {
    schema_version: u32,
    kind: &'static str,
    family: String,
    structure: StructureReport,
    prediction: Option<OraclePrediction>,
    prediction_error: Option<String>,
    family_claim: Option<mplab_core::oracle::FamilyClaim>,
}

#[derive(Serialize)]
struct CensusSummary {
    schema_version: u32,
    kind: &'static str,
    corpus: String,
    total: usize,
    applicable: usize,
    predicted_super_matched: usize,
    predicted_exceptions: usize,
}

fn census_line(e: &CorpusEntry, budgets: &StructureBudgets) -> CensusLine {
    let (prediction, prediction_error) = match predict(&e.graph, budgets.iso_nodes) {
        Ok(p) => (Some(p), None),
        Err(err) => (None, Some(err.to_string())),
    };
    CensusLine {
        schema_version: SCHEMA_VERSION,
        kind: "census",
        family: e.spec.to_string(),
        structure: structure_report(&e.graph, budgets),
        prediction,
        prediction_error,
        family_claim: family_claim(&e.spec),
    }
}

pub fn census(corpus: &str, args: &GlobalArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let entries = select(corpus, args.budget_iso)?;
    let budgets = args.structure();
    let lines: Vec<CensusLine> = entries.par_iter().map(|e| census_line(e, &budgets)).collect();
    let applicable: Vec<&OraclePrediction> = lines
        .iter()
        .filter_map(|l| l.prediction.as_ref())
        .filter(|p| p.applicable)
        .collect();
    let summary = CensusSummary {
        schema_version: SCHEMA_VERSION,
        kind: "census_summary",
        corpus: corpus.to_string(),
        total: lines.len(),
        applicable: applicable.len(),
        predicted_super_matched: applicable.iter().filter(|p| p.super_matched == Some(true)).count(),
        predicted_exceptions: applicable.iter().filter(|p| p.exception.is_some()).count(),
    };
    match args.format {
        Format::Json => {
            for l in &lines {
                write_line(out, l)?;
            }
            write_line(out, &summary)?;
        }
        Format::Csv => {
            writeln!(out, "family,n,m,k,bipartite,girth,odd_girth,lambda,vertex_transitive,predicted_super_matched,exception")?;
            for l in &lines {
                let s = &l.structure;
                let p = l.prediction.as_ref();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    l.family,
                    s.n,
                    s.m,
                    opt(s.k),
                    s.bipartite,
                    opt(s.girth),
                    opt(s.odd_girth),
                    s.lambda,
                    opt(s.vertex_transitive),
                    opt(p.and_then(|p| p.super_matched)),
                    p.and_then(|p| p.exception.as_ref()).map(ExceptionClass::name).unwrap_or("")
                )?;
            }
        }
        Format::Text => {
            for l in &lines {
                let p = l.prediction.as_ref();
                let verdict = match p {
                    Some(p) if p.applicable => match &p.exception {
                        Some(c) => format!("exception {}", c.name()),
                        None => "super matched".into(),
                    },
                    Some(_) => "not applicable".into(),
                    None => "unknown".into(),
                };
                writeln!(out, "{:<24} n={:<3} k={:<3} {verdict}", l.family, l.structure.n, opt(l.structure.k))?;
            }
        }
        Format::Dot => return Err(Failure::from("dot output is not available for census")),
    }
    Ok(0)
}
