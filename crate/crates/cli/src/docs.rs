//! Single-graph commands and their report documents.

use std::io::Write;

use mplab_core::io::{emit_dot, emit_edge_list, emit_graph6};
use mplab_core::matching::Witness;
use mplab_core::oracle::{exception_clauses, predict, ExceptionClass, OraclePrediction};
use mplab_core::preclusion::{classify, verify_preclusion_set, PreclusionError, PreclusionReport, Verification};
use mplab_core::structure::{structure_report, StructureReport};
use mplab_core::{EdgeSet, FamilySpec, Graph};
use serde::Serialize;

use crate::input::{parse_edges, Loaded};
use crate::{Failure, Format, GlobalArgs, EXIT_INCOMPLETE, EXIT_INPUT};

pub const SCHEMA_VERSION: u32 = 1;

pub fn write_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}

fn unsupported(format: Format, what: &str) -> Failure {
    Failure::from(format!("{format:?} output is not available for {what}").to_lowercase())
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(T::to_string).unwrap_or_default()
}

fn solver_failure(e: PreclusionError) -> Failure {
    let code = match e {
        PreclusionError::SubsetBudget { .. } | PreclusionError::NodeBudget(_) => EXIT_INCOMPLETE,
        _ => EXIT_INPUT,
    };
    Failure {
        code,
        message: e.to_string(),
    }
}

#[derive(Serialize)]
struct GraphDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    spec: String,
    n: usize,
    m: usize,
    edges: EdgeSet,
    graph6: String,
    #[serde(skip)]
    graph: &'a Graph,
}

pub fn generate(spec: &str, args: &GlobalArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let parsed: FamilySpec = spec.parse().map_err(|e| format!("{spec}: {e}"))?;
    let g = parsed.generate()?;
    let doc = GraphDoc {
        schema_version: SCHEMA_VERSION,
        kind: "graph",
        spec: parsed.to_string(),
        n: g.n(),
        m: g.m(),
        edges: g.edge_set(),
        graph6: emit_graph6(&g),
        graph: &g,
    };
    match args.format {
        Format::Json => write_json(out, &doc)?,
        Format::Text => write!(out, "{}", emit_edge_list(doc.graph))?,
        Format::Dot => write!(out, "{}", emit_dot(doc.graph, None))?,
        Format::Csv => {
            writeln!(out, "u,v")?;
            for e in g.edges() {
                writeln!(out, "{},{}", e.u, e.v)?;
            }
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct AnalysisDoc {
    schema_version: u32,
    kind: &'static str,
    input: String,
    n: usize,
    m: usize,
    mp: Option<usize>,
    super_matched: Option<bool>,
    incomplete: bool,
    incomplete_reason: Option<String>,
    structure: StructureReport,
    prediction: Option<OraclePrediction>,
    prediction_error: Option<String>,
    preclusion: Option<PreclusionReport>,
}

pub fn analyze(input: &Loaded, args: &GlobalArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let g = &input.graph;
    if g.n() % 2 == 1 {
        return Err(PreclusionError::OddOrder(g.n()).into());
    }
    let structure = structure_report(g, &args.structure());
    let (prediction, prediction_error) = match predict(g, args.budget_iso) {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let (preclusion, solver_error) = match classify(g, &args.solver()) {
        Ok(r) => (Some(r), None),
        Err(e @ (PreclusionError::SubsetBudget { .. } | PreclusionError::NodeBudget(_))) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let incomplete = preclusion.as_ref().is_none_or(|r| !r.complete) || prediction.is_none();
    let incomplete_reason = solver_error
        .or_else(|| preclusion.as_ref().and_then(|r| r.incomplete_reason.clone()))
        .or_else(|| prediction_error.clone());
    let doc = AnalysisDoc {
        schema_version: SCHEMA_VERSION,
        kind: "analysis",
        input: input.label.clone(),
        n: g.n(),
        m: g.m(),
        mp: preclusion.as_ref().map(|r| r.mp),
        super_matched: preclusion.as_ref().and_then(|r| r.super_matched),
        incomplete,
        incomplete_reason,
        structure,
        prediction,
        prediction_error,
        preclusion,
    };
    match args.format {
        Format::Json => write_json(out, &doc)?,
        Format::Csv => {
            writeln!(out, "input,n,m,k,mp,super_matched,solutions,nontrivial,predicted_super_matched,incomplete")?;
            let r = doc.preclusion.as_ref();
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                doc.input,
                doc.n,
                doc.m,
                opt(&doc.structure.k),
                opt(&doc.mp),
                opt(&doc.super_matched),
                opt(&r.and_then(|r| r.solution_count)),
                opt(&r.and_then(|r| r.nontrivial_count)),
                opt(&doc.prediction.as_ref().and_then(|p| p.super_matched)),
                doc.incomplete
            )?;
        }
        Format::Text => {
            writeln!(out, "{}: n={} m={} k={}", doc.input, doc.n, doc.m, opt(&doc.structure.k))?;
            writeln!(out, "lambda {}  girth {}  odd girth {}", doc.structure.lambda, opt(&doc.structure.girth), opt(&doc.structure.odd_girth))?;
            if let Some(r) = &doc.preclusion {
                writeln!(out, "mp {}  super matched {}", r.mp, opt(&r.super_matched))?;
                writeln!(
                    out,
                    "optimal sets {}  trivial {}  non-trivial {}",
                    opt(&r.solution_count),
                    opt(&r.trivial_count),
                    opt(&r.nontrivial_count)
                )?;
                for f in &r.nontrivial_solutions {
                    writeln!(out, "  {f}")?;
                }
            }
            if let Some(p) = &doc.prediction {
                let class = p.exception.as_ref().map(ExceptionClass::name).unwrap_or("none");
                writeln!(out, "prediction: super matched {}  exception {class}", opt(&p.super_matched))?;
            }
            if let Some(why) = &doc.incomplete_reason {
                writeln!(out, "incomplete: {why}")?;
            }
        }
        Format::Dot => {
            let highlight = doc.preclusion.as_ref().and_then(|r| r.nontrivial_solutions.first());
            write!(out, "{}", emit_dot(g, highlight))?;
        }
    }
    Ok(if incomplete { EXIT_INCOMPLETE } else { 0 })
}

#[derive(Serialize)]
struct OracleDoc {
    schema_version: u32,
    kind: &'static str,
    input: String,
    prediction: OraclePrediction,
    /// Every exception clause that holds, in priority order.
    clauses: Option<Vec<ExceptionClass>>,
}

pub fn oracle(input: &Loaded, args: &GlobalArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let budget_failure = |e: mplab_core::oracle::OracleError| Failure {
        code: EXIT_INCOMPLETE,
        message: e.to_string(),
    };
    let g = &input.graph;
    let prediction = predict(g, args.budget_iso).map_err(budget_failure)?;
    let clauses = if prediction.applicable {
        Some(exception_clauses(g, args.budget_iso).map_err(budget_failure)?)
    } else {
        None
    };
    let doc = OracleDoc {
        schema_version: SCHEMA_VERSION,
        kind: "oracle",
        input: input.label.clone(),
        prediction,
        clauses,
    };
    let p = &doc.prediction;
    let class = p.exception.as_ref().map(ExceptionClass::name).unwrap_or("");
    match args.format {
        Format::Json => write_json(out, &doc)?,
        Format::Csv => {
            writeln!(out, "input,applicable,predicted_mp,super_matched,exception")?;
            writeln!(out, "{},{},{},{},{class}", doc.input, p.applicable, opt(&p.predicted_mp), opt(&p.super_matched))?;
        }
        Format::Text => {
            if p.applicable {
                writeln!(
                    out,
                    "{}: mp {}  super matched {}  exception {}",
                    doc.input,
                    opt(&p.predicted_mp),
                    opt(&p.super_matched),
                    if class.is_empty() { "none" } else { class }
                )?;
            } else {
                writeln!(out, "{}: not applicable", doc.input)?;
            }
        }
        Format::Dot => return Err(unsupported(args.format, "oracle")),
    }
    Ok(0)
}

#[derive(Serialize)]
struct WitnessDoc {
    schema_version: u32,
    kind: &'static str,
    input: String,
    f: EdgeSet,
    verification: Verification,
}

pub fn witness(input: &Loaded, edges: &str, args: &GlobalArgs, out: &mut dyn Write) -> Result<u8, Failure> {
    let g = &input.graph;
    let f = EdgeSet::from_pairs(parse_edges(edges)?);
    let verification = verify_preclusion_set(g, &f, &args.solver()).map_err(solver_failure)?;
    let doc = WitnessDoc {
        schema_version: SCHEMA_VERSION,
        kind: "witness",
        input: input.label.clone(),
        f,
        verification,
    };
    let v = &doc.verification;
    match args.format {
        Format::Json => write_json(out, &doc)?,
        Format::Csv => {
            writeln!(out, "input,f,preclusion,minimal,optimal,trivial,mp")?;
            writeln!(
                out,
                "{},\"{}\",{},{},{},{},{}",
                doc.input, doc.f, v.is_preclusion, v.is_minimal, v.is_optimal, v.is_trivial, v.mp
            )?;
        }
        Format::Text => {
            writeln!(out, "{} minus {}", doc.input, doc.f)?;
            writeln!(
                out,
                "preclusion {}  minimal {}  optimal {}  trivial {}  (mp {})",
                v.is_preclusion, v.is_minimal, v.is_optimal, v.is_trivial, v.mp
            )?;
            match &v.witness {
                Some(Witness::Hall { side, u, nu }) => writeln!(out, "Hall: U={:?} on side {side}, N(U)={:?}", u.to_vec(), nu.to_vec())?,
                Some(Witness::Tutte { s, odd_components }) => {
                    writeln!(out, "Tutte: S={:?}, {} odd components", s.to_vec(), odd_components.len())?
                }
                None => {}
            }
        }
        Format::Dot => write!(out, "{}", emit_dot(g, Some(&doc.f)))?,
    }
    Ok(0)
}
