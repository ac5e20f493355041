use std::fs;
use std::path::PathBuf;

use clap::Args;
use mplab_core::io::{parse_edge_list, parse_graph6};
use mplab_core::{FamilySpec, Graph};

/// Exactly one graph source.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Family spec such as `petersen` or `circulant:8:1,7,4`.
    pub spec: Option<String>,
    /// First graph of a graph6 file.
    #[arg(long)]
    pub graph6: Option<PathBuf>,
    /// Edge-list file: `n m` then one `u v` pair per line.
    #[arg(long)]
    pub edge_list: Option<PathBuf>,
}

pub struct Loaded {
    pub label: String,
    pub graph: Graph,
}

impl InputArgs {
    pub fn load(&self) -> Result<Loaded, String> {
        let read = |p: &PathBuf| fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()));
        if let Some(s) = &self.spec {
            let spec: FamilySpec = s.parse().map_err(|e| format!("{s}: {e}"))?;
            let graph = spec.generate().map_err(|e| e.to_string())?;
            return Ok(Loaded {
                label: spec.to_string(),
                graph,
            });
        }
        if let Some(p) = &self.graph6 {
            let text = read(p)?;
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
            let graph = parse_graph6(line).map_err(|e| format!("{}: {e}", p.display()))?;
            return Ok(Loaded {
                label: p.display().to_string(),
                graph,
            });
        }
        let p = self.edge_list.as_ref().expect("clap enforces one source");
        let graph = parse_edge_list(&read(p)?).map_err(|e| format!("{}: {e}", p.display()))?;
        Ok(Loaded {
            label: p.display().to_string(),
            graph,
        })
    }
}

/// Parses `"0-1,3-4"` into vertex pairs.
pub fn parse_edges(text: &str) -> Result<Vec<(usize, usize)>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (a, b) = t.split_once('-').ok_or_else(|| format!("edge {t:?} is not of the form u-v"))?;
            let num = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad vertex {x:?} in {t:?}"));
            Ok((num(a)?, num(b)?))
        })
        .collect()
}
