use std::fs;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::Value;
use signcirc_core::{CliqueParams, ColorLabel, SignedMultigraph};

/// Whole contents of a file, or of standard input for `-`.
pub fn read_source(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        Ok(s)
    } else {
        fs::read_to_string(Path::new(path)).with_context(|| format!("reading {path}"))
    }
}

/// A graph in the text interchange format, or a JSON document produced by
/// `catalog emit` / `emit` (its `graph_text` field).
pub fn parse_graph(text: &str, origin: &str) -> Result<SignedMultigraph> {
    if text.trim_start().starts_with('{') {
        let doc: Value = serde_json::from_str(text).with_context(|| format!("{origin}: invalid JSON"))?;
        let Some(inner) = doc.get("graph_text").and_then(Value::as_str) else {
            bail!("{origin}: JSON document has no `graph_text` field");
        };
        return SignedMultigraph::parse_text(inner).with_context(|| format!("{origin}: embedded graph"));
    }
    SignedMultigraph::parse_text(text).with_context(|| origin.to_string())
}

pub fn load_graph(path: &str) -> Result<SignedMultigraph> {
    let origin = if path == "-" { "<stdin>" } else { path };
    parse_graph(&read_source(path)?, origin)
}

/// Lines `v c`; at `(10, 3)` `c` is a label in `±1..±5`, otherwise a raw colour.
pub fn parse_coloring(text: &str, n: usize, params: CliqueParams) -> Result<Vec<u32>> {
    let mut colors: Vec<Option<u32>> = vec![None; n];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 2 {
            bail!("line {}: expected `v c`", i + 1);
        }
        let v: usize = tok[0].parse().with_context(|| format!("line {}: bad vertex", i + 1))?;
        if v >= n {
            bail!("line {}: vertex {v} out of range (n = {n})", i + 1);
        }
        let c = if params == CliqueParams::TEN_THIRDS {
            let label: i32 = tok[1].parse().with_context(|| format!("line {}: bad label", i + 1))?;
            ColorLabel::color(label).with_context(|| format!("line {}", i + 1))?
        } else {
            let c: u32 = tok[1].parse().with_context(|| format!("line {}: bad colour", i + 1))?;
            if c >= params.p() {
                bail!("line {}: colour {c} out of range for p = {}", i + 1, params.p());
            }
            c
        };
        if colors[v].replace(c).is_some() {
            bail!("line {}: vertex {v} coloured twice", i + 1);
        }
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.with_context(|| format!("vertex {v} has no colour")))
        .collect()
}

pub fn format_coloring(colors: &[u32], params: CliqueParams) -> String {
    colors
        .iter()
        .enumerate()
        .map(|(v, &c)| {
            if params == CliqueParams::TEN_THIRDS {
                format!("{v} {}\n", ColorLabel::label(c).expect("colour below 10"))
            } else {
                format!("{v} {c}\n")
            }
        })
        .collect()
}
