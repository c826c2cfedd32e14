//! Potential, criticality and the sparsity bound for critical graphs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clique::CliqueParams;
use crate::error::{Error, Result};
use crate::graph::SignedMultigraph;
use crate::solver::is_colorable;

/// `3|V| - 2|E|`.
pub fn potential(g: &SignedMultigraph) -> i64 {
    3 * g.n() as i64 - 2 * g.m() as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalityReport {
    pub params: CliqueParams,
    pub colorable: bool,
    pub isolated_vertices: Vec<usize>,
    /// Colourability of `G - e` for every edge index `e`; empty when `G` is colourable.
    pub edge_probes: Vec<bool>,
    pub critical: bool,
}

fn isolated(g: &SignedMultigraph) -> Vec<usize> {
    g.degrees().iter().enumerate().filter(|(_, &d)| d == 0).map(|(v, _)| v).collect()
}

/// Full verdict with one probe per edge; the probes run in parallel.
pub fn criticality_report(g: &SignedMultigraph, params: CliqueParams) -> Result<CriticalityReport> {
    let colorable = is_colorable(g, params)?;
    let isolated_vertices = isolated(g);
    let edge_probes = if colorable {
        Vec::new()
    } else {
        (0..g.m())
            .into_par_iter()
            .map(|e| is_colorable(&g.without_edge(e), params))
            .collect::<Result<Vec<bool>>>()?
    };
    let critical = !colorable && isolated_vertices.is_empty() && edge_probes.iter().all(|&b| b);
    Ok(CriticalityReport { params, colorable, isolated_vertices, edge_probes, critical })
}

/// Not colourable, while every proper subgraph is. Proper subgraphs are
/// covered by single-edge deletions plus the absence of isolated vertices.
pub fn is_critical(g: &SignedMultigraph, params: CliqueParams) -> Result<bool> {
    if !isolated(g).is_empty() {
        if let Some(&v) = g.negative_loops().first() {
            return Err(Error::NegativeLoop(v));
        }
        return Ok(false);
    }
    if is_colorable(g, params)? {
        return Ok(false);
    }
    let all = (0..g.m())
        .into_par_iter()
        .map(|e| is_colorable(&g.without_edge(e), params))
        .collect::<Result<Vec<bool>>>()?;
    Ok(all.into_iter().all(|b| b))
}

/// Greedy edge removal in input order, keeping non-colourability, then
/// isolated vertices dropped. One pass is enough: an edge kept once stays
/// necessary as the graph only shrinks afterwards.
pub fn critical_subgraph(g: &SignedMultigraph, params: CliqueParams) -> Result<SignedMultigraph> {
    if is_colorable(g, params)? {
        return Err(Error::Colorable { p: params.p(), q: params.q() });
    }
    let mut current = g.clone();
    let mut i = 0;
    while i < current.m() {
        let candidate = current.without_edge(i);
        if is_colorable(&candidate, params)? {
            i += 1;
        } else {
            current = candidate;
        }
    }
    Ok(current.without_isolated())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityCheck {
    pub passes: bool,
    pub edges: usize,
    pub vertices: usize,
    /// `2|E|` against `3|V| + 1`.
    pub lhs: u64,
    pub rhs: u64,
}

/// `|E| >= (3|V| + 1) / 2`, compared as `2|E| >= 3|V| + 1`.
pub fn density_check(g: &SignedMultigraph) -> DensityCheck {
    let lhs = 2 * g.m() as u64;
    let rhs = 3 * g.n() as u64 + 1;
    DensityCheck { passes: lhs >= rhs, edges: g.m(), vertices: g.n(), lhs, rhs }
}
