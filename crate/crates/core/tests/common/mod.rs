//! Reference implementations kept deliberately naive: no forward checking,
//! no symmetry breaking, no shared code with the library's search.

#![allow(dead_code)]

use signcirc_core::{Edge, Sign, SignedMultigraph};

fn distance(p: u32, a: u32, b: u32) -> u32 {
    let d = a.abs_diff(b);
    d.min(p - d)
}

/// Whether colours `a`, `b` of `K^s_{p;q}` carry an edge of sign `s`.
pub fn edge_ok(p: u32, q: u32, a: u32, b: u32, s: Sign) -> bool {
    let d = distance(p, a, b);
    match s {
        Sign::Negative => d >= q,
        Sign::Positive => d + q <= p / 2,
    }
}

/// Plain backtracking in vertex order over all `p` colours, optionally
/// restricted by per-vertex colour lists.
pub fn naive_coloring(g: &SignedMultigraph, p: u32, q: u32, lists: Option<&[Vec<u32>]>) -> Option<Vec<u32>> {
    let n = g.n();
    let mut back: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); n];
    for e in g.edges() {
        let (a, b) = if e.u <= e.v { (e.u, e.v) } else { (e.v, e.u) };
        back[b].push((a, e.sign));
    }
    let mut colors = vec![0u32; n];
    fn rec(
        v: usize,
        p: u32,
        q: u32,
        back: &[Vec<(usize, Sign)>],
        lists: Option<&[Vec<u32>]>,
        colors: &mut Vec<u32>,
    ) -> bool {
        if v == colors.len() {
            return true;
        }
        let choices: Vec<u32> = match lists {
            Some(l) => l[v].clone(),
            None => (0..p).collect(),
        };
        for c in choices {
            colors[v] = c;
            if back[v].iter().all(|&(u, s)| edge_ok(p, q, colors[u], c, s)) && rec(v + 1, p, q, back, lists, colors) {
                return true;
            }
        }
        false
    }
    rec(0, p, q, &back, lists, &mut colors).then_some(colors)
}

pub fn naive_colorable(g: &SignedMultigraph, p: u32, q: u32) -> bool {
    naive_coloring(g, p, q, None).is_some()
}

/// Every single-edge deletion colourable, the graph itself not, no isolated vertex.
pub fn naive_critical(g: &SignedMultigraph, p: u32, q: u32) -> bool {
    let mut deg = vec![0; g.n()];
    for e in g.edges() {
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    if deg.contains(&0) || naive_colorable(g, p, q) {
        return false;
    }
    (0..g.m()).all(|i| {
        let edges: Vec<Edge> = g.edges().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, e)| *e).collect();
        naive_colorable(&SignedMultigraph::new(g.n(), edges).unwrap(), p, q)
    })
}

/// All clique parameters with `p` even and at most `p_max`.
pub fn all_params(p_max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in (2..=p_max).step_by(2) {
        for q in 1..=p / 2 {
            out.push((p, q));
        }
    }
    out
}

/// Every labelled loopless graph on `n` vertices whose pairs are empty,
/// positive, negative or a digon.
pub fn all_pair_state_graphs(n: usize) -> Vec<SignedMultigraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
    let total = 4u32.pow(pairs.len() as u32);
    (0..total)
        .map(|code| {
            let mut c = code;
            let mut edges = Vec::new();
            for &(a, b) in &pairs {
                let s = c % 4;
                c /= 4;
                if s & 1 == 1 {
                    edges.push(Edge::new(a, b, Sign::Positive));
                }
                if s & 2 == 2 {
                    edges.push(Edge::new(a, b, Sign::Negative));
                }
            }
            SignedMultigraph::new(n, edges).unwrap()
        })
        .collect()
}
