//! Signed multigraphs, switching and the plain-text interchange format.
//!
//! Vertices are the dense integers `0..n`. Edges are kept as an ordered list so
//! that parallel edges (in particular the two edges of a digon) stay
//! distinguishable in certificates and reports.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    /// Bit used in two-bit sign sets: positive = 1, negative = 2.
    pub(crate) fn bit(self) -> u8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => 2,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" => Ok(Sign::Positive),
            "-" => Ok(Sign::Negative),
            other => Err(Error::InvalidArgument(format!("`{other}` is not a sign"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    pub fn new(u: usize, v: usize, sign: Sign) -> Edge {
        Edge { u, v, sign }
    }

    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// Endpoints with the smaller index first.
    pub fn pair(&self) -> (usize, usize) {
        if self.u <= self.v {
            (self.u, self.v)
        } else {
            (self.v, self.u)
        }
    }

    pub fn other(&self, x: usize) -> Option<usize> {
        if self.u == x {
            Some(self.v)
        } else if self.v == x {
            Some(self.u)
        } else {
            None
        }
    }
}

/// A graph with every edge labelled `+` or `-`. Loops and parallel edges are
/// allowed; a negative loop is representable but flagged, and every colouring
/// routine rejects it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignedMultigraph {
    n: usize,
    edges: Vec<Edge>,
}

impl SignedMultigraph {
    /// Builds a graph, rejecting out-of-range endpoints. Same-sign parallel
    /// edges are kept; use [`make_graph`] with `dedupe` to reject them.
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<SignedMultigraph> {
        for e in &edges {
            for x in [e.u, e.v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
        }
        Ok(SignedMultigraph { n, edges })
    }

    pub fn empty(n: usize) -> SignedMultigraph {
        SignedMultigraph { n, edges: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(n: usize, edges: Vec<Edge>) -> SignedMultigraph {
        debug_assert!(edges.iter().all(|e| e.u < n && e.v < n));
        SignedMultigraph { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn negative_loops(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| e.is_loop() && e.sign == Sign::Negative)
            .map(|e| e.u)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn has_negative_loop(&self) -> bool {
        self.edges.iter().any(|e| e.is_loop() && e.sign == Sign::Negative)
    }

    pub fn is_loopless(&self) -> bool {
        self.edges.iter().all(|e| !e.is_loop())
    }

    /// No loops and at most one edge per unordered pair.
    pub fn is_simple(&self) -> bool {
        if !self.is_loopless() {
            return false;
        }
        let mut pairs: Vec<_> = self.edges.iter().map(Edge::pair).collect();
        pairs.sort_unstable();
        pairs.windows(2).all(|w| w[0] != w[1])
    }

    pub fn has_same_sign_parallel(&self) -> bool {
        let mut keyed: Vec<_> = self.edges.iter().map(|e| (e.pair(), e.sign)).collect();
        keyed.sort_unstable();
        keyed.windows(2).any(|w| w[0] == w[1])
    }

    /// Number of edge ends at `v`; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Distinct neighbours of each vertex (loops excluded), sorted.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for e in self.edges.iter().filter(|e| !e.is_loop()) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Sign bits (positive = 1, negative = 2) present on the pair `{u, v}`.
    pub fn pair_signs(&self, u: usize, v: usize) -> u8 {
        self.edges
            .iter()
            .filter(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
            .fold(0, |acc, e| acc | e.sign.bit())
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbors();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn without_edge(&self, index: usize) -> SignedMultigraph {
        let mut edges = self.edges.clone();
        edges.remove(index);
        SignedMultigraph { n: self.n, edges }
    }

    pub fn with_edge(&self, edge: Edge) -> Result<SignedMultigraph> {
        let mut edges = self.edges.clone();
        edges.push(edge);
        SignedMultigraph::new(self.n, edges)
    }

    /// Drops isolated vertices and relabels the rest in increasing order.
    pub fn without_isolated(&self) -> SignedMultigraph {
        let deg = self.degrees();
        let mut map = vec![usize::MAX; self.n];
        let mut k = 0;
        for v in 0..self.n {
            if deg[v] > 0 {
                map[v] = k;
                k += 1;
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(map[e.u], map[e.v], e.sign))
            .collect();
        SignedMultigraph { n: k, edges }
    }

    /// The image under the vertex map `perm` (old vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> SignedMultigraph {
        assert_eq!(perm.len(), self.n);
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.u], perm[e.v], e.sign))
            .collect();
        SignedMultigraph { n: self.n, edges }
    }

    /// Same graph with every sign negated.
    pub fn negated(&self) -> SignedMultigraph {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.u, e.v, e.sign.flip()))
            .collect();
        SignedMultigraph { n: self.n, edges }
    }

    /// Per unordered pair (loops included) the number of positive and
    /// negative edges, sorted by pair.
    pub(crate) fn pair_profile(&self) -> Vec<((usize, usize), (u32, u32))> {
        let mut keyed: Vec<_> = self.edges.iter().map(|e| (e.pair(), e.sign)).collect();
        keyed.sort_unstable();
        let mut out: Vec<((usize, usize), (u32, u32))> = Vec::new();
        for (pair, sign) in keyed {
            match out.last_mut() {
                Some((p, counts)) if *p == pair => bump(counts, sign),
                _ => {
                    let mut counts = (0, 0);
                    bump(&mut counts, sign);
                    out.push((pair, counts));
                }
            }
        }
        out
    }

    /// Serialises to the text interchange format.
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            s.push_str(&format!("{} {} {}\n", e.u, e.v, e.sign));
        }
        s
    }

    /// Parses the text interchange format: a header `n m` followed by `m`
    /// lines `u v s` with `s` one of `+`/`-`. `#` starts a comment.
    pub fn parse_text(text: &str) -> Result<SignedMultigraph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing `n m` header".into(),
        })?;
        let hdr: Vec<&str> = header.split_whitespace().collect();
        if hdr.len() != 2 {
            return Err(parse_err(hline, "header must be `n m`"));
        }
        let n: usize = hdr[0].parse().map_err(|_| parse_err(hline, "bad vertex count"))?;
        let m: usize = hdr[1].parse().map_err(|_| parse_err(hline, "bad edge count"))?;
        let mut edges = Vec::with_capacity(m);
        for (line, body) in lines {
            let tok: Vec<&str> = body.split_whitespace().collect();
            if tok.len() != 3 {
                return Err(parse_err(line, "edge line must be `u v s`"));
            }
            let u: usize = tok[0].parse().map_err(|_| parse_err(line, "bad vertex"))?;
            let v: usize = tok[1].parse().map_err(|_| parse_err(line, "bad vertex"))?;
            let sign: Sign = tok[2]
                .parse()
                .map_err(|_| parse_err(line, "sign must be `+` or `-`"))?;
            for x in [u, v] {
                if x >= n {
                    return Err(parse_err(line, &format!("vertex {x} out of range (n = {n})")));
                }
            }
            edges.push(Edge::new(u, v, sign));
        }
        if edges.len() != m {
            return Err(parse_err(
                hline,
                &format!("header announces {m} edges, found {}", edges.len()),
            ));
        }
        SignedMultigraph::new(n, edges)
    }
}

fn bump(counts: &mut (u32, u32), sign: Sign) {
    match sign {
        Sign::Positive => counts.0 += 1,
        Sign::Negative => counts.1 += 1,
    }
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse { line, message: message.to_string() }
}

impl fmt::Display for SignedMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Builds a signed multigraph from `(u, v, sign)` triples. With `dedupe`, two
/// parallel edges of the same sign are an error.
pub fn make_graph(n: usize, edges: &[(usize, usize, Sign)], dedupe: bool) -> Result<SignedMultigraph> {
    let g = SignedMultigraph::new(n, edges.iter().map(|&(u, v, s)| Edge::new(u, v, s)).collect())?;
    if dedupe {
        let mut keyed: Vec<_> = g.edges.iter().map(|e| (e.pair(), e.sign)).collect();
        keyed.sort_unstable();
        if let Some(w) = keyed.windows(2).find(|w| w[0] == w[1]) {
            let (u, v) = w[0].0;
            return Err(Error::SameSignParallel { u, v });
        }
    }
    Ok(g)
}

/// A set of vertices to switch.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SwitchSet {
    members: Vec<usize>,
}

impl SwitchSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<SwitchSet> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&x) = members.iter().find(|&&x| x >= n) {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(SwitchSet { members })
    }

    pub fn empty() -> SwitchSet {
        SwitchSet::default()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Symmetric difference.
    pub fn symmetric_difference(&self, other: &SwitchSet) -> SwitchSet {
        let mut out: Vec<usize> = self
            .members
            .iter()
            .filter(|x| !other.contains(**x))
            .chain(other.members.iter().filter(|x| !self.contains(**x)))
            .copied()
            .collect();
        out.sort_unstable();
        SwitchSet { members: out }
    }
}

/// Negates every edge with exactly one end in `x`. Loops are untouched.
pub fn switch(g: &SignedMultigraph, x: &SwitchSet) -> SignedMultigraph {
    let mut inside = vec![false; g.n];
    for &v in x.members() {
        if v < g.n {
            inside[v] = true;
        }
    }
    switch_mask(g, &inside)
}

pub(crate) fn switch_mask(g: &SignedMultigraph, inside: &[bool]) -> SignedMultigraph {
    let edges = g
        .edges
        .iter()
        .map(|e| {
            let sign = if inside[e.u] != inside[e.v] { e.sign.flip() } else { e.sign };
            Edge::new(e.u, e.v, sign)
        })
        .collect();
    SignedMultigraph { n: g.n, edges }
}

/// Product of the signs along a closed walk given as a sequence of edge
/// indices.
pub fn cycle_sign(g: &SignedMultigraph, walk: &[usize]) -> Result<Sign> {
    let first = *walk.first().ok_or(Error::WalkNotClosed)?;
    for &i in walk {
        if i >= g.m() {
            return Err(Error::EdgeAbsent(i));
        }
    }
    let e0 = g.edges[first];
    'start: for start in [e0.u, e0.v] {
        let mut cur = start;
        let mut sign = Sign::Positive;
        for &i in walk {
            let e = g.edges[i];
            match e.other(cur) {
                Some(next) => cur = next,
                None => continue 'start,
            }
            sign = sign * e.sign;
        }
        if cur == start {
            return Ok(sign);
        }
    }
    Err(Error::WalkNotClosed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use Sign::{Negative as N, Positive as P};

    fn neg_triangle() -> SignedMultigraph {
        make_graph(3, &[(0, 1, N), (0, 2, N), (1, 2, N)], true).unwrap()
    }

    #[test]
    fn sign_product_table() {
        assert_eq!(N * N, P);
        assert_eq!(P * N, N);
        assert_eq!(N * P, N);
        assert_eq!(P * P, P);
        for a in [P, N] {
            assert_eq!(a * P, a);
            for b in [P, N] {
                assert_eq!(a * b, b * a);
                for c in [P, N] {
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
    }

    #[test]
    fn make_graph_examples() {
        let digon = make_graph(2, &[(0, 1, N), (0, 1, P)], true).unwrap();
        assert_eq!(digon.m(), 2);
        assert!(!digon.is_simple());
        assert!(!digon.has_same_sign_parallel());

        let k1 = make_graph(1, &[], true).unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));

        assert_eq!(
            make_graph(2, &[(0, 2, N)], false),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            make_graph(2, &[(0, 1, N), (1, 0, N)], true),
            Err(Error::SameSignParallel { u: 0, v: 1 })
        );
        assert!(make_graph(2, &[(0, 1, N), (1, 0, N)], false).is_ok());
    }

    #[test]
    fn negative_loops_are_flagged() {
        let g = make_graph(2, &[(0, 0, P), (1, 1, N)], true).unwrap();
        assert!(g.has_negative_loop());
        assert_eq!(g.negative_loops(), vec![1]);
        assert!(!g.is_loopless());
    }

    #[test]
    fn switch_examples() {
        let digon = make_graph(2, &[(0, 1, N), (0, 1, P)], true).unwrap();
        let s = switch(&digon, &SwitchSet::new(2, [0]).unwrap());
        let mut signs: Vec<_> = s.edges().iter().map(|e| e.sign).collect();
        signs.sort();
        assert_eq!(signs, vec![P, N]);

        let t = switch(&neg_triangle(), &SwitchSet::new(3, [0]).unwrap());
        assert_eq!(
            t.edges(),
            &[Edge::new(0, 1, P), Edge::new(0, 2, P), Edge::new(1, 2, N)]
        );

        let g = neg_triangle();
        assert_eq!(switch(&g, &SwitchSet::empty()), g);
    }

    #[test]
    fn loops_survive_switching() {
        let g = make_graph(2, &[(0, 0, P), (0, 1, N)], true).unwrap();
        let s = switch(&g, &SwitchSet::new(2, [0]).unwrap());
        assert_eq!(s.edges()[0], Edge::new(0, 0, P));
        assert_eq!(s.edges()[1], Edge::new(0, 1, P));
    }

    #[test]
    fn cycle_sign_examples() {
        assert_eq!(cycle_sign(&neg_triangle(), &[0, 2, 1]), Ok(N));
        let digon = make_graph(2, &[(0, 1, N), (0, 1, P)], true).unwrap();
        assert_eq!(cycle_sign(&digon, &[0, 1]), Ok(N));
        assert_eq!(cycle_sign(&neg_triangle(), &[0, 2]), Err(Error::WalkNotClosed));
        assert_eq!(cycle_sign(&neg_triangle(), &[0, 9]), Err(Error::EdgeAbsent(9)));
        assert_eq!(cycle_sign(&neg_triangle(), &[]), Err(Error::WalkNotClosed));
    }

    #[test]
    fn text_format_round_trip_and_errors() {
        let text = "# digon\n2 2\n0 1 -\n0 1 +  # second edge\n";
        let g = SignedMultigraph::parse_text(text).unwrap();
        assert_eq!(g.m(), 2);
        assert_eq!(SignedMultigraph::parse_text(&g.to_text()).unwrap(), g);

        match SignedMultigraph::parse_text("2 1\n0 5 +\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        match SignedMultigraph::parse_text("2 1\n0 1 x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            SignedMultigraph::parse_text("3 2\n0 1 +\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }
}
