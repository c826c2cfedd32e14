//! Exhaustive generation of small signed graphs, one per switching-isomorphism class.
//!
//! Underlying simple graphs come from vertex augmentation with canonical
//! deduplication. For each underlying graph the signatures are normalised by
//! a BFS forest made positive, which leaves one sign vector per switching
//! class; a vector is kept when its code is minimal over its orbit under the
//! automorphism group. Digons (a `+` and a `-` edge on the same pair) are an
//! optional third pair state.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::{canonical_form, SmallGraph, MAX_VERTICES};
use crate::error::{Error, Result};
use crate::graph::{Edge, Sign, SignedMultigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumSpec {
    pub n_max: usize,
    pub max_degree: Option<usize>,
    /// Cap on the number of vertex pairs joined in the underlying graph.
    pub max_edges: Option<usize>,
    /// No parallel edges at all.
    pub simple: bool,
    pub connected: bool,
    pub allow_digons: bool,
    /// Stop after this many classes and mark the result truncated.
    pub max_classes: Option<usize>,
}

impl EnumSpec {
    pub fn simple(n_max: usize) -> EnumSpec {
        EnumSpec {
            n_max,
            max_degree: None,
            max_edges: None,
            simple: true,
            connected: false,
            allow_digons: false,
            max_classes: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!("n_max {} exceeds the cap of {MAX_VERTICES}", self.n_max)));
        }
        if self.simple && self.allow_digons {
            return Err(Error::InvalidArgument("a simple enumeration cannot allow digons".into()));
        }
        Ok(())
    }

    fn digons(&self) -> bool {
        !self.simple && self.allow_digons
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enumeration {
    pub graphs: Vec<SignedMultigraph>,
    pub truncated: bool,
}

fn admissible(g: &SmallGraph, spec: &EnumSpec) -> bool {
    spec.max_degree.is_none_or(|d| g.max_degree() <= d) && spec.max_edges.is_none_or(|m| g.m() <= m)
}

/// Underlying graphs on exactly `1..=n_max` vertices, canonically labelled,
/// one per isomorphism class, grouped by vertex count.
///
/// The bounds on degree and edge count are hereditary, and every connected
/// graph has a vertex whose removal leaves it connected, so extending each
/// class of the previous level by one vertex reaches every class.
pub fn underlying_graphs(spec: &EnumSpec) -> Result<Vec<SmallGraph>> {
    spec.validate()?;
    let mut out = Vec::new();
    if spec.n_max == 0 {
        return Ok(out);
    }
    let mut level = vec![SmallGraph::new(1)];
    out.extend(level.iter().cloned());
    for n in 2..=spec.n_max {
        let extended: Vec<(u64, SmallGraph)> = level
            .par_iter()
            .flat_map_iter(|g| {
                let lowest = if spec.connected { 1u16 } else { 0 };
                (lowest..1u16 << (n - 1)).filter_map(move |nbrs| {
                    let h = g.extended(nbrs);
                    admissible(&h, spec).then(|| {
                        let c = canonical_form(&h);
                        (c.code, h.relabel(&c.labelling))
                    })
                })
            })
            .collect();
        let mut unique: HashMap<u64, SmallGraph> = HashMap::new();
        for (code, g) in extended {
            unique.entry(code).or_insert(g);
        }
        let mut next: Vec<(u64, SmallGraph)> = unique.into_iter().collect();
        next.sort_by_key(|(code, _)| *code);
        level = next.into_iter().map(|(_, g)| g).collect();
        out.extend(level.iter().cloned());
    }
    Ok(out)
}

const POS: u8 = 0;
const NEG: u8 = 1;
const DIGON: u8 = 2;

struct Frame {
    n: usize,
    edges: Vec<(usize, usize)>,
    index: Vec<Vec<usize>>,
}

impl Frame {
    fn new(u: &SmallGraph) -> Frame {
        let edges = u.edges();
        let mut index = vec![vec![usize::MAX; u.n()]; u.n()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            index[a][b] = i;
            index[b][a] = i;
        }
        Frame { n: u.n(), edges, index }
    }

    /// Forest edges of a BFS over the non-digon pairs, rooted at the lowest
    /// vertex of each component.
    fn forest(&self, states: &[u8]) -> Vec<bool> {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if states[i] != DIGON {
                adj[a].push((b, i));
                adj[b].push((a, i));
            }
        }
        let mut in_forest = vec![false; self.edges.len()];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for &(y, i) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        in_forest[i] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        in_forest
    }

    /// Switches so that every forest edge is positive.
    fn normalise(&self, states: &mut [u8]) {
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if states[i] != DIGON {
                adj[a].push((b, i));
                adj[b].push((a, i));
            }
        }
        let mut flip = vec![0u8; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        for root in 0..self.n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            queue.push_back(root);
            while let Some(x) = queue.pop_front() {
                for &(y, i) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        flip[y] = flip[x] ^ states[i];
                        queue.push_back(y);
                    }
                }
            }
        }
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if states[i] != DIGON {
                states[i] ^= flip[a] ^ flip[b];
            }
        }
    }

    fn code(states: &[u8]) -> u128 {
        states.iter().rev().fold(0u128, |acc, &s| acc * 3 + s as u128)
    }

    fn image(&self, states: &[u8], perm: &[usize]) -> Vec<u8> {
        let mut out = vec![0u8; states.len()];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            out[self.index[perm[a]][perm[b]]] = states[i];
        }
        out
    }

    fn realise(&self, states: &[u8]) -> SignedMultigraph {
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            match states[i] {
                POS => edges.push(Edge::new(a, b, Sign::Positive)),
                NEG => edges.push(Edge::new(a, b, Sign::Negative)),
                _ => {
                    edges.push(Edge::new(a, b, Sign::Positive));
                    edges.push(Edge::new(a, b, Sign::Negative));
                }
            }
        }
        SignedMultigraph::new(self.n, edges).expect("endpoints in range")
    }
}

/// One signed graph per switching-isomorphism class over the underlying graph `u`.
pub fn signature_classes(u: &SmallGraph, digons: bool) -> Vec<SignedMultigraph> {
    let frame = Frame::new(u);
    let autos = canonical_form(u).automorphisms;
    let m = frame.edges.len();
    let mut out = Vec::new();
    let digon_sets: u32 = if digons { 1 << m } else { 1 };
    for dmask in 0..digon_sets {
        let mut base: Vec<u8> = (0..m).map(|i| if dmask >> i & 1 == 1 { DIGON } else { POS }).collect();
        let in_forest = frame.forest(&base);
        let free: Vec<usize> = (0..m).filter(|&i| base[i] != DIGON && !in_forest[i]).collect();
        for smask in 0u64..1 << free.len() {
            for (k, &i) in free.iter().enumerate() {
                base[i] = (smask >> k & 1) as u8;
            }
            let code = Frame::code(&base);
            let minimal = autos.iter().all(|perm| {
                let mut img = frame.image(&base, perm);
                frame.normalise(&mut img);
                Frame::code(&img) >= code
            });
            if minimal {
                out.push(frame.realise(&base));
            }
        }
    }
    out
}

pub fn enumerate_signed(spec: &EnumSpec) -> Result<Enumeration> {
    let underlying = underlying_graphs(spec)?;
    let digons = spec.digons();
    let mut graphs: Vec<SignedMultigraph> =
        underlying.par_iter().flat_map_iter(|u| signature_classes(u, digons)).collect();
    let mut truncated = false;
    if let Some(cap) = spec.max_classes {
        if graphs.len() > cap {
            graphs.truncate(cap);
            truncated = true;
        }
    }
    Ok(Enumeration { graphs, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::switch;
    use crate::graph::SwitchSet;
    use crate::switching::is_switching_isomorphic;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Pair states as a dense code, used as a class key by the oracle.
    fn dense_code(g: &SignedMultigraph) -> Vec<u8> {
        let n = g.n();
        let mut states = vec![0u8; n * n];
        for e in g.edges() {
            let bit = if e.sign == Sign::Positive { 1 } else { 2 };
            states[e.u * n + e.v] |= bit;
            states[e.v * n + e.u] |= bit;
        }
        states
    }

    /// Census oracle: every labelled graph on exactly `n` vertices with every
    /// pair state, quotiented by the full action of permutations and switchings.
    fn census(n: usize, digons: bool, connected: bool) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect();
        let states: u32 = if digons { 4 } else { 3 };
        let perms = permutations(n);
        let mut classes = std::collections::HashSet::new();
        let total = states.pow(pairs.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut edges = Vec::new();
            for &(a, b) in &pairs {
                let s = c % states;
                c /= states;
                if s == 1 || s == 3 {
                    edges.push(Edge::new(a, b, Sign::Positive));
                }
                if s == 2 || s == 3 {
                    edges.push(Edge::new(a, b, Sign::Negative));
                }
            }
            let g = SignedMultigraph::new(n, edges).unwrap();
            if connected && !g.is_connected() {
                continue;
            }
            let key = perms
                .iter()
                .flat_map(|p| {
                    let h = g.relabel(p);
                    (0u32..1 << n).map(move |x| {
                        let set = SwitchSet::new(n, (0..n).filter(|v| x >> v & 1 == 1)).unwrap();
                        dense_code(&switch(&h, &set))
                    })
                })
                .min()
                .unwrap();
            classes.insert(key);
        }
        classes.len()
    }

    fn count_with(n: usize, digons: bool, connected: bool) -> usize {
        let spec = EnumSpec {
            simple: !digons,
            allow_digons: digons,
            connected,
            ..EnumSpec::simple(n)
        };
        enumerate_signed(&spec).unwrap().graphs.iter().filter(|g| g.n() == n).count()
    }

    #[test]
    fn census_matches_brute_force() {
        for n in 1..=4 {
            for digons in [false, true] {
                for connected in [false, true] {
                    assert_eq!(count_with(n, digons, connected), census(n, digons, connected), "n={n} digons={digons} connected={connected}");
                }
            }
        }
    }

    #[test]
    fn connected_underlying_counts() {
        let spec = EnumSpec { connected: true, ..EnumSpec::simple(7) };
        let all = underlying_graphs(&spec).unwrap();
        let per_n: Vec<usize> = (1..=7).map(|n| all.iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(per_n, vec![1, 1, 2, 6, 21, 112, 853]);
    }

    #[test]
    fn small_examples() {
        let spec = EnumSpec { connected: true, ..EnumSpec::simple(3) };
        let e = enumerate_signed(&spec).unwrap();
        let triangles: Vec<_> = e.graphs.iter().filter(|g| g.n() == 3 && g.m() == 3).collect();
        assert_eq!(triangles.len(), 2);
        // K1, K2, P3 and the two triangles
        assert_eq!(e.graphs.len(), 5);

        let spec = EnumSpec { simple: false, allow_digons: true, connected: true, ..EnumSpec::simple(2) };
        let e = enumerate_signed(&spec).unwrap();
        let digon = crate::catalog::build("DIGON").unwrap().graph;
        assert_eq!(e.graphs.iter().filter(|g| is_switching_isomorphic(g, &digon)).count(), 1);

        let c4 = SmallGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
        assert_eq!(signature_classes(&c4, false).len(), 2);
    }

    #[test]
    fn no_two_classes_are_switching_isomorphic() {
        let spec = EnumSpec { simple: false, allow_digons: true, ..EnumSpec::simple(4) };
        let graphs = enumerate_signed(&spec).unwrap().graphs;
        for i in 0..graphs.len() {
            for j in i + 1..graphs.len() {
                assert!(!is_switching_isomorphic(&graphs[i], &graphs[j]), "{i} {j}");
            }
        }
    }

    #[test]
    fn budget_guards() {
        assert!(enumerate_signed(&EnumSpec::simple(11)).is_err());
        let bad = EnumSpec { allow_digons: true, ..EnumSpec::simple(3) };
        assert!(enumerate_signed(&bad).is_err());
        let capped = EnumSpec { max_classes: Some(3), ..EnumSpec::simple(4) };
        let e = enumerate_signed(&capped).unwrap();
        assert!(e.truncated);
        assert_eq!(e.graphs.len(), 3);
    }
}
