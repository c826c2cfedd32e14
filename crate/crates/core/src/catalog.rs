//! Named signed graphs, their published colourings, and the gadget
//! constructions (negative cycles, the indicator, Hajós sums, `I(G)`).
//!
//! Every table below is a literal transcription: vertex names in order, then
//! edges by name, then the colouring as `±1..±5` labels when one is known.

use serde::{Deserialize, Serialize};

use crate::clique::{CliqueParams, ColorLabel};
use crate::error::{Error, Result};
use crate::fraction::Fraction;
use crate::graph::{Edge, Sign, SignedMultigraph};
use crate::solver::Homomorphism;

use Sign::{Negative as N, Positive as P};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGraph {
    pub name: String,
    pub description: String,
    pub vertex_names: Vec<String>,
    pub graph: SignedMultigraph,
    pub expected_chi_c: Option<Fraction>,
    pub golden_coloring: Option<Homomorphism>,
}

struct Entry {
    name: &'static str,
    description: &'static str,
    vertices: &'static [&'static str],
    edges: &'static [(&'static str, &'static str, Sign)],
    coloring: &'static [(&'static str, i32)],
    chi: Option<(u64, u64)>,
}

const K4_MINUS: Entry = Entry {
    name: "K4_MINUS",
    description: "K4 with all edges negative",
    vertices: &["a", "b", "c", "d"],
    edges: &[("a", "b", N), ("a", "c", N), ("a", "d", N), ("b", "c", N), ("b", "d", N), ("c", "d", N)],
    coloring: &[],
    chi: Some((4, 1)),
};

const DIGON: Entry = Entry {
    name: "DIGON",
    description: "two vertices joined by a positive and a negative edge",
    vertices: &["a", "b"],
    edges: &[("a", "b", P), ("a", "b", N)],
    coloring: &[],
    chi: Some((4, 1)),
};

const T: Entry = Entry {
    name: "T",
    description: "positive 5-cycle v1..v5 with negative chords v2v4 and v3v5",
    vertices: &["v1", "v2", "v3", "v4", "v5"],
    edges: &[
        ("v1", "v2", P),
        ("v2", "v3", P),
        ("v3", "v4", P),
        ("v4", "v5", P),
        ("v5", "v1", P),
        ("v2", "v4", N),
        ("v3", "v5", N),
    ],
    // colours 0, 2, 4, 6, 8
    coloring: &[("v1", 1), ("v2", 3), ("v3", 5), ("v4", -2), ("v5", -4)],
    chi: Some((10, 3)),
};

const T_PLUS: Entry = Entry {
    name: "T_PLUS",
    description: "T with the positive chord v1v3 added",
    vertices: &["v1", "v2", "v3", "v4", "v5"],
    edges: &[
        ("v1", "v2", P),
        ("v2", "v3", P),
        ("v3", "v4", P),
        ("v4", "v5", P),
        ("v5", "v1", P),
        ("v2", "v4", N),
        ("v3", "v5", N),
        ("v1", "v3", P),
    ],
    coloring: &[],
    chi: Some((10, 3)),
};

const H1: Entry = Entry {
    name: "H1",
    description: "six-vertex graph H1",
    vertices: &["u", "v", "w", "u'", "v'", "w'"],
    edges: &[
        ("w'", "v", N),
        ("u'", "w", N),
        ("v'", "u", N),
        ("w'", "u", P),
        ("v", "u", P),
        ("v", "w", P),
        ("w", "u", P),
        ("u'", "v", P),
        ("v'", "w", P),
    ],
    coloring: &[("u", 1), ("v", 2), ("w", 3), ("v'", 4), ("u'", -5), ("w'", -4)],
    chi: None,
};

const H2: Entry = Entry {
    name: "H2",
    description: "two negative triangles uvw and u'v'w' joined by a negative matching",
    vertices: &["u", "v", "w", "u'", "v'", "w'"],
    edges: &[
        ("u", "v", N),
        ("v", "w", N),
        ("w", "u", N),
        ("w'", "u'", N),
        ("u'", "v'", N),
        ("v'", "w'", N),
        ("w'", "w", N),
        ("v", "v'", N),
        ("u'", "u", N),
    ],
    coloring: &[("w", 1), ("u", -2), ("v", 4), ("w'", 5), ("u'", 1), ("v'", -3)],
    chi: None,
};

const H2P: Entry = Entry {
    name: "H2P",
    description: "H2 with the triangle u'v'w' carrying two positive edges",
    vertices: &["u", "v", "w", "u'", "v'", "w'"],
    edges: &[
        ("u", "v", N),
        ("v", "w", N),
        ("w", "u", N),
        ("u'", "v'", N),
        ("w'", "w", N),
        ("v", "v'", N),
        ("u'", "u", N),
        ("v'", "w'", P),
        ("w'", "u'", P),
    ],
    coloring: &[("w'", -3), ("v'", -2), ("u'", -5), ("w", 1), ("v", 4), ("u", -2)],
    chi: None,
};

const H3: Entry = Entry {
    name: "H3",
    description: "positive triangle wuv attached to the negative part x, y, z",
    vertices: &["w", "u", "v", "x", "y", "z"],
    edges: &[
        ("u", "x", N),
        ("x", "y", N),
        ("y", "z", N),
        ("z", "v", N),
        ("v", "y", N),
        ("x", "z", N),
        ("w", "u", P),
        ("w", "v", P),
        ("u", "v", P),
    ],
    coloring: &[("w", -5), ("u", -5), ("v", -3), ("x", -2), ("y", 1), ("z", 4)],
    chi: None,
};

const H4: Entry = Entry {
    name: "H4",
    description: "six-vertex graph H4",
    vertices: &["v", "x", "u", "w2", "z", "y"],
    edges: &[
        ("u", "x", N),
        ("x", "w2", N),
        ("w2", "z", N),
        ("z", "y", N),
        ("y", "w2", N),
        ("x", "z", N),
        ("v", "u", P),
        ("v", "z", P),
        ("u", "y", P),
    ],
    coloring: &[("v", 2), ("x", -2), ("u", -5), ("w2", 1), ("z", 4), ("y", -3)],
    chi: None,
};

const H4P: Entry = Entry {
    name: "H4P",
    description: "H4 with the edge vu negative",
    vertices: &["v", "x", "u", "w2", "z", "y"],
    edges: &[
        ("u", "x", N),
        ("x", "w2", N),
        ("w2", "z", N),
        ("z", "y", N),
        ("y", "w2", N),
        ("x", "z", N),
        ("v", "u", N),
        ("v", "z", P),
        ("u", "y", P),
    ],
    coloring: &[("v", -1), ("x", -2), ("u", -5), ("w2", 1), ("z", 4), ("y", -3)],
    chi: None,
};

const CUBE_NEG: Entry = Entry {
    name: "CUBE_NEG",
    description: "a signature on the 3-cube",
    vertices: &["u", "v", "w1", "w2", "w3", "w4", "x", "y"],
    edges: &[
        ("w1", "u", N),
        ("u", "v", N),
        ("v", "w4", N),
        ("w4", "y", N),
        ("y", "x", N),
        ("x", "w1", N),
        ("w2", "u", N),
        ("w3", "v", N),
        ("w1", "w4", P),
        ("x", "w2", P),
        ("w2", "w3", P),
        ("w3", "y", P),
    ],
    coloring: &[("u", 1), ("v", 4), ("w1", -2), ("w2", -3), ("w3", -2), ("w4", -3), ("x", -5), ("y", 5)],
    chi: None,
};

const EIGHT_V: [&str; 8] = ["w1", "w2", "w3", "w4", "u", "v", "x1", "y1"];

macro_rules! eight_v {
    ($name:literal, $desc:literal, $x1w2:expr, $y1w3:expr, $coloring:expr) => {
        Entry {
            name: $name,
            description: $desc,
            vertices: &EIGHT_V,
            edges: &[
                ("w1", "u", N),
                ("u", "v", N),
                ("v", "w4", N),
                ("w4", "x1", N),
                ("x1", "w1", N),
                ("w1", "y1", N),
                ("w2", "u", N),
                ("w3", "v", N),
                ("w2", "w3", P),
                ("w4", "y1", P),
                ("x1", "w2", $x1w2),
                ("y1", "w3", $y1w3),
            ],
            coloring: $coloring,
            chi: None,
        }
    };
}

const EIGHT_V_1: Entry = eight_v!(
    "EIGHT_V_1",
    "eight-vertex graph with x1w2 and y1w3 negative",
    N,
    N,
    &[("w1", -2), ("w4", -3), ("u", 1), ("v", 4), ("x1", 1), ("y1", -5), ("w2", -3), ("w3", -2)]
);
const EIGHT_V_2: Entry = eight_v!(
    "EIGHT_V_2",
    "eight-vertex graph with x1w2 and y1w3 positive",
    P,
    P,
    &[("w1", 4), ("w4", -2), ("u", 1), ("v", 4), ("x1", -5), ("y1", -4), ("w2", -3), ("w3", -2)]
);
const EIGHT_V_3: Entry = eight_v!(
    "EIGHT_V_3",
    "eight-vertex graph with x1w2 positive and y1w3 negative",
    P,
    N,
    &[("w1", -2), ("w4", -3), ("u", 1), ("v", 4), ("x1", 3), ("y1", -5), ("w2", 5), ("w3", -2)]
);
const EIGHT_V_4: Entry = eight_v!(
    "EIGHT_V_4",
    "eight-vertex graph with x1w2 negative and y1w3 positive",
    N,
    P,
    &[("w1", -2), ("w4", -2), ("u", 1), ("v", 4), ("x1", 2), ("y1", -4), ("w2", -3), ("w3", -2)]
);

const PETERSEN: Entry = Entry {
    name: "PETERSEN",
    description: "Petersen graph drawn as a negative 9-cycle, a centre and three positive chords",
    vertices: &["v0", "v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "c"],
    edges: &[
        ("v0", "v1", N),
        ("v1", "v2", N),
        ("v2", "v3", N),
        ("v3", "v4", N),
        ("v4", "v5", N),
        ("v5", "v6", N),
        ("v6", "v7", N),
        ("v7", "v8", N),
        ("v8", "v0", N),
        ("c", "v0", N),
        ("c", "v3", N),
        ("c", "v6", N),
        ("v1", "v5", P),
        ("v2", "v7", P),
        ("v4", "v8", P),
    ],
    coloring: &[],
    chi: Some((10, 3)),
};

const INDICATOR: Entry = Entry {
    name: "INDICATOR",
    description: "K4 with one vertex split into s (degree 2) and t (degree 1), all edges negative",
    vertices: &["s", "x1", "x2", "x3", "t"],
    edges: &[("s", "x1", N), ("s", "x2", N), ("x1", "x2", N), ("x2", "x3", N), ("x1", "x3", N), ("x3", "t", N)],
    coloring: &[],
    chi: None,
};

const ALL: [&Entry; 17] = [
    &K4_MINUS, &DIGON, &T, &T_PLUS, &H1, &H2, &H2P, &H3, &H4, &H4P, &CUBE_NEG, &EIGHT_V_1, &EIGHT_V_2, &EIGHT_V_3,
    &EIGHT_V_4, &PETERSEN, &INDICATOR,
];

fn index_of(spec: &Entry, name: &str) -> usize {
    spec.vertices
        .iter()
        .position(|&v| v == name)
        .unwrap_or_else(|| panic!("{}: unknown vertex {name}", spec.name))
}

fn realise(spec: &Entry) -> NamedGraph {
    let edges: Vec<Edge> =
        spec.edges.iter().map(|&(a, b, s)| Edge::new(index_of(spec, a), index_of(spec, b), s)).collect();
    let graph = SignedMultigraph::new(spec.vertices.len(), edges).expect("catalog tables are well formed");
    let golden_coloring = (!spec.coloring.is_empty()).then(|| {
        let mut assignment = vec![u32::MAX; spec.vertices.len()];
        for &(v, label) in spec.coloring {
            assignment[index_of(spec, v)] = ColorLabel::c(label);
        }
        assert!(assignment.iter().all(|&c| c != u32::MAX), "{}: colouring is partial", spec.name);
        Homomorphism { assignment, params: CliqueParams::TEN_THIRDS }
    });
    NamedGraph {
        name: spec.name.to_string(),
        description: spec.description.to_string(),
        vertex_names: spec.vertices.iter().map(|s| s.to_string()).collect(),
        graph,
        expected_chi_c: spec.chi.map(|(a, b)| Fraction::new(a, b).expect("positive")),
        golden_coloring,
    }
}

pub fn names() -> Vec<&'static str> {
    ALL.iter().map(|s| s.name).collect()
}

pub fn build(name: &str) -> Result<NamedGraph> {
    ALL.iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
        .map(|s| realise(s))
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn all() -> Vec<NamedGraph> {
    ALL.iter().map(|s| realise(s)).collect()
}

/// Every catalog entry that carries a published colouring at `(10, 3)`.
pub fn golden_colorings() -> Vec<(NamedGraph, Homomorphism)> {
    all()
        .into_iter()
        .filter_map(|g| {
            let h = g.golden_coloring.clone()?;
            Some((g, h))
        })
        .collect()
}

/// A cycle of length `l` whose only negative edge closes it; `l = 2` is the digon.
pub fn negative_cycle(l: usize) -> Result<SignedMultigraph> {
    if l < 2 {
        return Err(Error::InvalidArgument(format!("a negative cycle needs length at least 2, got {l}")));
    }
    let mut edges: Vec<Edge> = (0..l - 1).map(|i| Edge::new(i, i + 1, P)).collect();
    edges.push(Edge::new(l - 1, 0, N));
    SignedMultigraph::new(l, edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndicatorGadget {
    pub graph: SignedMultigraph,
    pub s: usize,
    pub t: usize,
}

pub fn indicator() -> IndicatorGadget {
    let g = realise(&INDICATOR);
    IndicatorGadget { graph: g.graph, s: 0, t: 4 }
}

/// All-positive complete graph.
pub fn complete_graph(n: usize) -> SignedMultigraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push(Edge::new(i, j, P));
        }
    }
    SignedMultigraph::from_parts_unchecked(n, edges)
}

/// The `k`-th graph of the Hajós sequence started from `K6`, all edges
/// positive. Each step removes the last edge `ab` of the current graph and
/// one edge `cd` of a fresh `K6`, identifies `a` with `c` and joins `b` to `d`.
pub fn hajos_graph(k: usize) -> Result<SignedMultigraph> {
    if k == 0 {
        return Err(Error::InvalidArgument("the Hajós sequence starts at k = 1".into()));
    }
    let mut n = 6;
    let mut edges = complete_graph(6).edges().to_vec();
    for _ in 1..k {
        let ab = edges.pop().expect("non-empty");
        let (a, b) = (ab.u, ab.v);
        // fresh K6 on {a, n, .., n+4} minus the edge a-n; d = n
        let fresh: Vec<usize> = std::iter::once(a).chain(n..n + 5).collect();
        for i in 0..6 {
            for j in i + 1..6 {
                if i == 0 && j == 1 {
                    continue;
                }
                edges.push(Edge::new(fresh[i], fresh[j], P));
            }
        }
        edges.push(Edge::new(b, n, P));
        n += 5;
    }
    SignedMultigraph::new(n, edges)
}

/// Replaces every edge `uv` by a fresh copy of the indicator gadget with
/// `s = u` and `t = v`.
pub fn apply_indicator(g: &SignedMultigraph) -> Result<SignedMultigraph> {
    if let Some(e) = g.edges().iter().find(|e| e.is_loop()) {
        return Err(Error::InvalidArgument(format!("loop at vertex {} cannot be replaced by the gadget", e.u)));
    }
    let mut n = g.n();
    let mut edges = Vec::with_capacity(6 * g.m());
    for e in g.edges() {
        let (s, t, x1, x2, x3) = (e.u, e.v, n, n + 1, n + 2);
        edges.extend([
            Edge::new(s, x1, N),
            Edge::new(s, x2, N),
            Edge::new(x1, x2, N),
            Edge::new(x2, x3, N),
            Edge::new(x1, x3, N),
            Edge::new(x3, t, N),
        ]);
        n += 3;
    }
    SignedMultigraph::new(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::verify_hom;

    #[test]
    fn every_name_builds() {
        for name in names() {
            let g = build(name).unwrap();
            assert_eq!(g.vertex_names.len(), g.graph.n());
            assert!(!g.graph.has_negative_loop());
        }
        assert_eq!(build("t_plus").unwrap().name, "T_PLUS");
        assert!(matches!(build("NOPE"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn sizes() {
        let t = build("T").unwrap().graph;
        assert_eq!((t.n(), t.m()), (5, 7));
        let tp = build("T_PLUS").unwrap().graph;
        assert_eq!((tp.n(), tp.m()), (5, 8));
        let p = build("PETERSEN").unwrap().graph;
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.degrees().iter().all(|&d| d == 3));
        assert!(p.is_simple());
    }

    #[test]
    fn goldens_verify() {
        let goldens = golden_colorings();
        assert_eq!(goldens.len(), 12);
        for (g, h) in goldens {
            assert_eq!(verify_hom(&g.graph, &h), g.name != "EIGHT_V_4", "{}", g.name);
        }
    }

    #[test]
    fn printed_eight_v_4_certificate_breaks_one_edge() {
        let g = build("EIGHT_V_4").unwrap();
        let h = g.golden_coloring.clone().unwrap();
        let at = |name: &str| g.vertex_names.iter().position(|v| v == name).unwrap();
        let broken: Vec<(usize, usize)> = g
            .graph
            .edges()
            .iter()
            .filter(|e| !h.params.allows(h.assignment[e.u], h.assignment[e.v], e.sign))
            .map(|e| e.pair())
            .collect();
        assert_eq!(broken, vec![(at("w1"), at("y1"))]);
        // w1 and w4 share a colour while y1 meets them with opposite signs
        let mut repaired = h.clone();
        repaired.assignment[at("w1")] = ColorLabel::color(-1).unwrap();
        assert!(verify_hom(&g.graph, &repaired));
    }

    #[test]
    fn negative_cycles() {
        assert!(negative_cycle(1).is_err());
        let d = negative_cycle(2).unwrap();
        assert_eq!(d.pair_signs(0, 1), 3);
        let c = negative_cycle(6).unwrap();
        assert_eq!(c.edges().iter().filter(|e| e.sign == N).count(), 1);
    }

    #[test]
    fn indicator_shape() {
        let ind = indicator();
        assert_eq!((ind.graph.n(), ind.graph.m()), (5, 6));
        assert_eq!(ind.graph.degree(ind.s), 2);
        assert_eq!(ind.graph.degree(ind.t), 1);
    }

    #[test]
    fn hajos_counts() {
        assert!(hajos_graph(0).is_err());
        for k in 1..=5 {
            let g = hajos_graph(k).unwrap();
            assert_eq!((g.n(), g.m()), (5 * k + 1, 14 * k + 1));
            assert!(g.is_simple());
            assert!(g.is_connected());
        }
        assert_eq!(hajos_graph(1).unwrap(), complete_graph(6));
    }

    #[test]
    fn indicator_replacement_counts() {
        let single = SignedMultigraph::new(2, vec![Edge::new(0, 1, P)]).unwrap();
        let g = apply_indicator(&single).unwrap();
        assert_eq!(g, indicator().graph.relabel(&[0, 2, 3, 4, 1]));
        let k6 = apply_indicator(&complete_graph(6)).unwrap();
        assert_eq!((k6.n(), k6.m()), (51, 90));
        let h2 = apply_indicator(&hajos_graph(2).unwrap()).unwrap();
        assert_eq!((h2.n(), h2.m()), (98, 174));
        let looped = SignedMultigraph::new(1, vec![Edge::new(0, 0, P)]).unwrap();
        assert!(apply_indicator(&looped).is_err());
    }
}
