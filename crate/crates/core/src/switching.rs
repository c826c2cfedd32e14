//! Switching classes: normal forms, equivalence, switching isomorphism and
//! switching-subgraph search.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{switch_mask, Edge, Sign, SignedMultigraph, SwitchSet};

/// Counts of positive and negative edges on every unordered pair.
type PairCounts = HashMap<(usize, usize), (u32, u32)>;

fn pair_counts(g: &SignedMultigraph) -> PairCounts {
    g.pair_profile().into_iter().collect()
}

/// Deterministic representative of the switching class of `g`.
///
/// A BFS forest is grown from the lowest vertex over pairs that carry a
/// single sign (pairs carrying both signs are invariant under switching and
/// cannot fix a switch), and the graph is switched so that every forest edge is
/// positive. Signs are finally sorted within each pair of parallel edges, so
/// the result only depends on the switching class and the labelled
/// underlying multigraph.
pub fn canonical_signature(g: &SignedMultigraph) -> SignedMultigraph {
    let n = g.n();
    let counts = pair_counts(g);
    let mut adj: Vec<Vec<(usize, Sign)>> = vec![Vec::new(); n];
    for (&(u, v), &(pos, neg)) in &counts {
        if u == v || (pos > 0 && neg > 0) {
            continue;
        }
        let s = if pos > 0 { Sign::Positive } else { Sign::Negative };
        adj[u].push((v, s));
        adj[v].push((u, s));
    }
    for list in &mut adj {
        list.sort_unstable();
    }

    let mut flip = vec![false; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            for &(y, s) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    // after switching, sign(xy) = s * flip(x) * flip(y) must be +
                    flip[y] = flip[x] ^ (s == Sign::Negative);
                    queue.push_back(y);
                }
            }
        }
    }
    let switched = switch_mask(g, &flip);
    sort_signs_within_pairs(&switched)
}

fn sort_signs_within_pairs(g: &SignedMultigraph) -> SignedMultigraph {
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        by_pair.entry(e.pair()).or_default().push(i);
    }
    let mut edges = g.edges().to_vec();
    for idx in by_pair.values() {
        let mut signs: Vec<Sign> = idx.iter().map(|&i| edges[i].sign).collect();
        signs.sort();
        for (&i, s) in idx.iter().zip(signs) {
            edges[i].sign = s;
        }
    }
    SignedMultigraph::from_parts_unchecked(g.n(), edges)
}

fn same_underlying(a: &SignedMultigraph, b: &SignedMultigraph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let ua: Vec<_> = a.pair_profile().into_iter().map(|(p, (x, y))| (p, x + y)).collect();
    let ub: Vec<_> = b.pair_profile().into_iter().map(|(p, (x, y))| (p, x + y)).collect();
    ua == ub
}

/// Whether two signatures on the same labelled multigraph differ by a
/// switching. Edge order may differ; parallel edges are compared as
/// multisets.
pub fn is_switching_equivalent(a: &SignedMultigraph, b: &SignedMultigraph) -> Result<bool> {
    if !same_underlying(a, b) {
        return Err(Error::UnderlyingMismatch);
    }
    Ok(canonical_signature(a).pair_profile() == canonical_signature(b).pair_profile())
}

/// Per-vertex data preserved by relabelling and switching.
fn switching_invariants(g: &SignedMultigraph) -> Vec<(usize, usize, u32, u32, usize)> {
    let deg = g.degrees();
    let mut inv: Vec<_> = (0..g.n()).map(|v| (deg[v], 0usize, 0u32, 0u32, 0usize)).collect();
    for ((u, v), (pos, neg)) in g.pair_profile() {
        if u == v {
            inv[u].2 += pos;
            inv[u].3 += neg;
        } else {
            inv[u].1 += 1;
            inv[v].1 += 1;
            if pos > 0 && neg > 0 {
                inv[u].4 += 1;
                inv[v].4 += 1;
            }
        }
    }
    inv
}

/// Whether some vertex bijection composed with a switching maps `g` onto `h`.
/// Exhaustive; intended for graphs with at most a dozen vertices.
pub fn is_switching_isomorphic(g: &SignedMultigraph, h: &SignedMultigraph) -> bool {
    find_switching_isomorphism(g, h).is_some()
}

/// A vertex map `perm` (g-vertex `v` goes to `perm[v]`) such that
/// `g.relabel(perm)` is switching equivalent to `h`.
pub fn find_switching_isomorphism(g: &SignedMultigraph, h: &SignedMultigraph) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.m() != h.m() {
        return None;
    }
    let ig = switching_invariants(g);
    let ih = switching_invariants(h);
    let mut sg = ig.clone();
    let mut sh = ih.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return None;
    }
    let cg = pair_counts(g);
    let ch = pair_counts(h);
    let total = |c: &PairCounts, a: usize, b: usize| {
        let key = if a <= b { (a, b) } else { (b, a) };
        c.get(&key).map_or(0, |&(p, n)| p + n)
    };

    // Map g's vertices in BFS order so adjacency checks bite early.
    let order = bfs_order(g);
    let n = g.n();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn rec(
        k: usize,
        order: &[usize],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ctx: &dyn Fn(&[usize], usize, usize) -> bool,
        leaf: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if k == order.len() {
            return leaf(perm);
        }
        let a = order[k];
        for x in 0..perm.len() {
            if used[x] || !ctx(perm, a, x) {
                continue;
            }
            perm[a] = x;
            used[x] = true;
            if rec(k + 1, order, perm, used, ctx, leaf) {
                return true;
            }
            used[x] = false;
            perm[a] = usize::MAX;
        }
        false
    }

    let ctx = |perm: &[usize], a: usize, x: usize| -> bool {
        if ig[a] != ih[x] {
            return false;
        }
        if total(&cg, a, a) != total(&ch, x, x) {
            return false;
        }
        perm.iter().enumerate().all(|(b, &y)| {
            y == usize::MAX || total(&cg, a, b) == total(&ch, x, y)
        })
    };
    let leaf = |perm: &[usize]| -> bool {
        let relabelled = g.relabel(perm);
        is_switching_equivalent(&relabelled, h).unwrap_or(false)
    };
    if rec(0, &order, &mut perm, &mut used, &ctx, &leaf) {
        Some(perm)
    } else {
        None
    }
}

fn bfs_order(g: &SignedMultigraph) -> Vec<usize> {
    let adj = g.neighbors();
    let deg = g.degrees();
    let mut roots: Vec<usize> = (0..g.n()).collect();
    roots.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for r in roots {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut i = order.len();
        order.push(r);
        while i < order.len() {
            let x = order[i];
            i += 1;
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
    }
    order
}

/// An occurrence of a (switched) copy of a small signed graph inside a larger
/// one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphEmbedding {
    /// `map[v]` is the host vertex hosting pattern vertex `v`.
    pub map: Vec<usize>,
    /// Host vertices to switch so that every pattern edge appears with its sign.
    pub switch: SwitchSet,
}

/// Searches for an injective map `map` of `pattern` into `host` and a switch
/// set `X` such that every pattern edge `(a, b, s)` has a distinct
/// counterpart `(map[a], map[b], s)` in `switch(host, X)`.
pub fn contains_switching_subgraph(host: &SignedMultigraph, pattern: &SignedMultigraph) -> Option<SubgraphEmbedding> {
    let k = pattern.n();
    if k > host.n() {
        return None;
    }
    let ch = pair_counts(host);
    let cp = pair_counts(pattern);
    let host_adj = host.neighbors();
    let order = bfs_order(pattern);
    let pat_adj = pattern.neighbors();

    // Allowed relative switch r (bit 1 = keep, bit 2 = flip) for a pattern pair
    // mapped onto a host pair.
    let allowed = |pc: (u32, u32), hc: (u32, u32)| -> u8 {
        let mut r = 0;
        if hc.0 >= pc.0 && hc.1 >= pc.1 {
            r |= 1;
        }
        if hc.1 >= pc.0 && hc.0 >= pc.1 {
            r |= 2;
        }
        r
    };
    let get = |c: &PairCounts, a: usize, b: usize| -> (u32, u32) {
        let key = if a <= b { (a, b) } else { (b, a) };
        c.get(&key).copied().unwrap_or((0, 0))
    };

    struct Search<'a> {
        order: &'a [usize],
        map: Vec<usize>,
        used: Vec<bool>,
    }

    let mut s = Search { order: &order, map: vec![usize::MAX; k], used: vec![false; host.n()] };

    fn rec(
        s: &mut Search<'_>,
        depth: usize,
        candidates: &dyn Fn(&[usize], usize) -> Vec<usize>,
        fits: &dyn Fn(&[usize], usize, usize) -> bool,
        leaf: &dyn Fn(&[usize]) -> Option<SwitchSet>,
    ) -> Option<SwitchSet> {
        if depth == s.order.len() {
            return leaf(&s.map);
        }
        let a = s.order[depth];
        for x in candidates(&s.map, a) {
            if s.used[x] || !fits(&s.map, a, x) {
                continue;
            }
            s.map[a] = x;
            s.used[x] = true;
            if let Some(found) = rec(s, depth + 1, candidates, fits, leaf) {
                return Some(found);
            }
            s.used[x] = false;
            s.map[a] = usize::MAX;
        }
        None
    }

    let candidates = |map: &[usize], a: usize| -> Vec<usize> {
        match pat_adj[a].iter().find(|&&b| map[b] != usize::MAX) {
            Some(&b) => host_adj[map[b]].clone(),
            None => (0..host.n()).collect(),
        }
    };
    let fits = |map: &[usize], a: usize, x: usize| -> bool {
        let pl = get(&cp, a, a);
        let hl = get(&ch, x, x);
        if hl.0 < pl.0 || hl.1 < pl.1 {
            return false;
        }
        pat_adj[a].iter().all(|&b| {
            let y = map[b];
            y == usize::MAX || allowed(get(&cp, a, b), get(&ch, x, y)) != 0
        })
    };
    let leaf = |map: &[usize]| -> Option<SwitchSet> {
        // 2-colour the parity constraints x(a) * x(b) = r.
        let mut parity: Vec<Option<bool>> = vec![None; k];
        let mut constraints: Vec<Vec<(usize, u8)>> = vec![Vec::new(); k];
        for a in 0..k {
            for &b in &pat_adj[a] {
                let r = allowed(get(&cp, a, b), get(&ch, map[a], map[b]));
                constraints[a].push((b, r));
            }
        }
        for root in 0..k {
            if parity[root].is_some() {
                continue;
            }
            parity[root] = Some(false);
            let mut stack = vec![root];
            while let Some(a) = stack.pop() {
                let pa = parity[a].unwrap();
                for &(b, r) in &constraints[a] {
                    if r == 3 {
                        continue;
                    }
                    let want = pa ^ (r == 2);
                    match parity[b] {
                        None => {
                            parity[b] = Some(want);
                            stack.push(b);
                        }
                        Some(pb) if pb != want => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let members = (0..k).filter(|&a| parity[a] == Some(true)).map(|a| map[a]);
        SwitchSet::new(host.n(), members).ok()
    };

    rec(&mut s, 0, &candidates, &fits, &leaf).map(|switch| SubgraphEmbedding { map: s.map.clone(), switch })
}

/// Checks an embedding returned by [`contains_switching_subgraph`] directly.
pub fn verify_embedding(host: &SignedMultigraph, pattern: &SignedMultigraph, emb: &SubgraphEmbedding) -> bool {
    let mut seen = std::collections::HashSet::new();
    if emb.map.len() != pattern.n() || !emb.map.iter().all(|&x| x < host.n() && seen.insert(x)) {
        return false;
    }
    let switched = crate::graph::switch(host, &emb.switch);
    let mut avail: Vec<Option<Edge>> = switched.edges().iter().copied().map(Some).collect();
    pattern.edges().iter().all(|e| {
        let (x, y) = (emb.map[e.u], emb.map[e.v]);
        match avail.iter_mut().find(|slot| {
            slot.is_some_and(|h| h.sign == e.sign && h.pair() == if x <= y { (x, y) } else { (y, x) })
        }) {
            Some(slot) => {
                *slot = None;
                true
            }
            None => false,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_graph, switch, Sign::Negative as N, Sign::Positive as P};

    fn tri(signs: [Sign; 3]) -> SignedMultigraph {
        make_graph(3, &[(0, 1, signs[0]), (0, 2, signs[1]), (1, 2, signs[2])], true).unwrap()
    }

    #[test]
    fn equivalence_examples() {
        assert_eq!(is_switching_equivalent(&tri([N, N, N]), &tri([P, P, N])), Ok(true));
        assert_eq!(is_switching_equivalent(&tri([N, N, N]), &tri([P, P, P])), Ok(false));
        let path = make_graph(3, &[(0, 1, N), (1, 2, N)], true).unwrap();
        assert_eq!(
            is_switching_equivalent(&tri([N, N, N]), &path),
            Err(Error::UnderlyingMismatch)
        );
    }

    #[test]
    fn equivalence_matches_brute_force_on_triangles() {
        let all = [P, N];
        for a in all {
            for b in all {
                for c in all {
                    let g = tri([a, b, c]);
                    let brute = (0..8u32).any(|mask| {
                        let x = SwitchSet::new(3, (0..3).filter(|i| mask >> i & 1 == 1)).unwrap();
                        switch(&g, &x) == tri([P, P, N])
                    });
                    assert_eq!(is_switching_equivalent(&g, &tri([P, P, N])).unwrap(), brute);
                }
            }
        }
    }

    #[test]
    fn canonical_signature_examples() {
        let tree = make_graph(4, &[(0, 1, P), (1, 2, P), (1, 3, P)], true).unwrap();
        assert_eq!(canonical_signature(&tree), tree);

        // BFS from 0 takes 0-1 and 0-2; 1-2 is the lone cotree edge.
        let one_neg = tri([N, P, P]);
        assert_eq!(canonical_signature(&one_neg), tri([P, P, N]));
        assert_eq!(canonical_signature(&tri([N, N, N])), tri([P, P, N]));
    }

    #[test]
    fn canonical_signature_handles_digons() {
        // digon 0-1 plus path 1-2-0: the digon must not steer the switch.
        let a = make_graph(3, &[(0, 1, P), (0, 1, N), (1, 2, N), (0, 2, P)], true).unwrap();
        let b = make_graph(3, &[(0, 1, N), (0, 1, P), (1, 2, P), (0, 2, N)], true).unwrap();
        assert_eq!(is_switching_equivalent(&a, &b), Ok(true));
        assert_eq!(canonical_signature(&a), canonical_signature(&b));
    }

    #[test]
    fn isomorphism_examples() {
        let k4 = |s: [Sign; 6]| {
            make_graph(
                4,
                &[(0, 1, s[0]), (0, 2, s[1]), (0, 3, s[2]), (1, 2, s[3]), (1, 3, s[4]), (2, 3, s[5])],
                true,
            )
            .unwrap()
        };
        let minus = k4([N; 6]);
        let switched = switch(&minus, &SwitchSet::new(4, [2]).unwrap());
        assert!(is_switching_isomorphic(&minus, &switched));
        assert!(!is_switching_isomorphic(&minus, &k4([P; 6])));

        let relabelled = tri([P, P, N]).relabel(&[2, 0, 1]);
        assert!(is_switching_isomorphic(&tri([N, N, N]), &relabelled));
        assert!(!is_switching_isomorphic(&tri([N, N, N]), &tri([N, N, P])));
    }

    #[test]
    fn subgraph_examples() {
        let c5 = make_graph(5, &[(0, 1, P), (1, 2, P), (2, 3, P), (3, 4, P), (4, 0, P)], true).unwrap();
        assert!(contains_switching_subgraph(&c5, &tri([N, N, N])).is_none());

        let host = make_graph(4, &[(0, 1, P), (1, 2, P), (0, 2, N), (2, 3, P)], true).unwrap();
        let emb = contains_switching_subgraph(&host, &tri([N, N, N])).expect("negative triangle");
        assert!(verify_embedding(&host, &tri([N, N, N]), &emb));
        assert!(contains_switching_subgraph(&host, &tri([P, P, P])).is_none());

        let digon = make_graph(2, &[(0, 1, P), (0, 1, N)], true).unwrap();
        assert!(contains_switching_subgraph(&host, &digon).is_none());
        let with_digon = host.with_edge(crate::graph::Edge::new(2, 3, N)).unwrap();
        let emb = contains_switching_subgraph(&with_digon, &digon).unwrap();
        assert!(verify_embedding(&with_digon, &digon, &emb));
    }
}
