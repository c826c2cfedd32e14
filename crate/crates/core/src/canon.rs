//! Canonical labelling of small simple graphs (at most 10 vertices) by
//! individualisation and equitable refinement, without automorphism pruning.
//! The full search tree is explored, so every minimal leaf is found and the
//! automorphism group falls out of the leaves that tie for the minimum.

/// A simple graph as adjacency bitmasks.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: usize,
    adj: Vec<u16>,
}

pub const MAX_VERTICES: usize = 10;

impl SmallGraph {
    pub fn new(n: usize) -> SmallGraph {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        SmallGraph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> SmallGraph {
        let mut g = SmallGraph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn m(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen.count_ones() as usize == self.n
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> SmallGraph {
        let mut g = SmallGraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Adds a vertex joined to the members of `nbrs`.
    pub fn extended(&self, nbrs: u16) -> SmallGraph {
        let mut g = self.clone();
        g.n += 1;
        g.adj.push(0);
        let new = self.n;
        for v in 0..self.n {
            if nbrs >> v & 1 == 1 {
                g.add_edge(v, new);
            }
        }
        g
    }

    fn code_under(&self, perm: &[usize]) -> u64 {
        let mut code = 0u64;
        for (u, v) in self.edges() {
            let (a, b) = if perm[u] < perm[v] { (perm[u], perm[v]) } else { (perm[v], perm[u]) };
            code |= 1 << pair_index(a, b);
        }
        code
    }
}

/// Bit index of pair `a < b`, ordered `(0,1), (0,2), (1,2), (0,3), ...` so
/// that higher-numbered vertices occupy the high bits.
fn pair_index(a: usize, b: usize) -> usize {
    b * (b - 1) / 2 + a
}

#[derive(Debug, Clone)]
pub struct Canonical {
    /// Canonical code: bit per vertex pair of the relabelled graph.
    pub code: u64,
    /// `labelling[v]` is the canonical name of vertex `v`.
    pub labelling: Vec<usize>,
    /// The automorphism group as vertex permutations of the input graph.
    pub automorphisms: Vec<Vec<usize>>,
}

fn refine(g: &SmallGraph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let mut changed = false;
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        'cells: for (ci, cell) in cells.iter().enumerate() {
            if cell.len() > 1 {
                for splitter in &cells {
                    let mask: u16 = splitter.iter().fold(0, |m, &v| m | 1 << v);
                    let count = |v: usize| (g.adj[v] & mask).count_ones();
                    let first = count(cell[0]);
                    if cell.iter().any(|&v| count(v) != first) {
                        let mut sorted = cell.clone();
                        sorted.sort_by_key(|&v| (count(v), v));
                        let mut start = 0;
                        for i in 1..=sorted.len() {
                            if i == sorted.len() || count(sorted[i]) != count(sorted[start]) {
                                next.push(sorted[start..i].to_vec());
                                start = i;
                            }
                        }
                        next.extend(cells[ci + 1..].iter().cloned());
                        changed = true;
                        break 'cells;
                    }
                }
            }
            next.push(cell.clone());
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn search(g: &SmallGraph, cells: Vec<Vec<usize>>, leaves: &mut Vec<(u64, Vec<usize>)>) {
    let cells = refine(g, cells);
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let mut perm = vec![0; g.n];
            for (i, c) in cells.iter().enumerate() {
                perm[c[0]] = i;
            }
            leaves.push((g.code_under(&perm), perm));
        }
        Some(target) => {
            for &v in &cells[target] {
                let mut next = cells[..target].to_vec();
                next.push(vec![v]);
                next.push(cells[target].iter().copied().filter(|&x| x != v).collect());
                next.extend(cells[target + 1..].iter().cloned());
                search(g, next, leaves);
            }
        }
    }
}

pub fn canonical_form(g: &SmallGraph) -> Canonical {
    if g.n == 0 {
        return Canonical { code: 0, labelling: vec![], automorphisms: vec![vec![]] };
    }
    // initial partition by degree, so that refinement starts informed
    let mut by_degree: Vec<usize> = (0..g.n).collect();
    by_degree.sort_by_key(|&v| (g.degree(v), v));
    let mut cells: Vec<Vec<usize>> = Vec::new();
    for v in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut leaves = Vec::new();
    search(g, cells, &mut leaves);
    let code = leaves.iter().map(|l| l.0).min().expect("at least one leaf");
    let best: Vec<&Vec<usize>> = leaves.iter().filter(|l| l.0 == code).map(|l| &l.1).collect();
    let labelling = best[0].clone();
    let mut inverse = vec![0; g.n];
    for (v, &c) in labelling.iter().enumerate() {
        inverse[c] = v;
    }
    // pi maps G onto the canonical graph exactly like labelling, so
    // labelling^-1 . pi is an automorphism of G
    let mut automorphisms: Vec<Vec<usize>> = best.iter().map(|pi| (0..g.n).map(|v| inverse[pi[v]]).collect()).collect();
    automorphisms.sort();
    automorphisms.dedup();
    Canonical { code, labelling, automorphisms }
}
