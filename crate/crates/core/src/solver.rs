//! Sign-preserving homomorphisms into `K^s_{p;q}` and the circular chromatic
//! number.
//!
//! The search is plain backtracking with forward checking over bitset domains.
//! Vertices are branched in a static max-degree-first order and colours are
//! tried in ascending order, so search trees are reproducible. After each
//! assignment the still-uncoloured part of the current block is split into
//! connected pieces that are solved independently.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::clique::{CliqueParams, NeighborTable};
use crate::error::{Error, Result};
use crate::fraction::{candidate_params, Fraction};
use crate::graph::{Sign, SignedMultigraph};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Homomorphism {
    pub assignment: Vec<u32>,
    pub params: CliqueParams,
}

/// Checks every edge, loops included. A wrong-length assignment or an
/// out-of-range colour is simply not a homomorphism.
pub fn verify_hom(g: &SignedMultigraph, h: &Homomorphism) -> bool {
    if h.assignment.len() != g.n() || h.assignment.iter().any(|&c| c >= h.params.p()) {
        return false;
    }
    g.edges()
        .iter()
        .all(|e| h.params.allows(h.assignment[e.u], h.assignment[e.v], e.sign))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Homomorphism),
    NotFound,
    Aborted,
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub deadline: Option<Instant>,
    /// Per-vertex allowed colours. When present, no colour is pinned.
    pub domains: Option<Vec<Vec<u32>>>,
}

const CHECK_EVERY: u64 = 4096;

/// Constraint data shared by the decision search and the enumerator.
struct Problem {
    n: usize,
    words: usize,
    /// `(neighbour, required sign bits)` per vertex, one entry per distinct neighbour.
    adj: Vec<Vec<(usize, u8)>>,
    /// Allowed colours for a neighbour, indexed `[bits - 1][colour]`, stride `words`.
    allowed: Vec<u64>,
    p: usize,
    order_rank: Vec<usize>,
    order: Vec<usize>,
}

impl Problem {
    fn new(g: &SignedMultigraph, params: CliqueParams) -> Result<Problem> {
        if let Some(&v) = g.negative_loops().first() {
            return Err(Error::NegativeLoop(v));
        }
        let n = g.n();
        let p = params.p() as usize;
        let table = NeighborTable::new(params);
        let words = table.words;
        let mut allowed = vec![0u64; 3 * p * words];
        for bits in 1..=3u8 {
            for c in 0..p {
                let base = ((bits as usize - 1) * p + c) * words;
                for w in 0..words {
                    let mut m = !0u64;
                    if bits & Sign::Positive.bit() != 0 {
                        m &= table.mask(Sign::Positive, c)[w];
                    }
                    if bits & Sign::Negative.bit() != 0 {
                        m &= table.mask(Sign::Negative, c)[w];
                    }
                    allowed[base + w] = m;
                }
            }
        }

        let mut pair_bits: std::collections::BTreeMap<(usize, usize), u8> = Default::default();
        for e in g.edges().iter().filter(|e| !e.is_loop()) {
            *pair_bits.entry(e.pair()).or_default() |= e.sign.bit();
        }
        let mut adj = vec![Vec::new(); n];
        for (&(u, v), &bits) in &pair_bits {
            adj[u].push((v, bits));
            adj[v].push((u, bits));
        }

        let degrees = g.degrees();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
        let mut order_rank = vec![0; n];
        for (r, &v) in order.iter().enumerate() {
            order_rank[v] = r;
        }
        Ok(Problem { n, words, adj, allowed, p, order_rank, order })
    }

    fn allowed_mask(&self, bits: u8, c: usize) -> &[u64] {
        let base = ((bits as usize - 1) * self.p + c) * self.words;
        &self.allowed[base..base + self.words]
    }

    fn full_domains(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.n * self.words];
        for v in 0..self.n {
            for c in 0..self.p {
                d[v * self.words + c / 64] |= 1 << (c % 64);
            }
        }
        d
    }

    fn domains_from_lists(&self, lists: &[Vec<u32>]) -> Result<Vec<u64>> {
        if lists.len() != self.n {
            return Err(Error::AssignmentLength { got: lists.len(), n: self.n });
        }
        let mut d = vec![0u64; self.n * self.words];
        for (v, list) in lists.iter().enumerate() {
            for &c in list {
                if c as usize >= self.p {
                    return Err(Error::ColorOutOfRange { color: c, p: self.p as u32 });
                }
                d[v * self.words + c as usize / 64] |= 1 << (c % 64);
            }
        }
        Ok(d)
    }
}

enum Trail {
    Domain { index: usize, old: u64 },
    Assign(usize),
}

struct Search<'a> {
    prob: &'a Problem,
    domains: Vec<u64>,
    assign: Vec<u32>,
    trail: Vec<Trail>,
    nodes: u64,
    deadline: Option<Instant>,
    aborted: bool,
}

const UNSET: u32 = u32::MAX;

impl<'a> Search<'a> {
    fn new(prob: &'a Problem, domains: Vec<u64>, deadline: Option<Instant>) -> Search<'a> {
        Search { prob, domains, assign: vec![UNSET; prob.n], trail: Vec::new(), nodes: 0, deadline, aborted: false }
    }

    fn colors_of(&self, v: usize) -> Vec<usize> {
        let w = self.prob.words;
        let mut out = Vec::new();
        for (k, &word) in self.domains[v * w..(v + 1) * w].iter().enumerate() {
            let mut x = word;
            while x != 0 {
                out.push(k * 64 + x.trailing_zeros() as usize);
                x &= x - 1;
            }
        }
        out
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().expect("non-empty trail") {
                Trail::Domain { index, old } => self.domains[index] = old,
                Trail::Assign(v) => self.assign[v] = UNSET,
            }
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes.is_multiple_of(CHECK_EVERY) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.aborted = true;
                }
            }
        }
        self.aborted
    }

    /// Colours `v` with `c` and prunes uncoloured neighbours. Returns false on
    /// a wipe-out; the caller undoes the trail either way on failure.
    fn assign_and_prune(&mut self, v: usize, c: usize) -> bool {
        self.assign[v] = c as u32;
        self.trail.push(Trail::Assign(v));
        let prob = self.prob;
        let w = prob.words;
        for &(u, bits) in &prob.adj[v] {
            if self.assign[u] != UNSET {
                continue;
            }
            let mask = prob.allowed_mask(bits, c);
            let mut any = 0u64;
            for (k, &m) in mask[..w].iter().enumerate() {
                let index = u * w + k;
                let old = self.domains[index];
                let new = old & m;
                if new != old {
                    self.trail.push(Trail::Domain { index, old });
                    self.domains[index] = new;
                }
                any |= new;
            }
            if any == 0 {
                return false;
            }
        }
        true
    }

    /// Splits `verts` (all uncoloured) into connected pieces, each sorted by
    /// branching rank, pieces ordered by their first vertex's rank.
    fn pieces(&self, verts: &[usize], scratch: &mut [u64], stamp: u64) -> Vec<Vec<usize>> {
        let prob = self.prob;
        for &v in verts {
            scratch[v] = stamp;
        }
        let mut out: Vec<Vec<usize>> = Vec::new();
        for &start in verts {
            if scratch[start] != stamp {
                continue;
            }
            scratch[start] = stamp + 1;
            let mut piece = vec![start];
            let mut i = 0;
            while i < piece.len() {
                let x = piece[i];
                i += 1;
                for &(y, _) in &prob.adj[x] {
                    if scratch[y] == stamp {
                        scratch[y] = stamp + 1;
                        piece.push(y);
                    }
                }
            }
            piece.sort_by_key(|&v| prob.order_rank[v]);
            out.push(piece);
        }
        out.sort_by_key(|p| prob.order_rank[p[0]]);
        out
    }

    /// Solves one connected block of uncoloured vertices (sorted by rank).
    fn solve_block(&mut self, block: &[usize], scratch: &mut Vec<u64>, stamp: &mut u64) -> bool {
        let v = block[0];
        let rest: Vec<usize> = block[1..].to_vec();
        for c in self.colors_of(v) {
            if self.tick() {
                return false;
            }
            let mark = self.trail.len();
            if self.assign_and_prune(v, c) {
                *stamp += 2;
                let pieces = self.pieces(&rest, scratch, *stamp);
                let mut ok = true;
                for piece in &pieces {
                    if !self.solve_block(piece, scratch, stamp) {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    return true;
                }
                if self.aborted {
                    return false;
                }
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Decision search with options. Without explicit domains the first vertex of
/// every connected component is pinned to colour 0, which is safe because the
/// rotation `i -> i + 1` is an automorphism of the clique.
pub fn find_sp_hom_with(g: &SignedMultigraph, params: CliqueParams, opts: &SearchOptions) -> Result<SearchOutcome> {
    let prob = Problem::new(g, params)?;
    let pin = opts.domains.is_none();
    let mut domains = match &opts.domains {
        Some(lists) => prob.domains_from_lists(lists)?,
        None => prob.full_domains(),
    };
    if (0..prob.n).any(|v| domains[v * prob.words..(v + 1) * prob.words].iter().all(|&x| x == 0)) {
        return Ok(SearchOutcome::NotFound);
    }
    let all: Vec<usize> = prob.order.clone();
    let mut search = Search::new(&prob, Vec::new(), opts.deadline);
    let mut scratch = vec![0u64; prob.n];
    let mut stamp = 1u64;
    let pieces = search.pieces(&all, &mut scratch, stamp);
    if pin {
        for piece in &pieces {
            let v = piece[0];
            for k in 0..prob.words {
                domains[v * prob.words + k] = u64::from(k == 0);
            }
        }
    }
    search.domains = domains;
    for piece in &pieces {
        if !search.solve_block(piece, &mut scratch, &mut stamp) {
            return Ok(if search.aborted { SearchOutcome::Aborted } else { SearchOutcome::NotFound });
        }
    }
    let h = Homomorphism { assignment: search.assign.clone(), params };
    debug_assert!(verify_hom(g, &h));
    Ok(SearchOutcome::Found(h))
}

pub fn find_sp_hom(g: &SignedMultigraph, params: CliqueParams) -> Result<Option<Homomorphism>> {
    match find_sp_hom_with(g, params, &SearchOptions::default())? {
        SearchOutcome::Found(h) => Ok(Some(h)),
        SearchOutcome::NotFound => Ok(None),
        SearchOutcome::Aborted => Err(Error::DeadlineExceeded),
    }
}

pub fn is_colorable(g: &SignedMultigraph, params: CliqueParams) -> Result<bool> {
    Ok(find_sp_hom(g, params)?.is_some())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomEnumeration {
    pub homs: Vec<Homomorphism>,
    /// Set when the cap stopped the enumeration early.
    pub truncated: bool,
}

/// Every sign-preserving homomorphism, in lexicographic order of the
/// branching sequence, up to `cap` of them.
pub fn enumerate_homs(g: &SignedMultigraph, params: CliqueParams, cap: usize) -> Result<HomEnumeration> {
    let prob = Problem::new(g, params)?;
    let mut search = Search::new(&prob, prob.full_domains(), None);
    let mut out = HomEnumeration { homs: Vec::new(), truncated: false };
    fn rec(s: &mut Search<'_>, depth: usize, cap: usize, out: &mut HomEnumeration) {
        if out.truncated {
            return;
        }
        if depth == s.prob.n {
            if out.homs.len() == cap {
                out.truncated = true;
            } else {
                out.homs.push(Homomorphism { assignment: s.assign.clone(), params: CliqueParams::TEN_THIRDS });
            }
            return;
        }
        let v = s.prob.order[depth];
        for c in s.colors_of(v) {
            let mark = s.trail.len();
            if s.assign_and_prune(v, c) {
                rec(s, depth + 1, cap, out);
            }
            s.undo_to(mark);
            if out.truncated {
                return;
            }
        }
    }
    rec(&mut search, 0, cap, &mut out);
    for h in &mut out.homs {
        h.params = params;
    }
    Ok(out)
}

#[derive(Debug, Clone, Default)]
pub struct ChiOptions {
    pub q_max: Option<u32>,
    pub ceiling: Option<Fraction>,
    pub deadline: Option<Duration>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiReport {
    pub chi_c: Fraction,
    pub params: CliqueParams,
    pub witness: Vec<u32>,
    pub rejected: Vec<CliqueParams>,
    pub q_max: u32,
    pub ceiling: Fraction,
    pub elapsed_ms: u64,
}

pub fn default_ceiling(g: &SignedMultigraph) -> Fraction {
    Fraction::new(2 * g.max_degree().max(2) as u64, 1).expect("positive")
}

/// Smallest candidate `p/q` (in the budget) admitting a homomorphism.
pub fn chi_c_with(g: &SignedMultigraph, opts: &ChiOptions) -> Result<ChiReport> {
    if g.n() == 0 {
        return Err(Error::InvalidArgument("the graph has no vertices".into()));
    }
    if let Some(&v) = g.negative_loops().first() {
        return Err(Error::NegativeLoop(v));
    }
    let start = Instant::now();
    let deadline = opts.deadline.map(|d| start + d);
    let q_max = opts.q_max.unwrap_or(g.n() as u32).max(1);
    let ceiling = opts.ceiling.unwrap_or_else(|| default_ceiling(g));
    let mut rejected = Vec::new();
    for (value, params) in candidate_params(q_max, ceiling) {
        let search_opts = SearchOptions { deadline, domains: None };
        match find_sp_hom_with(g, params, &search_opts)? {
            SearchOutcome::Found(h) => {
                return Ok(ChiReport {
                    chi_c: value,
                    params,
                    witness: h.assignment,
                    rejected,
                    q_max,
                    ceiling,
                    elapsed_ms: start.elapsed().as_millis() as u64,
                })
            }
            SearchOutcome::NotFound => rejected.push(params),
            SearchOutcome::Aborted => return Err(Error::DeadlineExceeded),
        }
    }
    Err(Error::NoCandidate { num: ceiling.num(), den: ceiling.den() })
}

pub fn chi_c(g: &SignedMultigraph) -> Result<ChiReport> {
    chi_c_with(g, &ChiOptions::default())
}
