//! Signed circular cliques `K^s_{p;q}` and their halved versions.
//!
//! Colours are `0..p`. With `d` the cyclic distance between two colours, the
//! pair carries a negative edge iff `d >= q` and a positive edge iff
//! `d <= p/2 - q`; every colour has a positive loop.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Sign, SignedMultigraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CliqueParams {
    p: u32,
    q: u32,
}

impl CliqueParams {
    pub fn new(p: u32, q: u32) -> Result<CliqueParams> {
        if q == 0 || !p.is_multiple_of(2) || p < 2 * q {
            return Err(Error::InvalidParams { p, q });
        }
        Ok(CliqueParams { p, q })
    }

    /// The `(10, 3)` clique used by all list-colouring machinery.
    pub const TEN_THIRDS: CliqueParams = CliqueParams { p: 10, q: 3 };

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn cyclic_distance(&self, i: u32, j: u32) -> u32 {
        let d = i.abs_diff(j) % self.p;
        d.min(self.p - d)
    }

    fn check(&self, c: u32) -> Result<()> {
        if c >= self.p {
            Err(Error::ColorOutOfRange { color: c, p: self.p })
        } else {
            Ok(())
        }
    }

    /// Sign bits (positive = 1, negative = 2) joining colours `i` and `j`.
    pub(crate) fn sign_bits(&self, i: u32, j: u32) -> u8 {
        let d = self.cyclic_distance(i, j);
        let mut bits = 0;
        if d + self.q <= self.p / 2 {
            bits |= Sign::Positive.bit();
        }
        if d >= self.q {
            bits |= Sign::Negative.bit();
        }
        bits
    }

    pub fn allows(&self, i: u32, j: u32, sign: Sign) -> bool {
        self.sign_bits(i, j) & sign.bit() != 0
    }
}

impl fmt::Display for CliqueParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

/// Signs of the edges joining `i` and `j` in `K^s_{p;q}`.
pub fn adjacency(params: CliqueParams, i: u32, j: u32) -> Result<Vec<Sign>> {
    params.check(i)?;
    params.check(j)?;
    let bits = params.sign_bits(i, j);
    Ok([Sign::Positive, Sign::Negative]
        .into_iter()
        .filter(|s| bits & s.bit() != 0)
        .collect())
}

/// The anti-twin `i + p/2` of colour `i`.
pub fn antipode(params: CliqueParams, i: u32) -> Result<u32> {
    params.check(i)?;
    Ok((i + params.p / 2) % params.p)
}

/// All colours joined to `c` by an edge of sign `sign`, ascending.
pub fn neighbor_set(params: CliqueParams, c: u32, sign: Sign) -> Result<Vec<u32>> {
    params.check(c)?;
    Ok((0..params.p).filter(|&j| params.allows(c, j, sign)).collect())
}

/// The signed subgraph of `K^s_{p;q}` induced by colours `0..p/2`, positive
/// loops included.
pub fn hat_clique(params: CliqueParams) -> SignedMultigraph {
    let half = params.p / 2;
    let mut edges = Vec::new();
    for i in 0..half {
        edges.push(Edge::new(i as usize, i as usize, Sign::Positive));
    }
    for i in 0..half {
        for j in i + 1..half {
            for s in [Sign::Positive, Sign::Negative] {
                if params.allows(i, j, s) {
                    edges.push(Edge::new(i as usize, j as usize, s));
                }
            }
        }
    }
    SignedMultigraph::from_parts_unchecked(half as usize, edges)
}

/// The whole clique `K^s_{p;q}` as a signed multigraph, loops included.
pub fn full_clique(params: CliqueParams) -> SignedMultigraph {
    let mut edges = Vec::new();
    for i in 0..params.p {
        edges.push(Edge::new(i as usize, i as usize, Sign::Positive));
        for j in i + 1..params.p {
            for s in [Sign::Positive, Sign::Negative] {
                if params.allows(i, j, s) {
                    edges.push(Edge::new(i as usize, j as usize, s));
                }
            }
        }
    }
    SignedMultigraph::from_parts_unchecked(params.p as usize, edges)
}

/// Colour labels `±1..±5` for `K^s_{10;3}`: colour `i < 5` reads `i + 1`,
/// colour `i >= 5` reads `-(i - 4)`. Around the circle the labels run
/// `1, 2, 3, 4, 5, -1, -2, -3, -4, -5`, and `-x` is the antipode of `x`.
pub struct ColorLabel;

impl ColorLabel {
    pub fn label(color: u32) -> Result<i32> {
        match color {
            0..=4 => Ok(color as i32 + 1),
            5..=9 => Ok(-(color as i32 - 4)),
            _ => Err(Error::ColorOutOfRange { color, p: 10 }),
        }
    }

    pub fn color(label: i32) -> Result<u32> {
        match label {
            1..=5 => Ok(label as u32 - 1),
            -5..=-1 => Ok((-label) as u32 + 4),
            _ => Err(Error::InvalidArgument(format!("`{label}` is not a colour label in ±1..±5"))),
        }
    }

    /// Convenience for literal tables; panics on a bad label.
    pub(crate) fn c(label: i32) -> u32 {
        Self::color(label).expect("label in ±1..±5")
    }
}

/// Precomputed neighbour bitsets of a clique, `words` 64-bit words per colour.
#[derive(Debug, Clone)]
pub(crate) struct NeighborTable {
    pub(crate) words: usize,
    /// Index `[sign_index][color]` flattened; sign index 0 = positive.
    masks: Vec<u64>,
}

impl NeighborTable {
    pub(crate) fn new(params: CliqueParams) -> NeighborTable {
        let p = params.p as usize;
        let words = p.div_ceil(64);
        let mut masks = vec![0u64; 2 * p * words];
        for (si, s) in [Sign::Positive, Sign::Negative].into_iter().enumerate() {
            for c in 0..p {
                let base = (si * p + c) * words;
                for j in 0..p {
                    if params.allows(c as u32, j as u32, s) {
                        masks[base + j / 64] |= 1 << (j % 64);
                    }
                }
            }
        }
        NeighborTable { words, masks }
    }

    pub(crate) fn mask(&self, sign: Sign, color: usize) -> &[u64] {
        let p = self.masks.len() / (2 * self.words);
        let si = usize::from(sign == Sign::Negative);
        let base = (si * p + color) * self.words;
        &self.masks[base..base + self.words]
    }
}
