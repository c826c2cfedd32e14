//! List colouring into `K^s_{10;3}`. Lists are 10-bit sets over `Z_10`.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::clique::{CliqueParams, ColorLabel};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedMultigraph};
use crate::solver::{find_sp_hom_with, Homomorphism, SearchOptions, SearchOutcome};

pub type ColorSet = u16;

pub const FULL: ColorSet = 0x3ff;

pub fn set_of(colors: &[u32]) -> ColorSet {
    colors.iter().fold(0, |m, &c| m | 1 << c)
}

/// Builds a set from `±1..±5` labels; panics on a bad label (literal tables only).
pub fn set_of_labels(labels: &[i32]) -> ColorSet {
    labels.iter().fold(0, |m, &l| m | 1 << ColorLabel::c(l))
}

pub fn colors_in(set: ColorSet) -> Vec<u32> {
    (0..10).filter(|&c| set >> c & 1 == 1).collect()
}

pub fn labels_in(set: ColorSet) -> Vec<i32> {
    colors_in(set).into_iter().map(|c| ColorLabel::label(c).expect("colour < 10")).collect()
}

fn tables() -> &'static [[ColorSet; 1024]; 2] {
    static T: OnceLock<Box<[[ColorSet; 1024]; 2]>> = OnceLock::new();
    T.get_or_init(|| {
        let t = CliqueParams::TEN_THIRDS;
        let mut out = Box::new([[0u16; 1024]; 2]);
        for (si, s) in [Sign::Positive, Sign::Negative].into_iter().enumerate() {
            for set in 1..1024usize {
                let low = set.trailing_zeros();
                let single: ColorSet = (0..10).filter(|&j| t.allows(low, j, s)).fold(0, |m, j| m | 1 << j);
                out[si][set] = out[si][set & (set - 1)] | single;
            }
        }
        out
    })
}

/// Colours joined to `c` by an edge of sign `s`.
pub fn neighbor_mask(c: u32, s: Sign) -> ColorSet {
    neighbor_union(1 << c, s)
}

/// Colours joined to at least one member of `set` by an edge of sign `s`.
pub fn neighbor_union(set: ColorSet, s: Sign) -> ColorSet {
    tables()[usize::from(s == Sign::Negative)][(set & FULL) as usize]
}

/// The colour-wise antipode of a set, `i -> i + 5`.
pub fn negate_set(set: ColorSet) -> ColorSet {
    ((set << 5) | (set >> 5)) & FULL
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
}

impl ListAssignment {
    pub fn new(lists: Vec<ColorSet>) -> Result<ListAssignment> {
        if let Some(bad) = lists.iter().find(|&&l| l & !FULL != 0) {
            return Err(Error::InvalidArgument(format!("list {bad:#x} has colours outside Z_10")));
        }
        Ok(ListAssignment { lists })
    }

    pub fn full(n: usize) -> ListAssignment {
        ListAssignment { lists: vec![FULL; n] }
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    pub fn list(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn f(&self, v: usize) -> u32 {
        self.lists[v].count_ones()
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }
}

/// A cyclic run `start, start+1, ...` of `length` colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub start: u32,
    pub length: u32,
}

impl Interval {
    pub fn new(start: u32, length: u32) -> Interval {
        assert!(start < 10 && length <= 10);
        Interval { start, length }
    }

    pub fn to_set(self) -> ColorSet {
        (0..self.length).fold(0, |m, k| m | 1 << ((self.start + k) % 10))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +{}]", self.start, self.length)
    }
}

/// Classifies a set as a cyclic interval. Empty and full sets count, both with start 0.
pub fn is_interval(set: ColorSet) -> Option<Interval> {
    let set = set & FULL;
    let length = set.count_ones();
    if length == 0 || length == 10 {
        return Some(Interval { start: 0, length });
    }
    let start = (0..10).find(|&c| set >> c & 1 == 1 && set >> ((c + 9) % 10) & 1 == 0)?;
    let candidate = Interval { start, length };
    (candidate.to_set() == set).then_some(candidate)
}

/// A list colouring at `(10, 3)`, or none. Graphs with a negative loop have none.
pub fn list_colorable(g: &SignedMultigraph, lists: &ListAssignment) -> Option<Homomorphism> {
    assert_eq!(lists.len(), g.n(), "one list per vertex");
    if g.has_negative_loop() {
        return None;
    }
    let opts = SearchOptions { deadline: None, domains: Some(lists.lists.iter().map(|&l| colors_in(l)).collect()) };
    match find_sp_hom_with(g, CliqueParams::TEN_THIRDS, &opts).expect("no negative loop, lists in range") {
        SearchOutcome::Found(h) => Some(h),
        _ => None,
    }
}

/// Colours still available at `v` given the coloured vertices of `partial`.
pub fn residual_list(g: &SignedMultigraph, partial: &[Option<u32>], v: usize) -> ColorSet {
    let mut set = FULL;
    for e in g.edges() {
        if e.is_loop() {
            if e.u == v && e.sign == Sign::Negative {
                return 0;
            }
            continue;
        }
        let Some(u) = e.other(v) else { continue };
        if let Some(c) = partial.get(u).copied().flatten() {
            set &= neighbor_mask(c, e.sign);
        }
    }
    set
}

/// Whether the negative edges of `K^s_{10;3}` inside `set` form a bipartite graph.
pub fn negative_part_is_bipartite(set: ColorSet) -> bool {
    let members = colors_in(set);
    let mut side = [u8::MAX; 10];
    for &start in &members {
        if side[start as usize] != u8::MAX {
            continue;
        }
        side[start as usize] = 0;
        let mut stack = vec![start];
        while let Some(x) = stack.pop() {
            for y in colors_in(neighbor_mask(x, Sign::Negative) & set) {
                if side[y as usize] == u8::MAX {
                    side[y as usize] = 1 - side[x as usize];
                    stack.push(y);
                } else if side[y as usize] == side[x as usize] {
                    return false;
                }
            }
        }
    }
    true
}

/// The 20 dihedral maps of `Z_10` as colour-set transforms.
pub fn dihedral_images(set: ColorSet) -> [ColorSet; 20] {
    let mut out = [0; 20];
    for r in 0..10u32 {
        let mut rot = 0;
        let mut refl = 0;
        for c in colors_in(set) {
            rot |= 1 << ((c + r) % 10);
            refl |= 1 << ((r + 10 - c) % 10);
        }
        out[2 * r as usize] = rot;
        out[2 * r as usize + 1] = refl;
    }
    out
}

fn family_orbit(a: ColorSet, c: ColorSet) -> HashSet<(ColorSet, ColorSet, ColorSet)> {
    // two equal lists `a` and a third list `c`, all orders, all dihedral images
    let ia = dihedral_images(a);
    let ic = dihedral_images(c);
    let mut out = HashSet::new();
    for k in 0..20 {
        let (x, z) = (ia[k], ic[k]);
        out.insert((x, x, z));
        out.insert((x, z, x));
        out.insert((z, x, x));
    }
    out
}

fn family_sets() -> &'static [HashSet<(ColorSet, ColorSet, ColorSet)>; 2] {
    static F: OnceLock<[HashSet<(ColorSet, ColorSet, ColorSet)>; 2]> = OnceLock::new();
    F.get_or_init(|| {
        [
            family_orbit(set_of_labels(&[3, 4, 5, -1, -2, -3, -4]), set_of_labels(&[4, 5, -2, -3])),
            family_orbit(set_of_labels(&[3, 4, 5, -1, -2, -3, -4, -5]), set_of_labels(&[5, -3])),
        ]
    })
}

/// Matches a triple of lists on a negative triangle against the four
/// exceptional families. Families (3) and (4) are matched up to the dihedral
/// symmetries of the clique and any order of the three vertices.
pub fn classify_neg_tri_exception(lu: ColorSet, lv: ColorSet, lw: ColorSet) -> Option<u8> {
    let (lu, lv, lw) = (lu & FULL, lv & FULL, lw & FULL);
    if lu == 0 || lv == 0 || lw == 0 {
        return Some(1);
    }
    if lu == lv && lv == lw && lu.count_ones() == 6 && negative_part_is_bipartite(lu) {
        return Some(2);
    }
    let sizes = [lu.count_ones(), lv.count_ones(), lw.count_ones()];
    let mut sorted = sizes;
    sorted.sort_unstable();
    let families = family_sets();
    if sorted == [4, 7, 7] && families[0].contains(&(lu, lv, lw)) {
        return Some(3);
    }
    if sorted == [2, 8, 8] && families[1].contains(&(lu, lv, lw)) {
        return Some(4);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::make_graph;
    use crate::graph::Sign::{Negative as N, Positive as P};

    #[test]
    fn neighbor_masks() {
        assert_eq!(neighbor_mask(0, P), set_of(&[8, 9, 0, 1, 2]));
        assert_eq!(neighbor_mask(0, N), set_of(&[3, 4, 5, 6, 7]));
        assert_eq!(neighbor_union(set_of(&[0, 5]), P), FULL);
        assert_eq!(neighbor_union(0, N), 0);
        assert_eq!(negate_set(set_of(&[0, 6])), set_of(&[5, 1]));
    }

    #[test]
    fn list_colorable_examples() {
        let g = make_graph(2, &[(0, 1, N)], false).unwrap();
        let l = ListAssignment::new(vec![set_of(&[0]), set_of(&[3, 4, 5, 6, 7])]).unwrap();
        assert!(list_colorable(&g, &l).is_some());
        let l = ListAssignment::new(vec![set_of(&[0]), set_of(&[0, 1, 2])]).unwrap();
        assert!(list_colorable(&g, &l).is_none());
        let l = ListAssignment::new(vec![0, FULL]).unwrap();
        assert!(list_colorable(&g, &l).is_none());
        assert!(ListAssignment::new(vec![1 << 10]).is_err());
    }

    #[test]
    fn residual_examples() {
        let g = make_graph(2, &[(0, 1, N)], false).unwrap();
        assert_eq!(residual_list(&g, &[Some(0), None], 1), set_of(&[3, 4, 5, 6, 7]));
        assert_eq!(residual_list(&g, &[None, None], 1), FULL);
        let tri = make_graph(3, &[(0, 1, P), (1, 2, P), (0, 2, P)], false).unwrap();
        let r = residual_list(&tri, &[Some(ColorLabel::c(1)), None, Some(ColorLabel::c(3))], 1);
        assert_eq!(r, set_of_labels(&[1, 2, 3]));
        assert_eq!(is_interval(r).unwrap().length, 3);
    }

    #[test]
    fn interval_examples() {
        assert_eq!(is_interval(set_of(&[8, 9, 0, 1, 2])), Some(Interval::new(8, 5)));
        assert_eq!(is_interval(set_of(&[0, 2])), None);
        assert_eq!(is_interval(FULL).unwrap().length, 10);
        assert_eq!(is_interval(0).unwrap().length, 0);
        for start in 0..10 {
            for length in 1..10 {
                assert_eq!(is_interval(Interval::new(start, length).to_set()), Some(Interval::new(start, length)));
            }
        }
    }

    #[test]
    fn bipartite_examples() {
        assert!(negative_part_is_bipartite(set_of_labels(&[2, 3, 4, -2, -3, -4])));
        // 1, 4, -3 is a negative triangle
        assert!(!negative_part_is_bipartite(set_of_labels(&[1, 4, -3])));
    }

    #[test]
    fn classifier_examples() {
        let x = set_of_labels(&[2, 3, 4, -2, -3, -4]);
        assert_eq!(classify_neg_tri_exception(x, x, x), Some(2));
        let a = set_of_labels(&[3, 4, 5, -1, -2, -3, -4]);
        let w = set_of_labels(&[4, 5, -2, -3]);
        assert_eq!(classify_neg_tri_exception(a, a, w), Some(3));
        assert_eq!(classify_neg_tri_exception(w, a, a), Some(3));
        let b = set_of_labels(&[3, 4, 5, -1, -2, -3, -4, -5]);
        let w4 = set_of_labels(&[5, -3]);
        assert_eq!(classify_neg_tri_exception(b, b, w4), Some(4));
        let r = dihedral_images(b)[7];
        let rw = dihedral_images(w4)[7];
        assert_eq!(classify_neg_tri_exception(r, rw, r), Some(4));
        assert_eq!(classify_neg_tri_exception(0, FULL, set_of(&[0, 1, 2, 3, 4, 5, 6, 7])), Some(1));
        assert_eq!(classify_neg_tri_exception(FULL, set_of(&[0, 1, 2, 3]), set_of(&[5, 6, 7, 8])), None);
    }
}
