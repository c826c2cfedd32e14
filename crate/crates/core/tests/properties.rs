mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use signcirc_core::lists::{colors_in, negate_set, ColorSet, FULL};
use signcirc_core::{
    canonical_form, canonical_signature, chi_c, cycle_sign, find_sp_hom, is_colorable, is_switching_equivalent,
    is_switching_isomorphic, list_colorable, switch, verify_hom, CliqueParams, Edge, Fraction, ListAssignment, Sign,
    SignedMultigraph, SmallGraph, SwitchSet,
};

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Positive), Just(Sign::Negative)]
}

/// Loopless signed multigraphs without same-sign parallel edges, optionally
/// with positive loops.
fn graph(max_n: usize, max_m: usize, loops: bool) -> impl Strategy<Value = SignedMultigraph> {
    (1..=max_n).prop_flat_map(move |n| {
        let edge = (0..n, 0..n, sign());
        (Just(n), prop::collection::vec(edge, 0..=max_m), prop::collection::vec(any::<bool>(), n))
    })
    .prop_map(move |(n, raw, looped)| {
        let mut seen = BTreeSet::new();
        let mut edges = Vec::new();
        for (u, v, s) in raw {
            let (a, b) = (u.min(v), u.max(v));
            if a != b && seen.insert((a, b, s)) {
                edges.push(Edge::new(a, b, s));
            }
        }
        if loops {
            for (v, &l) in looped.iter().enumerate() {
                if l {
                    edges.push(Edge::new(v, v, Sign::Positive));
                }
            }
        }
        SignedMultigraph::new(n, edges).unwrap()
    })
}

fn switch_set(n: usize, mask: u32) -> SwitchSet {
    SwitchSet::new(n, (0..n).filter(|v| mask >> v & 1 == 1)).unwrap()
}

fn profile(g: &SignedMultigraph) -> Vec<(usize, usize, Sign)> {
    let mut e: Vec<_> = g.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v), e.sign)).collect();
    e.sort();
    e
}

fn params() -> impl Strategy<Value = (u32, u32)> {
    prop::sample::select(common::all_params(12))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn switching_composes_by_symmetric_difference(g in graph(6, 12, true), x in any::<u32>(), y in any::<u32>()) {
        let (sx, sy) = (switch_set(g.n(), x), switch_set(g.n(), y));
        let twice = switch(&switch(&g, &sx), &sy);
        prop_assert_eq!(profile(&twice), profile(&switch(&g, &sx.symmetric_difference(&sy))));
        prop_assert_eq!(profile(&switch(&switch(&g, &sx), &sx)), profile(&g));
    }

    #[test]
    fn cycle_signs_survive_switching(
        n in 3usize..7,
        signs in prop::collection::vec(sign(), 7),
        chords in prop::collection::vec((0usize..7, 0usize..7, sign()), 0..6),
        x in any::<u32>(),
    ) {
        // a Hamilton cycle 0..n plus chords; the walk follows the cycle
        let mut edges: Vec<Edge> = (0..n).map(|i| Edge::new(i, (i + 1) % n, signs[i])).collect();
        edges.extend(chords.into_iter().filter(|c| c.0 < n && c.1 < n).map(|(a, b, s)| Edge::new(a, b, s)));
        let g = SignedMultigraph::new(n, edges).unwrap();
        let walk: Vec<usize> = (0..n).collect();
        let before = cycle_sign(&g, &walk).unwrap();
        let after = cycle_sign(&switch(&g, &switch_set(n, x)), &walk).unwrap();
        prop_assert_eq!(before, after);
        let product = signs[..n].iter().filter(|s| **s == Sign::Negative).count() % 2 == 1;
        prop_assert_eq!(before == Sign::Negative, product);
    }

    #[test]
    fn canonical_signature_is_a_class_invariant(g in graph(6, 12, false), x in any::<u32>()) {
        let c = canonical_signature(&g);
        prop_assert_eq!(profile(&canonical_signature(&c)), profile(&c));
        let switched = switch(&g, &switch_set(g.n(), x));
        prop_assert_eq!(profile(&canonical_signature(&switched)), profile(&c));
        prop_assert!(is_switching_equivalent(&g, &switched).unwrap());
    }

    #[test]
    fn canonical_form_ignores_labels(n in 1usize..8, pairs in prop::collection::vec((0usize..8, 0usize..8), 0..16), shuffle in Just((0..8).collect::<Vec<usize>>()).prop_shuffle()) {
        let mut g = SmallGraph::new(n);
        for (a, b) in pairs {
            if a < n && b < n && a != b {
                g.add_edge(a, b);
            }
        }
        let perm: Vec<usize> = shuffle.iter().copied().filter(|&v| v < n).collect();
        let c = canonical_form(&g);
        prop_assert_eq!(c.code, canonical_form(&g.relabel(&perm)).code);
        prop_assert_eq!(canonical_form(&g.relabel(&c.labelling)).code, c.code);
    }

    #[test]
    fn list_colourability_is_monotone(g in graph(5, 8, true), lists in prop::collection::vec(1u16..=FULL, 5), extra in prop::collection::vec(0u16..=FULL, 5)) {
        let n = g.n();
        let small = ListAssignment::new(lists[..n].to_vec()).unwrap();
        let big = ListAssignment::new((0..n).map(|v| lists[v] | extra[v]).collect()).unwrap();
        if let Some(h) = list_colorable(&g, &small) {
            prop_assert!(verify_hom(&g, &h));
            prop_assert!(list_colorable(&g, &big).is_some());
        }
    }

    #[test]
    fn list_colourability_follows_switching(g in graph(5, 8, false), lists in prop::collection::vec(1u16..=FULL, 5), x in any::<u32>()) {
        let n = g.n();
        let set = switch_set(n, x);
        let base: Vec<ColorSet> = lists[..n].to_vec();
        let moved: Vec<ColorSet> = (0..n).map(|v| if set.contains(v) { negate_set(base[v]) } else { base[v] }).collect();
        let a = list_colorable(&g, &ListAssignment::new(base.clone()).unwrap()).is_some();
        let b = list_colorable(&switch(&g, &set), &ListAssignment::new(moved).unwrap()).is_some();
        prop_assert_eq!(a, b);
        let lists: Vec<Vec<u32>> = base.iter().map(|&l| colors_in(l)).collect();
        prop_assert_eq!(a, common::naive_coloring(&g, 10, 3, Some(&lists)).is_some());
    }

    #[test]
    fn colourability_is_monotone_in_the_fraction(g in graph(4, 7, true), a in params(), b in params()) {
        let (lo, hi) = if Fraction::new(a.0 as u64, a.1 as u64).unwrap() <= Fraction::new(b.0 as u64, b.1 as u64).unwrap() { (a, b) } else { (b, a) };
        if is_colorable(&g, CliqueParams::new(lo.0, lo.1).unwrap()).unwrap() {
            prop_assert!(is_colorable(&g, CliqueParams::new(hi.0, hi.1).unwrap()).unwrap());
        }
    }

    #[test]
    fn solver_matches_naive_search(g in graph(5, 9, true), (p, q) in params()) {
        let found = find_sp_hom(&g, CliqueParams::new(p, q).unwrap()).unwrap();
        prop_assert_eq!(found.is_some(), common::naive_colorable(&g, p, q));
        if let Some(h) = found {
            prop_assert!(verify_hom(&g, &h));
        }
    }

    #[test]
    fn chi_c_is_a_switching_isomorphism_invariant(g in graph(5, 8, false), x in any::<u32>(), rot in 0usize..5) {
        let n = g.n();
        let perm: Vec<usize> = (0..n).map(|v| (v + rot) % n).collect();
        let h = switch(&g, &switch_set(n, x)).relabel(&perm);
        prop_assert!(is_switching_isomorphic(&g, &h));
        match (chi_c(&g), chi_c(&h)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.chi_c, b.chi_c),
            (a, b) => prop_assert_eq!(a.is_err(), b.is_err()),
        }
    }
}
