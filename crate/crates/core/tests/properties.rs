//! Invariants over random realizations.

mod common;

use proptest::prelude::*;

use common::*;
use degseq::arcswap::detect_induced_cycle_sets;
use degseq::chain::{chain_rng, run_chain, run_chain_with, ChainConfig, ChainMode, MoveUniverse};
use degseq::moves::{
    inverse_cycle, reorientation_gate, swap_alternating_cycle, try_2swap_directed, try_2swap_undirected,
    try_reorient_3cycle, MoveOutcome, SwapVariant,
};
use degseq::statespace::enumerate_directed;
use degseq::symdiff::{decompose_alternating, find_disjoint_3walk, symmetric_difference, Side};
use degseq::{Digraph, Graph, Realization};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            Graph::from_edges(n, pairs.zip(mask).filter(|p| p.1).map(|p| p.0)).unwrap()
        })
    })
}

fn digraph_strategy(max_n: usize) -> impl Strategy<Value = Digraph> {
    (3..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1)).prop_map(move |mask| {
            let pairs = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)));
            Digraph::from_arcs(n, pairs.zip(mask).filter(|p| p.1).map(|p| p.0)).unwrap()
        })
    })
}

/// Multiset of (pair, side) on all cycles.
fn reassemble(cycles: &[degseq::symdiff::AlternatingCycle]) -> Vec<((usize, usize), Side)> {
    let mut v: Vec<_> = cycles.iter().flat_map(|c| c.steps.iter().map(|s| (s.pair, s.side))).collect();
    v.sort_by_key(|&(p, s)| (p, s == Side::Right));
    v
}

fn check_difference<G: Realization>(g: &G, h: &G) -> Result<(), TestCaseError> {
    let sd = symmetric_difference(g, h).unwrap();
    prop_assert!(sd.is_eulerian());
    prop_assert_eq!(sd.size() % 2, 0);
    prop_assert_eq!(sd.size(), g.key().distance(&h.key()));
    let cycles = decompose_alternating(&sd).unwrap();
    let mut want: Vec<_> = sd
        .left_only
        .iter()
        .map(|&p| (p, Side::Left))
        .chain(sd.right_only.iter().map(|&p| (p, Side::Right)))
        .collect();
    want.sort_by_key(|&(p, s)| (p, s == Side::Right));
    prop_assert_eq!(reassemble(&cycles), want);
    for c in &cycles {
        prop_assert!(c.alternates());
        prop_assert!(c.len() >= 4);
        let mut x = g.clone();
        swap_alternating_cycle(&mut x, c).unwrap();
        prop_assert_eq!(x.degree_profile(), g.degree_profile());
        swap_alternating_cycle(&mut x, &inverse_cycle(c)).unwrap();
        prop_assert!(x == *g);
    }
    if let Some(w) = find_disjoint_3walk(&sd) {
        prop_assert!(w.is_valid_in(&sd));
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn undirected_differences(g in graph_strategy(8), seed in any::<u64>()) {
        let h = run_chain(&g, &ChainConfig::new(ChainMode::Undirected, 200, seed)).unwrap().graph;
        prop_assert_eq!(h.degree_sequence(), g.degree_sequence());
        check_difference(&g, &h)?;
        // every non-empty undirected difference has a vertex-disjoint P walk
        let sd = symmetric_difference(&g, &h).unwrap();
        prop_assert_eq!(sd.is_empty(), find_disjoint_3walk(&sd).is_none());
    }

    #[test]
    fn directed_differences(g in digraph_strategy(7), seed in any::<u64>()) {
        let h = run_chain(&g, &ChainConfig::new(ChainMode::Full, 300, seed)).unwrap().graph;
        prop_assert_eq!(h.degree_sequence(), g.degree_sequence());
        check_difference(&g, &h)?;
    }

    #[test]
    fn keys_round_trip(g in graph_strategy(9), d in digraph_strategy(7)) {
        prop_assert_eq!(Graph::from_key(g.order(), &g.canonical_key()).unwrap(), g.clone());
        prop_assert_eq!(Digraph::from_key(d.order(), &d.canonical_key()).unwrap(), d.clone());
    }

    #[test]
    fn undirected_swaps_invert(g in graph_strategy(8), i in any::<usize>(), j in any::<usize>(), b in any::<bool>()) {
        let e = g.sorted_edges();
        prop_assume!(e.len() >= 2);
        let (e1, e2) = (e[i % e.len()], e[j % e.len()]);
        let (a, bb, c, d) = (e1.0, e1.1, e2.0, e2.1);
        prop_assume!(a != c && a != d && bb != c && bb != d);
        let variant = if b { SwapVariant::A } else { SwapVariant::B };
        let mut x = g.clone();
        if try_2swap_undirected(&mut x, e1, e2, variant).unwrap() == MoveOutcome::Applied {
            prop_assert_eq!(x.degree_sequence(), g.degree_sequence());
            prop_assert_eq!(x.canonical_key().distance(&g.canonical_key()), 4);
            let (f1, f2) = if b { ((a, c), (bb, d)) } else { ((a, d), (bb, c)) };
            let f1 = (f1.0.min(f1.1), f1.0.max(f1.1));
            let f2 = (f2.0.min(f2.1), f2.0.max(f2.1));
            let restored = [SwapVariant::A, SwapVariant::B].iter().any(|&v| {
                let mut z = x.clone();
                try_2swap_undirected(&mut z, f1, f2, v).unwrap() == MoveOutcome::Applied && z == g
            });
            prop_assert!(restored);
        } else {
            prop_assert_eq!(x, g);
        }
    }

    #[test]
    fn directed_swaps_invert(g in digraph_strategy(7), i in any::<usize>(), j in any::<usize>()) {
        let a = g.sorted_arcs();
        prop_assume!(a.len() >= 2);
        let (a1, a2) = (a[i % a.len()], a[j % a.len()]);
        prop_assume!(a1.0 != a2.0 && a1.0 != a2.1 && a1.1 != a2.0 && a1.1 != a2.1);
        let mut x = g.clone();
        if try_2swap_directed(&mut x, a1, a2).unwrap() == MoveOutcome::Applied {
            prop_assert_eq!(x.degree_sequence(), g.degree_sequence());
            try_2swap_directed(&mut x, (a1.0, a2.1), (a2.0, a1.1)).unwrap();
            prop_assert_eq!(x, g);
        } else {
            prop_assert_eq!(x, g);
        }
    }

    #[test]
    fn exactly_one_gate_per_induced_cycle(g in digraph_strategy(7)) {
        for [a, b, c] in g.induced_3cycles() {
            let paths = [(a, b, c), (b, c, a), (c, a, b)];
            prop_assert_eq!(paths.iter().filter(|&&p| reorientation_gate(&g, p)).count(), 1);
            let p = *paths.iter().find(|&&p| reorientation_gate(&g, p)).unwrap();
            let mut x = g.clone();
            prop_assert_eq!(try_reorient_3cycle(&mut x, p).unwrap(), MoveOutcome::Applied);
            // the reversed cycle has exactly one qualifying 2-path, which restores g
            let rev = [(a, c, b), (c, b, a), (b, a, c)];
            let q: Vec<_> = rev.iter().filter(|&&p| reorientation_gate(&x, p)).collect();
            prop_assert_eq!(q.len(), 1);
            try_reorient_3cycle(&mut x, *q[0]).unwrap();
            prop_assert_eq!(x, g.clone());
        }
    }

    #[test]
    fn chains_keep_universe_constant(g in digraph_strategy(7), seed in any::<u64>()) {
        let u = MoveUniverse::for_digraph(&g, ChainMode::Full).unwrap();
        let mut rng = chain_rng(seed, 0);
        let mut x = g.clone();
        for _ in 0..20 {
            x = run_chain_with(&x, &ChainConfig::new(ChainMode::Full, 10, seed), &mut rng).unwrap().graph;
            prop_assert_eq!(MoveUniverse::count_on_digraph(&x), (u.n_pairs, u.n_2paths));
            prop_assert_eq!(x.degree_sequence(), g.degree_sequence());
        }
    }

    #[test]
    fn plain_chain_keeps_cycle_set_orientation(outside in digraph_strategy(5), seed in any::<u64>()) {
        // a 3-cycle pointing at every outside vertex, with free arcs among the outside
        let m = outside.order();
        let arcs = [(0, 1), (1, 2), (2, 0)]
            .into_iter()
            .chain((0..3).flat_map(|c| (3..3 + m).map(move |v| (c, v))))
            .chain(outside.sorted_arcs().into_iter().map(|(u, v)| (u + 3, v + 3)));
        let g = Digraph::from_arcs(3 + m, arcs).unwrap();
        let sets = detect_induced_cycle_sets(&g);
        prop_assert!(sets.iter().any(|c| c.vertices == [0, 1, 2]));
        let h = run_chain(&g, &ChainConfig::new(ChainMode::Plain, 500, seed)).unwrap().graph;
        for s in sets {
            for (u, v) in s.pairs() {
                prop_assert_eq!(g.has_arc(u, v), h.has_arc(u, v));
            }
        }
    }
}

#[test]
fn detection_is_realization_independent() {
    for s in digraphical(directed_multisets(5, 2)).into_iter().chain(curated_directed()) {
        let all = enumerate_directed(&s, 6).unwrap();
        let want = detect_induced_cycle_sets(&all[0]);
        for g in &all {
            assert_eq!(detect_induced_cycle_sets(g), want, "{s}");
        }
        assert!(want.len() <= s.len() / 3);
        let mut seen = std::collections::HashSet::new();
        for set in &want {
            for v in set.vertices {
                assert!(seen.insert(v), "cycle sets overlap for {s}");
            }
        }
    }
}
