use minorgf::graph::{
    colour_separator, has_k23_minor, has_minor_generic, is_blocker, is_crd_member, is_redundant_blocker,
    is_series_parallel, max_disjoint_minor_packing, ColourMask, ColouredGraph, LabelledGraph, MinorPattern,
};
use proptest::prelude::*;

const K4: &[MinorPattern] = &[MinorPattern::K4];

fn graph_from_mask(n: usize, mask: u64) -> LabelledGraph {
    let mut g = LabelledGraph::empty(n).unwrap();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
            i += 1;
        }
    }
    g
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = LabelledGraph> {
    (2..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0..(1u64 << pairs)).prop_map(|(n, m)| graph_from_mask(n, m))
    })
}

fn arb_coloured(max_n: usize, t: usize) -> impl Strategy<Value = ColouredGraph> {
    arb_graph(max_n).prop_flat_map(move |g| {
        let n = g.n();
        (Just(g), proptest::collection::vec(0u16..(1 << t), n))
            .prop_map(move |(g, cs)| ColouredGraph::new(g, t, cs.into_iter().map(ColourMask).collect()).unwrap())
    })
}

fn arb_graph_with_blocker(max_n: usize) -> impl Strategy<Value = (LabelledGraph, u64, usize)> {
    (0usize..2).prop_flat_map(move |k| {
        (Just(k), (2 * k + 1).max(4)..=max_n).prop_flat_map(|(k, n)| {
            let pairs = n * (n - 1) / 2;
            (
                (0..(1u64 << pairs)).prop_map(move |m| graph_from_mask(n, m)),
                proptest::sample::subsequence((0..n).collect::<Vec<_>>(), 2 * k + 1),
                Just(k),
            )
                .prop_map(|(g, vs, k)| (g, vs.into_iter().fold(0u64, |a, v| a | 1 << v), k))
        })
    })
}

#[test]
fn generic_k4_matches_reduction_for_all_graphs_up_to_six() {
    let k4 = LabelledGraph::complete(4);
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = graph_from_mask(n, mask);
            assert_eq!(has_minor_generic(&g, &k4).unwrap(), !is_series_parallel(&g), "n={n} mask={mask:b}");
        }
    }
}

#[test]
fn generic_k23_matches_path_criterion_for_all_graphs_up_to_six() {
    let k23 = LabelledGraph::complete_bipartite(2, 3);
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        for mask in 0..1u64 << pairs {
            let g = graph_from_mask(n, mask);
            assert_eq!(has_minor_generic(&g, &k23).unwrap(), has_k23_minor(&g), "n={n} mask={mask:b}");
        }
    }
}

/// Exhaustive check of whether `l + 1` vertex-disjoint connected subgraphs
/// each meet both colours exist.
fn disjoint_bicoloured(g: &ColouredGraph, k: usize) -> bool {
    let n = g.n();
    let (c1, c2) = (g.class(1), g.class(2));
    let good: Vec<u64> = (1..1u64 << n)
        .filter(|&s| s & c1 != 0 && s & c2 != 0 && g.graph.reach(s.trailing_zeros() as usize, s) == s)
        .collect();
    fn pick(sets: &[u64], used: u64, k: usize) -> bool {
        if k == 0 {
            return true;
        }
        sets.iter().enumerate().any(|(i, &s)| s & used == 0 && pick(&sets[i + 1..], used | s, k - 1))
    }
    pick(&good, 0, k)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 10_000, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn minor_tests_agree(g in arb_graph(8)) {
        prop_assert_eq!(has_minor_generic(&g, &LabelledGraph::complete(4)).unwrap(), !is_series_parallel(&g));
    }

    #[test]
    fn minors_monotone_under_edge_addition(g in arb_graph(9), u in 0usize..9, d in 0usize..8) {
        let u = u % g.n();
        let v = (u + 1 + d % (g.n() - 1)) % g.n();
        let mut h = g.clone();
        h.add_edge(u, v);
        if !is_series_parallel(&g) {
            prop_assert!(!is_series_parallel(&h));
        }
        if has_k23_minor(&g) {
            prop_assert!(has_k23_minor(&h));
        }
    }

    #[test]
    fn blocker_monotone(g in arb_graph(9), q in any::<u64>(), extra in any::<u64>()) {
        let m = g.vertex_mask();
        let (q, q2) = (q & m, (q | extra) & m);
        if is_blocker(&g, q, K4).unwrap() {
            prop_assert!(is_blocker(&g, q2, K4).unwrap());
        }
    }

    #[test]
    fn redundant_blocker_bounds_packing((g, q, k) in arb_graph_with_blocker(10)) {
        if is_redundant_blocker(&g, q, K4).unwrap() {
            prop_assert!(max_disjoint_minor_packing(&g, K4).unwrap() <= k);
        }
    }

    #[test]
    fn separator_valid(g in arb_coloured(8, 2), l in 0usize..3) {
        match colour_separator(&g, l).unwrap() {
            Some(s) => {
                prop_assert!(s.count_ones() as usize <= l);
                for comp in g.graph.components(g.graph.vertex_mask() & !s) {
                    prop_assert!(comp & g.class(1) == 0 || comp & g.class(2) == 0);
                }
            }
            None => prop_assert!(disjoint_bicoloured(&g, l + 1)),
        }
    }

    #[test]
    fn crd_invariant_under_colour_permutation(g in arb_coloured(7, 3), p in 0usize..6) {
        let perms = [[1, 2, 3], [1, 3, 2], [2, 1, 3], [2, 3, 1], [3, 1, 2], [3, 2, 1]];
        let h = g.permute_colours(&perms[p]).unwrap();
        prop_assert_eq!(is_crd_member(&g, 3, K4).unwrap(), is_crd_member(&h, 3, K4).unwrap());
    }
}
