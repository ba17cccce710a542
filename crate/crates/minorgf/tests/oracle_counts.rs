use minorgf::graph::{
    classify_network, colour_is_good, in_ex, is_ahat_member, is_c_tree, is_crd_member, ColourMask, ColouredGraph,
    LabelledGraph, MinorPattern, NetworkKind, TwoPoleNetwork,
};
use minorgf::oracle::*;
use minorgf::series::*;
use num_bigint::BigInt;

fn k4() -> Vec<MinorPattern> {
    vec![MinorPattern::K4]
}

fn all_graphs(n: usize) -> impl Iterator<Item = LabelledGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    (0..1u64 << pairs.len()).map(move |m| {
        let mut g = LabelledGraph::empty(n).unwrap();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if m >> i & 1 == 1 {
                g.add_edge(a, b);
            }
        }
        g
    })
}

/// Every assignment of a mask from `options` to each of `n` vertices.
fn all_colourings(n: usize, options: &[u16]) -> Vec<Vec<ColourMask>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                options.iter().map(move |&o| {
                    let mut q = p.clone();
                    q.push(ColourMask(o));
                    q
                })
            })
            .collect();
    }
    out
}

fn subsets(c: u16) -> Vec<u16> {
    (0..=c).filter(|s| s & !c == 0).collect()
}

fn naive_rooted(n: usize, c: ColourMask, hat: bool) -> u64 {
    let t = 16 - c.0.leading_zeros() as usize;
    let mut count = 0;
    for g in all_graphs(n + 1) {
        for mut cols in all_colourings(if hat { n + 1 } else { n }, &subsets(c.0)) {
            cols.resize(n + 1, ColourMask::EMPTY);
            let cg = ColouredGraph::new(g.clone(), t, cols).unwrap();
            let ok = if hat { is_ahat_member(&cg, n, c) } else { is_c_tree(&cg, n, c) };
            count += ok as u64;
        }
    }
    count
}

fn count(spec: &ClassSpec, n: usize) -> u64 {
    count_class(spec, n).unwrap().count
}

fn series_counts(s: &TruncatedEGF, upto: usize) -> Vec<u64> {
    s.counts().unwrap()[..=upto].iter().map(|c| u64::try_from(c.clone()).unwrap()).collect()
}

#[test]
fn small_fixed_points() {
    let b1: Vec<u64> = (0..=2).map(|n| count(&ClassSpec::Bk { k: 1 }, n)).collect();
    assert_eq!(b1, vec![0, 1, 2]);
    for c in 1..=3usize {
        let cm = ColourMask::first(c);
        let ct: Vec<u64> = (0..=1).map(|n| count(&ClassSpec::CTree { c: cm }, n)).collect();
        assert_eq!(ct, vec![0, 1]);
        assert_eq!(count(&ClassSpec::AHat { c: cm }, 0), 1);
        // a root and one vertex: colourings covering C with the root uncoloured or not
        let three = 3u64.pow(c as u32);
        assert_eq!(count(&ClassSpec::AHat { c: cm }, 1), three - 1);
        assert_eq!(count(&ClassSpec::CTree { c: cm }, 2), 2 * (three - 1) + (1 << c));
    }
    assert_eq!(count(&ClassSpec::SpNetworkD, 0), 1);
    assert_eq!(count(&ClassSpec::SpNetworkD, 1), 2);
}

#[test]
fn rooted_classes_match_predicate_level_enumeration() {
    for c in [ColourMask(1), ColourMask(3), ColourMask(0b101)] {
        for n in 0..=3 {
            assert_eq!(count(&ClassSpec::CTree { c }, n), naive_rooted(n, c, false), "c-tree {c:?} n={n}");
            assert_eq!(count(&ClassSpec::AHat { c }, n), naive_rooted(n, c, true), "a-hat {c:?} n={n}");
        }
    }
}

#[test]
fn crd_matches_predicate_and_per_graph_product() {
    for l in 1..=2 {
        for n in 0..=3 {
            let options = subsets(ColourMask::first(l).0);
            let mut naive = 0;
            let mut product = 0;
            for g in all_graphs(n) {
                for cols in all_colourings(n, &options) {
                    let cg = ColouredGraph::new(g.clone(), l, cols).unwrap();
                    naive += is_crd_member(&cg, l, &k4()).unwrap() as u64;
                }
                if in_ex(&g, &k4()).unwrap() {
                    // X_G: number of good colour classes; colours are chosen independently
                    let x = (0..1u16 << n)
                        .filter(|&s| {
                            let cols = (0..n).map(|v| ColourMask((s >> v & 1) as u16)).collect();
                            colour_is_good(&ColouredGraph::new(g.clone(), 1, cols).unwrap(), 1, &k4()).unwrap()
                        })
                        .count() as u64;
                    product += x.pow(l as u32);
                }
            }
            let oracle = count(&ClassSpec::Crd { l, b: k4() }, n);
            assert_eq!(oracle, naive, "l={l} n={n}");
            assert_eq!(oracle, product, "l={l} n={n}");
        }
    }
}

#[test]
fn networks_match_classification() {
    for n in 0..=3 {
        let (mut d, mut s, mut p) = (0, 0, 0);
        for g in all_graphs(n + 2) {
            let net = TwoPoleNetwork::from_graph(&g, n, n + 1).unwrap();
            if !g.is_connected() {
                continue;
            }
            match classify_network(&net) {
                Ok(NetworkKind::NotSP) | Err(_) => {}
                Ok(k) => {
                    d += 1;
                    s += (k == NetworkKind::Series) as u64;
                    p += (k == NetworkKind::Parallel) as u64;
                }
            }
        }
        let c = network_counts(n).unwrap();
        assert_eq!((c.d, c.s, c.p), (d, s, p), "n={n}");
    }
}

#[test]
fn oracle_agrees_with_series() {
    let sp = sp_networks(5).unwrap();
    for n in 0..=5 {
        let c = network_counts(n).unwrap();
        assert_eq!(c.d, series_counts(&sp.d, 5)[n]);
        assert_eq!(c.s, series_counts(&sp.s, 5)[n]);
        assert_eq!(c.p, series_counts(&sp.p, 5)[n]);
    }
    for k in 1..=2 {
        let b = series_counts(&b_series(k, 4).unwrap(), 4);
        let o: Vec<u64> = (0..=4).map(|n| count(&ClassSpec::Bk { k }, n)).collect();
        assert_eq!(o, b, "B{k}");
    }
    let cas = a_c_cascade(2, 4).unwrap();
    for j in 1..=2 {
        let c = ColourMask::first(j);
        let a: Vec<u64> = (0..=4).map(|n| count(&ClassSpec::CTree { c }, n)).collect();
        let h: Vec<u64> = (0..=4).map(|n| count(&ClassSpec::AHat { c }, n)).collect();
        assert_eq!(a, series_counts(&cas.a[j - 1], 4));
        assert_eq!(h, series_counts(&cas.ahat[j - 1], 4));
    }
    let f: Vec<u64> = (0..=5).map(|n| count(&ClassSpec::RootedSp, n)).collect();
    assert_eq!(f, series_counts(&rooted_sp(5).unwrap(), 5));
    let dt: Vec<u64> = (0..=4).map(|n| count(&ClassSpec::OuterNetwork, n)).collect();
    assert_eq!(dt, series_counts(&outer_network(4).unwrap(), 4));
    let rr: Vec<u64> = (0..=3).map(|n| count(&ClassSpec::RootableRooted { l: 3 }, n)).collect();
    assert_eq!(rr, series_counts(&rooted_crd3(3).unwrap(), 3));
}

#[test]
fn fan_edge_breakdown_matches_bivariate_series() {
    for k in 2..=4 {
        let f = fan_bivariate(k, 5).unwrap();
        for n in 0..=5 {
            let rec = count_class(&ClassSpec::FanPrime { k }, n).unwrap();
            let by = rec.edges.unwrap();
            assert_eq!(by.values().sum::<u64>(), rec.count);
            let fact = factorial(n);
            for e in 0..=2 * n + 1 {
                let want = f.coeff_xy(n, e) * num_rational::BigRational::from_integer(fact.clone());
                let got = by.get(&e).copied().unwrap_or(0);
                assert_eq!(want, num_rational::BigRational::from_integer(BigInt::from(got)), "k={k} n={n} e={e}");
            }
        }
    }
}

#[test]
fn counts_are_invariant_under_relabelling() {
    let specs = [
        ClassSpec::Crd { l: 2, b: k4() },
        ClassSpec::ConnectedCrd { l: 1, b: k4() },
        ClassSpec::CTree { c: ColourMask(3) },
        ClassSpec::AHat { c: ColourMask(1) },
        ClassSpec::Bk { k: 2 },
        ClassSpec::SpNetworkS,
        ClassSpec::FanPrime { k: 3 },
        ClassSpec::OuterNetwork,
        ClassSpec::Rd { r: 1, b: k4() },
        ClassSpec::ExDisjoint { k: 0, b: vec![MinorPattern::K23] },
        ClassSpec::RootableRooted { l: 2 },
    ];
    let perm = [2, 0, 3, 1];
    for s in &specs {
        let a = count_class(s, 4).unwrap().count;
        let b = count_class_permuted(s, 4, Some(&perm)).unwrap().count;
        assert_eq!(a, b, "{s}");
    }
    assert!(count_class_permuted(&specs[0], 4, Some(&[0, 0, 1, 2])).is_err());
}

#[test]
fn containments() {
    for n in 0..=6usize {
        let all = 1u64 << (n * n.saturating_sub(1) / 2);
        for k in 0..=1 {
            let rd = count(&ClassSpec::Rd { r: 2 * k + 1, b: k4() }, n);
            let ex = count(&ClassSpec::ExDisjoint { k, b: k4() }, n);
            assert!(rd <= ex && ex <= all, "n={n} k={k}: {rd} {ex} {all}");
        }
    }
    for n in 0..=4 {
        for l in 0..=2 {
            assert!(count(&ClassSpec::ConnectedCrd { l, b: k4() }, n) <= count(&ClassSpec::Crd { l, b: k4() }, n));
        }
    }
}

#[test]
fn rd_bound_and_network_partition() {
    for (l, n) in [(2, 0), (2, 2), (3, 1)] {
        let r = verify_rdcount_bound(l, n).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(r.slack() >= 0);
    }
    assert!(verify_rdcount_bound(4, 1).is_err());
    let p0 = verify_network_partition(0).unwrap();
    assert!(p0.holds && p0.d == 1 && p0.e2 == 1);
    let p1 = verify_network_partition(1).unwrap();
    assert!(p1.holds && p1.s == 1 && p1.p == 1);
    assert!(verify_network_partition(3).unwrap().holds);
}

/// Sequences of length `len` over `m` symbols in which each of the first
/// `u` symbols occurs at least twice.
fn constrained_sequences(len: usize, m: usize, u: usize) -> u128 {
    // dp over the u constrained symbols, choosing how many positions each takes
    let binom = |n: usize, k: usize| -> u128 { (0..k).fold(1u128, |a, i| a * (n - i) as u128 / (i + 1) as u128) };
    fn go(len: usize, free: usize, u: usize, binom: &dyn Fn(usize, usize) -> u128) -> u128 {
        if u == 0 {
            return (free as u128).pow(len as u32);
        }
        (2..=len).map(|c| binom(len, c) * go(len - c, free, u - 1, binom)).sum()
    }
    go(len, m - u, u, &binom)
}

#[test]
fn shape_census_matches_labelled_tree_count() {
    // uncoloured vertices are interchangeable and automorphism-free, so each
    // shape with u of them accounts for u! labelled trees
    for k in 2..=6usize {
        let mut want = 0u128;
        for u in 0..=k - 2 {
            let m = k + u;
            let fact: u128 = (1..=u as u128).product();
            want += constrained_sequences(m - 2, m, u) / fact;
        }
        assert_eq!(enumerate_ut_trees(k).unwrap().len() as u128, want, "k={k}");
    }
    let census: Vec<usize> = (1..=5).map(|k| enumerate_ut_trees(k).unwrap().len()).collect();
    assert_eq!(census, vec![1, 1, 4, 32, 396]);
}

#[test]
fn caps_and_json() {
    assert!(count_class(&ClassSpec::SpNetworkD, 7).is_err());
    assert!(count_class(&ClassSpec::Crd { l: 2, b: k4() }, 6).is_err());
    assert!(count_class(&ClassSpec::Bk { k: 0 }, 2).is_err());
    let rec = count_class(&ClassSpec::Bk { k: 1 }, 2).unwrap();
    assert_eq!(serde_json::to_string(&rec).unwrap(), r#"{"class":"B1","n":2,"count":"2"}"#);
}
