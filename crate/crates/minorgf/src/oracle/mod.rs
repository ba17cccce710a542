//! Exhaustive counting of labelled graph classes at small sizes.
//!
//! Every candidate edge set on the relevant vertex set is generated and the
//! class predicate applied; colourings are layered on top. Rooted classes
//! put the (unlabelled) root at index `n`, networks put their poles at `n`
//! and `n + 1`.

mod shapes;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::graph::{
    bits, full_mask, in_ex_masked, is_sp_network_adj, k23_in, k4_minor_in, kind_of_sp_adj, reach, rooted_colour_good,
    rooted_coverage_ok, ColourMask, MinorPattern, NetworkKind,
};
use crate::{Error, Result};

pub use shapes::{enumerate_ut_trees, UtShape, MAX_UT_COLOURS};

pub const MAX_UNCOLOURED: usize = 7;
pub const MAX_COLOURED: usize = 5;
pub const MAX_NETWORK: usize = 6;
pub const MAX_FAN: usize = 6;

/// A class to count. Colour sets of the rooted coloured classes are given as
/// masks; graphs are counted with labels `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassSpec {
    /// At most `k` vertex-disjoint minors from `b`.
    ExDisjoint { k: usize, b: Vec<MinorPattern> },
    /// Graphs with a redundant `b`-blocker of size `r`.
    Rd { r: usize, b: Vec<MinorPattern> },
    /// Coloured graphs (colours `1..=l`) in `Ex b` with every colour good.
    Crd { l: usize, b: Vec<MinorPattern> },
    ConnectedCrd { l: usize, b: Vec<MinorPattern> },
    CTree { c: ColourMask },
    AHat { c: ColourMask },
    Bk { k: usize },
    SpNetworkD,
    SpNetworkS,
    SpNetworkP,
    /// Apex trees with `k` singly coloured vertices; edges are recorded.
    FanPrime { k: usize },
    OuterNetwork,
    /// Connected series-parallel graphs with a labelled root vertex.
    RootedSp,
    /// Connected crd graphs (with `b = K4`) rooted at a vertex that stays
    /// good when it receives every colour.
    RootableRooted { l: usize },
}

fn pattern_name(b: &[MinorPattern]) -> String {
    b.iter()
        .map(|p| match p {
            MinorPattern::K4 => "K4".to_string(),
            MinorPattern::K23 => "K23".to_string(),
            MinorPattern::Graph(g) => format!("G{}e{}", g.n(), g.edge_count()),
        })
        .collect::<Vec<_>>()
        .join("+")
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::ExDisjoint { k, b } => write!(f, "ex-disjoint(k={k},{})", pattern_name(b)),
            ClassSpec::Rd { r, b } => write!(f, "rd(r={r},{})", pattern_name(b)),
            ClassSpec::Crd { l, b } => write!(f, "crd(l={l},{})", pattern_name(b)),
            ClassSpec::ConnectedCrd { l, b } => write!(f, "connected-crd(l={l},{})", pattern_name(b)),
            ClassSpec::CTree { c } => write!(f, "c-tree(C={:?})", c.colours().collect::<Vec<_>>()),
            ClassSpec::AHat { c } => write!(f, "a-hat(C={:?})", c.colours().collect::<Vec<_>>()),
            ClassSpec::Bk { k } => write!(f, "B{k}"),
            ClassSpec::SpNetworkD => write!(f, "D"),
            ClassSpec::SpNetworkS => write!(f, "S"),
            ClassSpec::SpNetworkP => write!(f, "P"),
            ClassSpec::FanPrime { k } => write!(f, "F{k}"),
            ClassSpec::OuterNetwork => write!(f, "Dtilde"),
            ClassSpec::RootedSp => write!(f, "F"),
            ClassSpec::RootableRooted { l } => write!(f, "rootable-rooted(l={l})"),
        }
    }
}

/// Parameters for [`ClassSpec::from_name`]; unused fields are ignored.
#[derive(Clone, Debug, Default)]
pub struct ClassArgs {
    pub l: Option<usize>,
    pub k: Option<usize>,
    pub b: Vec<MinorPattern>,
    /// Colour set of the rooted classes; defaults to the first `l` colours.
    pub colours: Option<ColourMask>,
}

impl ClassSpec {
    /// Look a class up by its command-line name (`crd`, `ex-disjoint`, `B2`,
    /// `F3`, ...). Classes with a forbidden-minor set default to `K4`.
    pub fn from_name(name: &str, a: &ClassArgs) -> Result<Self> {
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| Error::OutOfRange(format!("class {name} needs parameter {flag}")))
        };
        let b = if a.b.is_empty() { vec![MinorPattern::K4] } else { a.b.clone() };
        let colours = || match (a.colours, a.l) {
            (Some(c), _) => Ok(c),
            (None, Some(l)) => Ok(ColourMask::first(l)),
            (None, None) => Err(Error::OutOfRange(format!("class {name} needs a colour set or l"))),
        };
        let numbered = |prefix: &str| name.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
        Ok(match name {
            "ex-disjoint" => ClassSpec::ExDisjoint { k: need(a.k, "k")?, b },
            "rd" => ClassSpec::Rd { r: need(a.l, "l")?, b },
            "crd" => ClassSpec::Crd { l: need(a.l, "l")?, b },
            "connected-crd" => ClassSpec::ConnectedCrd { l: need(a.l, "l")?, b },
            "c-tree" => ClassSpec::CTree { c: colours()? },
            "a-hat" => ClassSpec::AHat { c: colours()? },
            "B" => ClassSpec::Bk { k: need(a.k, "k")? },
            "fan" => ClassSpec::FanPrime { k: need(a.k, "k")? },
            "rootable-rooted" => ClassSpec::RootableRooted { l: need(a.l, "l")? },
            "D" => ClassSpec::SpNetworkD,
            "S" => ClassSpec::SpNetworkS,
            "P" => ClassSpec::SpNetworkP,
            "Dtilde" => ClassSpec::OuterNetwork,
            "F" => ClassSpec::RootedSp,
            _ => {
                if let Some(k) = numbered("B") {
                    ClassSpec::Bk { k }
                } else if let Some(k) = numbered("F") {
                    ClassSpec::FanPrime { k }
                } else {
                    return Err(Error::OutOfRange(format!("unknown class {name:?}")));
                }
            }
        })
    }

    /// Largest size accepted by `count_class`.
    pub fn cap(&self) -> usize {
        match self {
            ClassSpec::ExDisjoint { .. } | ClassSpec::Rd { .. } | ClassSpec::RootedSp => MAX_UNCOLOURED,
            ClassSpec::Crd { .. }
            | ClassSpec::ConnectedCrd { .. }
            | ClassSpec::CTree { .. }
            | ClassSpec::AHat { .. }
            | ClassSpec::Bk { .. }
            | ClassSpec::RootableRooted { .. } => MAX_COLOURED,
            ClassSpec::SpNetworkD | ClassSpec::SpNetworkS | ClassSpec::SpNetworkP | ClassSpec::OuterNetwork => {
                MAX_NETWORK
            }
            ClassSpec::FanPrime { .. } => MAX_FAN,
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::OutOfRange(m));
        match self {
            ClassSpec::ExDisjoint { b, .. } | ClassSpec::Rd { b, .. } if b.is_empty() => {
                bad("empty forbidden-minor set".into())
            }
            ClassSpec::Crd { l, b } | ClassSpec::ConnectedCrd { l, b } if *l > 4 || b.is_empty() => {
                bad(format!("crd needs 0 <= l <= 4 and a nonempty minor set, got l={l}"))
            }
            ClassSpec::CTree { c } | ClassSpec::AHat { c } if c.is_empty() || c.0 >> 4 != 0 => {
                bad("colour set must be a nonempty subset of 1..=4".into())
            }
            ClassSpec::Bk { k } if !(1..=4).contains(k) => bad(format!("B_k needs 1 <= k <= 4, got {k}")),
            ClassSpec::FanPrime { k } if !(2..=6).contains(k) => bad(format!("fan class needs 2 <= k <= 6, got {k}")),
            ClassSpec::RootableRooted { l } if !(1..=3).contains(l) => {
                bad(format!("rootable class needs 1 <= l <= 3, got {l}"))
            }
            _ => Ok(()),
        }
    }
}

fn count_as_string<S: Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn breakdown_as_strings<S: Serializer>(
    v: &Option<BTreeMap<usize, u64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(m) => s.collect_map(m.iter().map(|(k, c)| (k.to_string(), c.to_string()))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRecord {
    pub class: String,
    pub n: usize,
    #[serde(serialize_with = "count_as_string")]
    pub count: u64,
    /// Counts by number of edges, where the class tracks it.
    #[serde(serialize_with = "breakdown_as_strings", skip_serializing_if = "Option::is_none")]
    pub edges: Option<BTreeMap<usize, u64>>,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    total: u64,
    by_edges: BTreeMap<usize, u64>,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.total += o.total;
        for (k, v) in o.by_edges {
            *self.by_edges.entry(k).or_insert(0) += v;
        }
        self
    }
}

const CHUNK_BITS: usize = 12;

/// Run `f` on every adjacency of a graph on `v` vertices (optionally with
/// the first `perm.len()` vertices relabelled) and sum the tallies.
fn over_graphs<F>(v: usize, perm: Option<&[usize]>, f: F) -> Result<Tally>
where
    F: Fn(&[u64], &mut Tally) -> Result<()> + Sync,
{
    let pairs: Vec<(usize, usize)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
    let total_bits = pairs.len();
    let chunk_bits = CHUNK_BITS.min(total_bits);
    let chunks = 1u64 << (total_bits - chunk_bits);
    let relabel = |x: usize| match perm {
        Some(p) if x < p.len() => p[x],
        _ => x,
    };
    let pairs: Vec<(usize, usize)> = pairs.into_iter().map(|(a, b)| (relabel(a), relabel(b))).collect();
    (0..chunks)
        .into_par_iter()
        .map(|hi| {
            let mut t = Tally::default();
            let mut adj = [0u64; 16];
            for (i, &(a, b)) in pairs.iter().enumerate().skip(chunk_bits) {
                if hi >> (i - chunk_bits) & 1 == 1 {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
            f(&adj[..v], &mut t)?;
            // Gray-code walk over the low pairs: one edge toggles per step
            for step in 1..1u64 << chunk_bits {
                let (a, b) = pairs[step.trailing_zeros() as usize];
                adj[a] ^= 1 << b;
                adj[b] ^= 1 << a;
                f(&adj[..v], &mut t)?;
            }
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
}

fn is_connected_adj(adj: &[u64], v: usize) -> bool {
    v == 0 || reach(adj, 0, full_mask(v)) == full_mask(v)
}

/// 2-connected, or a single edge.
fn is_biconnected_adj(adj: &[u64], v: usize) -> bool {
    match v {
        0 | 1 => false,
        2 => adj[0] & 2 != 0,
        _ => {
            let all = full_mask(v);
            is_connected_adj(adj, v)
                && (0..v).all(|x| {
                    let rest = all & !(1 << x);
                    reach(adj, rest.trailing_zeros() as usize, rest) == rest
                })
        }
    }
}

fn with_apex(adj: &[u64], v: usize, nbrs: u64) -> ([u64; 17], u64) {
    let mut a = [0u64; 17];
    a[..v].copy_from_slice(&adj[..v]);
    for x in bits(nbrs) {
        a[x] |= 1 << v;
    }
    a[v] = nbrs;
    (a, full_mask(v + 1))
}

/// `good[S]`: joining a new vertex to `S` keeps the graph in `Ex b`.
fn good_sets(adj: &[u64], v: usize, b: &[MinorPattern]) -> Result<Vec<bool>> {
    (0..1u64 << v)
        .map(|s| {
            let (a, all) = with_apex(adj, v, s);
            in_ex_masked(&a[..v + 1], all, b)
        })
        .collect()
}

/// Number of colourings by `l` colours (each colour an arbitrary vertex set)
/// with every colour class in `good`.
fn count_colourings(v: usize, l: usize, good: &[bool]) -> u64 {
    let mut count = 0;
    let total = 1u64 << (v * l);
    for code in 0..total {
        if (0..l).all(|c| good[(code >> (c * v) & full_mask(v)) as usize]) {
            count += 1;
        }
    }
    count
}

/// Decode per-vertex masks over the colour bits in `palette` (each vertex
/// picks a subset of the palette) from a mixed-radix code.
fn decode_masks(code: u64, v: usize, palette: &[u16], out: &mut [u16]) {
    let w = palette.len();
    for (x, o) in out.iter_mut().enumerate().take(v) {
        let sub = code >> (x * w) & ((1 << w) - 1);
        *o = palette.iter().enumerate().filter(|(i, _)| sub >> i & 1 == 1).fold(0, |a, (_, &p)| a | p);
    }
}

fn classes(masks: &[u16], colours: &[u16]) -> Vec<u64> {
    colours
        .iter()
        .map(|&c| masks.iter().enumerate().filter(|(_, m)| *m & c != 0).fold(0u64, |a, (x, _)| a | 1 << x))
        .collect()
}

fn colour_bits(c: ColourMask) -> Vec<u16> {
    c.colours().map(|col| 1u16 << (col - 1)).collect()
}

/// Rooted coloured classes on `n` labelled vertices plus the root `n`.
/// `root_coloured` lets the root take colours; `single` restricts vertices to
/// at most one colour.
fn count_rooted(
    n: usize,
    c: ColourMask,
    root_coloured: bool,
    single: bool,
    need: impl Fn(&[u64]) -> bool + Sync,
    perm: Option<&[usize]>,
) -> Result<Tally> {
    let v = n + 1;
    let root = n;
    let palette = colour_bits(c);
    let cols = palette.clone();
    over_graphs(v, perm, |adj, t| {
        if !need(adj) {
            return Ok(());
        }
        let coverage: Vec<bool> = (0..1u64 << v).map(|s| rooted_coverage_ok(adj, v, root, s)).collect();
        if !coverage.iter().any(|&x| x) {
            return Ok(());
        }
        let good: Vec<bool> = (0..1u64 << v).map(|s| rooted_colour_good(adj, v, root, s)).collect();
        let coloured_vertices = if root_coloured { v } else { n };
        let mut masks = vec![0u16; v];
        let mut tally = 0u64;
        if single {
            // each vertex: uncoloured or one colour from the palette
            let radix = palette.len() as u64 + 1;
            for code in 0..radix.pow(coloured_vertices as u32) {
                let mut r = code;
                for m in masks.iter_mut().take(coloured_vertices) {
                    let d = (r % radix) as usize;
                    r /= radix;
                    *m = if d == 0 { 0 } else { palette[d - 1] };
                }
                tally += accept(&masks, &cols, c, &coverage, &good) as u64;
            }
        } else {
            for code in 0..1u64 << (coloured_vertices * palette.len()) {
                decode_masks(code, coloured_vertices, &palette, &mut masks);
                tally += accept(&masks, &cols, c, &coverage, &good) as u64;
            }
        }
        t.total += tally;
        Ok(())
    })
}

fn accept(masks: &[u16], cols: &[u16], c: ColourMask, coverage: &[bool], good: &[bool]) -> bool {
    let used = masks.iter().fold(0u16, |a, m| a | m);
    if used != c.0 {
        return false;
    }
    let coloured = masks.iter().enumerate().filter(|(_, m)| **m != 0).fold(0u64, |a, (x, _)| a | 1 << x);
    coverage[coloured as usize] && classes(masks, cols).iter().all(|&cl| good[cl as usize])
}

/// Cheap necessary conditions: with the pole edge added every vertex has
/// degree at least two and there are at most `2m - 3` edges.
fn network_filter(adj: &[u64], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let (s, t) = (n, n + 1);
    let missing = (adj[s] >> t & 1 == 0) as u32;
    if (0..n).any(|v| adj[v].count_ones() < 2) || adj[s].count_ones() + missing < 2 || adj[t].count_ones() + missing < 2 {
        return false;
    }
    let edges = adj.iter().map(|a| a.count_ones()).sum::<u32>() / 2 + missing;
    edges as usize <= 2 * (n + 2) - 3
}

/// Numbers of SP networks with `n` internal vertices, split by the kind of
/// the outermost composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NetworkCounts {
    pub d: u64,
    pub e2: u64,
    pub s: u64,
    pub p: u64,
}

pub fn network_counts(n: usize) -> Result<NetworkCounts> {
    network_counts_permuted(n, None)
}

fn network_counts_permuted(n: usize, perm: Option<&[usize]>) -> Result<NetworkCounts> {
    if n > MAX_NETWORK {
        return Err(Error::TooLarge { what: "network size", size: n, cap: MAX_NETWORK });
    }
    let t = over_graphs(n + 2, perm, |adj, t| {
        if network_filter(adj, n) && is_sp_network_adj(adj, n) {
            t.total += 1;
            *t.by_edges.entry(kind_of_sp_adj(adj, n) as usize).or_insert(0) += 1;
        }
        Ok(())
    })?;
    let get = |k: NetworkKind| t.by_edges.get(&(k as usize)).copied().unwrap_or(0);
    Ok(NetworkCounts { d: t.total, e2: get(NetworkKind::E2), s: get(NetworkKind::Series), p: get(NetworkKind::Parallel) })
}

fn total(count: u64) -> Tally {
    Tally { total: count, by_edges: BTreeMap::new() }
}

/// Trees on `n` labelled vertices (Pruefer decoding), as adjacency masks.
fn labelled_trees(n: usize) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![0]];
    }
    if n == 2 {
        return vec![vec![2, 1]];
    }
    let mut out = Vec::new();
    let len = n - 2;
    for code in 0..(n as u64).pow(len as u32) {
        let mut seq = Vec::with_capacity(len);
        let mut r = code;
        for _ in 0..len {
            seq.push((r % n as u64) as usize);
            r /= n as u64;
        }
        let mut deg = vec![1usize; n];
        for &x in &seq {
            deg[x] += 1;
        }
        let mut adj = vec![0u64; n];
        for &x in &seq {
            let leaf = (0..n).find(|&w| deg[w] == 1).expect("leaf exists");
            adj[leaf] |= 1 << x;
            adj[x] |= 1 << leaf;
            deg[leaf] -= 1;
            deg[x] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&w| deg[w] == 1).collect();
        adj[rest[0]] |= 1 << rest[1];
        adj[rest[1]] |= 1 << rest[0];
        out.push(adj);
    }
    out
}

fn binomial_u64(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Apex trees: `G - r` is a tree with colours `1..=k` on distinct vertices
/// and uncoloured vertices of degree at least two; the root is joined to
/// every leaf and every uncoloured vertex of degree two, optionally to
/// coloured inner vertices and uncoloured branch vertices, and to nothing
/// else.
fn count_fan(n: usize, k: usize, perm: Option<&[usize]>) -> Tally {
    let mut t = Tally::default();
    if n < k {
        return t;
    }
    for tree in labelled_trees(n) {
        let tree: Vec<u64> = match perm {
            None => tree,
            Some(p) => {
                let mut a = vec![0u64; n];
                for (x, &m) in tree.iter().enumerate() {
                    for y in bits(m) {
                        a[p[x]] |= 1 << p[y];
                    }
                }
                a
            }
        };
        let deg: Vec<u32> = tree.iter().map(|m| m.count_ones()).collect();
        // injective colour assignments
        let mut assign = vec![0usize; k];
        injections(n, k, 0, 0, &mut assign, &mut |asg| {
            let coloured = asg.iter().fold(0u64, |a, &x| a | 1 << x);
            let mut mandatory = 0;
            let mut optional = 0;
            for x in 0..n {
                let is_col = coloured >> x & 1 == 1;
                match (is_col, deg[x]) {
                    (false, 0 | 1) => return,
                    (_, 0 | 1) | (false, 2) => mandatory += 1,
                    _ => optional += 1,
                }
            }
            for j in 0..=optional {
                let e = n - 1 + mandatory + j;
                let c = binomial_u64(optional, j);
                t.total += c;
                *t.by_edges.entry(e).or_insert(0) += c;
            }
        });
    }
    t
}

fn injections(n: usize, k: usize, i: usize, used: u64, asg: &mut [usize], f: &mut impl FnMut(&[usize])) {
    if i == k {
        f(asg);
        return;
    }
    for x in 0..n {
        if used >> x & 1 == 0 {
            asg[i] = x;
            injections(n, k, i + 1, used | 1 << x, asg, f);
        }
    }
}

fn min_pattern_order(b: &[MinorPattern]) -> usize {
    b.iter().map(|p| p.order()).min().unwrap_or(0)
}

fn max_packing_adj(adj: &[u64], v: usize, b: &[MinorPattern]) -> Result<usize> {
    let g = crate::graph::LabelledGraph::from_adjacency(adj[..v].to_vec())?;
    crate::graph::max_disjoint_minor_packing(&g, b)
}

fn has_redundant_blocker_adj(adj: &[u64], v: usize, r: usize, b: &[MinorPattern]) -> Result<bool> {
    let all = full_mask(v);
    if r > v {
        return Ok(false);
    }
    if in_ex_masked(adj, all, b)? {
        return Ok(true);
    }
    for q in 0..1u64 << v {
        if q.count_ones() as usize != r {
            continue;
        }
        let mut ok = true;
        for x in bits(q) {
            if !in_ex_masked(adj, all & !(q & !(1 << x)), b)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(true);
        }
    }
    Ok(false)
}

fn rootable_count(adj: &[u64], n: usize, l: usize) -> u64 {
    let all = full_mask(n);
    if n == 0 || !is_connected_adj(adj, n) || k4_minor_in(adj, all) {
        return 0;
    }
    let good: Vec<bool> = (0..1u64 << n)
        .map(|s| {
            let (a, m) = with_apex(adj, n, s);
            !k4_minor_in(&a[..n + 1], m)
        })
        .collect();
    let mut count = 0;
    for code in 0..1u64 << (n * l) {
        let cls: Vec<u64> = (0..l).map(|c| code >> (c * n) & all).collect();
        if !cls.iter().all(|&s| good[s as usize]) {
            continue;
        }
        count += (0..n).filter(|&r| cls.iter().all(|&s| good[(s | 1 << r) as usize])).count() as u64;
    }
    count
}

/// Exact size of the class on label set `[n]`.
pub fn count_class(spec: &ClassSpec, n: usize) -> Result<CountRecord> {
    count_class_permuted(spec, n, None)
}

/// As `count_class`, with every candidate relabelled by `perm` (a
/// permutation of the labelled vertices) before the predicate is applied.
pub fn count_class_permuted(spec: &ClassSpec, n: usize, perm: Option<&[usize]>) -> Result<CountRecord> {
    spec.validate()?;
    if n > spec.cap() {
        return Err(Error::TooLarge { what: "oracle input", size: n, cap: spec.cap() });
    }
    if let Some(p) = perm {
        let mut seen = 0u64;
        for &x in p {
            seen |= 1 << x;
        }
        if p.len() != n || seen != full_mask(n) {
            return Err(Error::Precondition("relabelling must be a permutation of 0..n".into()));
        }
    }
    let mut edges = None;
    let tally = match spec {
        ClassSpec::ExDisjoint { k, b } => {
            let small = n < (k + 1) * min_pattern_order(b);
            over_graphs(n, perm, |adj, t| {
                if small || max_packing_adj(adj, n, b)? <= *k {
                    t.total += 1;
                }
                Ok(())
            })?
        }
        ClassSpec::Rd { r, b } => over_graphs(n, perm, |adj, t| {
            t.total += has_redundant_blocker_adj(adj, n, *r, b)? as u64;
            Ok(())
        })?,
        ClassSpec::Crd { l, b } | ClassSpec::ConnectedCrd { l, b } => {
            let connected = matches!(spec, ClassSpec::ConnectedCrd { .. });
            over_graphs(n, perm, |adj, t| {
                if connected && (n == 0 || !is_connected_adj(adj, n)) {
                    return Ok(());
                }
                if !in_ex_masked(adj, full_mask(n), b)? {
                    return Ok(());
                }
                t.total += count_colourings(n, *l, &good_sets(adj, n, b)?);
                Ok(())
            })?
        }
        ClassSpec::CTree { c } => {
            if n == 0 {
                Tally::default()
            } else {
                count_rooted(n, *c, false, false, |adj| rooted_root_ok(adj, n), perm)?
            }
        }
        ClassSpec::AHat { c } => count_rooted(n, *c, true, false, |_| true, perm)?,
        ClassSpec::Bk { k } => {
            if n == 0 {
                Tally::default()
            } else {
                count_rooted(n, ColourMask::first(*k), false, true, |adj| is_biconnected_adj(adj, n + 1), perm)?
            }
        }
        ClassSpec::SpNetworkD => total(network_counts_permuted(n, perm)?.d),
        ClassSpec::SpNetworkS => total(network_counts_permuted(n, perm)?.s),
        ClassSpec::SpNetworkP => total(network_counts_permuted(n, perm)?.p),
        ClassSpec::FanPrime { k } => {
            let t = count_fan(n, *k, perm);
            edges = Some(t.by_edges.clone());
            t
        }
        ClassSpec::OuterNetwork => over_graphs(n + 2, perm, |adj, t| {
            let (s, tt) = (n, n + 1);
            if adj[s] >> tt & 1 == 0 || !is_biconnected_adj(adj, n + 2) {
                return Ok(());
            }
            let (a, all) = with_apex(adj, n + 2, 1 << s | 1 << tt);
            if !k4_minor_in(&a[..n + 3], all) && !k23_in(&a[..n + 3], all) {
                t.total += 1;
            }
            Ok(())
        })?,
        ClassSpec::RootedSp => over_graphs(n, perm, |adj, t| {
            if n > 0 && is_connected_adj(adj, n) && !k4_minor_in(adj, full_mask(n)) {
                // any of the n vertices may be the root
                t.total += n as u64;
            }
            Ok(())
        })?,
        ClassSpec::RootableRooted { l } => over_graphs(n, perm, |adj, t| {
            t.total += rootable_count(adj, n, *l);
            Ok(())
        })?,
    };
    Ok(CountRecord { class: spec.to_string(), n, count: tally.total, edges })
}

/// Root not alone and not a cut vertex.
fn rooted_root_ok(adj: &[u64], n: usize) -> bool {
    let v = n + 1;
    let rest = full_mask(n);
    adj[n] != 0 && is_connected_adj(adj, v) && reach(adj, 0, rest) == rest
}

/// Counts for `n = 0..=max_n`.
pub fn count_sequence(spec: &ClassSpec, max_n: usize) -> Result<Vec<CountRecord>> {
    (0..=max_n).map(|n| count_class(spec, n)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub l: usize,
    pub n: usize,
    /// `|(rd_l K4)_{n+l}|`.
    pub rd: u64,
    /// `2^{C(l,2)} C(n+l, l) |crd_{l,n}|`.
    pub bound: u64,
    pub holds: bool,
}

impl BoundReport {
    pub fn slack(&self) -> i128 {
        self.bound as i128 - self.rd as i128
    }
}

/// Compare the number of graphs with a redundant K4-blocker of size `l` on
/// `n + l` vertices with `2^{C(l,2)} C(n+l,l) |crd_{l,n}|`.
pub fn verify_rdcount_bound(l: usize, n: usize) -> Result<BoundReport> {
    if l > 3 || n > 4 {
        return Err(Error::TooLarge { what: "rd bound check (l <= 3, n <= 4)", size: n.max(l), cap: 4 });
    }
    let k4 = vec![MinorPattern::K4];
    let rd = count_class(&ClassSpec::Rd { r: l, b: k4.clone() }, n + l)?.count;
    let crd = count_class(&ClassSpec::Crd { l, b: k4 }, n)?.count;
    let bound = (1u64 << (l * l.saturating_sub(1) / 2)) * binomial_u64(n + l, l) * crd;
    Ok(BoundReport { l, n, rd, bound, holds: rd <= bound })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub n: usize,
    pub d: u64,
    pub e2: u64,
    pub s: u64,
    pub p: u64,
    /// Networks satisfying both or neither structural criterion.
    pub ambiguous: u64,
    pub holds: bool,
}

/// Classify every SP network with `n` internal vertices as a single edge, a
/// series composition (a cut vertex separates the poles) or a parallel
/// composition (pole edge present, or the poles' removal disconnects the
/// rest) and check that each falls in exactly one class.
pub fn verify_network_partition(n: usize) -> Result<PartitionReport> {
    if n > MAX_NETWORK {
        return Err(Error::TooLarge { what: "network size", size: n, cap: MAX_NETWORK });
    }
    let (s, t) = (n, n + 1);
    let all = full_mask(n + 2);
    let internal = full_mask(n);
    let tally = over_graphs(n + 2, None, |adj, tl| {
        if !network_filter(adj, n) || !is_sp_network_adj(adj, n) {
            return Ok(());
        }
        let pole_edge = adj[s] >> t & 1 == 1;
        let e2 = n == 0 && pole_edge;
        let series = !pole_edge && (0..n).any(|v| reach(adj, s, all & !(1 << v)) >> t & 1 == 0);
        let parallel = n > 0 && (pole_edge || crate::graph::components(adj, internal).len() >= 2);
        let key = match (e2, series, parallel) {
            (true, false, false) => 1,
            (false, true, false) => 2,
            (false, false, true) => 3,
            _ => 4,
        };
        tl.total += 1;
        *tl.by_edges.entry(key).or_insert(0) += 1;
        Ok(())
    })?;
    let get = |k| tally.by_edges.get(&k).copied().unwrap_or(0);
    let (e2, se, pa, amb) = (get(1), get(2), get(3), get(4));
    Ok(PartitionReport { n, d: tally.total, e2, s: se, p: pa, ambiguous: amb, holds: amb == 0 && tally.total == e2 + se + pa })
}
