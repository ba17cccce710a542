use std::collections::HashMap;

use super::flow::VertexFlow;
use super::{bits, components, full_mask, LabelledGraph};
use crate::{Error, Result};

pub const MAX_PATTERN_VERTICES: usize = 6;
pub const MAX_GENERIC_VERTICES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinorPattern {
    K4,
    K23,
    Graph(LabelledGraph),
}

impl MinorPattern {
    /// `K4` or `K23`.
    pub fn from_name(name: &str) -> Result<Self> {
        match name.trim() {
            "K4" => Ok(MinorPattern::K4),
            "K23" => Ok(MinorPattern::K23),
            other => Err(Error::OutOfRange(format!("unknown minor {other:?} (expected K4 or K23)"))),
        }
    }

    /// Arbitrary connected pattern on at most six vertices.
    pub fn custom(g: LabelledGraph) -> Result<Self> {
        if g.n() > MAX_PATTERN_VERTICES {
            return Err(Error::TooLarge { what: "pattern", size: g.n(), cap: MAX_PATTERN_VERTICES });
        }
        if g.n() == 0 || !g.is_connected() {
            return Err(Error::InvalidGraph("pattern must be nonempty and connected".into()));
        }
        Ok(MinorPattern::Graph(g))
    }

    pub fn graph(&self) -> LabelledGraph {
        match self {
            MinorPattern::K4 => LabelledGraph::complete(4),
            MinorPattern::K23 => LabelledGraph::complete_bipartite(2, 3),
            MinorPattern::Graph(g) => g.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            MinorPattern::K4 => 4,
            MinorPattern::K23 => 5,
            MinorPattern::Graph(g) => g.n(),
        }
    }
}

/// Series-parallel reduction restricted to `alive`: repeatedly delete
/// vertices of degree at most one and suppress vertices of degree two
/// (parallel edges collapse). A K4 minor exists iff something survives.
pub fn k4_minor_in(adj: &[u64], alive: u64) -> bool {
    let mut a = [0u64; 64];
    let mut alive = alive;
    for v in bits(alive) {
        a[v] = adj[v] & alive;
    }
    let mut todo = alive;
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        todo &= todo - 1;
        let nb = a[v];
        match nb.count_ones() {
            0 | 1 => {
                alive &= !(1 << v);
                for u in bits(nb) {
                    a[u] &= !(1 << v);
                    todo |= 1 << u;
                }
            }
            2 => {
                alive &= !(1 << v);
                let x = nb.trailing_zeros() as usize;
                let y = 63 - nb.leading_zeros() as usize;
                a[x] = (a[x] & !(1 << v)) | 1 << y;
                a[y] = (a[y] & !(1 << v)) | 1 << x;
                todo |= nb;
            }
            _ => {}
        }
        a[v] = if alive >> v & 1 == 1 { a[v] } else { 0 };
    }
    alive != 0
}

pub fn is_series_parallel(g: &LabelledGraph) -> bool {
    !k4_minor_in(g.adj(), g.vertex_mask())
}

/// K_{2,3} has maximum degree three, so it is a minor iff some pair `a, b`
/// is joined by three internally disjoint paths of length at least two.
pub fn has_k23_minor(g: &LabelledGraph) -> bool {
    k23_in(g.adj(), g.vertex_mask())
}

pub(crate) fn k23_in(adj: &[u64], within: u64) -> bool {
    if within.count_ones() < 5 {
        return false;
    }
    let deg3: Vec<usize> = bits(within)
        .filter(|&v| (adj[v] & within).count_ones() >= 3)
        .collect();
    for (i, &a) in deg3.iter().enumerate() {
        for &b in &deg3[i + 1..] {
            let comp = super::reach(adj, a, within);
            if comp >> b & 1 == 0 {
                continue;
            }
            let mut f = VertexFlow::new(adj, comp, a, b, true);
            if f.max_flow(3) >= 3 {
                return true;
            }
        }
    }
    false
}

pub fn is_outerplanar(g: &LabelledGraph) -> bool {
    is_series_parallel(g) && !has_k23_minor(g)
}

/// Minor containment. K4 uses the reduction, K_{2,3} the path criterion and
/// other patterns the generic search.
pub fn has_minor(g: &LabelledGraph, p: &MinorPattern) -> Result<bool> {
    match p {
        MinorPattern::K4 => Ok(!is_series_parallel(g)),
        MinorPattern::K23 => Ok(has_k23_minor(g)),
        MinorPattern::Graph(h) => has_minor_generic(g, h),
    }
}

/// True iff `g` contains none of the patterns as a minor.
pub fn in_ex(g: &LabelledGraph, b: &[MinorPattern]) -> Result<bool> {
    for p in b {
        if has_minor(g, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn in_ex_masked(adj: &[u64], within: u64, b: &[MinorPattern]) -> Result<bool> {
    for p in b {
        let hit = match p {
            MinorPattern::K4 => k4_minor_in(adj, within),
            MinorPattern::K23 => k23_in(adj, within),
            MinorPattern::Graph(h) => {
                let g = LabelledGraph::from_adjacency(adj.to_vec())?.induced(within);
                has_minor_generic(&g, h)?
            }
        };
        if hit {
            return Ok(false);
        }
    }
    Ok(true)
}

struct Pattern {
    n: usize,
    m: usize,
    min_deg: usize,
    adj: Vec<u64>,
    order: Vec<usize>,
}

/// Generic minor test by branching on edges: each edge is either contracted
/// or frozen, and a subgraph embedding of the pattern is sought in the
/// resulting contraction. Sound reductions (pendant deletion, degree-two
/// suppression) are applied when the pattern's minimum degree allows.
pub fn has_minor_generic(g: &LabelledGraph, p: &LabelledGraph) -> Result<bool> {
    if p.n() > MAX_PATTERN_VERTICES {
        return Err(Error::TooLarge { what: "pattern", size: p.n(), cap: MAX_PATTERN_VERTICES });
    }
    if g.n() > MAX_GENERIC_VERTICES {
        return Err(Error::TooLarge { what: "graph for generic minor test", size: g.n(), cap: MAX_GENERIC_VERTICES });
    }
    if p.n() == 0 {
        return Ok(true);
    }
    if !p.is_connected() {
        return Err(Error::InvalidGraph("pattern must be connected".into()));
    }
    let min_deg = (0..p.n()).map(|v| p.degree(v)).min().unwrap_or(0);
    let mut order = vec![0usize];
    let mut placed = 1u64;
    while order.len() < p.n() {
        let mut best = None;
        for v in bits(full_mask(p.n()) & !placed) {
            let links = (p.neighbours(v) & placed).count_ones();
            if links > 0 && best.is_none_or(|(l, d, _)| (links, p.degree(v)) > (l, d)) {
                best = Some((links, p.degree(v), v));
            }
        }
        let (_, _, v) = best.expect("connected pattern");
        order.push(v);
        placed |= 1 << v;
    }
    let pat = Pattern { n: p.n(), m: p.edge_count(), min_deg, adj: p.adj().to_vec(), order };
    let mut memo = HashMap::new();
    Ok(search(g.adj().to_vec(), vec![0; g.n()], &pat, &mut memo))
}

fn compact(adj: &[u64], fixed: &[u64], keep: u64) -> (Vec<u64>, Vec<u64>) {
    let verts: Vec<usize> = bits(keep).collect();
    let mut pos = [0usize; 64];
    for (i, &v) in verts.iter().enumerate() {
        pos[v] = i;
    }
    let remap = |m: u64| bits(m & keep).fold(0u64, |acc, u| acc | 1 << pos[u]);
    let a = verts.iter().map(|&v| remap(adj[v])).collect();
    let f = verts.iter().map(|&v| remap(fixed[v])).collect();
    (a, f)
}

fn contract(adj: &mut [u64], fixed: &mut [u64], u: usize, v: usize) {
    let nb = adj[v] & !(1 << u);
    let fx = fixed[v] & !(1 << u);
    for w in bits(adj[v]) {
        adj[w] &= !(1 << v);
        fixed[w] &= !(1 << v);
    }
    adj[v] = 0;
    fixed[v] = 0;
    adj[u] &= !(1 << v);
    fixed[u] &= !(1 << v);
    for w in bits(nb) {
        adj[u] |= 1 << w;
        adj[w] |= 1 << u;
    }
    for w in bits(fx) {
        fixed[u] |= 1 << w;
        fixed[w] |= 1 << u;
    }
}

fn search(mut adj: Vec<u64>, mut fixed: Vec<u64>, p: &Pattern, memo: &mut HashMap<Vec<u64>, bool>) -> bool {
    let n = adj.len();
    let mut alive = full_mask(n);
    loop {
        let mut changed = false;
        for v in bits(alive) {
            let d = adj[v].count_ones() as usize;
            if (p.n >= 2 && d == 0) || (p.min_deg >= 2 && d == 1) {
                for w in bits(adj[v]) {
                    adj[w] &= !(1 << v);
                    fixed[w] &= !(1 << v);
                }
                adj[v] = 0;
                fixed[v] = 0;
                alive &= !(1 << v);
                changed = true;
            } else if p.min_deg >= 3 && d == 2 {
                let free = adj[v] & !fixed[v];
                if free != 0 {
                    let u = free.trailing_zeros() as usize;
                    contract(&mut adj, &mut fixed, u, v);
                } else {
                    for w in bits(adj[v]) {
                        adj[w] &= !(1 << v);
                        fixed[w] &= !(1 << v);
                    }
                    adj[v] = 0;
                    fixed[v] = 0;
                }
                alive &= !(1 << v);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let comps = components(&adj, alive);
    if comps.len() > 1 {
        return comps.into_iter().any(|c| {
            let (a, f) = compact(&adj, &fixed, c);
            search(a, f, p, memo)
        });
    }
    let (adj, fixed) = compact(&adj, &fixed, alive);
    let k = adj.len();
    let m = adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2;
    if k < p.n || m < p.m {
        return false;
    }
    if embeds(&adj, p) {
        return true;
    }
    if k == p.n {
        return false;
    }
    let mut key = adj.clone();
    key.extend_from_slice(&fixed);
    if let Some(&r) = memo.get(&key) {
        return r;
    }
    let mut edge = None;
    for u in 0..k {
        let free = adj[u] & !fixed[u] & !full_mask(u + 1);
        if free != 0 {
            let v = free.trailing_zeros() as usize;
            let score = adj[u].count_ones() + adj[v].count_ones();
            if edge.is_none_or(|(s, _, _)| score > s) {
                edge = Some((score, u, v));
            }
        }
    }
    let result = match edge {
        None => false,
        Some((_, u, v)) => {
            let (mut a, mut f) = (adj.clone(), fixed.clone());
            contract(&mut a, &mut f, u, v);
            search(a, f, p, memo) || {
                let mut f = fixed.clone();
                f[u] |= 1 << v;
                f[v] |= 1 << u;
                search(adj.clone(), f, p, memo)
            }
        }
    };
    memo.insert(key, result);
    result
}

/// Subgraph embedding of the pattern (injective on vertices, edges to edges).
fn embeds(adj: &[u64], p: &Pattern) -> bool {
    let mut image = [usize::MAX; MAX_PATTERN_VERTICES];
    fn go(i: usize, used: u64, image: &mut [usize; MAX_PATTERN_VERTICES], adj: &[u64], p: &Pattern) -> bool {
        if i == p.n {
            return true;
        }
        let v = p.order[i];
        let need = p.adj[v].count_ones();
        let mut cand = full_mask(adj.len()) & !used;
        for w in bits(p.adj[v]) {
            if image[w] != usize::MAX {
                cand &= adj[image[w]];
            }
        }
        for x in bits(cand) {
            if adj[x].count_ones() < need {
                continue;
            }
            image[v] = x;
            if go(i + 1, used | 1 << x, image, adj, p) {
                return true;
            }
        }
        image[v] = usize::MAX;
        false
    }
    go(0, 0, &mut image, adj, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> LabelledGraph {
        LabelledGraph::complete(4)
    }

    #[test]
    fn k4_examples() {
        assert!(has_minor(&k4(), &MinorPattern::K4).unwrap());
        assert!(has_minor(&LabelledGraph::wheel(5), &MinorPattern::K4).unwrap());
        let tree = LabelledGraph::from_edges(10, &(1..10).map(|v| ((v - 1) / 2, v)).collect::<Vec<_>>()).unwrap();
        assert!(!has_minor(&tree, &MinorPattern::K4).unwrap());
        assert!(!is_series_parallel(&k4()));
        assert!(is_series_parallel(&LabelledGraph::cycle(5)));
        assert!(is_series_parallel(&LabelledGraph::complete_bipartite(2, 3)));
    }

    #[test]
    fn generic_agrees_on_examples() {
        for g in [k4(), LabelledGraph::wheel(5), LabelledGraph::cycle(6), LabelledGraph::complete_bipartite(3, 3), LabelledGraph::complete(6)] {
            assert_eq!(has_minor_generic(&g, &k4()).unwrap(), !is_series_parallel(&g));
            assert_eq!(
                has_minor_generic(&g, &LabelledGraph::complete_bipartite(2, 3)).unwrap(),
                has_k23_minor(&g)
            );
        }
    }

    #[test]
    fn outerplanar_examples() {
        assert!(is_outerplanar(&LabelledGraph::cycle(6)));
        assert!(!is_outerplanar(&LabelledGraph::complete_bipartite(2, 3)));
        assert!(!is_outerplanar(&k4()));
        let fan = LabelledGraph::path(5).with_apex(0b11111).unwrap();
        assert!(is_outerplanar(&fan));
    }

    #[test]
    fn k23_needs_subdivided_paths() {
        // K4 minus an edge: two degree-3 vertices joined by an edge and two
        // paths of length two, so no K_{2,3}.
        let mut g = k4();
        g.remove_edge(0, 1);
        assert!(!has_k23_minor(&g));
        // Subdividing the direct edge creates the third path.
        let mut h = LabelledGraph::complete(4).with_apex(0).unwrap();
        h.remove_edge(2, 3);
        h.add_edge(2, 4);
        h.add_edge(3, 4);
        assert!(has_k23_minor(&h));
    }

    #[test]
    fn caps() {
        assert!(has_minor_generic(&LabelledGraph::path(17), &k4()).is_err());
        assert!(MinorPattern::custom(LabelledGraph::path(7)).is_err());
        assert!(MinorPattern::custom(LabelledGraph::empty(2).unwrap()).is_err());
        // the K4 fast path has no cap
        assert!(!has_minor(&LabelledGraph::cycle(60), &MinorPattern::K4).unwrap());
    }

    #[test]
    fn custom_pattern_triangle() {
        let tri = MinorPattern::custom(LabelledGraph::cycle(3)).unwrap();
        assert!(has_minor(&LabelledGraph::cycle(7), &tri).unwrap());
        assert!(!has_minor(&LabelledGraph::path(7), &tri).unwrap());
    }
}
