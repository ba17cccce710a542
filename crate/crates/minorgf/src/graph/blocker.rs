use super::flow::VertexFlow;
use super::minor::in_ex_masked;
use super::{bits, ColouredGraph, LabelledGraph, MinorPattern};
use crate::{Error, Result};

pub const MAX_PACKING_VERTICES: usize = 12;

/// `q` is a blocker if `g - q` has no minor in `b`.
pub fn is_blocker(g: &LabelledGraph, q: u64, b: &[MinorPattern]) -> Result<bool> {
    in_ex_masked(g.adj(), g.vertex_mask() & !q, b)
}

/// Every `q - {x}` is still a blocker; for empty `q` this is `is_blocker`.
pub fn is_redundant_blocker(g: &LabelledGraph, q: u64, b: &[MinorPattern]) -> Result<bool> {
    let q = q & g.vertex_mask();
    if q == 0 {
        return is_blocker(g, 0, b);
    }
    for x in bits(q) {
        if !is_blocker(g, q & !(1 << x), b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maximum number of vertex-disjoint subgraphs each having a minor in `b`.
/// Enumerates the inclusion-minimal vertex sets whose induced subgraph leaves
/// `Ex b`, then solves the set packing exactly.
pub fn max_disjoint_minor_packing(g: &LabelledGraph, b: &[MinorPattern]) -> Result<usize> {
    let n = g.n();
    if n > MAX_PACKING_VERTICES {
        return Err(Error::TooLarge { what: "graph for packing", size: n, cap: MAX_PACKING_VERTICES });
    }
    let mut bad = vec![false; 1 << n];
    let mut critical = Vec::new();
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    for s in masks {
        if bits(s).any(|v| bad[(s & !(1 << v)) as usize]) {
            bad[s as usize] = true;
            continue;
        }
        if s != 0 && !in_ex_masked(g.adj(), s, b)? {
            bad[s as usize] = true;
            critical.push(s);
        }
    }
    Ok(pack(&critical, 0))
}

fn pack(sets: &[u64], used: u64) -> usize {
    let avail: Vec<u64> = sets.iter().copied().filter(|s| s & used == 0).collect();
    if avail.is_empty() {
        return 0;
    }
    let union = avail.iter().fold(0u64, |a, s| a | s);
    let v = union.trailing_zeros() as usize;
    let mut best = pack(&avail, used | 1 << v);
    for &s in avail.iter().filter(|s| *s >> v & 1 == 1) {
        best = best.max(1 + pack(&avail, used | s));
    }
    best
}

/// For a 2-coloured graph: a set `S` with `|S| <= l` such that each component
/// of `g - S` sees at most one colour, or `None` when `l + 1` vertex-disjoint
/// connected subgraphs meet both colours.
pub fn colour_separator(g: &ColouredGraph, l: usize) -> Result<Option<u64>> {
    if g.t != 2 {
        return Err(Error::Precondition(format!("colour_separator needs t = 2, got {}", g.t)));
    }
    let n = g.n();
    let mut adj = g.graph.adj().to_vec();
    if n + 2 > 64 {
        return Err(Error::TooLarge { what: "graph for colour separator", size: n, cap: 62 });
    }
    adj.extend([0, 0]);
    let (s1, s2) = (n, n + 1);
    for c in 1..=2 {
        let apex = n + c - 1;
        for v in bits(g.class(c)) {
            adj[v] |= 1 << apex;
            adj[apex] |= 1 << v;
        }
    }
    let within = super::full_mask(n + 2);
    let mut flow = VertexFlow::new(&adj, within, s1, s2, true);
    let f = flow.max_flow(l + 1);
    if f > l {
        return Ok(None);
    }
    Ok(Some(flow.min_cut() & super::full_mask(n)))
}
