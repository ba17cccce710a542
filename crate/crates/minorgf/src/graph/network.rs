use serde::Serialize;

use super::minor::k4_minor_in;
use super::{bits, full_mask, reach, LabelledGraph};
use crate::{Error, Result};

/// Two-pole network. Internal vertices are `0..n`; the poles are unlabelled
/// and do not count towards the size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPoleNetwork {
    pub internal: LabelledGraph,
    pub source_adj: u64,
    pub sink_adj: u64,
    pub pole_edge: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NetworkKind {
    E2,
    Series,
    Parallel,
    NotSP,
}

impl TwoPoleNetwork {
    pub fn new(internal: LabelledGraph, source_adj: u64, sink_adj: u64, pole_edge: bool) -> Result<Self> {
        let m = internal.vertex_mask();
        if source_adj & !m != 0 || sink_adj & !m != 0 {
            return Err(Error::InvalidGraph("pole adjacency outside internal vertices".into()));
        }
        if internal.n() + 2 > 64 {
            return Err(Error::TooLarge { what: "network", size: internal.n(), cap: 62 });
        }
        Ok(TwoPoleNetwork { internal, source_adj, sink_adj, pole_edge })
    }

    /// The single-edge network.
    pub fn edge() -> Self {
        TwoPoleNetwork { internal: LabelledGraph::empty(0).unwrap(), source_adj: 0, sink_adj: 0, pole_edge: true }
    }

    /// Network from a graph with two designated pole vertices; the other
    /// vertices become internal vertices in increasing order.
    pub fn from_graph(g: &LabelledGraph, s: usize, t: usize) -> Result<Self> {
        if s == t || s >= g.n() || t >= g.n() {
            return Err(Error::InvalidGraph(format!("bad poles {s}, {t}")));
        }
        let keep = g.vertex_mask() & !(1 << s) & !(1 << t);
        let internal = g.induced(keep);
        let squash = |m: u64| {
            bits(keep).enumerate().fold(0u64, |a, (i, v)| if m >> v & 1 == 1 { a | 1 << i } else { a })
        };
        Self::new(internal, squash(g.neighbours(s)), squash(g.neighbours(t)), g.has_edge(s, t))
    }

    pub fn size(&self) -> usize {
        self.internal.n()
    }

    pub fn source(&self) -> usize {
        self.internal.n()
    }

    pub fn sink(&self) -> usize {
        self.internal.n() + 1
    }

    /// Graph on `n + 2` vertices with source `n` and sink `n + 1`.
    pub fn full_graph(&self) -> LabelledGraph {
        let n = self.internal.n();
        let mut g = LabelledGraph::empty(n + 2).expect("size checked");
        for (u, v) in self.internal.edges() {
            g.add_edge(u, v);
        }
        for v in bits(self.source_adj) {
            g.add_edge(v, n);
        }
        for v in bits(self.sink_adj) {
            g.add_edge(v, n + 1);
        }
        if self.pole_edge {
            g.add_edge(n, n + 1);
        }
        g
    }
}

/// Adjacency of the network on `n + 2` vertices (poles `n`, `n + 1`) is an
/// SP-network: connected, 2-connected after adding the pole edge, and K4-free
/// after adding the pole edge.
pub(crate) fn is_sp_network_adj(adj: &[u64], n: usize) -> bool {
    let (s, t) = (n, n + 1);
    let all = full_mask(n + 2);
    if n == 0 {
        return adj[s] >> t & 1 == 1;
    }
    let mut a = [0u64; 64];
    a[..n + 2].copy_from_slice(&adj[..n + 2]);
    a[s] |= 1 << t;
    a[t] |= 1 << s;
    if reach(&a, s, all) != all {
        return false;
    }
    for v in 0..n + 2 {
        let rest = all & !(1 << v);
        let start = rest.trailing_zeros() as usize;
        if reach(&a, start, rest) != rest {
            return false;
        }
    }
    !k4_minor_in(&a, all)
}

pub(crate) fn kind_of_sp_adj(adj: &[u64], n: usize) -> NetworkKind {
    let (s, t) = (n, n + 1);
    if adj[s] >> t & 1 == 1 {
        return if n == 0 { NetworkKind::E2 } else { NetworkKind::Parallel };
    }
    let all = full_mask(n + 2);
    for v in 0..n {
        if reach(adj, s, all & !(1 << v)) >> t & 1 == 0 {
            return NetworkKind::Series;
        }
    }
    NetworkKind::Parallel
}

/// Classify a network as a single edge, series or parallel composition, or
/// not series-parallel.
pub fn classify_network(d: &TwoPoleNetwork) -> Result<NetworkKind> {
    let g = d.full_graph();
    let n = d.size();
    if !g.is_connected() {
        return Err(Error::Precondition("network is disconnected".into()));
    }
    if !is_sp_network_adj(g.adj(), n) {
        let mut h = g.clone();
        h.add_edge(n, n + 1);
        if k4_minor_in(h.adj(), h.vertex_mask()) {
            return Ok(NetworkKind::NotSP);
        }
        return Err(Error::Precondition("network plus pole edge is not 2-connected".into()));
    }
    Ok(kind_of_sp_adj(g.adj(), n))
}
