//! Labelled graphs on at most 64 vertices with bitset adjacency, plus the
//! coloured and two-pole variants built on top of them.

mod blocker;
mod coloured;
mod flow;
pub mod io;
mod minor;
mod network;

pub use blocker::{colour_separator, is_blocker, is_redundant_blocker, max_disjoint_minor_packing};
pub use coloured::{
    colour_is_good, extension, is_ahat_member, is_c_tree, is_crd_member, nice_vertices,
    spike_count, ColourMask, ColouredGraph,
};
pub use minor::{
    has_k23_minor, has_minor, has_minor_generic, in_ex, is_outerplanar, is_series_parallel,
    k4_minor_in, MinorPattern,
};
pub use network::{classify_network, NetworkKind, TwoPoleNetwork};

pub(crate) use coloured::{rooted_colour_good, rooted_coverage_ok};
pub(crate) use minor::{in_ex_masked, k23_in};
pub(crate) use network::{is_sp_network_adj, kind_of_sp_adj};

use crate::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Bitmask of the vertices `0..n`.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterate over the set bits of a mask, lowest first.
#[inline]
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabelledGraph {
    n: usize,
    adj: Vec<u64>,
}

impl LabelledGraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge { what: "graph", size: n, cap: MAX_VERTICES });
        }
        Ok(LabelledGraph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from raw adjacency bitsets; the relation is checked for symmetry.
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self> {
        let n = adj.len();
        let mut g = Self::empty(n)?;
        let mask = full_mask(n);
        for (v, &a) in adj.iter().enumerate() {
            if a & !mask != 0 || a >> v & 1 == 1 {
                return Err(Error::InvalidGraph(format!("bad adjacency row for vertex {v}")));
            }
            for u in bits(a) {
                if adj[u] >> v & 1 == 0 {
                    return Err(Error::InvalidGraph("adjacency is not symmetric".into()));
                }
            }
        }
        g.adj = adj;
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n).expect("size");
        for v in 0..n {
            g.adj[v] = full_mask(n) & !(1 << v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n >= 3 {
            g.add_edge(0, n - 1);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n).expect("size");
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b).expect("size");
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Wheel with `rim` rim vertices; the hub is vertex `rim`.
    pub fn wheel(rim: usize) -> Self {
        let mut g = Self::cycle(rim);
        g.n += 1;
        g.adj.push(0);
        for v in 0..rim {
            g.add_edge(v, rim);
        }
        g
    }

    pub fn disjoint_union(&self, other: &LabelledGraph) -> Result<Self> {
        let mut g = Self::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(u + self.n, v + self.n);
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn adj(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1)) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range for n={}", self.n)));
        }
        if u == v {
            return Err(Error::InvalidGraph(format!("self-loop at {u}")));
        }
        self.add_edge(u, v);
        Ok(())
    }

    /// Adds the edge; panics on out-of-range or loop in debug builds.
    #[inline]
    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    #[inline]
    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    /// Graph with one extra vertex `n` adjacent to `nbrs`.
    pub fn with_apex(&self, nbrs: u64) -> Result<Self> {
        let mut g = Self::empty(self.n + 1)?;
        g.adj[..self.n].copy_from_slice(&self.adj);
        for u in bits(nbrs & self.vertex_mask()) {
            g.add_edge(u, self.n);
        }
        Ok(g)
    }

    /// Induced subgraph on `keep`, relabelled in increasing order.
    pub fn induced(&self, keep: u64) -> LabelledGraph {
        let keep = keep & self.vertex_mask();
        let verts: Vec<usize> = bits(keep).collect();
        let mut pos = [usize::MAX; 64];
        for (i, &v) in verts.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = Self::empty(verts.len()).expect("size");
        for (i, &v) in verts.iter().enumerate() {
            for u in bits(self.adj[v] & keep) {
                g.adj[i] |= 1 << pos[u];
            }
        }
        g
    }

    /// Removes the vertices of `q` and relabels the rest in increasing order.
    pub fn remove_vertices(&self, q: u64) -> LabelledGraph {
        self.induced(self.vertex_mask() & !q)
    }

    /// Relabel by the permutation `perm` (vertex `v` becomes `perm[v]`).
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidGraph("permutation length mismatch".into()));
        }
        let mut g = Self::empty(self.n)?;
        for (u, v) in self.edges() {
            g.try_add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: u64) -> u64 {
        reach(&self.adj, start, within)
    }

    /// Connected components of the subgraph induced on `within`.
    pub fn components(&self, within: u64) -> Vec<u64> {
        components(&self.adj, within)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// True iff removing `v` disconnects its component.
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        let all = self.vertex_mask();
        let comp = self.reach(v, all);
        let rest = comp & !(1 << v);
        if rest == 0 {
            return false;
        }
        let s = rest.trailing_zeros() as usize;
        self.reach(s, rest) != rest
    }

    /// 2-connected, or a single edge.
    pub fn is_biconnected(&self) -> bool {
        match self.n {
            0 | 1 => false,
            2 => self.has_edge(0, 1),
            _ => self.is_connected() && (0..self.n).all(|v| !self.is_cut_vertex(v)),
        }
    }
}

pub(crate) fn reach(adj: &[u64], start: usize, within: u64) -> u64 {
    if within >> start & 1 == 0 {
        return 0;
    }
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in bits(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

pub(crate) fn components(adj: &[u64], within: u64) -> Vec<u64> {
    let mut left = within;
    let mut out = Vec::new();
    while left != 0 {
        let s = left.trailing_zeros() as usize;
        let c = reach(adj, s, left);
        out.push(c);
        left &= !c;
    }
    out
}
