use super::minor::{in_ex_masked, k4_minor_in};
use super::{bits, full_mask, reach, LabelledGraph, MinorPattern};
use crate::{Error, Result};

pub const MAX_COLOURS: usize = 16;

/// Set of colours from `{1..16}`; colour `c` is bit `c - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColourMask(pub u16);

impl ColourMask {
    pub const EMPTY: ColourMask = ColourMask(0);

    pub fn single(c: usize) -> Self {
        assert!((1..=MAX_COLOURS).contains(&c), "colour {c} out of range");
        ColourMask(1 << (c - 1))
    }

    /// The colours `1..=t`.
    pub fn first(t: usize) -> Self {
        assert!(t <= MAX_COLOURS);
        ColourMask(((1u32 << t) - 1) as u16)
    }

    pub fn from_colours(cs: &[usize]) -> Self {
        cs.iter().fold(Self::EMPTY, |m, &c| m.union(Self::single(c)))
    }

    #[inline]
    pub fn contains(self, c: usize) -> bool {
        (1..=MAX_COLOURS).contains(&c) && self.0 >> (c - 1) & 1 == 1
    }

    #[inline]
    pub fn union(self, o: Self) -> Self {
        ColourMask(self.0 | o.0)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn colours(self) -> impl Iterator<Item = usize> {
        bits(self.0 as u64).map(|i| i + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColouredGraph {
    pub graph: LabelledGraph,
    pub t: usize,
    pub colours: Vec<ColourMask>,
}

impl ColouredGraph {
    pub fn new(graph: LabelledGraph, t: usize, colours: Vec<ColourMask>) -> Result<Self> {
        if t > MAX_COLOURS {
            return Err(Error::TooLarge { what: "colour count", size: t, cap: MAX_COLOURS });
        }
        if colours.len() != graph.n() {
            return Err(Error::InvalidGraph(format!(
                "{} colour masks for {} vertices",
                colours.len(),
                graph.n()
            )));
        }
        let allowed = ColourMask::first(t);
        if let Some(v) = colours.iter().position(|m| !m.is_subset(allowed)) {
            return Err(Error::InvalidGraph(format!("vertex {v} uses a colour outside 1..{t}")));
        }
        Ok(ColouredGraph { graph, t, colours })
    }

    pub fn uncoloured(graph: LabelledGraph, t: usize) -> Result<Self> {
        let n = graph.n();
        Self::new(graph, t, vec![ColourMask::EMPTY; n])
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Vertices carrying colour `c`.
    pub fn class(&self, c: usize) -> u64 {
        class_of(&self.colours, c)
    }

    pub fn used_colours(&self) -> ColourMask {
        self.colours.iter().fold(ColourMask::EMPTY, |a, &m| a.union(m))
    }

    /// Vertices carrying at least one colour.
    pub fn coloured_vertices(&self) -> u64 {
        self.colours
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_empty())
            .fold(0, |a, (v, _)| a | 1 << v)
    }

    /// Same graph with colour classes renamed: colour `c` becomes `perm[c-1]`.
    pub fn permute_colours(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.t {
            return Err(Error::InvalidGraph("colour permutation length mismatch".into()));
        }
        let colours = self
            .colours
            .iter()
            .map(|m| m.colours().fold(ColourMask::EMPTY, |a, c| a.union(ColourMask::single(perm[c - 1]))))
            .collect();
        Self::new(self.graph.clone(), self.t, colours)
    }
}

pub(crate) fn class_of(colours: &[ColourMask], c: usize) -> u64 {
    colours
        .iter()
        .enumerate()
        .filter(|(_, m)| m.contains(c))
        .fold(0, |a, (v, _)| a | 1 << v)
}

/// The extension `G^L`: the uncoloured graph with one new vertex per colour,
/// adjacent to exactly the vertices having that colour. The labels must be
/// fresh (at least `n`) and strictly increasing; vertices are relabelled by
/// rank, so the i-th label becomes vertex `n + i`.
pub fn extension(g: &ColouredGraph, labels: &[usize]) -> Result<LabelledGraph> {
    if labels.len() != g.t {
        return Err(Error::Precondition(format!("{} labels for {} colours", labels.len(), g.t)));
    }
    if labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("labels must be strictly increasing".into()));
    }
    if let Some(&l) = labels.iter().find(|&&l| l < g.n()) {
        return Err(Error::Precondition(format!("label {l} collides with a vertex")));
    }
    let n = g.n();
    let mut h = LabelledGraph::empty(n + g.t)?;
    for (u, v) in g.graph.edges() {
        h.add_edge(u, v);
    }
    for c in 1..=g.t {
        for v in bits(g.class(c)) {
            h.add_edge(v, n + c - 1);
        }
    }
    Ok(h)
}

/// Colour `c` is good if one new vertex joined to the `c`-coloured vertices
/// keeps the graph in `Ex b`.
pub fn colour_is_good(g: &ColouredGraph, c: usize, b: &[MinorPattern]) -> Result<bool> {
    if !in_ex_masked(g.graph.adj(), g.graph.vertex_mask(), b)? {
        return Err(Error::Precondition("underlying graph is not in Ex B".into()));
    }
    apex_in_ex(&g.graph, g.class(c), b)
}

fn apex_in_ex(g: &LabelledGraph, nbrs: u64, b: &[MinorPattern]) -> Result<bool> {
    let h = g.with_apex(nbrs)?;
    in_ex_masked(h.adj(), h.vertex_mask(), b)
}

/// Membership in `crd_l`: the uncoloured graph is in `Ex b`, only colours
/// `1..=l` occur, and every colour `1..=l` is good.
pub fn is_crd_member(g: &ColouredGraph, l: usize, b: &[MinorPattern]) -> Result<bool> {
    if l > MAX_COLOURS || !g.used_colours().is_subset(ColourMask::first(l)) {
        return Ok(false);
    }
    if !in_ex_masked(g.graph.adj(), g.graph.vertex_mask(), b)? {
        return Ok(false);
    }
    for c in 1..=l {
        if !apex_in_ex(&g.graph, g.class(c), b)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of spikes: pendant induced paths `v_1 .. v_{l+1}` attached by a
/// single edge `u v_1` with `u` smaller than every path vertex, all path
/// vertices coloured `{1..l, x}` for one `x` in `l+1..=r`.
pub fn spike_count(g: &ColouredGraph, l: usize, r: usize) -> usize {
    if l == 0 || r <= l || r > MAX_COLOURS {
        return 0;
    }
    let adj = g.graph.adj();
    let all = g.graph.vertex_mask();
    let base = ColourMask::first(l);
    let mut count = 0;
    for u in 0..g.n() {
        for v1 in bits(adj[u]) {
            let mut cut = adj.to_vec();
            cut[u] &= !(1 << v1);
            cut[v1] &= !(1 << u);
            let k = reach(&cut, v1, all);
            if k >> u & 1 == 1 || k.count_ones() as usize != l + 1 {
                continue;
            }
            if (k.trailing_zeros() as usize) < u {
                continue;
            }
            if !is_path_from(&cut, k, v1) {
                continue;
            }
            let first = g.colours[v1];
            let ok_colour = (l + 1..=r).any(|x| first == base.union(ColourMask::single(x)));
            if ok_colour && bits(k).all(|v| g.colours[v] == first) {
                count += 1;
            }
        }
    }
    count
}

fn is_path_from(adj: &[u64], k: u64, start: usize) -> bool {
    let edges: u32 = bits(k).map(|v| (adj[v] & k).count_ones()).sum();
    if edges as usize != 2 * (k.count_ones() as usize - 1) {
        return false;
    }
    if k.count_ones() == 1 {
        return true;
    }
    (adj[start] & k).count_ones() == 1 && bits(k).all(|v| (adj[v] & k).count_ones() <= 2)
}

/// Vertices whose removal leaves at least two components each containing
/// every colour `1..=l`.
pub fn nice_vertices(g: &ColouredGraph, l: usize) -> Result<Vec<usize>> {
    if !g.graph.is_connected() {
        return Err(Error::Precondition("graph must be connected".into()));
    }
    let classes: Vec<u64> = (1..=l).map(|c| g.class(c)).collect();
    let all = g.graph.vertex_mask();
    let mut out = Vec::new();
    for x in 0..g.n() {
        let full = g
            .graph
            .components(all & !(1 << x))
            .into_iter()
            .filter(|&k| classes.iter().all(|&cl| cl & k != 0))
            .count();
        if full >= 2 {
            out.push(x);
        }
    }
    Ok(out)
}

/// Connectivity part of the C-tree conditions: connected, and for every
/// vertex `x` each component of `G - x` avoiding the root carries a colour.
pub(crate) fn rooted_coverage_ok(adj: &[u64], n: usize, root: usize, coloured: u64) -> bool {
    let all = full_mask(n);
    if reach(adj, root, all) != all {
        return false;
    }
    for x in 0..n {
        let rest = all & !(1 << x);
        let mut left = rest;
        while left != 0 {
            let s = left.trailing_zeros() as usize;
            let k = reach(adj, s, left);
            left &= !k;
            if k >> root & 1 == 0 && k & coloured == 0 {
                return false;
            }
        }
    }
    true
}

/// Whether apexing `class` together with the root keeps the graph K4-free.
#[inline]
pub(crate) fn rooted_colour_good(adj: &[u64], n: usize, root: usize, class: u64) -> bool {
    let mut a = [0u64; 64];
    a[..n].copy_from_slice(&adj[..n]);
    let nb = class | 1 << root;
    for v in bits(nb) {
        a[v] |= 1 << n;
    }
    a[n] = nb;
    !k4_minor_in(&a, full_mask(n + 1))
}

fn rooted_checks(g: &ColouredGraph, root: usize, c: ColourMask) -> bool {
    if g.used_colours() != c || c.is_empty() {
        return false;
    }
    let n = g.n();
    if !rooted_coverage_ok(g.graph.adj(), n, root, g.coloured_vertices()) {
        return false;
    }
    c.colours().all(|col| rooted_colour_good(g.graph.adj(), n, root, g.class(col)))
}

/// C-tree test with the designated root: every colour of `C` good after
/// apexing with the root, connectivity/coverage condition, root uncoloured,
/// not a cut vertex and not alone; the colours used are exactly `C`.
pub fn is_c_tree(g: &ColouredGraph, root: usize, c: ColourMask) -> bool {
    if root >= g.n() || g.n() < 2 || !g.colours[root].is_empty() || g.graph.is_cut_vertex(root) {
        return false;
    }
    rooted_checks(g, root, c)
}

/// Membership in the root-merged class: the root may be coloured, the colours
/// used are exactly `C`, and the good-colour and coverage conditions hold.
pub fn is_ahat_member(g: &ColouredGraph, root: usize, c: ColourMask) -> bool {
    if root >= g.n() {
        return false;
    }
    rooted_checks(g, root, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    const K4: &[MinorPattern] = &[MinorPattern::K4];

    fn fig2_triangle() -> ColouredGraph {
        ColouredGraph::new(
            LabelledGraph::cycle(3),
            3,
            vec![
                ColourMask::from_colours(&[1, 2]),
                ColourMask::from_colours(&[1, 3]),
                ColourMask::from_colours(&[2, 3]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn extension_examples() {
        let g = ColouredGraph::uncoloured(LabelledGraph::cycle(4), 0).unwrap();
        assert_eq!(extension(&g, &[]).unwrap(), LabelledGraph::cycle(4));
        let one = ColouredGraph::new(LabelledGraph::empty(1).unwrap(), 1, vec![ColourMask::single(1)]).unwrap();
        assert_eq!(extension(&one, &[5]).unwrap(), LabelledGraph::path(2));
        let e = extension(&fig2_triangle(), &[3, 4, 5]).unwrap();
        assert_eq!(e.n(), 6);
        for s in 3..6 {
            assert_eq!(e.degree(s), 2);
        }
        assert!(extension(&fig2_triangle(), &[2, 4, 5]).is_err());
        assert!(extension(&fig2_triangle(), &[4, 3, 5]).is_err());
        assert!(extension(&fig2_triangle(), &[3, 4]).is_err());
    }

    #[test]
    fn good_colours() {
        let path = ColouredGraph::new(
            LabelledGraph::path(3),
            1,
            vec![ColourMask::single(1), ColourMask::EMPTY, ColourMask::single(1)],
        )
        .unwrap();
        assert!(colour_is_good(&path, 1, K4).unwrap());
        let tri = ColouredGraph::new(LabelledGraph::cycle(3), 1, vec![ColourMask::single(1); 3]).unwrap();
        assert!(!colour_is_good(&tri, 1, K4).unwrap());
        for c in 1..=3 {
            assert!(colour_is_good(&fig2_triangle(), c, K4).unwrap());
        }
        let k4 = ColouredGraph::uncoloured(LabelledGraph::complete(4), 1).unwrap();
        assert!(colour_is_good(&k4, 1, K4).is_err());
    }

    #[test]
    fn crd_examples() {
        let sp = ColouredGraph::uncoloured(LabelledGraph::cycle(6), 1).unwrap();
        assert!(is_crd_member(&sp, 1, K4).unwrap());
        assert!(is_crd_member(&fig2_triangle(), 3, K4).unwrap());
        let all = ColourMask::first(3);
        let bad = ColouredGraph::new(LabelledGraph::cycle(3), 3, vec![all; 3]).unwrap();
        assert!(!is_crd_member(&bad, 3, K4).unwrap());
        // colours beyond l are not allowed
        assert!(!is_crd_member(&fig2_triangle(), 2, K4).unwrap());
    }

    #[test]
    fn spikes() {
        let star = LabelledGraph::from_edges(4, &[(0, 1), (1, 2), (0, 3)]).unwrap();
        let none = ColouredGraph::uncoloured(star.clone(), 2).unwrap();
        assert_eq!(spike_count(&none, 1, 2), 0);
        let c12 = ColourMask::from_colours(&[1, 2]);
        let g = ColouredGraph::new(star, 2, vec![ColourMask::EMPTY, c12, c12, ColourMask::EMPTY]).unwrap();
        assert_eq!(spike_count(&g, 1, 2), 1);
        // attachment from a larger label: centre 2, path 0-1
        let flipped = LabelledGraph::from_edges(4, &[(2, 1), (1, 0), (2, 3)]).unwrap();
        let h = ColouredGraph::new(flipped, 2, vec![c12, c12, ColourMask::EMPTY, ColourMask::EMPTY]).unwrap();
        assert_eq!(spike_count(&h, 1, 2), 0);
    }

    #[test]
    fn nice() {
        let g = ColouredGraph::uncoloured(LabelledGraph::path(3), 1).unwrap();
        assert!(nice_vertices(&g, 1).unwrap().is_empty());
        let one = ColourMask::single(1);
        let p = ColouredGraph::new(LabelledGraph::path(3), 1, vec![one, ColourMask::EMPTY, one]).unwrap();
        assert_eq!(nice_vertices(&p, 1).unwrap(), vec![1]);
        assert!(nice_vertices(&fig2_triangle(), 3).unwrap().is_empty());
        let disc = ColouredGraph::uncoloured(LabelledGraph::empty(2).unwrap(), 1).unwrap();
        assert!(nice_vertices(&disc, 1).is_err());
    }

    #[test]
    fn c_trees() {
        let one = ColourMask::single(1);
        let e = ColouredGraph::new(LabelledGraph::path(2), 1, vec![ColourMask::EMPTY, one]).unwrap();
        assert!(is_c_tree(&e, 0, one));
        let alone = ColouredGraph::uncoloured(LabelledGraph::empty(1).unwrap(), 1).unwrap();
        assert!(!is_c_tree(&alone, 0, one));
        let path = ColouredGraph::new(LabelledGraph::path(3), 1, vec![ColourMask::EMPTY, one, one]).unwrap();
        assert!(is_c_tree(&path, 0, one));
        let tri = ColouredGraph::new(LabelledGraph::cycle(3), 1, vec![ColourMask::EMPTY, one, one]).unwrap();
        assert!(!is_c_tree(&tri, 0, one));
        // uncoloured pendant leaf violates the coverage condition
        let leaf = ColouredGraph::new(LabelledGraph::path(3), 1, vec![ColourMask::EMPTY, one, ColourMask::EMPTY]).unwrap();
        assert!(!is_c_tree(&leaf, 0, one));
        // root cut vertex
        let star = LabelledGraph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let s = ColouredGraph::new(star, 1, vec![ColourMask::EMPTY, one, one]).unwrap();
        assert!(!is_c_tree(&s, 0, one));
    }

    #[test]
    fn ahat() {
        let one = ColourMask::single(1);
        let root_only = ColouredGraph::new(LabelledGraph::empty(1).unwrap(), 1, vec![one]).unwrap();
        assert!(is_ahat_member(&root_only, 0, one));
        let pend = ColouredGraph::new(LabelledGraph::path(2), 1, vec![one, ColourMask::EMPTY]).unwrap();
        assert!(!is_ahat_member(&pend, 0, one));
        let both = ColouredGraph::new(LabelledGraph::path(2), 1, vec![one, one]).unwrap();
        assert!(is_ahat_member(&both, 0, one));
    }

    #[test]
    fn permutation_changes_classes() {
        let g = fig2_triangle().permute_colours(&[2, 3, 1]).unwrap();
        assert_eq!(g.colours[0], ColourMask::from_colours(&[2, 3]));
    }
}
