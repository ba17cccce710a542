use serde::Serialize;

use crate::{Error, Result};

/// A tree with `k` vertices carrying the distinct colours `1..=k` and some
/// uncoloured vertices, each of degree at least three. Vertex `i < k` has
/// colour `i + 1`; vertices `k..` are uncoloured.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UtShape {
    pub k: usize,
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UtShape {
    pub fn uncoloured(&self) -> usize {
        self.vertices - self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn leaves(&self) -> usize {
        self.degrees().iter().filter(|&&d| d == 1).count()
    }

    /// Vertices whose edge to the root is optional: coloured non-leaves and
    /// uncoloured branch vertices.
    pub fn optional_root_edges(&self) -> usize {
        let d = self.degrees();
        (0..self.vertices).filter(|&v| d[v] != 1).count()
    }
}

pub const MAX_UT_COLOURS: usize = 6;

/// All shapes for `k` colours, up to isomorphism preserving colours.
pub fn enumerate_ut_trees(k: usize) -> Result<Vec<UtShape>> {
    if !(1..=MAX_UT_COLOURS).contains(&k) {
        return Err(Error::OutOfRange(format!("UT shapes need 1 <= k <= {MAX_UT_COLOURS}, got {k}")));
    }
    if k == 1 {
        return Ok(vec![UtShape { k, vertices: 1, edges: vec![] }]);
    }
    let mut out = Vec::new();
    // a tree with u branch vertices of degree >= 3 has at least u + 2 leaves
    for u in 0..=k - 2 {
        let m = k + u;
        let mut seq = Vec::with_capacity(m - 2);
        let mut cnt = vec![0usize; m];
        let perms = permutations(u);
        prufer_dfs(k, m, &mut seq, &mut cnt, &mut |s| {
            let edges = prufer_decode(s, m);
            let key = edge_key(&edges, m, k, None);
            if perms.iter().all(|p| key <= edge_key(&edges, m, k, Some(p))) {
                out.push(UtShape { k, vertices: m, edges });
            }
        });
    }
    Ok(out)
}

fn prufer_dfs(k: usize, m: usize, seq: &mut Vec<usize>, cnt: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    let len = m - 2;
    let need: usize = (k..m).map(|v| 2usize.saturating_sub(cnt[v])).sum();
    if len - seq.len() < need {
        return;
    }
    if seq.len() == len {
        emit(seq);
        return;
    }
    for v in 0..m {
        seq.push(v);
        cnt[v] += 1;
        prufer_dfs(k, m, seq, cnt, emit);
        cnt[v] -= 1;
        seq.pop();
    }
}

fn prufer_decode(seq: &[usize], m: usize) -> Vec<(usize, usize)> {
    let mut deg = vec![1usize; m];
    for &v in seq {
        deg[v] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &v in seq {
        let leaf = (0..m).find(|&w| deg[w] == 1).expect("Pruefer decoding always has a leaf");
        edges.push((leaf.min(v), leaf.max(v)));
        deg[leaf] -= 1;
        deg[v] -= 1;
    }
    let rest: Vec<usize> = (0..m).filter(|&w| deg[w] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort_unstable();
    edges
}

fn edge_key(edges: &[(usize, usize)], m: usize, k: usize, perm: Option<&[usize]>) -> u64 {
    let map = |v: usize| match perm {
        Some(p) if v >= k => k + p[v - k],
        _ => v,
    };
    edges.iter().fold(0u64, |acc, &(u, v)| {
        let (a, b) = (map(u).min(map(v)), map(u).max(map(v)));
        acc | 1 << (a * m + b - a * (a + 1) / 2 - a - 1)
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
