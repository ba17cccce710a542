use super::bits;

/// Unit vertex-capacity max-flow between `s` and `t` on an undirected graph
/// given by adjacency bitsets. Every vertex other than `s`, `t` may be used by
/// at most one path. With `skip_direct` the edge `st` is ignored. Augmentation
/// stops once `limit` paths are found.
pub(crate) struct VertexFlow {
    nodes: usize,
    cap: Vec<i32>,
    s: usize,
    t: usize,
}

impl VertexFlow {
    pub(crate) fn new(adj: &[u64], within: u64, s: usize, t: usize, skip_direct: bool) -> Self {
        let n = adj.len();
        let nodes = 2 * n;
        let mut cap = vec![0i32; nodes * nodes];
        let big = n as i32 + 1;
        for v in bits(within) {
            let (vi, vo) = (2 * v, 2 * v + 1);
            cap[vi * nodes + vo] = if v == s || v == t { big } else { 1 };
            for u in bits(adj[v] & within) {
                if skip_direct && ((v == s && u == t) || (v == t && u == s)) {
                    continue;
                }
                cap[vo * nodes + 2 * u] = big;
            }
        }
        VertexFlow { nodes, cap, s: 2 * s + 1, t: 2 * t }
    }

    fn augment(&mut self) -> bool {
        let nodes = self.nodes;
        let mut prev = vec![usize::MAX; nodes];
        prev[self.s] = self.s;
        let mut queue = std::collections::VecDeque::from([self.s]);
        while let Some(x) = queue.pop_front() {
            if x == self.t {
                break;
            }
            for y in 0..nodes {
                if prev[y] == usize::MAX && self.cap[x * nodes + y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[self.t] == usize::MAX {
            return false;
        }
        let mut y = self.t;
        while y != self.s {
            let x = prev[y];
            self.cap[x * nodes + y] -= 1;
            self.cap[y * nodes + x] += 1;
            y = x;
        }
        true
    }

    pub(crate) fn max_flow(&mut self, limit: usize) -> usize {
        let mut f = 0;
        while f < limit && self.augment() {
            f += 1;
        }
        f
    }

    /// After a maximum flow: vertices whose in-node is reachable from the
    /// source in the residual graph but whose out-node is not. These form a
    /// minimum vertex separator.
    pub(crate) fn min_cut(&self) -> u64 {
        let nodes = self.nodes;
        let mut seen = vec![false; nodes];
        seen[self.s] = true;
        let mut stack = vec![self.s];
        while let Some(x) = stack.pop() {
            for y in 0..nodes {
                if !seen[y] && self.cap[x * nodes + y] > 0 {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        let mut cut = 0u64;
        for v in 0..nodes / 2 {
            if seen[2 * v] && !seen[2 * v + 1] {
                cut |= 1 << v;
            }
        }
        cut
    }
}
