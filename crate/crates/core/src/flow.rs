//! Internal unit-capacity max-flow on vertex-split networks.
//!
//! Vertex v of the source graph becomes two nodes: `in(v) = 2v` and
//! `out(v) = 2v + 1`; a unit arc in(v)→out(v) models vertex capacity, and each
//! graph edge uv contributes arcs out(u)→in(v) and out(v)→in(u). Augmenting
//! paths are found by BFS in arc-insertion order, which is ascending vertex
//! order everywhere the module is used — so flows, and the path systems
//! decomposed from them, are deterministic.

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNet {
    head: Vec<Vec<usize>>,
    arcs: Vec<Arc>,
}

pub(crate) fn node_in(v: usize) -> usize {
    2 * v
}

pub(crate) fn node_out(v: usize) -> usize {
    2 * v + 1
}

/// Capacity for arcs that must never participate in a minimum cut (edge arcs
/// in vertex-capacitated networks). Large enough to exceed any flow value at
/// the 64-vertex cap, small enough to never overflow u32 arithmetic.
pub(crate) const UNBOUNDED: u32 = 1 << 20;

impl FlowNet {
    pub(crate) fn new(nodes: usize) -> Self {
        FlowNet {
            head: vec![Vec::new(); nodes],
            arcs: Vec::new(),
        }
    }

    /// Add a directed arc with the given capacity (plus its residual twin).
    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.head[from].push(self.arcs.len());
        self.arcs.push(Arc { to, cap });
        self.head[to].push(self.arcs.len());
        self.arcs.push(Arc { to: from, cap: 0 });
    }

    /// Residual capacity of the arc stored at `id`.
    fn residual(&self, id: usize) -> u32 {
        self.arcs[id].cap
    }

    /// Push `amount` through arc `id`.
    fn push(&mut self, id: usize, amount: u32) {
        self.arcs[id].cap -= amount;
        self.arcs[id ^ 1].cap += amount;
    }

    /// One BFS augmentation from `s` to `t`; returns true if a unit was pushed.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev_arc = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &id in &self.head[u] {
                let v = self.arcs[id].to;
                if !seen[v] && self.residual(id) > 0 {
                    seen[v] = true;
                    prev_arc[v] = id;
                    queue.push_back(v);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let id = prev_arc[v];
            self.push(id, 1);
            v = self.arcs[id ^ 1].to;
        }
        true
    }

    /// Maximum flow from `s` to `t`, stopping once `limit` units are routed.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut value = 0;
        while value < limit && self.augment(s, t) {
            value += 1;
        }
        value
    }

    /// Force one unit along an explicit node sequence (used to seed a flow
    /// before augmenting). Panics if some arc is missing or saturated — the
    /// caller must pass a valid path of the network.
    pub(crate) fn seed_path(&mut self, nodes: &[usize]) {
        for w in nodes.windows(2) {
            let id = self.head[w[0]]
                .iter()
                .copied()
                .find(|&id| self.arcs[id].to == w[1] && self.residual(id) > 0)
                .expect("seed path must follow unsaturated arcs");
            self.push(id, 1);
        }
    }

    /// Nodes reachable from `s` in the residual network.
    pub(crate) fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &id in &self.head[u] {
                let v = self.arcs[id].to;
                if !seen[v] && self.residual(id) > 0 {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Decompose the current flow into unit paths from `s` to `t`.
    ///
    /// At each node the lowest-indexed outgoing arc carrying flow is taken,
    /// so decomposition is deterministic. Forward arcs are even-indexed; an
    /// arc carries flow when its residual twin has positive capacity.
    pub(crate) fn decompose(&mut self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut paths = Vec::new();
        loop {
            let mut path = vec![s];
            let mut u = s;
            let mut found_any = true;
            while u != t {
                let next = self.head[u]
                    .iter()
                    .copied()
                    .find(|&id| id % 2 == 0 && self.residual(id ^ 1) > 0);
                match next {
                    Some(id) => {
                        self.push(id ^ 1, 1); // consume the unit
                        u = self.arcs[id].to;
                        path.push(u);
                    }
                    None => {
                        found_any = false;
                        break;
                    }
                }
            }
            if !found_any {
                break;
            }
            paths.push(path);
        }
        paths
    }
}
