//! Simple undirected graphs on dense indices with bitset adjacency.
//!
//! Everything downstream — planarity, path packing, quadruple enumeration —
//! is subset-heavy, so vertex sets are `u64` bitmasks and graphs are capped
//! at [`MAX_VERTICES`]. All enumeration and tie-breaking is lexicographic on
//! vertex indices so that every "first" witness is reproducible.

use crate::flow::{node_in, node_out, FlowNet, UNBOUNDED};
use crate::{Budget, Error, Result};
use serde::{Deserialize, Serialize};

/// Hard vertex cap imposed by the bitset representation.
pub const MAX_VERTICES: usize = 64;

/// Iterate the vertices of a bitmask in ascending order.
pub(crate) fn bits(mask: u64) -> BitIter {
    BitIter(mask)
}

pub(crate) struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

pub(crate) fn mask_of(vertices: &[usize]) -> u64 {
    vertices.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

pub(crate) fn sorted_vec(mask: u64) -> Vec<usize> {
    bits(mask).collect()
}

/// Simple undirected graph with dense vertex indices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphData", into = "GraphData")]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

/// Serialization shadow of [`Graph`]: vertex count plus edge list.
#[derive(Serialize, Deserialize)]
struct GraphData {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphData {
    fn from(g: Graph) -> Self {
        GraphData {
            n: g.n(),
            edges: g.edges(),
        }
    }
}

impl TryFrom<GraphData> for Graph {
    type Error = Error;

    fn try_from(d: GraphData) -> Result<Self> {
        Graph::from_edges(d.n, &d.edges)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooLarge {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            labels: None,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::BadParameters(format!(
                "edge ({u},{v}) out of range for n={}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::BadParameters(format!("self-loop at {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|row| row.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & (1 << v) != 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Neighborhood of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Neighborhood of a vertex set: all vertices outside `set` adjacent to it.
    pub fn set_neighbors(&self, set: u64) -> u64 {
        let mut out = 0;
        for v in bits(set) {
            out |= self.adj[v];
        }
        out & !set
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Bitmask of all vertices.
    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Edges in ascending lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] & !((1u64 << (u + 1)) - 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::BadParameters(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Vertices reachable from `start` while staying inside `allowed`.
    /// `start` must itself lie in `allowed`.
    pub(crate) fn reach(&self, start: usize, allowed: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in bits(frontier) {
                next |= self.adj[v] & allowed;
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen & allowed | (1u64 << start)
    }

    /// Connected components of `G − avoid`, ascending by smallest vertex.
    pub fn components_avoiding(&self, avoid: u64) -> Vec<u64> {
        let mut remaining = self.full_mask() & !avoid;
        let mut out = Vec::new();
        while remaining != 0 {
            let v = remaining.trailing_zeros() as usize;
            let comp = self.reach(v, remaining);
            out.push(comp);
            remaining &= !comp;
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_avoiding(0)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.components().len() == 1
    }

    /// Does `set` induce a connected subgraph? (Empty sets are not connected.)
    pub fn is_connected_set(&self, set: u64) -> bool {
        if set == 0 {
            return false;
        }
        let v = set.trailing_zeros() as usize;
        self.reach(v, set) == set
    }

    /// Number of edges inside `set`.
    pub fn edges_within(&self, set: u64) -> usize {
        bits(set)
            .map(|v| (self.adj[v] & set).count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn is_clique(&self, set: u64) -> bool {
        let k = set.count_ones() as usize;
        self.edges_within(set) == k * (k - 1) / 2
    }

    /// Subgraph induced on `set`, with a map from new indices to old.
    pub fn induced(&self, set: u64) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = bits(set).collect();
        let mut g = Graph::empty(old.len()).expect("induced subgraph within cap");
        for (i, &u) in old.iter().enumerate() {
            for (j, &v) in old.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
            }
        }
        (g, old)
    }

    /// The subgraph with vertex set `verts` and edge set `edges` re-indexed
    /// densely; returns the map from new indices to old.
    pub fn subgraph(&self, verts: u64, edges: &[(usize, usize)]) -> (Graph, Vec<usize>) {
        let old: Vec<usize> = bits(verts).collect();
        let pos = |v: usize| old.binary_search(&v).expect("edge endpoint outside vertex set");
        let mut g = Graph::empty(old.len()).expect("subgraph within cap");
        for &(u, v) in edges {
            g.add_edge(pos(u), pos(v)).expect("valid subgraph edge");
        }
        (g, old)
    }
}

// ---------------------------------------------------------------------------
// Named families used throughout tests and the corpus generator.
// ---------------------------------------------------------------------------

impl Graph {
    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("family within cap");
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("family within cap");
        for u in 0..n {
            g.add_edge(u, (u + 1) % n).unwrap();
        }
        g
    }

    pub fn path_graph(n: usize) -> Graph {
        let mut g = Graph::empty(n).expect("family within cap");
        for u in 0..n.saturating_sub(1) {
            g.add_edge(u, u + 1).unwrap();
        }
        g
    }

    /// Complete bipartite graph: part one is `0..a`, part two is `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut g = Graph::empty(a + b).expect("family within cap");
        for u in 0..a {
            for v in a..a + b {
                g.add_edge(u, v).unwrap();
            }
        }
        g
    }

    /// Complete tripartite K2,2,2 (the octahedron): complement of 3 disjoint
    /// edges, with parts {0,3}, {1,4}, {2,5}.
    pub fn octahedron() -> Graph {
        let mut g = Graph::complete(6);
        for v in 0..3 {
            g.remove_edge(v, v + 3);
        }
        g
    }

    /// Circulant graph C_n(jumps).
    pub fn circulant(n: usize, jumps: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &j in jumps {
            if j == 0 || j >= n {
                return Err(Error::BadParameters(format!(
                    "circulant jump {j} out of range for n={n}"
                )));
            }
            for u in 0..n {
                let v = (u + j) % n;
                if u != v {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Star K1,k with center 0.
    pub fn star(k: usize) -> Graph {
        let mut g = Graph::empty(k + 1).expect("family within cap");
        for v in 1..=k {
            g.add_edge(0, v).unwrap();
        }
        g
    }

    /// Wheel with hub 0 and rim cycle 1..=k.
    pub fn wheel(k: usize) -> Graph {
        let mut g = Graph::empty(k + 1).expect("family within cap");
        for i in 0..k {
            let u = 1 + i;
            let v = 1 + (i + 1) % k;
            if u != v {
                g.add_edge(u, v).unwrap();
            }
            g.add_edge(0, u).unwrap();
        }
        g
    }

    /// r×c grid, vertex (i,j) at index i*c + j.
    pub fn grid(r: usize, c: usize) -> Graph {
        let mut g = Graph::empty(r * c).expect("family within cap");
        for i in 0..r {
            for j in 0..c {
                if j + 1 < c {
                    g.add_edge(i * c + j, i * c + j + 1).unwrap();
                }
                if i + 1 < r {
                    g.add_edge(i * c + j, (i + 1) * c + j).unwrap();
                }
            }
        }
        g
    }

    /// Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes.
    pub fn petersen() -> Graph {
        let mut g = Graph::empty(10).expect("family within cap");
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(5 + i, 5 + (i + 2) % 5).unwrap();
            g.add_edge(i, 5 + i).unwrap();
        }
        g
    }

    /// Icosahedron: 12 vertices, 5-regular, planar.
    pub fn icosahedron() -> Graph {
        // Top apex 0 over pentagon 1..6, bottom apex 11 under pentagon 6..11,
        // antiprism between the pentagons.
        let mut g = Graph::empty(12).expect("family within cap");
        for i in 0..5 {
            let upper = 1 + i;
            let upper_next = 1 + (i + 1) % 5;
            let lower = 6 + i;
            let lower_next = 6 + (i + 1) % 5;
            g.add_edge(0, upper).unwrap();
            g.add_edge(11, lower).unwrap();
            g.add_edge(upper, upper_next).unwrap();
            g.add_edge(lower, lower_next).unwrap();
            g.add_edge(upper, lower).unwrap();
            g.add_edge(upper_next, lower).unwrap();
        }
        g
    }

    /// Dodecahedron: 20 vertices, 3-regular, planar.
    pub fn dodecahedron() -> Graph {
        let mut g = Graph::empty(20).expect("family within cap");
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5).unwrap(); // outer pentagon
            g.add_edge(i, 5 + i).unwrap(); // outer spokes
            g.add_edge(5 + i, 10 + i).unwrap();
            g.add_edge(10 + i, 5 + (i + 1) % 5).unwrap(); // middle decagon
            g.add_edge(10 + i, 15 + i).unwrap(); // inner spokes
            g.add_edge(15 + i, 15 + (i + 1) % 5).unwrap(); // inner pentagon
        }
        g
    }

    /// The 3-cube (cube graph Q3): vertices are bit-triples, edges flip one bit.
    pub fn cube() -> Graph {
        let mut g = Graph::empty(8).expect("family within cap");
        for u in 0..8usize {
            for bit in 0..3 {
                let v = u ^ (1 << bit);
                if u < v {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }
}

// ---------------------------------------------------------------------------
// Separations and cuts.
// ---------------------------------------------------------------------------

/// A separation (G1, G2): two edge-disjoint subgraphs covering the graph,
/// represented by their vertex sets. Edges with both ends in the shared set
/// may be assigned to either side; the constructor checks that a consistent,
/// non-trivial assignment exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub side1: u64,
    pub side2: u64,
}

impl Separation {
    pub fn new(g: &Graph, side1: u64, side2: u64) -> Result<Self> {
        let full = g.full_mask();
        if side1 | side2 != full {
            return Err(Error::PreconditionFailed(
                "separation sides must cover all vertices".into(),
            ));
        }
        let shared = side1 & side2;
        let only1 = side1 & !side2;
        let only2 = side2 & !side1;
        for v in bits(only1) {
            if g.neighbors(v) & only2 != 0 {
                return Err(Error::PreconditionFailed(
                    "edge crosses between exclusive sides".into(),
                ));
            }
        }
        // Non-triviality: each side needs a private vertex or an assignable
        // shared-shared edge of its own.
        let spare_edges = g.edges_within(shared);
        let mut needed = 0;
        if only1 == 0 {
            needed += 1;
        }
        if only2 == 0 {
            needed += 1;
        }
        if spare_edges < needed {
            return Err(Error::PreconditionFailed(
                "separation side is trivial".into(),
            ));
        }
        Ok(Separation { side1, side2 })
    }

    pub fn order(&self) -> usize {
        (self.side1 & self.side2).count_ones() as usize
    }
}

/// A vertex cut together with the component decomposition it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    pub vertices: Vec<usize>,
    pub shores: Vec<Vec<usize>>,
}

impl Cut {
    /// Build and validate: removing `vertices` must leave ≥ 2 components.
    pub fn new(g: &Graph, vertices: &[usize]) -> Result<Self> {
        let mut vs: Vec<usize> = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.iter().any(|&v| v >= g.n()) {
            return Err(Error::BadParameters("cut vertex out of range".into()));
        }
        let mask = mask_of(&vs);
        let comps = g.components_avoiding(mask);
        if comps.len() < 2 {
            return Err(Error::PreconditionFailed(format!(
                "removing {vs:?} leaves {} component(s)",
                comps.len()
            )));
        }
        Ok(Cut {
            vertices: vs,
            shores: comps.into_iter().map(sorted_vec).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Re-check the definition against a graph (used by certificate verify).
    pub fn verify(&self, g: &Graph) -> bool {
        match Cut::new(g, &self.vertices) {
            Ok(c) => c.shores == self.shores,
            Err(_) => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Contraction.
// ---------------------------------------------------------------------------

/// Contract the connected vertex set `s` to a single vertex.
///
/// The new vertex sits where `min(s)` sat in the dense relabeling; all other
/// vertices keep their relative order. Returns the contracted graph and the
/// old→new index mapping.
pub fn contract(g: &Graph, s: u64) -> Result<(Graph, Vec<usize>)> {
    if s == 0 {
        return Err(Error::EmptySet);
    }
    if s & !g.full_mask() != 0 {
        return Err(Error::BadParameters("contraction set out of range".into()));
    }
    if !g.is_connected_set(s) {
        return Err(Error::DisconnectedContractionSet);
    }
    let rep = s.trailing_zeros() as usize;
    let mut mapping = vec![usize::MAX; g.n()];
    let mut next = 0;
    for (v, slot) in mapping.iter_mut().enumerate() {
        if v == rep || s & (1 << v) == 0 {
            *slot = next;
            next += 1;
        }
    }
    for v in bits(s) {
        mapping[v] = mapping[rep];
    }
    let mut h = Graph::empty(next)?;
    for (u, v) in g.edges() {
        let (nu, nv) = (mapping[u], mapping[v]);
        if nu != nv {
            h.add_edge(nu, nv)?;
        }
    }
    Ok((h, mapping))
}

// ---------------------------------------------------------------------------
// Connectivity via Menger path counting.
// ---------------------------------------------------------------------------

/// Maximum number of internally disjoint u–v paths (u, v nonadjacent),
/// together with a minimum u,v-separating vertex set.
pub(crate) fn local_connectivity(g: &Graph, u: usize, v: usize) -> (usize, Vec<usize>) {
    let mut net = FlowNet::new(2 * g.n());
    for w in g.vertices() {
        if w != u && w != v {
            net.add_arc(node_in(w), node_out(w), 1);
        }
    }
    for (a, b) in g.edges() {
        net.add_arc(node_out(a), node_in(b), UNBOUNDED);
        net.add_arc(node_out(b), node_in(a), UNBOUNDED);
    }
    let k = net.max_flow(node_out(u), node_in(v), g.n() as u32) as usize;
    let reach = net.residual_reachable(node_out(u));
    let cut: Vec<usize> = g
        .vertices()
        .filter(|&w| w != u && w != v && reach[node_in(w)] && !reach[node_out(w)])
        .collect();
    (k, cut)
}

/// κ(g) with a witness minimum cut whenever κ(g) < n − 1.
///
/// Minimized over nonadjacent vertex pairs per Menger; complete graphs have
/// no cut and return (n − 1, None). Disconnected graphs return (0, empty cut).
pub fn vertex_connectivity(g: &Graph) -> Result<(usize, Option<Cut>)> {
    if g.n() < 2 {
        return Err(Error::TooSmall(format!("n={} < 2", g.n())));
    }
    if !g.is_connected() {
        return Ok((0, Some(Cut::new(g, &[])?)));
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for u in g.vertices() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let (k, cut) = local_connectivity(g, u, v);
            if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
                best = Some((k, cut));
            }
        }
    }
    match best {
        None => Ok((g.n() - 1, None)), // complete graph
        Some((k, cut)) => Ok((k, Some(Cut::new(g, &cut)?))),
    }
}

/// Convenience: κ(g) ≥ k in the classical sense (complete graphs count).
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    if g.n() < 2 {
        return false;
    }
    vertex_connectivity(g).map(|(c, _)| c >= k).unwrap_or(false)
}

// ---------------------------------------------------------------------------
// Cut enumeration and K4⁻ detection.
// ---------------------------------------------------------------------------

/// Every vertex cut `S` with `containing ⊆ S` and `|S| ≤ max_order`, in
/// lexicographic order of the sorted vertex sequence (minimal or not).
pub fn enumerate_cuts(
    g: &Graph,
    max_order: usize,
    containing: u64,
    budget: Budget,
) -> Result<Vec<Cut>> {
    if containing & !g.full_mask() != 0 {
        return Err(Error::BadParameters("containing set out of range".into()));
    }
    let base = containing.count_ones() as usize;
    if base > max_order {
        return Ok(Vec::new());
    }
    // Node-count guard: the candidate space is all ≤(max_order−base)-subsets
    // of the free vertices.
    let free = g.n() - base;
    let slots = max_order - base;
    let mut candidates = 1u64;
    let mut level = 1u64;
    for i in 0..slots.min(free) {
        level = level.saturating_mul((free - i) as u64) / (i as u64 + 1);
        candidates = candidates.saturating_add(level);
    }
    if candidates > budget.max_steps {
        return Err(Error::BudgetExceeded);
    }

    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    // Lexicographic subset enumeration over free vertices; `containing` is
    // merged into every candidate.
    fn recurse(
        g: &Graph,
        containing: u64,
        slots: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Cut>,
    ) {
        let mask = containing | mask_of(chosen);
        if g.components_avoiding(mask).len() >= 2 {
            let vs = sorted_vec(mask);
            out.push(Cut::new(g, &vs).expect("checked component count"));
        }
        if chosen.len() == slots {
            return;
        }
        for v in start..g.n() {
            if containing & (1 << v) != 0 {
                continue;
            }
            chosen.push(v);
            recurse(g, containing, slots, v + 1, chosen, out);
            chosen.pop();
        }
    }
    recurse(g, containing, slots, 0, &mut chosen, &mut out);
    out.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    Ok(out)
}

/// First 4-vertex subset (lexicographic) inducing at least 5 edges — a K4⁻,
/// i.e. two triangles sharing an edge.
pub fn find_k4_minus(g: &Graph) -> Option<[usize; 4]> {
    let n = g.n();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let set = mask_of(&[a, b, c, d]);
                    if g.edges_within(set) >= 5 {
                        return Some([a, b, c, d]);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_isomorphic_by_mapping(g: &Graph, h: &Graph, old_to_new: &[usize]) -> bool {
        if g.n() != h.n() {
            return false;
        }
        let mut seen = vec![false; h.n()];
        for &img in old_to_new {
            if img >= h.n() || seen[img] {
                return false;
            }
            seen[img] = true;
        }
        g.edges()
            .iter()
            .all(|&(u, v)| h.has_edge(old_to_new[u], old_to_new[v]))
            && g.edge_count() == h.edge_count()
    }

    #[test]
    fn families_have_expected_shape() {
        assert_eq!(Graph::complete(5).edge_count(), 10);
        assert_eq!(Graph::cycle(6).edge_count(), 6);
        assert_eq!(Graph::path_graph(4).edge_count(), 3);
        assert_eq!(Graph::complete_bipartite(3, 3).edge_count(), 9);
        let pet = Graph::petersen();
        assert_eq!(pet.n(), 10);
        assert!(pet.vertices().all(|v| pet.degree(v) == 3));
        let ico = Graph::icosahedron();
        assert_eq!(ico.edge_count(), 30);
        assert!(ico.vertices().all(|v| ico.degree(v) == 5));
        let dod = Graph::dodecahedron();
        assert_eq!(dod.edge_count(), 30);
        assert!(dod.vertices().all(|v| dod.degree(v) == 3));
        let oct = Graph::octahedron();
        assert!(oct.vertices().all(|v| oct.degree(v) == 4));
        let cube = Graph::cube();
        assert_eq!(cube.edge_count(), 12);
        assert!(cube.is_connected());
        assert_eq!(Graph::wheel(5).edge_count(), 10);
        assert_eq!(Graph::grid(3, 3).edge_count(), 12);
        assert_eq!(Graph::circulant(8, &[1, 4]).unwrap().edge_count(), 12);
    }

    #[test]
    fn contract_k5_edge_gives_k4() {
        let g = Graph::complete(5);
        let (h, _) = contract(&g, mask_of(&[0, 1])).unwrap();
        assert_eq!(h.n(), 4);
        assert!(h.is_clique(h.full_mask()));
    }

    #[test]
    fn contract_c6_edge_gives_c5() {
        let g = Graph::cycle(6);
        let (h, _) = contract(&g, mask_of(&[2, 3])).unwrap();
        assert_eq!(h.n(), 5);
        assert_eq!(h.edge_count(), 5);
        assert!(h.vertices().all(|v| h.degree(v) == 2));
        assert!(h.is_connected());
    }

    #[test]
    fn contract_rejects_bad_sets() {
        let g = Graph::cycle(6);
        assert_eq!(contract(&g, 0).unwrap_err(), Error::EmptySet);
        assert_eq!(
            contract(&g, mask_of(&[0, 3])).unwrap_err(),
            Error::DisconnectedContractionSet
        );
    }

    #[test]
    fn identity_contraction_is_isomorphic() {
        for g in [Graph::petersen(), Graph::wheel(6), Graph::grid(2, 4)] {
            for v in g.vertices() {
                let (h, map) = contract(&g, 1u64 << v).unwrap();
                assert!(is_isomorphic_by_mapping(&g, &h, &map), "vertex {v}");
            }
        }
    }

    #[test]
    fn contraction_neighborhood_is_set_neighborhood() {
        let g = Graph::petersen();
        let s = mask_of(&[0, 1, 2, 3, 4]); // outer cycle
        let (h, map) = contract(&g, s).unwrap();
        assert_eq!(h.n(), 6);
        let image = map[0];
        let expected: Vec<usize> = sorted_vec(g.set_neighbors(s))
            .into_iter()
            .map(|v| map[v])
            .collect();
        assert_eq!(sorted_vec(h.neighbors(image)), expected);
    }

    #[test]
    fn connectivity_of_small_families() {
        assert_eq!(vertex_connectivity(&Graph::complete(5)).unwrap(), (4, None));
        let (k, cut) = vertex_connectivity(&Graph::cycle(5)).unwrap();
        let cut = cut.unwrap();
        assert_eq!(k, 2);
        assert_eq!(cut.order(), 2);
        let [a, b] = cut.vertices[..] else { panic!() };
        assert!(!Graph::cycle(5).has_edge(a, b));
        assert!(cut.verify(&Graph::cycle(5)));
    }

    #[test]
    fn petersen_connectivity_witness_is_a_neighborhood() {
        let g = Graph::petersen();
        let (k, cut) = vertex_connectivity(&g).unwrap();
        assert_eq!(k, 3);
        let cut = cut.unwrap();
        let found = g
            .vertices()
            .any(|v| sorted_vec(g.neighbors(v)) == cut.vertices);
        assert!(found, "cut {:?} is not a vertex neighborhood", cut.vertices);
    }

    #[test]
    fn disconnected_graph_has_empty_cut() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (k, cut) = vertex_connectivity(&g).unwrap();
        assert_eq!(k, 0);
        let cut = cut.unwrap();
        assert!(cut.vertices.is_empty());
        assert_eq!(cut.shores, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn connectivity_rejects_tiny_graphs() {
        assert!(matches!(
            vertex_connectivity(&Graph::empty(1).unwrap()),
            Err(Error::TooSmall(_))
        ));
    }

    #[test]
    fn cuts_of_complete_graph_are_empty() {
        let cuts = enumerate_cuts(&Graph::complete(6), 5, 0, Budget::default()).unwrap();
        assert!(cuts.is_empty());
    }

    #[test]
    fn cuts_of_c6_are_the_nonadjacent_pairs() {
        let g = Graph::cycle(6);
        let cuts = enumerate_cuts(&g, 2, 0, Budget::default()).unwrap();
        assert_eq!(cuts.len(), 9);
        for c in &cuts {
            assert_eq!(c.order(), 2);
            assert!(!g.has_edge(c.vertices[0], c.vertices[1]));
            assert!(c.verify(&g));
        }
        // Lexicographic emission order on the sorted vertex lists.
        for w in cuts.windows(2) {
            assert!(w[0].vertices < w[1].vertices);
        }
    }

    #[test]
    fn star_center_is_the_only_small_cut() {
        let cuts = enumerate_cuts(&Graph::star(4), 1, 0, Budget::default()).unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!(cuts[0].vertices, vec![0]);
        assert_eq!(cuts[0].shores.len(), 4);
    }

    #[test]
    fn cuts_respect_containing_constraint() {
        let g = Graph::cycle(6);
        let cuts = enumerate_cuts(&g, 2, 1u64 << 3, Budget::default()).unwrap();
        assert_eq!(cuts.len(), 3); // {3} pairs with 0, 1, 5
        assert!(cuts.iter().all(|c| c.vertices.contains(&3)));
    }

    #[test]
    fn cut_enumeration_honors_budget() {
        let g = Graph::grid(4, 4);
        let err = enumerate_cuts(&g, 6, 0, Budget::with_steps(10)).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded);
    }

    #[test]
    fn k4_minus_detection() {
        let mut five_edges = Graph::complete(4);
        five_edges.remove_edge(1, 2);
        assert_eq!(find_k4_minus(&five_edges), Some([0, 1, 2, 3]));
        assert_eq!(find_k4_minus(&Graph::cycle(5)), None);
        assert!(find_k4_minus(&Graph::icosahedron()).is_some());
        assert_eq!(find_k4_minus(&Graph::petersen()), None);
    }

    #[test]
    fn separation_validation() {
        let g = Graph::cycle(6);
        // {0,1,2,3} and {3,4,5,0} overlap in {0,3}, a valid 2-separation.
        let s = Separation::new(&g, mask_of(&[0, 1, 2, 3]), mask_of(&[3, 4, 5, 0])).unwrap();
        assert_eq!(s.order(), 2);
        // A crossing edge between exclusive sides is rejected.
        assert!(Separation::new(&g, mask_of(&[0, 1, 2]), mask_of(&[3, 4, 5])).is_err());
        // A trivial side (no private vertex or edge) is rejected.
        assert!(Separation::new(&g, g.full_mask(), mask_of(&[1])).is_err());
    }
}
