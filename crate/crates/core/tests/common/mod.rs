//! Brute-force oracles and instance generators shared by the acceptance
//! suite. Everything here is deliberately independent of the library's own
//! search code: different algorithms, no shared helpers beyond the public
//! `Graph` accessors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tk5cert::corpus::{generate, CorpusSpec, Family};
use tk5cert::graph::{self, Graph};
use tk5cert::planarity::{planarity, Planarity};

pub fn set_bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| mask >> i & 1 == 1)
}

fn reaches_avoiding(g: &Graph, s: usize, t: usize, banned: u64) -> bool {
    if banned & (1 << s) != 0 || banned & (1 << t) != 0 {
        return false;
    }
    let mut seen = 1u64 << s;
    let mut queue = vec![s];
    while let Some(v) = queue.pop() {
        if v == t {
            return true;
        }
        for w in set_bits(g.neighbors(v) & !banned & !seen) {
            seen |= 1 << w;
            queue.push(w);
        }
    }
    false
}

fn first_path_dfs(g: &Graph, cur: usize, t1: usize, used: u64, s2: usize, t2: usize) -> bool {
    if cur == t1 {
        return reaches_avoiding(g, s2, t2, used);
    }
    for w in set_bits(g.neighbors(cur)) {
        if used & (1 << w) == 0 && w != s2 && w != t2 {
            if first_path_dfs(g, w, t1, used | (1 << w), s2, t2) {
                return true;
            }
        }
    }
    false
}

/// Oracle: do vertex-disjoint paths s1–t1 and s2–t2 exist? Enumerates every
/// simple s1–t1 path avoiding the other pair's terminals and checks plain
/// reachability for the second pair around it.
pub fn two_disjoint_paths_exist(g: &Graph, s1: usize, t1: usize, s2: usize, t2: usize) -> bool {
    first_path_dfs(g, s1, t1, 1u64 << s1, s2, t2)
}

fn cycle_dfs(g: &Graph, root: usize, cur: usize, mask: u64, second: usize, out: &mut Vec<u64>) {
    for w in set_bits(g.neighbors(cur)) {
        if w == root && mask.count_ones() >= 3 && second < cur {
            out.push(mask);
        }
        if w > root && mask & (1 << w) == 0 {
            let s = if second == usize::MAX { w } else { second };
            cycle_dfs(g, root, w, mask | (1 << w), s, out);
        }
    }
}

/// Oracle: vertex masks of every cycle in `g`, each cycle listed once
/// (rooted at its smallest vertex, traversed in one direction).
pub fn cycle_masks(g: &Graph) -> Vec<u64> {
    let mut out = Vec::new();
    for root in g.vertices() {
        cycle_dfs(g, root, root, 1u64 << root, usize::MAX, &mut out);
    }
    out
}

/// Is `cycle` a genuine cycle of `g` passing through every vertex of
/// `through`? The cycle is given as a vertex sequence without the closing
/// repeat.
pub fn is_cycle_through(g: &Graph, cycle: &[usize], through: &[usize]) -> bool {
    if cycle.len() < 3 || cycle.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mask = cycle.iter().fold(0u64, |m, &v| m | (1 << v));
    if mask.count_ones() as usize != cycle.len() {
        return false;
    }
    for i in 0..cycle.len() {
        if !g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]) {
            return false;
        }
    }
    through.iter().all(|&v| mask & (1 << v) != 0)
}

/// Random stacked triangulation: start from K4 and repeatedly subdivide a
/// random triangular face with a fresh vertex. Always planar, always
/// 3-connected, with `extra` vertices beyond the initial four.
pub fn apollonian(extra: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut g = Graph::complete(4);
    let mut faces = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    for _ in 0..extra {
        let v = g.n();
        let mut h = Graph::empty(v + 1).unwrap();
        for (a, b) in g.edges() {
            h.add_edge(a, b).unwrap();
        }
        let face = faces[rng.gen_range(0..faces.len())];
        for c in face {
            h.add_edge(v, c).unwrap();
        }
        faces.retain(|f| *f != face);
        faces.push([face[0], face[1], v]);
        faces.push([face[0], face[2], v]);
        faces.push([face[1], face[2], v]);
        g = h;
    }
    g
}

/// Deterministic stream of 5-connected nonplanar graphs: dense G(n, p)
/// samples filtered by exact connectivity and planarity checks.
pub fn five_connected_nonplanar_samples(count: usize, seed: u64) -> Vec<(String, Graph)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 100 * count {
        attempts += 1;
        let n = 10 + (attempts % 3);
        let spec = CorpusSpec {
            family: Family::RandomGnp { n, p: 0.7 },
            seed: rng.gen(),
        };
        let g = generate(&spec).unwrap();
        if graph::is_k_connected(&g, 5) && matches!(planarity(&g), Planarity::Kuratowski(_)) {
            out.push((spec.label(), g));
        }
    }
    assert_eq!(
        out.len(),
        count,
        "sampler found only {} 5-connected nonplanar graphs in {attempts} attempts",
        out.len()
    );
    out
}

/// The octahedron plus one edge between an antipodal pair: nonplanar (the
/// octahedron is a maximal planar graph) but only 4-connected.
pub fn octahedron_plus_edge() -> Graph {
    let mut g = Graph::octahedron();
    let (u, v) = (0..g.n())
        .flat_map(|u| ((u + 1)..g.n()).map(move |v| (u, v)))
        .find(|&(u, v)| !g.has_edge(u, v))
        .expect("the octahedron is not complete");
    g.add_edge(u, v).unwrap();
    g
}
