//! Planarity with certificates: combinatorial embeddings or Kuratowski
//! subdivisions, disc embeddings with a prescribed boundary order, the
//! 3-planar predicate, and the Euler charge identity.
//!
//! The embedder is Demoucron–Malgrange–Pertuiset run per biconnected block:
//! start from a cycle, repeatedly place a fragment into an admissible face
//! (fragments with the fewest admissible faces first), and give up exactly
//! when some fragment has none. Block rotations are spliced at cut vertices.
//! Nonplanar inputs get a witness by deleting edges while nonplanarity
//! persists; what remains is a K5 or K3,3 subdivision.

use crate::graph::{bits, mask_of, sorted_vec, Graph};
use crate::{Budget, Error, Result, Stepper};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

// ---------------------------------------------------------------------------
// Embeddings.
// ---------------------------------------------------------------------------

/// A combinatorial plane embedding: for each vertex the cyclic order of its
/// neighbors, plus a distinguished outer face (an index into [`faces`]).
///
/// Faces are traced with the convention that the dart u→v is followed by
/// v→w where w succeeds u in the rotation at v.
///
/// [`faces`]: PlanarEmbedding::faces
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarEmbedding {
    pub rotation: Vec<Vec<usize>>,
    pub outer_face: usize,
}

impl PlanarEmbedding {
    /// Trace all faces as dart sequences, in a deterministic order (scan
    /// darts by tail vertex, then by rotation position).
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let n = self.rotation.len();
        let mut visited: Vec<Vec<bool>> = self.rotation.iter().map(|r| vec![false; r.len()]).collect();
        let pos = |v: usize, nb: usize| -> usize {
            self.rotation[v]
                .iter()
                .position(|&x| x == nb)
                .expect("dart endpoint missing from rotation")
        };
        let mut out = Vec::new();
        for v0 in 0..n {
            for k0 in 0..self.rotation[v0].len() {
                if visited[v0][k0] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut v, mut k) = (v0, k0);
                loop {
                    visited[v][k] = true;
                    let w = self.rotation[v][k];
                    walk.push((v, w));
                    let kw = (pos(w, v) + 1) % self.rotation[w].len();
                    (v, k) = (w, kw);
                    if (v, k) == (v0, k0) {
                        break;
                    }
                }
                out.push(walk);
            }
        }
        out
    }

    /// The vertex sequence of a face walk (tail of each dart).
    pub fn face_vertices(walk: &[(usize, usize)]) -> Vec<usize> {
        walk.iter().map(|&(u, _)| u).collect()
    }

    /// Check this is a genus-0 embedding of `g`: rotations list exactly the
    /// neighbor sets, and every component with an edge satisfies
    /// V − E + F = 2 over the faces its darts trace.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.rotation.len() != g.n() {
            return false;
        }
        for v in g.vertices() {
            let mut listed = self.rotation[v].clone();
            listed.sort_unstable();
            if listed.windows(2).any(|w| w[0] == w[1]) || listed != sorted_vec(g.neighbors(v)) {
                return false;
            }
        }
        let faces = self.faces();
        if faces.is_empty() {
            return self.outer_face == 0;
        }
        if self.outer_face >= faces.len() {
            return false;
        }
        let comps = g.components();
        let comp_of = |v: usize| comps.iter().position(|&c| c & (1 << v) != 0).unwrap();
        let mut face_count = vec![0i64; comps.len()];
        for f in &faces {
            face_count[comp_of(f[0].0)] += 1;
        }
        for (i, &c) in comps.iter().enumerate() {
            let vs = c.count_ones() as i64;
            let es = g.edges_within(c) as i64;
            if es > 0 && vs - es + face_count[i] != 2 {
                return false;
            }
        }
        true
    }
}

/// Σ_v (deg(v) − 4) + Σ_f (walk length − 4) over a connected plane graph;
/// face walk length counts edge incidences, so a bridge contributes twice to
/// its face. Always −8 on a verified connected embedding.
pub fn euler_charge_sum(g: &Graph, emb: &PlanarEmbedding) -> i64 {
    let vertex_part: i64 = g.vertices().map(|v| g.degree(v) as i64 - 4).sum();
    let faces = emb.faces();
    // An edgeless drawing still bounds one face, with an empty walk; no dart
    // orbit traces it.
    let face_part: i64 = if faces.is_empty() && g.n() > 0 {
        -4
    } else {
        faces.iter().map(|f| f.len() as i64 - 4).sum()
    };
    vertex_part + face_part
}

// ---------------------------------------------------------------------------
// Kuratowski witnesses.
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    TK5,
    TK33,
}

/// A subdivision of K5 or K3,3: branch vertices joined by internally
/// disjoint paths realizing the complete (bipartite) adjacency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    pub branch_vertices: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

impl KuratowskiWitness {
    /// Independent check: paths live in `g`, are internally disjoint, meet
    /// only at branch vertices, and their endpoint pairs realize K5 or K3,3.
    pub fn verify(&self, g: &Graph) -> bool {
        let branch = &self.branch_vertices;
        let expected = match self.kind {
            KuratowskiKind::TK5 => (5, 10),
            KuratowskiKind::TK33 => (6, 9),
        };
        if branch.len() != expected.0 || self.paths.len() != expected.1 {
            return false;
        }
        let mut sorted_branch = branch.clone();
        sorted_branch.sort_unstable();
        sorted_branch.dedup();
        if sorted_branch.len() != branch.len() || branch.iter().any(|&v| v >= g.n()) {
            return false;
        }
        let bmask = mask_of(branch);
        let mut used = 0u64; // internal vertices claimed by some path
        let mut pairs = Vec::new();
        for p in &self.paths {
            if p.len() < 2 || p.iter().any(|&v| v >= g.n()) {
                return false;
            }
            if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
            let pmask = mask_of(p);
            if pmask.count_ones() as usize != p.len() {
                return false; // repeated vertex inside one path
            }
            let (a, b) = (p[0], p[p.len() - 1]);
            if bmask & (1 << a) == 0 || bmask & (1 << b) == 0 || a == b {
                return false;
            }
            let internal = pmask & !(1 << a) & !(1 << b);
            if internal & bmask != 0 || internal & used != 0 {
                return false;
            }
            used |= internal;
            pairs.push(if a < b { (a, b) } else { (b, a) });
        }
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        match self.kind {
            KuratowskiKind::TK5 => {
                let mut want = Vec::new();
                for i in 0..5 {
                    for j in i + 1..5 {
                        let (a, b) = (sorted_branch[i], sorted_branch[j]);
                        want.push((a.min(b), a.max(b)));
                    }
                }
                want.sort_unstable();
                pairs == want
            }
            KuratowskiKind::TK33 => {
                // Recover the bipartition: the side of branch b0 is b0 plus
                // the branches it is NOT joined to.
                let b0 = sorted_branch[0];
                let joined = |x: usize, y: usize| {
                    pairs.contains(&(x.min(y), x.max(y)))
                };
                let side0: Vec<usize> = sorted_branch
                    .iter()
                    .copied()
                    .filter(|&b| b == b0 || !joined(b0, b))
                    .collect();
                if side0.len() != 3 {
                    return false;
                }
                let side1: Vec<usize> = sorted_branch
                    .iter()
                    .copied()
                    .filter(|b| !side0.contains(b))
                    .collect();
                side0
                    .iter()
                    .all(|&x| side1.iter().all(|&y| joined(x, y)))
                    && side0.iter().all(|&x| side0.iter().all(|&y| x == y || !joined(x, y)))
            }
        }
    }
}

/// Outcome of the planarity decision.
#[derive(Debug, Clone)]
pub enum Planarity {
    Planar(PlanarEmbedding),
    Kuratowski(KuratowskiWitness),
}

// ---------------------------------------------------------------------------
// Biconnected blocks.
// ---------------------------------------------------------------------------

/// Edge sets of the biconnected blocks, in a deterministic DFS order.
pub(crate) fn blocks(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    struct State<'a> {
        g: &'a Graph,
        num: Vec<usize>,
        low: Vec<usize>,
        counter: usize,
        estack: Vec<(usize, usize)>,
        out: Vec<Vec<(usize, usize)>>,
    }
    fn dfs(st: &mut State, u: usize, parent: usize) {
        st.num[u] = st.counter;
        st.low[u] = st.counter;
        st.counter += 1;
        for v in bits(st.g.neighbors(u)) {
            if st.num[v] == usize::MAX {
                st.estack.push((u, v));
                dfs(st, v, u);
                st.low[u] = st.low[u].min(st.low[v]);
                if st.low[v] >= st.num[u] {
                    let mut blk = Vec::new();
                    while let Some(e) = st.estack.pop() {
                        blk.push(e);
                        if e == (u, v) {
                            break;
                        }
                    }
                    blk.reverse();
                    st.out.push(blk);
                }
            } else if v != parent && st.num[v] < st.num[u] {
                st.estack.push((u, v));
                st.low[u] = st.low[u].min(st.num[v]);
            }
        }
    }
    let mut st = State {
        g,
        num: vec![usize::MAX; g.n()],
        low: vec![0; g.n()],
        counter: 0,
        estack: Vec::new(),
        out: Vec::new(),
    };
    for v in g.vertices() {
        if st.num[v] == usize::MAX {
            dfs(&mut st, v, usize::MAX);
        }
    }
    st.out
}

// ---------------------------------------------------------------------------
// The block embedder.
// ---------------------------------------------------------------------------

/// Embed one 2-connected block (≥ 2 edges); returns per-vertex cyclic
/// neighbor orders within the block, or None when the block is nonplanar.
fn embed_block(n: usize, edges: &[(usize, usize)]) -> Option<Vec<(usize, Vec<usize>)>> {
    let mut badj = vec![0u64; n];
    let mut bmask = 0u64;
    for &(u, v) in edges {
        badj[u] |= 1 << v;
        badj[v] |= 1 << u;
        bmask |= (1 << u) | (1 << v);
    }

    // Initial cycle by DFS from the smallest block vertex.
    let cycle = {
        fn dfs_cycle(
            badj: &[u64],
            u: usize,
            parent: usize,
            path: &mut Vec<usize>,
            onpath: &mut u64,
        ) -> Option<Vec<usize>> {
            path.push(u);
            *onpath |= 1 << u;
            for v in bits(badj[u]) {
                if v == parent {
                    continue;
                }
                if *onpath & (1 << v) != 0 {
                    let start = path.iter().position(|&x| x == v).unwrap();
                    return Some(path[start..].to_vec());
                }
                if let Some(c) = dfs_cycle(badj, v, u, path, onpath) {
                    return Some(c);
                }
            }
            path.pop();
            *onpath &= !(1 << u);
            None
        }
        let root = bmask.trailing_zeros() as usize;
        let mut path = Vec::new();
        let mut onpath = 0u64;
        dfs_cycle(&badj, root, usize::MAX, &mut path, &mut onpath)?
    };

    let mut hmask = mask_of(&cycle);
    let mut hadj = vec![0u64; n];
    for i in 0..cycle.len() {
        let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        hadj[u] |= 1 << v;
        hadj[v] |= 1 << u;
    }
    let mut face_walks: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    #[derive(Debug)]
    enum Frag {
        Chord(usize, usize),
        Comp(u64),
    }

    loop {
        // Collect fragments: unembedded chords, then components of B − H.
        let mut frags: Vec<(Vec<usize>, Frag)> = Vec::new();
        for u in bits(hmask) {
            for v in bits(badj[u] & hmask & !hadj[u]) {
                if u < v {
                    frags.push((vec![u, v], Frag::Chord(u, v)));
                }
            }
        }
        let mut remaining = bmask & !hmask;
        while remaining != 0 {
            let seed = remaining.trailing_zeros() as usize;
            let mut comp = 1u64 << seed;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                for x in bits(frontier) {
                    next |= badj[x] & !hmask;
                }
                frontier = next & !comp;
                comp |= frontier;
            }
            remaining &= !comp;
            let mut att = 0u64;
            for x in bits(comp) {
                att |= badj[x] & hmask;
            }
            frags.push((sorted_vec(att), Frag::Comp(comp)));
        }
        if frags.is_empty() {
            break;
        }

        let face_sets: Vec<u64> = face_walks.iter().map(|w| mask_of(w)).collect();
        let admissible = |att: &[usize]| -> Vec<usize> {
            let amask = mask_of(att);
            (0..face_sets.len())
                .filter(|&i| face_sets[i] & amask == amask)
                .collect()
        };
        let mut best: Option<(usize, usize, usize)> = None; // (count, frag idx, face idx)
        for (i, (att, _)) in frags.iter().enumerate() {
            let adm = admissible(att);
            if adm.is_empty() {
                return None; // some fragment fits nowhere: nonplanar
            }
            if best.is_none_or(|(c, _, _)| adm.len() < c) {
                best = Some((adm.len(), i, adm[0]));
            }
        }
        let (_, fi, face_idx) = best.unwrap();

        // A path through the chosen fragment between two attachments.
        let path: Vec<usize> = match frags[fi].1 {
            Frag::Chord(u, v) => vec![u, v],
            Frag::Comp(comp) => {
                let att = &frags[fi].0;
                let a = att[0];
                let mut parent: HashMap<usize, usize> = HashMap::new();
                let mut queue: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
                for x in bits(badj[a] & comp) {
                    parent.entry(x).or_insert(a);
                    queue.push_back(x);
                }
                let mut end = None;
                'bfs: while let Some(x) = queue.pop_front() {
                    if let Some(b) = bits(badj[x] & hmask).find(|&b| b != a) {
                        end = Some((x, b));
                        break 'bfs;
                    }
                    for y in bits(badj[x] & comp) {
                        if let std::collections::hash_map::Entry::Vacant(slot) = parent.entry(y) {
                            slot.insert(x);
                            queue.push_back(y);
                        }
                    }
                }
                let (x, b) = end.expect("2-connected block fragment has a second attachment");
                let mut rev = vec![b, x];
                let mut cur = x;
                while cur != a {
                    cur = parent[&cur];
                    rev.push(cur);
                }
                rev.reverse();
                rev
            }
        };

        // Split the face along the path.
        let walk = face_walks[face_idx].clone();
        let a = path[0];
        let b = path[path.len() - 1];
        let pa = walk.iter().position(|&x| x == a).unwrap();
        let pb = walk.iter().position(|&x| x == b).unwrap();
        let len = walk.len();
        let mut arc1 = Vec::new();
        let mut i = pa;
        loop {
            arc1.push(walk[i]);
            if i == pb {
                break;
            }
            i = (i + 1) % len;
        }
        let mut arc2 = Vec::new();
        let mut i = pb;
        loop {
            arc2.push(walk[i]);
            if i == pa {
                break;
            }
            i = (i + 1) % len;
        }
        let interior: Vec<usize> = path[1..path.len() - 1].to_vec();
        let mut f1 = arc1;
        f1.extend(interior.iter().rev());
        let mut f2 = arc2;
        f2.extend(interior.iter());
        face_walks[face_idx] = f1;
        face_walks.push(f2);

        for w in path.windows(2) {
            hadj[w[0]] |= 1 << w[1];
            hadj[w[1]] |= 1 << w[0];
        }
        hmask |= mask_of(&path);
    }

    // Read rotations back off the face walks: in a walk …u,v,w…, the dart
    // v→w succeeds v→u in the rotation at v.
    let mut succ: HashMap<(usize, usize), usize> = HashMap::new();
    for walk in &face_walks {
        let len = walk.len();
        for i in 0..len {
            let u = walk[i];
            let v = walk[(i + 1) % len];
            let w = walk[(i + 2) % len];
            succ.insert((v, u), w);
        }
    }
    let mut rotations = Vec::new();
    for v in bits(bmask) {
        let start = badj[v].trailing_zeros() as usize;
        let mut rot = vec![start];
        let mut cur = start;
        loop {
            cur = succ[&(v, cur)];
            if cur == start {
                break;
            }
            rot.push(cur);
        }
        debug_assert_eq!(rot.len(), badj[v].count_ones() as usize);
        rotations.push((v, rot));
    }
    Some(rotations)
}

/// Fast boolean planarity (no witness construction).
pub(crate) fn planar_bool(g: &Graph) -> bool {
    blocks(g)
        .iter()
        .all(|blk| blk.len() == 1 || embed_block(g.n(), blk).is_some())
}

/// Decide planarity: an embedding, or a Kuratowski subdivision witness.
pub fn planarity(g: &Graph) -> Planarity {
    let blks = blocks(g);
    let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for blk in &blks {
        if blk.len() == 1 {
            let (u, v) = blk[0];
            rotation[u].push(v);
            rotation[v].push(u);
            continue;
        }
        match embed_block(g.n(), blk) {
            Some(rots) => {
                for (v, cyc) in rots {
                    rotation[v].extend(cyc);
                }
            }
            None => return Planarity::Kuratowski(extract_kuratowski(g.n(), blk)),
        }
    }
    let emb = PlanarEmbedding {
        rotation,
        outer_face: 0,
    };
    debug_assert!(emb.verify(g));
    Planarity::Planar(emb)
}

fn planar_edges(n: usize, edges: &[(usize, usize)]) -> bool {
    planar_bool(&Graph::from_edges(n, edges).expect("edges within range"))
}

/// Delete edges while nonplanarity persists; the residue is an exact K5 or
/// K3,3 subdivision, classified by branch degrees.
fn extract_kuratowski(n: usize, block_edges: &[(usize, usize)]) -> KuratowskiWitness {
    let mut edges: Vec<(usize, usize)> = block_edges.to_vec();
    edges.sort_unstable();
    debug_assert!(!planar_edges(n, &edges));
    let mut i = 0;
    while i < edges.len() {
        let mut trial = edges.clone();
        trial.remove(i);
        if !planar_edges(n, &trial) {
            edges = trial;
        } else {
            i += 1;
        }
    }
    let w = Graph::from_edges(n, &edges).expect("witness edges within range");
    let branch: Vec<usize> = w.vertices().filter(|&v| w.degree(v) >= 3).collect();
    let kind = match branch.len() {
        5 => KuratowskiKind::TK5,
        6 => KuratowskiKind::TK33,
        _ => unreachable!("edge-minimal nonplanar graph must be a Kuratowski subdivision"),
    };
    let mut used: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    let mut paths = Vec::new();
    for &b in &branch {
        for nb in bits(w.neighbors(b)) {
            if used.contains(&(b, nb)) {
                continue;
            }
            let mut path = vec![b, nb];
            let (mut prev, mut cur) = (b, nb);
            while w.degree(cur) == 2 {
                let nxt = bits(w.neighbors(cur)).find(|&x| x != prev).unwrap();
                path.push(nxt);
                prev = cur;
                cur = nxt;
            }
            used.insert((b, nb));
            used.insert((cur, prev));
            paths.push(path);
        }
    }
    let witness = KuratowskiWitness {
        kind,
        branch_vertices: branch,
        paths,
    };
    debug_assert!(witness.verify(&w));
    witness
}

// ---------------------------------------------------------------------------
// Disc embeddings.
// ---------------------------------------------------------------------------

fn validate_boundary(g: &Graph, boundary: &[usize]) -> Result<()> {
    let mut seen = 0u64;
    for &b in boundary {
        if b >= g.n() {
            return Err(Error::BadParameters(format!("boundary vertex {b} out of range")));
        }
        if seen & (1 << b) != 0 {
            return Err(Error::BadParameters(format!("boundary vertex {b} repeated")));
        }
        seen |= 1 << b;
    }
    Ok(())
}

/// Boundary vertices that are isolated in `g` never appear on a face walk
/// but can be placed anywhere on the disc boundary, so the realizable part
/// of a boundary sequence is its positive-degree subsequence.
fn constrained_boundary(g: &Graph, boundary: &[usize]) -> Vec<usize> {
    boundary
        .iter()
        .copied()
        .filter(|&b| g.degree(b) > 0)
        .collect()
}

/// Group a (positive-degree) boundary sequence into circular arcs, one per
/// connected component of `g`. In a disc drawing, a connected subgraph
/// separates the disc, so each component's boundary vertices must occupy a
/// contiguous arc of the circle; None when some component's vertices are
/// interleaved with another's.
fn boundary_arcs(g: &Graph, sigma: &[usize]) -> Option<Vec<Vec<usize>>> {
    let comps = g.components();
    let labels: Vec<usize> = sigma
        .iter()
        .map(|&v| comps.iter().position(|&c| c & (1 << v) != 0).unwrap())
        .collect();
    let l = sigma.len();
    // Start at a circular run boundary so the wrap-around run stays whole.
    let start = (0..l)
        .find(|&i| labels[(i + l - 1) % l] != labels[i])
        .unwrap_or(0);
    let mut arcs: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in 0..l {
        let i = (start + k) % l;
        match arcs.last_mut() {
            Some((lab, arc)) if *lab == labels[i] => arc.push(sigma[i]),
            _ => arcs.push((labels[i], vec![sigma[i]])),
        }
    }
    let mut seen = 0u64;
    for &(lab, _) in &arcs {
        if seen & (1 << lab) != 0 {
            return None;
        }
        seen |= 1 << lab;
    }
    Some(arcs.into_iter().map(|(_, a)| a).collect())
}

/// Check the boundary order is realizable on the disc, after dropping
/// isolated boundary vertices (unconstrained): each component's vertices
/// form a contiguous arc, and some face of that component walks the arc
/// (components may be mirrored independently, so either direction counts).
/// Returns the index of the face carrying the first boundary vertex's arc,
/// the designated outer face; index 0 when nothing is constrained.
fn boundary_face(
    faces: &[Vec<(usize, usize)>],
    g: &Graph,
    boundary: &[usize],
) -> Option<usize> {
    let sigma = constrained_boundary(g, boundary);
    if sigma.is_empty() {
        return Some(0);
    }
    if faces.is_empty() {
        return None;
    }
    let arcs = boundary_arcs(g, &sigma)?;
    let mut designated = None;
    for arc in &arcs {
        let idx = faces
            .iter()
            .position(|f| face_realizes(&PlanarEmbedding::face_vertices(f), arc))?;
        if arc.contains(&sigma[0]) {
            designated = Some(idx);
        }
    }
    designated
}

/// Does `sigma` occur as a cyclic subsequence of the face walk's vertex
/// sequence, in either direction?
fn face_realizes(walk_vertices: &[usize], sigma: &[usize]) -> bool {
    if sigma.is_empty() {
        return true;
    }
    let l = walk_vertices.len();
    if l == 0 {
        return false;
    }
    let mut rev = sigma.to_vec();
    rev.reverse();
    for dir in [sigma, &rev[..]] {
        for start in 0..l {
            let mut i = 0;
            for step in 0..l {
                if walk_vertices[(start + step) % l] == dir[i] {
                    i += 1;
                    if i == dir.len() {
                        break;
                    }
                }
            }
            if i == dir.len() {
                return true;
            }
        }
    }
    false
}

/// Strip a set of helper vertices and edges out of an embedding's rotation
/// system (deleting edges of a plane graph keeps it plane).
fn strip_rotation(
    rotation: &mut Vec<Vec<usize>>,
    keep_n: usize,
    drop_edges: &[(usize, usize)],
) {
    for &(u, v) in drop_edges {
        if u < rotation.len() {
            rotation[u].retain(|&x| x != v);
        }
        if v < rotation.len() {
            rotation[v].retain(|&x| x != u);
        }
    }
    rotation.truncate(keep_n);
    for r in rotation.iter_mut() {
        r.retain(|&x| x < keep_n);
    }
}

/// Embed `g` in a disc with the boundary vertices on the outer face in the
/// given cyclic order (up to rotation and reflection), or None.
///
/// Implemented by planarity of `g` plus an apex joined to every boundary
/// vertex, with rim edges between consecutive boundary vertices enforcing
/// the order; the helpers are then removed and the boundary face located.
pub fn disc_planar(g: &Graph, boundary: &[usize]) -> Result<Option<PlanarEmbedding>> {
    validate_boundary(g, boundary)?;
    if boundary.is_empty() {
        return Ok(match planarity(g) {
            Planarity::Planar(e) => Some(e),
            Planarity::Kuratowski(_) => None,
        });
    }
    let mut aug = Graph::empty(g.n() + 1)?;
    for (u, v) in g.edges() {
        aug.add_edge(u, v)?;
    }
    let apex = g.n();
    let mut added: Vec<(usize, usize)> = Vec::new();
    for &b in boundary {
        aug.add_edge(apex, b)?;
        added.push((apex, b));
    }
    if boundary.len() >= 3 {
        for i in 0..boundary.len() {
            let (u, v) = (boundary[i], boundary[(i + 1) % boundary.len()]);
            if !aug.has_edge(u, v) {
                aug.add_edge(u, v)?;
                added.push((u, v));
            }
        }
    }
    let mut rotation = match planarity(&aug) {
        Planarity::Kuratowski(_) => return Ok(None),
        Planarity::Planar(e) => e.rotation,
    };
    strip_rotation(&mut rotation, g.n(), &added);
    let mut emb = PlanarEmbedding {
        rotation,
        outer_face: 0,
    };
    let faces = emb.faces();
    match boundary_face(&faces, g, boundary) {
        Some(idx) => {
            emb.outer_face = idx;
            debug_assert!(emb.verify(g));
            Ok(Some(emb))
        }
        None => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// 3-planar structures.
// ---------------------------------------------------------------------------

/// A witness that (G, 𝒜, b1…bn) is 3-planar: groups with ≤3-vertex
/// neighborhoods whose removal (plus completing each neighborhood) leaves a
/// graph embeddable in a disc with the boundary in order and every 3-vertex
/// group neighborhood on a triangular face.
///
/// The reduced graph keeps the original vertex indexing; grouped vertices
/// are simply isolated in it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreePlanarStructure {
    pub groups: Vec<Vec<usize>>,
    pub reduced: Graph,
    pub embedding: PlanarEmbedding,
    pub boundary: Vec<usize>,
}

/// The reduced graph: isolate every grouped vertex, then complete each
/// group's neighborhood into a clique.
fn reduce(g: &Graph, groups: &[u64]) -> Graph {
    let grouped: u64 = groups.iter().fold(0, |m, &a| m | a);
    let mut r = Graph::empty(g.n()).expect("same size as input");
    for (u, v) in g.edges() {
        if grouped & (1 << u) == 0 && grouped & (1 << v) == 0 {
            r.add_edge(u, v).unwrap();
        }
    }
    for &a in groups {
        let nb = sorted_vec(g.set_neighbors(a));
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if !r.has_edge(nb[i], nb[j]) {
                    r.add_edge(nb[i], nb[j]).unwrap();
                }
            }
        }
    }
    r
}

impl ThreePlanarStructure {
    /// Re-check every structural condition against the original graph.
    pub fn verify(&self, g: &Graph, boundary: &[usize]) -> bool {
        if self.boundary != boundary || validate_boundary(g, boundary).is_err() {
            return false;
        }
        let bmask = mask_of(boundary);
        let masks: Vec<u64> = self.groups.iter().map(|a| mask_of(a)).collect();
        let mut union = 0u64;
        for (i, &a) in masks.iter().enumerate() {
            if a == 0 || a & bmask != 0 || a & union != 0 || a & !g.full_mask() != 0 {
                return false;
            }
            let nb = g.set_neighbors(a);
            if nb.count_ones() > 3 {
                return false;
            }
            for (j, &b) in masks.iter().enumerate() {
                if i != j && nb & b != 0 {
                    return false;
                }
            }
            union |= a;
        }
        if self.reduced != reduce(g, &masks) {
            return false;
        }
        if !self.embedding.verify(&self.reduced) {
            return false;
        }
        let faces = self.embedding.faces();
        let sigma = constrained_boundary(&self.reduced, boundary);
        match boundary_face(&faces, &self.reduced, boundary) {
            None => return false,
            Some(_) if sigma.is_empty() => {}
            Some(_) => {
                let arcs = match boundary_arcs(&self.reduced, &sigma) {
                    Some(a) => a,
                    None => return false,
                };
                let first = arcs.iter().find(|a| a.contains(&sigma[0])).unwrap();
                let outer = &faces[self.embedding.outer_face];
                if !face_realizes(&PlanarEmbedding::face_vertices(outer), first) {
                    return false;
                }
            }
        }
        for &a in &masks {
            let nb = g.set_neighbors(a);
            if nb.count_ones() == 3 && !triangle_facial(&faces, nb) {
                return false;
            }
        }
        true
    }
}

fn triangle_facial(faces: &[Vec<(usize, usize)>], triangle: u64) -> bool {
    faces
        .iter()
        .any(|f| f.len() == 3 && mask_of(&PlanarEmbedding::face_vertices(f)) == triangle)
}

/// Exhaustive embedding search for small reduced graphs: enumerate rotation
/// systems, keep genus-0 ones, and return the first satisfying the boundary
/// and facial-triangle constraints. Complete but exponential; `cap` bounds
/// the number of rotation systems tried.
fn search_embeddings(
    r: &Graph,
    sigma: &[usize],
    triangles: &[u64],
    cap: u64,
) -> Option<PlanarEmbedding> {
    let mut space: u64 = 1;
    for v in r.vertices() {
        let d = r.degree(v) as u64;
        if d >= 3 {
            let mut f = 1u64;
            for k in 2..d {
                f = f.saturating_mul(k);
            }
            space = space.saturating_mul(f);
            if space > cap {
                return None;
            }
        }
    }
    let base: Vec<Vec<usize>> = r.vertices().map(|v| sorted_vec(r.neighbors(v))).collect();
    let mut rotation: Vec<Vec<usize>> = base.clone();
    fn permute(
        base: &[Vec<usize>],
        rotation: &mut Vec<Vec<usize>>,
        v: usize,
        r: &Graph,
        sigma: &[usize],
        triangles: &[u64],
    ) -> Option<PlanarEmbedding> {
        if v == base.len() {
            let mut emb = PlanarEmbedding {
                rotation: rotation.clone(),
                outer_face: 0,
            };
            if !emb.verify(r) {
                return None;
            }
            let faces = emb.faces();
            if triangles.iter().any(|&t| !triangle_facial(&faces, t)) {
                return None;
            }
            emb.outer_face = boundary_face(&faces, r, sigma)?;
            return Some(emb);
        }
        if base[v].len() < 3 {
            return permute(base, rotation, v + 1, r, sigma, triangles);
        }
        // Fix the first neighbor; permute the rest (cyclic orders).
        let rest: Vec<usize> = base[v][1..].to_vec();
        #[allow(clippy::too_many_arguments)]
        fn perms(
            rest: &[usize],
            cur: &mut Vec<usize>,
            used: &mut Vec<bool>,
            base: &[Vec<usize>],
            rotation: &mut Vec<Vec<usize>>,
            v: usize,
            r: &Graph,
            sigma: &[usize],
            triangles: &[u64],
        ) -> Option<PlanarEmbedding> {
            if cur.len() == rest.len() {
                rotation[v] = std::iter::once(base[v][0]).chain(cur.iter().copied()).collect();
                return permute(base, rotation, v + 1, r, sigma, triangles);
            }
            for i in 0..rest.len() {
                if !used[i] {
                    used[i] = true;
                    cur.push(rest[i]);
                    if let Some(e) = perms(rest, cur, used, base, rotation, v, r, sigma, triangles)
                    {
                        return Some(e);
                    }
                    cur.pop();
                    used[i] = false;
                }
            }
            None
        }
        let mut cur = Vec::new();
        let mut used = vec![false; rest.len()];
        perms(&rest, &mut cur, &mut used, base, rotation, v, r, sigma, triangles)
    }
    permute(&base, &mut rotation, 0, r, sigma, triangles)
}

/// Attempt to realize the boundary and facial-triangle constraints for one
/// group family; None when this family does not work.
fn realize_family(
    g: &Graph,
    boundary: &[usize],
    family: &[u64],
) -> Result<Option<ThreePlanarStructure>> {
    let reduced = reduce(g, family);
    let mut triangles: Vec<u64> = family
        .iter()
        .map(|&a| g.set_neighbors(a))
        .filter(|nb| nb.count_ones() == 3)
        .collect();
    triangles.sort_unstable();
    triangles.dedup();

    // Exact feasibility test: reduced + one pyramid per distinct triangle
    // + boundary wheel must be planar.
    let extra = triangles.len() + 1;
    if g.n() + extra > crate::graph::MAX_VERTICES {
        return Err(Error::TooLarge {
            n: g.n() + extra,
            max: crate::graph::MAX_VERTICES,
        });
    }
    let mut aug = Graph::empty(g.n() + extra)?;
    for (u, v) in reduced.edges() {
        aug.add_edge(u, v)?;
    }
    let mut added: Vec<(usize, usize)> = Vec::new();
    for (t, &tri) in triangles.iter().enumerate() {
        let pyramid = g.n() + t;
        for x in bits(tri) {
            aug.add_edge(pyramid, x)?;
            added.push((pyramid, x));
        }
    }
    let apex = g.n() + triangles.len();
    for &b in boundary {
        aug.add_edge(apex, b)?;
        added.push((apex, b));
    }
    if boundary.len() >= 3 {
        for i in 0..boundary.len() {
            let (u, v) = (boundary[i], boundary[(i + 1) % boundary.len()]);
            if !aug.has_edge(u, v) {
                aug.add_edge(u, v)?;
                added.push((u, v));
            }
        }
    }
    let rotation = match planarity(&aug) {
        Planarity::Kuratowski(_) => return Ok(None),
        Planarity::Planar(e) => e.rotation,
    };

    let finish = |emb: PlanarEmbedding| -> Option<ThreePlanarStructure> {
        let s = ThreePlanarStructure {
            groups: family.iter().map(|&a| sorted_vec(a)).collect(),
            reduced: reduced.clone(),
            embedding: emb,
            boundary: boundary.to_vec(),
        };
        s.verify(g, boundary).then_some(s)
    };

    // Fast path: strip the helpers from the found embedding and hope the
    // constraints survive the face merges.
    let mut rot = rotation;
    strip_rotation(&mut rot, g.n(), &added);
    let mut emb = PlanarEmbedding {
        rotation: rot,
        outer_face: 0,
    };
    let faces = emb.faces();
    if let Some(idx) = boundary_face(&faces, &reduced, boundary) {
        emb.outer_face = idx;
        if triangles.iter().all(|&t| triangle_facial(&faces, t)) {
            if let Some(s) = finish(emb) {
                return Ok(Some(s));
            }
        }
    }

    // Complete fallback for small reduced graphs: exhaust rotation systems.
    if let Some(emb) = search_embeddings(&reduced, boundary, &triangles, 2_000_000) {
        if let Some(s) = finish(emb) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Search for a 3-planar structure over (g, boundary): a family of groups
/// (possibly empty) whose reduction disc-embeds with the boundary in order
/// and every 3-vertex neighborhood facial.
///
/// Families are built from components of G − S over all separators |S| ≤ 3
/// (unions of same-separator components included) and tried smallest-first,
/// so a plain disc embedding is found as the empty family.
pub fn three_planar(
    g: &Graph,
    boundary: &[usize],
    budget: Budget,
) -> Result<Option<ThreePlanarStructure>> {
    validate_boundary(g, boundary)?;
    let bmask = mask_of(boundary);
    let mut stepper = Stepper::new(budget);

    // Candidate groups.
    let mut cands: Vec<u64> = Vec::new();
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();
    let verts: Vec<usize> = g.vertices().collect();
    let mut seps: Vec<u64> = vec![0];
    for i in 0..verts.len() {
        seps.push(1 << verts[i]);
        for j in i + 1..verts.len() {
            seps.push((1 << verts[i]) | (1 << verts[j]));
            for k in j + 1..verts.len() {
                seps.push((1 << verts[i]) | (1 << verts[j]) | (1 << verts[k]));
            }
        }
    }
    for s in seps {
        stepper.tick()?;
        let comps: Vec<u64> = g
            .components_avoiding(s)
            .into_iter()
            .filter(|&c| c & bmask == 0)
            .collect();
        if comps.is_empty() {
            continue;
        }
        // All nonempty unions of these components share the separator, so
        // their neighborhoods stay within S.
        let subsets = 1u64 << comps.len();
        if subsets > 4096 {
            // Degenerate separator with very many components: singletons and
            // the full union only.
            for &c in &comps {
                if seen.insert(c) {
                    cands.push(c);
                }
            }
            let full: u64 = comps.iter().fold(0, |m, &c| m | c);
            if seen.insert(full) {
                cands.push(full);
            }
            continue;
        }
        for pick in 1..subsets {
            stepper.tick()?;
            let mask: u64 = comps
                .iter()
                .enumerate()
                .filter(|&(i, _)| pick & (1 << i) != 0)
                .fold(0, |m, (_, &c)| m | c);
            if seen.insert(mask) {
                cands.push(mask);
            }
        }
    }
    cands.sort_by_key(|&m| (m.count_ones(), m));

    // Families are built depth-first over the candidate list; members must
    // be pairwise disjoint and mutually nonadjacent.
    fn dfs(
        g: &Graph,
        boundary: &[usize],
        cands: &[u64],
        start: usize,
        family: &mut Vec<u64>,
        stepper: &mut Stepper,
    ) -> Result<Option<ThreePlanarStructure>> {
        stepper.tick()?;
        match realize_family(g, boundary, family) {
            Ok(Some(s)) => return Ok(Some(s)),
            Ok(None) => {}
            Err(Error::TooLarge { .. }) => {}
            Err(e) => return Err(e),
        }
        for i in start..cands.len() {
            if family
                .iter()
                .all(|&a| a & cands[i] == 0 && g.set_neighbors(a) & cands[i] == 0)
            {
                family.push(cands[i]);
                if let Some(s) = dfs(g, boundary, cands, i + 1, family, stepper)? {
                    return Ok(Some(s));
                }
                family.pop();
            }
        }
        Ok(None)
    }
    let mut family = Vec::new();
    dfs(g, boundary, &cands, 0, &mut family, &mut stepper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Budget;

    fn embed(g: &Graph) -> PlanarEmbedding {
        match planarity(g) {
            Planarity::Planar(e) => e,
            Planarity::Kuratowski(w) => panic!("unexpected witness {w:?}"),
        }
    }

    fn witness(g: &Graph) -> KuratowskiWitness {
        match planarity(g) {
            Planarity::Planar(_) => panic!("unexpectedly planar"),
            Planarity::Kuratowski(w) => w,
        }
    }

    #[test]
    fn k4_embeds_with_four_faces() {
        let g = Graph::complete(4);
        let e = embed(&g);
        assert!(e.verify(&g));
        assert_eq!(e.faces().len(), 4);
        assert_eq!(euler_charge_sum(&g, &e), -8);
    }

    #[test]
    fn k5_yields_tk5_of_single_edges() {
        let g = Graph::complete(5);
        let w = witness(&g);
        assert_eq!(w.kind, KuratowskiKind::TK5);
        assert!(w.paths.iter().all(|p| p.len() == 2));
        assert!(w.verify(&g));
    }

    #[test]
    fn k33_yields_tk33() {
        let g = Graph::complete_bipartite(3, 3);
        let w = witness(&g);
        assert_eq!(w.kind, KuratowskiKind::TK33);
        assert!(w.paths.iter().all(|p| p.len() == 2));
        assert!(w.verify(&g));
    }

    #[test]
    fn petersen_yields_tk33() {
        let g = Graph::petersen();
        let w = witness(&g);
        assert_eq!(w.kind, KuratowskiKind::TK33);
        assert!(w.verify(&g));
    }

    #[test]
    fn witness_fails_on_mutilated_graph() {
        let g = Graph::complete(5);
        let w = witness(&g);
        let mut h = g.clone();
        let p = &w.paths[0];
        h.remove_edge(p[0], p[1]);
        assert!(!w.verify(&h));
    }

    #[test]
    fn platonic_charges_are_minus_eight() {
        for g in [
            Graph::cube(),
            Graph::dodecahedron(),
            Graph::icosahedron(),
            Graph::octahedron(),
            Graph::complete(4),
            Graph::cycle(3),
        ] {
            let e = embed(&g);
            assert!(e.verify(&g));
            assert_eq!(euler_charge_sum(&g, &e), -8);
        }
    }

    #[test]
    fn charge_handles_bridges_and_cut_vertices() {
        // Two triangles sharing a vertex, plus a pendant edge.
        let g = Graph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 5)],
        )
        .unwrap();
        let e = embed(&g);
        assert!(e.verify(&g));
        assert_eq!(euler_charge_sum(&g, &e), -8);
    }

    #[test]
    fn disconnected_graphs_embed() {
        let mut g = Graph::empty(9).unwrap();
        for (u, v) in Graph::complete(4).edges() {
            g.add_edge(u, v).unwrap();
        }
        for (u, v) in Graph::cycle(4).edges() {
            g.add_edge(u + 4, v + 4).unwrap();
        }
        // vertex 8 isolated
        let e = embed(&g);
        assert!(e.verify(&g));
    }

    #[test]
    fn disc_c5_natural_order() {
        let g = Graph::cycle(5);
        let e = disc_planar(&g, &[0, 1, 2, 3, 4]).unwrap().unwrap();
        assert!(e.verify(&g));
        let f = &e.faces()[e.outer_face];
        assert!(face_realizes(
            &PlanarEmbedding::face_vertices(f),
            &[0, 1, 2, 3, 4]
        ));
    }

    #[test]
    fn disc_rejects_k4_outerplanar() {
        let g = Graph::complete(4);
        assert!(disc_planar(&g, &[0, 1, 2, 3]).unwrap().is_none());
    }

    #[test]
    fn disc_accepts_k4_on_a_triangle() {
        let g = Graph::complete(4);
        assert!(disc_planar(&g, &[0, 1, 2]).unwrap().is_some());
    }

    #[test]
    fn disc_grid_border() {
        let g = Graph::grid(3, 3);
        let border = [0, 1, 2, 5, 8, 7, 6, 3];
        let e = disc_planar(&g, &border).unwrap().unwrap();
        assert!(e.verify(&g));
    }

    #[test]
    fn disc_invariant_under_rotation_and_reflection() {
        let g = Graph::grid(3, 3);
        let base = [0, 1, 2, 5, 8, 7, 6, 3];
        for shift in 0..base.len() {
            let mut rotated: Vec<usize> = base[shift..].to_vec();
            rotated.extend_from_slice(&base[..shift]);
            assert!(disc_planar(&g, &rotated).unwrap().is_some(), "shift {shift}");
            rotated.reverse();
            assert!(
                disc_planar(&g, &rotated).unwrap().is_some(),
                "reflected shift {shift}"
            );
        }
    }

    #[test]
    fn disc_rejects_scrambled_order() {
        // C5 in a non-cyclic order cannot lie on a common face that way.
        let g = Graph::cycle(5);
        assert!(disc_planar(&g, &[0, 2, 1, 3, 4]).unwrap().is_none());
    }

    #[test]
    fn disc_rejects_bad_boundary() {
        let g = Graph::cycle(4);
        assert!(disc_planar(&g, &[0, 0]).is_err());
        assert!(disc_planar(&g, &[9]).is_err());
    }

    #[test]
    fn three_planar_trivial_family() {
        let g = Graph::cycle(5);
        let s = three_planar(&g, &[0, 1, 2, 3, 4], Budget::default())
            .unwrap()
            .unwrap();
        assert!(s.groups.is_empty());
        assert!(s.verify(&g, &[0, 1, 2, 3, 4]));
    }

    #[test]
    fn three_planar_groups_a_blocking_pair() {
        // C4 rim a,b,c,d (= 0,1,2,3) plus an adjacent pair {4,5} joined to
        // a, b, c: nonplanar as a whole, but grouping {4,5} leaves the rim
        // plus the completed triangle abc, embeddable with abc facial.
        let mut g = Graph::empty(6).unwrap();
        for (u, v) in Graph::cycle(4).edges() {
            g.add_edge(u, v).unwrap();
        }
        g.add_edge(4, 5).unwrap();
        for t in [0, 1, 2] {
            g.add_edge(4, t).unwrap();
            g.add_edge(5, t).unwrap();
        }
        assert!(!planar_bool(&g));
        let s = three_planar(&g, &[0, 1, 2, 3], Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(s.groups, vec![vec![4, 5]]);
        assert!(s.verify(&g, &[0, 1, 2, 3]));
        // The completed triangle 0,1,2 must be a face of the embedding.
        assert!(s.reduced.has_edge(0, 2));
    }

    #[test]
    fn three_planar_rejects_k5_boundaries() {
        let g = Graph::complete(5);
        assert!(three_planar(&g, &[0, 1, 2, 3], Budget::default())
            .unwrap()
            .is_none());
    }

    #[test]
    fn three_planar_keeps_floating_planar_components_ungrouped() {
        // A disjoint triangle floats inside the disc; no grouping needed.
        let mut g = Graph::empty(7).unwrap();
        for i in 0..4 {
            g.add_edge(i, (i + 1) % 4).unwrap();
        }
        g.add_edge(4, 5).unwrap();
        g.add_edge(5, 6).unwrap();
        g.add_edge(6, 4).unwrap();
        let s = three_planar(&g, &[0, 1, 2, 3], Budget::default())
            .unwrap()
            .unwrap();
        assert!(s.groups.is_empty());
        assert!(s.verify(&g, &[0, 1, 2, 3]));
    }

    #[test]
    fn three_planar_swallows_a_nonplanar_component() {
        // A disjoint K5 cannot float in the disc; some of it must be
        // grouped away. The smallest fix is a pair (K5 minus two vertices
        // is a triangle, which doubles as the facial neighborhood).
        let mut g = Graph::empty(9).unwrap();
        for i in 0..4 {
            g.add_edge(i, (i + 1) % 4).unwrap();
        }
        for u in 4..9 {
            for v in u + 1..9 {
                g.add_edge(u, v).unwrap();
            }
        }
        let s = three_planar(&g, &[0, 1, 2, 3], Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(s.groups, vec![vec![4, 5]]);
        assert!(s.verify(&g, &[0, 1, 2, 3]));
    }

    #[test]
    fn three_planar_respects_budget() {
        let g = Graph::grid(3, 3);
        assert_eq!(
            three_planar(&g, &[0, 2], Budget::with_steps(3)).unwrap_err(),
            Error::BudgetExceeded
        );
    }

    #[test]
    fn face_realization_checks() {
        assert!(face_realizes(&[0, 1, 2, 3], &[2, 3, 0]));
        assert!(face_realizes(&[0, 1, 2, 3], &[2, 1, 0, 3]));
        assert!(!face_realizes(&[0, 1, 2, 3], &[0, 2, 1, 3]));
        assert!(face_realizes(&[5, 9, 5, 2], &[9, 2]));
        assert!(face_realizes(&[], &[]));
        assert!(!face_realizes(&[], &[1]));
    }

    #[test]
    fn embedding_serializes() {
        let g = Graph::complete(4);
        let e = embed(&g);
        let json = serde_json::to_string(&e).unwrap();
        let back: PlanarEmbedding = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
