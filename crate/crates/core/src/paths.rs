//! Path systems: disjoint linkages, independent fans with anchored
//! rerouting, cycles through three prescribed vertices, and the forced
//! middle-path test for vertex triples.
//!
//! Searches are exhaustive (lexicographic, budgeted) or flow-based, so every
//! witness is reproducible run to run.

use serde::{Deserialize, Serialize};

use crate::flow::{node_out, FlowNet, UNBOUNDED};
use crate::graph::{bits, mask_of, sorted_vec, Graph};
use crate::planarity::{self, ThreePlanarStructure};
use crate::{Budget, Error, Result, Stepper};

/// How strictly the paths of a [`PathSystem`] must avoid each other.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Disjointness {
    /// No two paths share any vertex.
    FullyDisjoint,
    /// Paths may share endpoints, but no vertex of one path may be an
    /// internal vertex of another.
    Independent,
}

/// A collection of simple paths with a declared disjointness mode.
///
/// A path is a vertex sequence; a single vertex is a legal (trivial) path.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PathSystem {
    pub paths: Vec<Vec<usize>>,
    pub disjointness: Disjointness,
}

impl PathSystem {
    /// Check that every entry is a simple path of `g` and that the declared
    /// disjointness mode holds between all pairs of paths.
    pub fn verify(&self, g: &Graph) -> bool {
        for p in &self.paths {
            if p.is_empty() || p.iter().any(|&v| v >= g.n()) {
                return false;
            }
            if mask_of(p).count_ones() as usize != p.len() {
                return false;
            }
            if p.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return false;
            }
        }
        for i in 0..self.paths.len() {
            for j in 0..self.paths.len() {
                if i == j {
                    continue;
                }
                let pi = &self.paths[i];
                let pj = &self.paths[j];
                let clash = match self.disjointness {
                    Disjointness::FullyDisjoint => mask_of(pi) & mask_of(pj),
                    Disjointness::Independent => {
                        let internal = if pi.len() > 2 {
                            mask_of(&pi[1..pi.len() - 1])
                        } else {
                            0
                        };
                        internal & mask_of(pj)
                    }
                };
                if clash != 0 {
                    return false;
                }
            }
        }
        true
    }
}

/// Exhaustive lexicographic linkage search: one path per terminal pair.
///
/// All terminals are reserved up front, internal vertices must be fresh, and
/// a path may only stop at its own target. With pairwise-distinct terminals
/// this yields fully disjoint paths; with shared terminals it yields
/// independent ones. A pair with equal endpoints gets the trivial path.
struct LinkageSearch<'a> {
    g: &'a Graph,
    pairs: &'a [(usize, usize)],
    used: u64,
    paths: Vec<Vec<usize>>,
}

impl LinkageSearch<'_> {
    fn run(
        g: &Graph,
        pairs: &[(usize, usize)],
        st: &mut Stepper,
    ) -> Result<Option<Vec<Vec<usize>>>> {
        let mut used = 0u64;
        for &(s, t) in pairs {
            used |= (1 << s) | (1 << t);
        }
        let mut search = LinkageSearch {
            g,
            pairs,
            used,
            paths: Vec::new(),
        };
        Ok(if search.link(0, st)? {
            Some(search.paths)
        } else {
            None
        })
    }

    fn link(&mut self, i: usize, st: &mut Stepper) -> Result<bool> {
        if i == self.pairs.len() {
            return Ok(true);
        }
        let (s, t) = self.pairs[i];
        let allowed = (!self.used & self.g.full_mask()) | (1 << s) | (1 << t);
        if self.g.reach(s, allowed) & (1 << t) == 0 {
            return Ok(false);
        }
        self.paths.push(vec![s]);
        let found = self.extend(i, s, t, st)?;
        if !found {
            self.paths.pop();
        }
        Ok(found)
    }

    fn extend(&mut self, i: usize, cur: usize, t: usize, st: &mut Stepper) -> Result<bool> {
        st.tick()?;
        if cur == t {
            return self.link(i + 1, st);
        }
        for w in bits(self.g.neighbors(cur)) {
            if w == t {
                self.paths[i].push(w);
                if self.extend(i, w, t, st)? {
                    return Ok(true);
                }
                self.paths[i].pop();
            } else if self.used & (1 << w) == 0 {
                self.used |= 1 << w;
                self.paths[i].push(w);
                if self.extend(i, w, t, st)? {
                    return Ok(true);
                }
                self.paths[i].pop();
                self.used &= !(1 << w);
            }
        }
        Ok(false)
    }
}

/// Link each terminal pair by a simple path under the given disjointness
/// mode, or report that no such system exists.
///
/// At most five pairs are supported. In [`Disjointness::FullyDisjoint`] mode
/// all terminals must be pairwise distinct; in [`Disjointness::Independent`]
/// mode terminals may be shared and a pair with equal endpoints receives a
/// trivial one-vertex path. The search is exhaustive with a reachability
/// prune; when every pair has the same source and the targets are distinct,
/// a unit-capacity flow answers directly.
pub fn disjoint_paths(
    g: &Graph,
    pairs: &[(usize, usize)],
    mode: Disjointness,
    budget: Budget,
) -> Result<Option<PathSystem>> {
    if pairs.len() > 5 {
        return Err(Error::BadParameters(format!(
            "at most 5 terminal pairs are supported, got {}",
            pairs.len()
        )));
    }
    for &(s, t) in pairs {
        if s >= g.n() || t >= g.n() {
            return Err(Error::BadParameters(format!(
                "terminal pair ({s}, {t}) is out of range for {} vertices",
                g.n()
            )));
        }
    }
    if mode == Disjointness::FullyDisjoint {
        let mut seen = 0u64;
        for &(s, t) in pairs {
            for v in [s, t] {
                if seen & (1 << v) != 0 {
                    return Err(Error::BadParameters(format!(
                        "fully disjoint pairs need distinct terminals, vertex {v} repeats"
                    )));
                }
                seen |= 1 << v;
            }
        }
    }
    if mode == Disjointness::Independent && pairs.len() >= 2 {
        let u = pairs[0].0;
        let targets: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        let tmask = mask_of(&targets);
        if pairs.iter().all(|p| p.0 == u)
            && tmask.count_ones() as usize == targets.len()
            && tmask & (1 << u) == 0
        {
            // A common-source system forces internal vertices away from all
            // targets, so the independent linkage is exactly a fan.
            return Ok(fan_paths(g, u, &targets, targets.len()).map(|raw| {
                let paths = order_by_endpoint(raw, &targets);
                let ps = PathSystem {
                    paths,
                    disjointness: mode,
                };
                debug_assert!(ps.verify(g));
                ps
            }));
        }
    }
    let mut st = Stepper::new(budget);
    Ok(LinkageSearch::run(g, pairs, &mut st)?.map(|paths| {
        let ps = PathSystem {
            paths,
            disjointness: mode,
        };
        debug_assert!(ps.verify(g));
        ps
    }))
}

/// Either two fully disjoint linking paths or a disc witness that the four
/// terminals cross.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum TwoDPOutcome {
    Paths(PathSystem),
    Obstruction(ThreePlanarStructure),
}

/// Decide whether `g` links s1–t1 and s2–t2 by disjoint paths; if not,
/// produce a verified structure drawing the graph in a disc with the
/// terminals on the boundary in the crossing order s1, s2, t1, t2.
pub fn two_dp_or_three_planar(
    g: &Graph,
    s1: usize,
    s2: usize,
    t1: usize,
    t2: usize,
    budget: Budget,
) -> Result<TwoDPOutcome> {
    let terms = [s1, s2, t1, t2];
    if terms.iter().any(|&v| v >= g.n()) || mask_of(&terms).count_ones() != 4 {
        return Err(Error::BadParameters(
            "need four distinct terminal vertices".into(),
        ));
    }
    if let Some(ps) = disjoint_paths(g, &[(s1, t1), (s2, t2)], Disjointness::FullyDisjoint, budget)?
    {
        return Ok(TwoDPOutcome::Paths(ps));
    }
    match planarity::three_planar(g, &terms, budget)? {
        Some(structure) => Ok(TwoDPOutcome::Obstruction(structure)),
        None => Err(Error::TheoremViolation(
            "no two disjoint linking paths and no disc witness either".into(),
        )),
    }
}

/// Build the vertex-split fan network: `u` is the source, targets have no
/// through-capacity and drain into a super-sink via the `sinks` list.
fn fan_network(g: &Graph, u: usize, targets: &[usize], sinks: &[usize]) -> FlowNet {
    let sink = 2 * g.n();
    let mut net = FlowNet::new(2 * g.n() + 1);
    let tmask = mask_of(targets);
    for v in g.vertices() {
        if v != u && tmask & (1 << v) == 0 {
            net.add_arc(2 * v, 2 * v + 1, 1);
        }
    }
    for (a, b) in g.edges() {
        net.add_arc(2 * a + 1, 2 * b, UNBOUNDED);
        net.add_arc(2 * b + 1, 2 * a, UNBOUNDED);
    }
    for &t in sinks {
        net.add_arc(2 * t, sink, 1);
    }
    net
}

/// Translate unit-flow node paths (in/out pairs, then the super-sink) back
/// to vertex paths.
fn vertex_paths(node_paths: Vec<Vec<usize>>, sink: usize) -> Vec<Vec<usize>> {
    node_paths
        .into_iter()
        .map(|nodes| {
            let mut path = Vec::new();
            for nd in nodes {
                if nd == sink {
                    break;
                }
                let v = nd / 2;
                if path.last() != Some(&v) {
                    path.push(v);
                }
            }
            path
        })
        .collect()
}

/// Reorder `paths` so that the i-th one ends at `ends[i]`.
fn order_by_endpoint(mut paths: Vec<Vec<usize>>, ends: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(paths.len());
    for &e in ends {
        let pos = paths
            .iter()
            .position(|p| p.last() == Some(&e))
            .expect("every requested endpoint carries one unit of flow");
        out.push(paths.remove(pos));
    }
    out.extend(paths);
    out
}

fn fan_paths(g: &Graph, u: usize, targets: &[usize], n: usize) -> Option<Vec<Vec<usize>>> {
    if n == 0 {
        return Some(Vec::new());
    }
    let mut sinks = targets.to_vec();
    sinks.sort_unstable();
    let mut net = fan_network(g, u, targets, &sinks);
    let sink = 2 * g.n();
    if net.max_flow(node_out(u), sink, n as u32) < n as u32 {
        return None;
    }
    Some(vertex_paths(net.decompose(node_out(u), sink), sink))
}

/// `n` independent paths from `u` to `n` distinct targets, internally
/// disjoint from the whole target set, found by unit-capacity flow.
///
/// Returns `None` when the flow value falls short of `n` or when the inputs
/// violate the contract (`u` among the targets, repeated targets, `n` larger
/// than the target set).
pub fn fan(g: &Graph, u: usize, targets: &[usize], n: usize) -> Option<PathSystem> {
    let tmask = mask_of(targets);
    if u >= g.n()
        || targets.iter().any(|&t| t >= g.n())
        || tmask & (1 << u) != 0
        || tmask.count_ones() as usize != targets.len()
        || n > targets.len()
    {
        return None;
    }
    fan_paths(g, u, targets, n).map(|paths| {
        let ps = PathSystem {
            paths,
            disjointness: Disjointness::Independent,
        };
        debug_assert!(ps.verify(g));
        ps
    })
}

/// An `n`-fan from `u` into `targets` in which path `i` ends at `anchors[i]`
/// for each of the `k` anchors.
///
/// Both hypotheses are checked explicitly: first that a `k`-fan onto exactly
/// the anchors exists (avoiding all other targets internally), then that an
/// `n`-fan into the targets exists at all. The anchored fan seeds the flow
/// network and augmentation extends it, so anchor endpoints are never lost.
pub fn perfect_reroute(
    g: &Graph,
    u: usize,
    targets: &[usize],
    anchors: &[usize],
    n: usize,
) -> Result<PathSystem> {
    let tmask = mask_of(targets);
    let amask = mask_of(anchors);
    if u >= g.n() || targets.iter().any(|&t| t >= g.n()) {
        return Err(Error::BadParameters("vertex out of range".into()));
    }
    if tmask & (1 << u) != 0 {
        return Err(Error::BadParameters(
            "the fan centre may not be one of the targets".into(),
        ));
    }
    if tmask.count_ones() as usize != targets.len()
        || amask.count_ones() as usize != anchors.len()
    {
        return Err(Error::BadParameters(
            "targets and anchors must be sets without repeats".into(),
        ));
    }
    if amask & !tmask != 0 {
        return Err(Error::BadParameters(
            "anchors must be chosen among the targets".into(),
        ));
    }
    let k = anchors.len();
    if n < k || n > targets.len() {
        return Err(Error::BadParameters(format!(
            "need k ≤ n ≤ |targets|, got k = {k}, n = {n}, |targets| = {}",
            targets.len()
        )));
    }
    let sink = 2 * g.n();
    let mut seed_net = fan_network(g, u, targets, anchors);
    if seed_net.max_flow(node_out(u), sink, k as u32) < k as u32 {
        return Err(Error::HypothesisFailed(
            "no independent fan from the centre onto the anchors".into(),
        ));
    }
    let seed = seed_net.decompose(node_out(u), sink);

    let mut order = anchors.to_vec();
    let mut rest: Vec<usize> = targets
        .iter()
        .copied()
        .filter(|&t| amask & (1 << t) == 0)
        .collect();
    rest.sort_unstable();
    order.extend(rest);
    let mut net = fan_network(g, u, targets, &order);
    for node_path in &seed {
        net.seed_path(node_path);
    }
    if k as u32 + net.max_flow(node_out(u), sink, (n - k) as u32) < n as u32 {
        return Err(Error::HypothesisFailed(format!(
            "no {n} independent paths from the centre into the targets"
        )));
    }
    let raw = vertex_paths(net.decompose(node_out(u), sink), sink);
    let mut ends: Vec<usize> = anchors.to_vec();
    for p in &raw {
        let e = *p.last().expect("flow paths are nonempty");
        if amask & (1 << e) == 0 {
            ends.push(e);
        }
    }
    let ps = PathSystem {
        paths: order_by_endpoint(raw, &ends),
        disjointness: Disjointness::Independent,
    };
    debug_assert!(ps.verify(g));
    Ok(ps)
}

/// Which of the three structural reasons rules out a cycle through the
/// prescribed triple.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ObstructionKind {
    I,
    II,
    III,
}

/// A structural witness that no cycle passes through all three chosen
/// vertices of a 2-connected graph.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CycleObstruction {
    pub kind: ObstructionKind,
    /// The 2-cuts involved: one for kind I, three (one per chosen vertex)
    /// for kinds II and III.
    pub cuts: Vec<Vec<usize>>,
    /// Pairwise disjoint component unions, the i-th containing the i-th
    /// chosen vertex.
    pub pieces: Vec<Vec<usize>>,
    /// The vertex shared by all three cuts (kind II only).
    pub hub: Option<usize>,
    /// The two components linking the cuts once the pieces are removed
    /// (kind III only).
    pub bridges: Vec<Vec<usize>>,
}

/// Is `mask` a nonempty union of components of `g − cut`, with the cut
/// actually separating the graph?
fn union_of_components(g: &Graph, cut: &[usize], mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let cm = mask_of(cut);
    if cm.count_ones() as usize != cut.len() || cm & mask != 0 {
        return false;
    }
    let comps = g.components_avoiding(cm);
    if comps.len() < 2 {
        return false;
    }
    let covered = comps
        .iter()
        .filter(|&&c| c & mask == c)
        .fold(0u64, |acc, &c| acc | c);
    covered == mask && comps.iter().all(|&c| c & mask == 0 || c & mask == c)
}

impl CycleObstruction {
    /// Re-check the structural conditions of the declared kind against `g`
    /// and the vertex triple they were produced for.
    pub fn verify(&self, g: &Graph, ys: [usize; 3]) -> bool {
        if ys.iter().any(|&y| y >= g.n()) || mask_of(&ys).count_ones() != 3 {
            return false;
        }
        if self.pieces.len() != 3 {
            return false;
        }
        let pm: Vec<u64> = self.pieces.iter().map(|p| mask_of(p)).collect();
        for i in 0..3 {
            if pm[i] & (1 << ys[i]) == 0 {
                return false;
            }
            for j in i + 1..3 {
                if pm[i] & pm[j] != 0 {
                    return false;
                }
            }
        }
        match self.kind {
            ObstructionKind::I => {
                self.cuts.len() == 1
                    && self.cuts[0].len() == 2
                    && self.hub.is_none()
                    && self.bridges.is_empty()
                    && (0..3).all(|i| union_of_components(g, &self.cuts[0], pm[i]))
            }
            ObstructionKind::II => {
                let Some(z) = self.hub else {
                    return false;
                };
                if self.cuts.len() != 3 || !self.bridges.is_empty() {
                    return false;
                }
                let mut offs = Vec::new();
                for (i, cut) in self.cuts.iter().enumerate() {
                    if cut.len() != 2 || !cut.contains(&z) {
                        return false;
                    }
                    let other = if cut[0] == z { cut[1] } else { cut[0] };
                    if other == z || offs.contains(&other) {
                        return false;
                    }
                    offs.push(other);
                    if !union_of_components(g, cut, pm[i]) {
                        return false;
                    }
                }
                true
            }
            ObstructionKind::III => {
                if self.cuts.len() != 3 || self.hub.is_some() || self.bridges.len() != 2 {
                    return false;
                }
                let cms: Vec<u64> = self.cuts.iter().map(|c| mask_of(c)).collect();
                for i in 0..3 {
                    if self.cuts[i].len() != 2 || !union_of_components(g, &self.cuts[i], pm[i]) {
                        return false;
                    }
                    for j in i + 1..3 {
                        if cms[i] & cms[j] != 0 {
                            return false;
                        }
                    }
                }
                let removed = pm[0] | pm[1] | pm[2];
                let comps = g.components_avoiding(removed);
                if comps.len() != 2 {
                    return false;
                }
                let bm: Vec<u64> = self.bridges.iter().map(|b| mask_of(b)).collect();
                if bm[0] != comps[0] || bm[1] != comps[1] {
                    return false;
                }
                comps
                    .iter()
                    .all(|&c| cms.iter().all(|&cm| (c & cm).count_ones() == 1))
            }
        }
    }
}

/// Either a cycle through the three requested vertices (listed in cyclic
/// order) or a verified structural obstruction.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum CycleOutcome {
    Cycle(Vec<usize>),
    Obstruction(CycleObstruction),
}

fn obstruction_search(
    g: &Graph,
    ys: [usize; 3],
    st: &mut Stepper,
) -> Result<Option<CycleObstruction>> {
    let n = g.n();
    let ymask = mask_of(&ys);

    // Kind I: a single 2-cut spreading the triple over three components.
    for a in 0..n {
        for b in a + 1..n {
            st.tick()?;
            let cm = (1u64 << a) | (1 << b);
            if cm & ymask != 0 {
                continue;
            }
            let comps = g.components_avoiding(cm);
            if comps.len() < 3 {
                continue;
            }
            let home: Vec<u64> = ys
                .iter()
                .map(|&y| comps.iter().copied().find(|&c| c & (1 << y) != 0).unwrap())
                .collect();
            if home[0] != home[1] && home[0] != home[2] && home[1] != home[2] {
                return Ok(Some(CycleObstruction {
                    kind: ObstructionKind::I,
                    cuts: vec![vec![a, b]],
                    pieces: home.iter().map(|&c| sorted_vec(c)).collect(),
                    hub: None,
                    bridges: Vec::new(),
                }));
            }
        }
    }

    // Kind II: three 2-cuts sharing a hub vertex, with disjoint home
    // components for the triple.
    for z in 0..n {
        if ymask & (1 << z) != 0 {
            continue;
        }
        // Partner vertices w for which {z, w} separates the graph, with the
        // home component of each chosen vertex (0 when it sits in the cut).
        let mut partners: Vec<(usize, [u64; 3])> = Vec::new();
        for w in 0..n {
            if w == z {
                continue;
            }
            st.tick()?;
            let cm = (1u64 << z) | (1 << w);
            let comps = g.components_avoiding(cm);
            if comps.len() < 2 {
                continue;
            }
            let mut home = [0u64; 3];
            for (i, &y) in ys.iter().enumerate() {
                if cm & (1 << y) == 0 {
                    home[i] = comps.iter().copied().find(|&c| c & (1 << y) != 0).unwrap();
                }
            }
            partners.push((w, home));
        }
        for &(z1, h1) in &partners {
            if h1[0] == 0 {
                continue;
            }
            for &(z2, h2) in &partners {
                if z2 == z1 || h2[1] == 0 || h1[0] & h2[1] != 0 {
                    continue;
                }
                for &(z3, h3) in &partners {
                    st.tick()?;
                    if z3 == z1 || z3 == z2 || h3[2] == 0 {
                        continue;
                    }
                    if h3[2] & (h1[0] | h2[1]) != 0 {
                        continue;
                    }
                    return Ok(Some(CycleObstruction {
                        kind: ObstructionKind::II,
                        cuts: vec![
                            sorted_vec((1u64 << z) | (1 << z1)),
                            sorted_vec((1u64 << z) | (1 << z2)),
                            sorted_vec((1u64 << z) | (1 << z3)),
                        ],
                        pieces: vec![sorted_vec(h1[0]), sorted_vec(h2[1]), sorted_vec(h3[2])],
                        hub: Some(z),
                        bridges: Vec::new(),
                    }));
                }
            }
        }
    }

    // Kind III: three pairwise disjoint 2-cuts whose pieces, once removed,
    // leave exactly two linking components.
    let mut cuts: Vec<(u64, Vec<u64>)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            st.tick()?;
            let cm = (1u64 << a) | (1 << b);
            if cm & ymask != 0 {
                continue;
            }
            let comps = g.components_avoiding(cm);
            if comps.len() >= 2 {
                cuts.push((cm, comps));
            }
        }
    }
    let home = |comps: &[u64], y: usize| comps.iter().copied().find(|&c| c & (1 << y) != 0);
    for (cm1, comps1) in &cuts {
        let Some(base1) = home(comps1, ys[0]) else {
            continue;
        };
        for (cm2, comps2) in &cuts {
            if cm1 & cm2 != 0 {
                continue;
            }
            let Some(base2) = home(comps2, ys[1]) else {
                continue;
            };
            for (cm3, comps3) in &cuts {
                st.tick()?;
                if cm3 & (cm1 | cm2) != 0 {
                    continue;
                }
                let Some(base3) = home(comps3, ys[2]) else {
                    continue;
                };
                let other = [cm2 | cm3, cm1 | cm3, cm1 | cm2];
                let bases = [base1, base2, base3];
                if (0..3).any(|i| bases[i] & (other[i] | ymask & !(1 << ys[i])) != 0) {
                    continue;
                }
                // Optional extra components per cut: no chosen vertex, no
                // vertex of any cut.
                let all_cuts = cm1 | cm2 | cm3;
                let extras: Vec<Vec<u64>> = [comps1, comps2, comps3]
                    .iter()
                    .enumerate()
                    .map(|(i, comps)| {
                        comps
                            .iter()
                            .copied()
                            .filter(|&c| c != bases[i] && c & (ymask | all_cuts) == 0)
                            .collect()
                    })
                    .collect();
                for m1 in 0..1u32 << extras[0].len() {
                    let d1 = bases[0] | pick(&extras[0], m1);
                    for m2 in 0..1u32 << extras[1].len() {
                        let d2 = bases[1] | pick(&extras[1], m2);
                        if d1 & d2 != 0 {
                            continue;
                        }
                        for m3 in 0..1u32 << extras[2].len() {
                            st.tick()?;
                            let d3 = bases[2] | pick(&extras[2], m3);
                            if d3 & (d1 | d2) != 0 {
                                continue;
                            }
                            let rest = g.components_avoiding(d1 | d2 | d3);
                            if rest.len() != 2 {
                                continue;
                            }
                            let split = rest.iter().all(|&c| {
                                [cm1, cm2, cm3].iter().all(|&&cm| (c & cm).count_ones() == 1)
                            });
                            if split {
                                return Ok(Some(CycleObstruction {
                                    kind: ObstructionKind::III,
                                    cuts: vec![
                                        sorted_vec(*cm1),
                                        sorted_vec(*cm2),
                                        sorted_vec(*cm3),
                                    ],
                                    pieces: vec![
                                        sorted_vec(d1),
                                        sorted_vec(d2),
                                        sorted_vec(d3),
                                    ],
                                    hub: None,
                                    bridges: rest.iter().map(|&c| sorted_vec(c)).collect(),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn pick(comps: &[u64], mask: u32) -> u64 {
    comps
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask & (1 << i) != 0)
        .fold(0u64, |acc, (_, &c)| acc | c)
}

/// Find a cycle through three prescribed vertices of a 2-connected graph,
/// or a structural obstruction explaining why none exists.
///
/// Obstruction templates are tried in the order I, II, III; the first match
/// is re-verified before being returned.
pub fn cycle_through_three(
    g: &Graph,
    y1: usize,
    y2: usize,
    y3: usize,
    budget: Budget,
) -> Result<CycleOutcome> {
    let ys = [y1, y2, y3];
    if ys.iter().any(|&y| y >= g.n()) || mask_of(&ys).count_ones() != 3 {
        return Err(Error::BadParameters(
            "need three distinct vertices".into(),
        ));
    }
    match crate::graph::vertex_connectivity(g) {
        Ok((k, _)) if k >= 2 => {}
        _ => return Err(Error::NotTwoConnected),
    }
    let mut st = Stepper::new(budget);
    // A cycle through all three is exactly an independent linkage of the
    // three consecutive terminal pairs (one traversal direction suffices).
    let pairs = [(y1, y2), (y2, y3), (y3, y1)];
    if let Some(segments) = LinkageSearch::run(g, &pairs, &mut st)? {
        let mut cycle = Vec::new();
        for seg in &segments {
            cycle.extend_from_slice(&seg[..seg.len() - 1]);
        }
        return Ok(CycleOutcome::Cycle(cycle));
    }
    match obstruction_search(g, ys, &mut st)? {
        Some(obs) => {
            if !obs.verify(g, ys) {
                return Err(Error::TheoremViolation(
                    "cycle obstruction failed re-verification".into(),
                ));
            }
            Ok(CycleOutcome::Obstruction(obs))
        }
        None => Err(Error::TheoremViolation(
            "no cycle through the triple, yet no structural obstruction found".into(),
        )),
    }
}

/// Outcome of the three-path middle-linkage test.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum TripleOutcome {
    /// No three disjoint paths link the triples at all.
    NoTriple,
    /// Some system avoids the middle pairing; the witness shows it.
    Free(PathSystem),
    /// Every system links the middle vertices; the witness is one of them.
    Forced(PathSystem),
}

/// Decide whether every system of three disjoint paths from `(a, b, c)` to
/// `(a′, b′, c′)` must link `b` with `b′`.
///
/// Exhaustive over the six endpoint bijections; a vertex shared by the two
/// triples can only serve as a trivial one-vertex path. `Free` carries the
/// first system found that avoids the middle pairing, `Forced` the first
/// system found overall.
pub fn forced_middle_triple(
    g: &Graph,
    from: (usize, usize, usize),
    to: (usize, usize, usize),
    budget: Budget,
) -> Result<TripleOutcome> {
    let f = [from.0, from.1, from.2];
    let t = [to.0, to.1, to.2];
    if f.iter().chain(t.iter()).any(|&v| v >= g.n()) {
        return Err(Error::BadParameters("triple vertex out of range".into()));
    }
    if mask_of(&f).count_ones() != 3 || mask_of(&t).count_ones() != 3 {
        return Err(Error::BadParameters(
            "each triple must consist of three distinct vertices".into(),
        ));
    }
    if mask_of(&f) == mask_of(&t) {
        return Err(Error::BadParameters(
            "the two triples must differ as sets".into(),
        ));
    }
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let mut st = Stepper::new(budget);
    let mut first_any: Option<Vec<Vec<usize>>> = None;
    let mut first_free: Option<Vec<Vec<usize>>> = None;
    for perm in PERMS {
        let pairs: Vec<(usize, usize)> = (0..3).map(|i| (f[i], t[perm[i]])).collect();
        // A vertex serving two different pairs cannot lie on two disjoint
        // paths, so such a bijection is unsatisfiable.
        let masks: Vec<u64> = pairs
            .iter()
            .map(|&(s, tt)| (1u64 << s) | (1 << tt))
            .collect();
        if (0..3).any(|i| (i + 1..3).any(|j| masks[i] & masks[j] != 0)) {
            continue;
        }
        if let Some(paths) = LinkageSearch::run(g, &pairs, &mut st)? {
            if first_any.is_none() {
                first_any = Some(paths.clone());
            }
            if perm[1] != 1 {
                first_free = Some(paths);
                break;
            }
        }
    }
    let wrap = |paths: Vec<Vec<usize>>| {
        let ps = PathSystem {
            paths,
            disjointness: Disjointness::FullyDisjoint,
        };
        debug_assert!(ps.verify(g));
        ps
    };
    Ok(match (first_free, first_any) {
        (Some(free), _) => TripleOutcome::Free(wrap(free)),
        (None, Some(any)) => TripleOutcome::Forced(wrap(any)),
        (None, None) => TripleOutcome::NoTriple,
    })
}
