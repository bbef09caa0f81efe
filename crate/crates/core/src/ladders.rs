//! Rungs, ladders, and reduced sequences.
//!
//! A rung is a graph together with two vertex triples `(a, b, c)` and
//! `(a′, b′, c′)` that cannot be torn apart by any vertex cut of size ≤ 3.
//! Rungs come in seven numbered types, recognised by [`classify_rung`]; four
//! especially small shapes are matched exactly by [`classify_simple_rung`].
//! Chaining rungs on shared triples gives a ladder, the structure that forces
//! every triple linkage through its spine — [`build_ladder`] manufactures
//! them and [`verify_ladder`] checks the four defining conditions.

use crate::graph::{mask_of, sorted_vec, Graph};
use crate::planarity::three_planar;
use crate::{Budget, Error, Result, Stepper};
use serde::{Deserialize, Serialize};

/// Collapse runs of consecutive identical elements to a single element.
pub fn reduced_sequence<T: PartialEq + Clone>(seq: &[T]) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(seq.len());
    for item in seq {
        if out.last() != Some(item) {
            out.push(item.clone());
        }
    }
    out
}

/// One of the four explicit small-rung shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimpleShape {
    I,
    II,
    III,
    IV,
}

/// A recognised rung classification: a numbered type or a simple shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RungTag {
    Full(u8),
    Simple(SimpleShape),
}

/// A graph with an ordered pair of vertex triples, candidate for rung-hood.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RungInstance {
    pub graph: Graph,
    pub from_triple: (usize, usize, usize),
    pub to_triple: (usize, usize, usize),
    pub rung_type: Option<RungTag>,
}

impl RungInstance {
    pub fn new(
        graph: Graph,
        from_triple: (usize, usize, usize),
        to_triple: (usize, usize, usize),
    ) -> Self {
        RungInstance {
            graph,
            from_triple,
            to_triple,
            rung_type: None,
        }
    }
}

fn distinct(vs: &[usize]) -> bool {
    mask_of(vs).count_ones() as usize == vs.len()
}

/// Validate triple vertices: in range, three distinct each, sets differ.
fn check_triples(r: &RungInstance) -> Result<()> {
    let f = [r.from_triple.0, r.from_triple.1, r.from_triple.2];
    let t = [r.to_triple.0, r.to_triple.1, r.to_triple.2];
    if f.iter().chain(t.iter()).any(|&v| v >= r.graph.n()) {
        return Err(Error::BadParameters("triple vertex out of range".into()));
    }
    if !distinct(&f) || !distinct(&t) {
        return Err(Error::BadParameters(
            "each triple must consist of three distinct vertices".into(),
        ));
    }
    if mask_of(&f) == mask_of(&t) {
        return Err(Error::BadParameters(
            "the two triples must differ as sets".into(),
        ));
    }
    Ok(())
}

/// Search for a vertex cut of size ≤ 3 splitting the two triples: after
/// removing the cut, no component may meet both triples, and each side of
/// the split must still own at least one vertex. Returns the least such cut.
fn separating_cut(
    g: &Graph,
    from: u64,
    to: u64,
    st: &mut Stepper,
) -> Result<Option<Vec<usize>>> {
    let n = g.n();
    let mut candidates: Vec<u64> = vec![0];
    for v in 0..n {
        candidates.push(1 << v);
    }
    for v in 0..n {
        for w in v + 1..n {
            candidates.push((1 << v) | (1 << w));
        }
    }
    for v in 0..n {
        for w in v + 1..n {
            for x in w + 1..n {
                candidates.push((1 << v) | (1 << w) | (1 << x));
            }
        }
    }
    for s in candidates {
        st.tick()?;
        let f = from & !s;
        let t = to & !s;
        let mut mixed = false;
        let mut free = 0usize;
        for comp in g.components_avoiding(s) {
            let hits_f = comp & f != 0;
            let hits_t = comp & t != 0;
            if hits_f && hits_t {
                mixed = true;
                break;
            }
            if !hits_f && !hits_t {
                free += 1;
            }
        }
        if mixed {
            continue;
        }
        let needed = usize::from(f == 0) + usize::from(t == 0);
        if free >= needed {
            return Ok(Some(sorted_vec(s)));
        }
    }
    Ok(None)
}

/// Is `(g, boundary)` realisable in a disc with the stated outer sequence,
/// allowing small hanging pieces to be contracted away?
fn tp(g: &Graph, boundary: &[usize], budget: Budget) -> Result<bool> {
    Ok(three_planar(g, boundary, budget)?.is_some())
}

/// Run the disc check on the subgraph induced by `verts`, translating the
/// boundary into the dense relabelling; `drop` removes one edge first.
fn tp_induced(
    g: &Graph,
    verts: u64,
    boundary: &[usize],
    drop: Option<(usize, usize)>,
    budget: Budget,
) -> Result<bool> {
    let (mut h, map) = g.induced(verts);
    let pos = |v: usize| map.binary_search(&v).expect("boundary vertex inside the piece");
    if let Some((u, v)) = drop {
        h.remove_edge(pos(u), pos(v));
    }
    let mapped: Vec<usize> = boundary.iter().map(|&v| pos(v)).collect();
    tp(&h, &mapped, budget)
}

/// The side of the cut consisting of `cut` plus every component meeting
/// `keep`; fails if such a component also meets `other`.
fn one_side(g: &Graph, cut: u64, keep: &[usize], other: &[usize]) -> Option<u64> {
    let k = mask_of(keep) & !cut;
    let o = mask_of(other) & !cut;
    let mut side = cut;
    for comp in g.components_avoiding(cut) {
        if comp & k != 0 {
            if comp & o != 0 {
                return None;
            }
            side |= comp;
        }
    }
    Some(side)
}

/// `cut` plus every component of `g − cut` that meets `seeds`.
fn piece(g: &Graph, cut: u64, seeds: &[usize]) -> u64 {
    let k = mask_of(seeds) & !cut;
    let mut side = cut;
    for comp in g.components_avoiding(cut) {
        if comp & k != 0 {
            side |= comp;
        }
    }
    side
}

/// Classify a rung instance as the least numbered type that matches, `None`
/// when the instance splits into none of the seven patterns.
///
/// Errors with [`Error::PreconditionFailed`] when some vertex cut of size
/// ≤ 3 separates the two triples — such instances are not rungs at all.
pub fn classify_rung(r: &RungInstance, budget: Budget) -> Result<Option<u8>> {
    check_triples(r)?;
    let g = &r.graph;
    let (a, b, c) = r.from_triple;
    let (ap, bp, cp) = r.to_triple;
    let from = mask_of(&[a, b, c]);
    let to = mask_of(&[ap, bp, cp]);

    let mut st = Stepper::new(budget);
    if let Some(cut) = separating_cut(g, from, to, &mut st)? {
        return Err(Error::PreconditionFailed(format!(
            "the triples are split by the vertex cut {cut:?}"
        )));
    }

    // Type 1: the middles agree, or the outer pairs agree as sets.
    if b == bp || mask_of(&[a, c]) == mask_of(&[ap, cp]) {
        return Ok(Some(1));
    }

    // Type 2: one outer coordinate is stationary and deleting it leaves a
    // disc-realisable graph on the remaining four terminals.
    if a == ap && distinct(&[c, cp, bp, b]) {
        let rest = g.full_mask() & !(1 << a);
        if tp_induced(g, rest, &[c, cp, bp, b], None, budget)? {
            return Ok(Some(2));
        }
    }
    if c == cp && distinct(&[a, ap, bp, b]) {
        let rest = g.full_mask() & !(1 << c);
        if tp_induced(g, rest, &[a, ap, bp, b], None, budget)? {
            return Ok(Some(2));
        }
    }

    if from & to != 0 {
        return Ok(None);
    }

    // Type 3: the whole graph fits in a disc with the six terminals on the
    // boundary, one triple reversed against the other.
    if tp(g, &[ap, bp, cp, c, b, a], budget)? {
        return Ok(Some(3));
    }

    if type4(g, a, b, c, ap, bp, cp, budget, &mut st)? {
        return Ok(Some(4));
    }
    if type5(g, a, b, c, ap, bp, cp, budget, &mut st)? {
        return Ok(Some(5));
    }
    if type6(g, a, b, c, ap, bp, cp, budget, &mut st)? {
        return Ok(Some(6));
    }
    if type7(g, a, b, c, ap, bp, cp, budget, &mut st)? {
        return Ok(Some(7));
    }
    Ok(None)
}

/// Type 4: a cut vertex splits off the `c`-pair (or the `a`-pair), and the
/// remaining side is disc-realisable on its four terminals.
#[allow(clippy::too_many_arguments)]
fn type4(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    ap: usize,
    bp: usize,
    cp: usize,
    budget: Budget,
    st: &mut Stepper,
) -> Result<bool> {
    for v in 0..g.n() {
        st.tick()?;
        if let Some(side) = one_side(g, 1 << v, &[a, ap, b, bp], &[c, cp]) {
            if tp_induced(g, side, &[a, ap, bp, b], None, budget)? {
                return Ok(true);
            }
        }
        if let Some(side) = one_side(g, 1 << v, &[c, cp, b, bp], &[a, ap]) {
            if tp_induced(g, side, &[c, cp, bp, b], None, budget)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Type 5: the graph is disc-realisable on one four-terminal boundary, and a
/// two-vertex cut through `b` (or `b′`) splits off a disc-realisable piece
/// holding the remaining pair. Both cut orientations are tried.
#[allow(clippy::too_many_arguments)]
fn type5(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    ap: usize,
    bp: usize,
    cp: usize,
    budget: Budget,
    st: &mut Stepper,
) -> Result<bool> {
    // (near pair kept with b, b′; far pair split off behind the cut)
    for &(n1, n2, f1, f2) in &[(a, ap, c, cp), (c, cp, a, ap)] {
        if !tp(g, &[n1, n2, bp, b], budget)? {
            continue;
        }
        for z in 0..g.n() {
            for orient in 0..2 {
                st.tick()?;
                let (att, bnd) = if orient == 0 {
                    (b, [f1, f2, z, b])
                } else {
                    (bp, [f1, f2, bp, z])
                };
                if z == att || !distinct(&bnd) {
                    continue;
                }
                let cut = (1 << z) | (1 << att);
                let Some(side) = one_side(g, cut, &[f1, f2], &[n1, n2, b, bp]) else {
                    continue;
                };
                if tp_induced(g, side, &bnd, None, budget)? {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Type 6: two vertex-disjoint lobes, one holding `a, a′` and one `c, c′`,
/// each meeting the middle part in exactly two vertices and each
/// disc-realisable on five terminals. The middle part is unconstrained.
#[allow(clippy::too_many_arguments)]
fn type6(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    ap: usize,
    bp: usize,
    cp: usize,
    budget: Budget,
    st: &mut Stepper,
) -> Result<bool> {
    let n = g.n();
    // Sub-case (i) keeps b′ with the a-lobe and b with the c-lobe;
    // sub-case (ii) swaps them. Boundary orders follow the lobes' terminals.
    for case in 0..2 {
        let (aset, cset) = if case == 0 {
            ([a, ap, bp], [c, cp, b])
        } else {
            ([a, ap, b], [c, cp, bp])
        };
        let amask = mask_of(&aset);
        let cmask = mask_of(&cset);
        for u in 0..n {
            for w in 0..n {
                if u == w || amask & ((1 << u) | (1 << w)) != 0 {
                    continue;
                }
                st.tick()?;
                let ga = piece(g, (1 << u) | (1 << w), &aset);
                if ga & cmask != 0 {
                    continue;
                }
                let abnd = if case == 0 {
                    [a, ap, bp, w, u]
                } else {
                    [b, a, ap, w, u]
                };
                if !tp_induced(g, ga, &abnd, None, budget)? {
                    continue;
                }
                for p in 0..n {
                    for q in 0..n {
                        if p == q
                            || cmask & ((1 << p) | (1 << q)) != 0
                            || ga & ((1 << p) | (1 << q)) != 0
                        {
                            continue;
                        }
                        st.tick()?;
                        let gc = piece(g, (1 << p) | (1 << q), &cset);
                        if ga & gc != 0 {
                            continue;
                        }
                        let cbnd = if case == 0 {
                            [cp, c, b, p, q]
                        } else {
                            [bp, cp, c, p, q]
                        };
                        if tp_induced(g, gc, &cbnd, None, budget)? {
                            return Ok(true);
                        }
                    }
                }
            }
        }
    }
    Ok(false)
}

/// Type 7: the two lobes share exactly `{b, b′}` and each meets the middle
/// part in `{b, b′}` plus one extra vertex; both lobes are disc-realisable.
/// An edge `b b′`, if present, is assigned to the middle part.
#[allow(clippy::too_many_arguments)]
fn type7(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
    ap: usize,
    bp: usize,
    cp: usize,
    budget: Budget,
    st: &mut Stepper,
) -> Result<bool> {
    let n = g.n();
    let base = (1 << b) | (1 << bp);
    let banned_w = mask_of(&[a, ap, b, bp]);
    let banned_p = mask_of(&[c, cp, b, bp]);
    for w in 0..n {
        if banned_w & (1 << w) != 0 {
            continue;
        }
        let ga = piece(g, base | (1 << w), &[a, ap]);
        st.tick()?;
        let mut a_checked = false;
        let mut a_ok = false;
        for p in 0..n {
            if banned_p & (1 << p) != 0 || p == w {
                continue;
            }
            st.tick()?;
            let gc = piece(g, base | (1 << p), &[c, cp]);
            if ga & gc != base {
                continue;
            }
            if !a_checked {
                a_checked = true;
                a_ok = tp_induced(g, ga, &[a, ap, bp, w, b], Some((b, bp)), budget)?;
            }
            if a_ok && tp_induced(g, gc, &[cp, c, b, p, bp], Some((b, bp)), budget)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Match an instance against the four explicit small-rung shapes.
///
/// When `ambient_5conn` is false the instance is first verified to be a
/// genuine rung (triples inseparable and some numbered type matches),
/// erroring with [`Error::NotARung`] otherwise; passing true asserts that
/// the surrounding context already guarantees rung-hood and skips the check.
pub fn classify_simple_rung(
    r: &RungInstance,
    ambient_5conn: bool,
    budget: Budget,
) -> Result<Option<SimpleShape>> {
    check_triples(r)?;
    if !ambient_5conn {
        match classify_rung(r, budget) {
            Ok(Some(_)) => {}
            Ok(None) | Err(Error::PreconditionFailed(_)) => return Err(Error::NotARung),
            Err(e) => return Err(e),
        }
    }
    let g = &r.graph;
    let (a, b, c) = r.from_triple;
    let (ap, bp, cp) = r.to_triple;
    let six = mask_of(&[a, b, c, ap, bp, cp]);
    let extra = g.full_mask() & !six;

    // Shape i: stationary middle.
    if b == bp {
        return Ok(Some(SimpleShape::I));
    }
    // Shape ii: stationary outer pair, vertex set exactly the four
    // terminals, and the middle edge is the only edge.
    if mask_of(&[a, c]) == mask_of(&[ap, cp])
        && g.full_mask() == mask_of(&[a, c, b, bp])
        && g.edge_count() == 1
        && g.has_edge(b, bp)
    {
        return Ok(Some(SimpleShape::II));
    }
    // Shapes iii and iv: one extra vertex adjacent to every terminal, the
    // rest a perfect matching between the moving coordinates.
    if extra.count_ones() == 1 {
        let v = extra.trailing_zeros() as usize;
        if g.neighbors(v) == six {
            if a == ap && exact_edges_without(g, v, &[(b, bp), (c, cp)]) {
                return Ok(Some(SimpleShape::III));
            }
            if c == cp && exact_edges_without(g, v, &[(a, ap), (b, bp)]) {
                return Ok(Some(SimpleShape::III));
            }
            if six.count_ones() == 6
                && exact_edges_without(g, v, &[(a, ap), (b, bp), (c, cp)])
            {
                return Ok(Some(SimpleShape::IV));
            }
        }
    }
    Ok(None)
}

/// Do the edges of `g − v` consist exactly of `want`?
fn exact_edges_without(g: &Graph, v: usize, want: &[(usize, usize)]) -> bool {
    let others = g
        .edges()
        .into_iter()
        .filter(|&(x, y)| x != v && y != v)
        .count();
    others == want.len() && want.iter().all(|&(x, y)| g.has_edge(x, y))
}

/// A chain of rungs glued on shared triples.
///
/// Rung graphs live in the ladder's vertex space, each restricted to its own
/// edge set; `rung_vertices[i]` pins the vertex set of rung `i` (a rung may
/// own isolated vertices, which the adjacency alone cannot express).
/// `triples[i]` is the shared triple between rung `i` and rung `i + 1`, with
/// `triples[0]` and `triples[m]` the two ends; `spine` lists the middle
/// coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ladder {
    pub graph: Graph,
    pub rungs: Vec<RungInstance>,
    pub rung_vertices: Vec<Vec<usize>>,
    pub spine: Vec<usize>,
    pub triples: Vec<(usize, usize, usize)>,
}

impl Ladder {
    pub fn first_triple(&self) -> (usize, usize, usize) {
        self.triples[0]
    }

    pub fn last_triple(&self) -> (usize, usize, usize) {
        *self.triples.last().expect("a ladder has at least one rung")
    }
}

/// Outcome of [`verify_ladder`]: valid, or the first violated condition.
/// Condition 0 flags structural defects (mismatched lengths, edges outside
/// the ladder, triples not where they should be); conditions 1–4 are the
/// four ladder conditions in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum LadderVerdict {
    Valid,
    Violation {
        condition: u8,
        index: usize,
        detail: String,
    },
}

impl LadderVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, LadderVerdict::Valid)
    }
}

fn violation(condition: u8, index: usize, detail: impl Into<String>) -> LadderVerdict {
    LadderVerdict::Violation {
        condition,
        index,
        detail: detail.into(),
    }
}

fn triple_mask(t: (usize, usize, usize)) -> u64 {
    mask_of(&[t.0, t.1, t.2])
}

/// Check the four ladder conditions, reporting the first violation: each
/// piece is a rung (1); pieces intersect exactly in the declared shared
/// triples (2); repeated coordinates are contiguous along the chain (3);
/// the pieces are edge-disjoint and cover the ladder up to triple-internal
/// edges (4).
pub fn verify_ladder(l: &Ladder) -> LadderVerdict {
    let m = l.rungs.len();
    let n = l.graph.n();
    if m == 0 {
        return violation(0, 0, "a ladder needs at least one rung");
    }
    if l.triples.len() != m + 1 || l.rung_vertices.len() != m || l.spine.len() != m + 1 {
        return violation(0, 0, "rung, triple, and spine counts disagree");
    }
    for (i, &t) in l.triples.iter().enumerate() {
        let tv = [t.0, t.1, t.2];
        if tv.iter().any(|&v| v >= n) || !distinct(&tv) {
            return violation(0, i, format!("triple {i} is malformed"));
        }
        if l.spine[i] != t.1 {
            return violation(0, i, format!("spine entry {i} is not the middle of triple {i}"));
        }
    }
    let mut vmasks = Vec::with_capacity(m);
    for i in 0..m {
        let r = &l.rungs[i];
        let vmask = mask_of(&l.rung_vertices[i]);
        if r.graph.n() != n {
            return violation(0, i, format!("rung {i} lives in a different vertex space"));
        }
        if l.rung_vertices[i].iter().any(|&v| v >= n) {
            return violation(0, i, format!("rung {i} lists a vertex out of range"));
        }
        for (u, v) in r.graph.edges() {
            if !l.graph.has_edge(u, v) {
                return violation(0, i, format!("rung {i} edge ({u},{v}) is not a ladder edge"));
            }
            if vmask & (1 << u) == 0 || vmask & (1 << v) == 0 {
                return violation(
                    0,
                    i,
                    format!("rung {i} edge ({u},{v}) leaves its vertex set"),
                );
            }
        }
        if r.from_triple != l.triples[i] || r.to_triple != l.triples[i + 1] {
            return violation(0, i, format!("rung {i} triples disagree with the ladder's"));
        }
        if triple_mask(r.from_triple) & !vmask != 0 || triple_mask(r.to_triple) & !vmask != 0 {
            return violation(0, i, format!("rung {i} does not contain its own triples"));
        }
        vmasks.push(vmask);
    }

    // Condition 1: every piece, extracted standalone, classifies as a rung.
    for (i, (&vmask, rung)) in vmasks.iter().zip(&l.rungs).enumerate() {
        let (piece, map) = l.graph.subgraph(vmask, &rung.graph.edges());
        let pos = |v: usize| map.binary_search(&v).expect("triple vertex inside the rung");
        let inst = RungInstance::new(
            piece,
            (
                pos(l.triples[i].0),
                pos(l.triples[i].1),
                pos(l.triples[i].2),
            ),
            (
                pos(l.triples[i + 1].0),
                pos(l.triples[i + 1].1),
                pos(l.triples[i + 1].2),
            ),
        );
        match classify_rung(&inst, Budget::default()) {
            Ok(Some(_)) => {}
            Ok(None) => return violation(1, i, format!("rung {i} matches no rung type")),
            Err(e) => return violation(1, i, format!("rung {i} is not a rung: {e}")),
        }
    }

    // Condition 2: pieces meet exactly in the declared triple intersections.
    for i in 0..m {
        for j in i + 1..m {
            let want = triple_mask(l.triples[i + 1]) & triple_mask(l.triples[j]);
            let got = vmasks[i] & vmasks[j];
            if got != want {
                return violation(
                    2,
                    j,
                    format!(
                        "rungs {i} and {j} share {:?} but the triples give {:?}",
                        sorted_vec(got),
                        sorted_vec(want)
                    ),
                );
            }
        }
    }

    // Condition 3: a repeated coordinate value occupies a contiguous block.
    let coords: [(&str, Vec<usize>); 3] = [
        ("x", l.triples.iter().map(|t| t.0).collect()),
        ("v", l.triples.iter().map(|t| t.1).collect()),
        ("y", l.triples.iter().map(|t| t.2).collect()),
    ];
    for (name, stream) in &coords {
        for i in 0..stream.len() {
            for j in i + 2..stream.len() {
                if stream[i] == stream[j] && (i..=j).any(|k| stream[k] != stream[i]) {
                    return violation(
                        3,
                        j,
                        format!(
                            "{name}-coordinate {} repeats at positions {i} and {j} \
                             but changes in between",
                            stream[i]
                        ),
                    );
                }
            }
        }
    }

    // Condition 4: pieces are edge-disjoint and cover the ladder's edges,
    // except for edges inside a single triple.
    let mut owner: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    for i in 0..m {
        for (u, v) in l.rungs[i].graph.edges() {
            if let Some(&j) = owner.get(&(u, v)) {
                return violation(4, i, format!("edge ({u},{v}) lies in rungs {j} and {i}"));
            }
            owner.insert((u, v), i);
        }
    }
    for (u, v) in l.graph.edges() {
        if owner.contains_key(&(u, v)) {
            continue;
        }
        let e = (1u64 << u) | (1 << v);
        let internal = l.triples.iter().any(|&t| e & !triple_mask(t) == 0);
        if !internal {
            return violation(
                4,
                0,
                format!("ladder edge ({u},{v}) lies in no rung and no triple"),
            );
        }
    }
    LadderVerdict::Valid
}

/// Build a concrete ladder by chaining shape templates on fresh vertices.
///
/// Each template advances the running triple: shape i moves the outer pair,
/// shape ii moves the middle, shape iii moves the middle and one outer
/// coordinate, shape iv moves all three. The empty list is rejected.
pub fn build_ladder(templates: &[SimpleShape]) -> Result<Ladder> {
    if templates.is_empty() {
        return Err(Error::IncompatibleGluing(
            "a ladder needs at least one rung template".into(),
        ));
    }
    let fresh_count = |t: &SimpleShape| match t {
        SimpleShape::I => 2,
        SimpleShape::II => 1,
        SimpleShape::III => 3,
        SimpleShape::IV => 4,
    };
    let n = 3 + templates.iter().map(fresh_count).sum::<usize>();
    let mut graph = Graph::empty(n)?;
    let mut triples = vec![(0usize, 1usize, 2usize)];
    let mut rung_edges: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut rung_vertices: Vec<Vec<usize>> = Vec::new();
    let mut next = 3;

    for t in templates {
        let (x, v, y) = *triples.last().expect("seeded with the initial triple");
        let (edges, verts, to) = match t {
            SimpleShape::I => {
                let (xp, yp) = (next, next + 1);
                (
                    vec![(x, xp), (x, yp), (y, xp), (y, yp)],
                    vec![x, v, y, xp, yp],
                    (xp, v, yp),
                )
            }
            SimpleShape::II => {
                let vp = next;
                (vec![(v, vp)], vec![x, v, y, vp], (x, vp, y))
            }
            SimpleShape::III => {
                let (vp, yp, h) = (next, next + 1, next + 2);
                (
                    vec![(h, x), (h, v), (h, vp), (h, y), (h, yp), (v, vp), (y, yp)],
                    vec![x, v, y, vp, yp, h],
                    (x, vp, yp),
                )
            }
            SimpleShape::IV => {
                let (xp, vp, yp, h) = (next, next + 1, next + 2, next + 3);
                (
                    vec![
                        (h, x),
                        (h, v),
                        (h, y),
                        (h, xp),
                        (h, vp),
                        (h, yp),
                        (x, xp),
                        (v, vp),
                        (y, yp),
                    ],
                    vec![x, v, y, xp, vp, yp, h],
                    (xp, vp, yp),
                )
            }
        };
        next += fresh_count(t);
        for &(u, w) in &edges {
            graph.add_edge(u, w)?;
        }
        let mut sorted = verts;
        sorted.sort_unstable();
        rung_vertices.push(sorted);
        rung_edges.push(edges);
        triples.push(to);
    }

    let rungs = templates
        .iter()
        .zip(rung_edges.iter())
        .enumerate()
        .map(|(i, (t, edges))| {
            let mut piece = Graph::empty(n)?;
            for &(u, w) in edges {
                piece.add_edge(u, w)?;
            }
            Ok(RungInstance {
                graph: piece,
                from_triple: triples[i],
                to_triple: triples[i + 1],
                rung_type: Some(RungTag::Simple(*t)),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let ladder = Ladder {
        graph,
        rungs,
        rung_vertices,
        spine: triples.iter().map(|t| t.1).collect(),
        triples,
    };
    debug_assert!(verify_ladder(&ladder).is_valid());
    Ok(ladder)
}
