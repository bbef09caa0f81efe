//! TK5 witnesses: five branch vertices joined by ten internally disjoint
//! paths, one per unordered pair.
//!
//! Three entry points cover the search spectrum. [`find_tk5`] is the oracle:
//! an exhaustive branch-set iteration with backtracking path packing,
//! deterministic and budget-bounded. [`find_tk5_structured`] is the
//! production pipeline: it short-circuits planar inputs, seeds the search
//! from a K4⁻ when one exists, and otherwise contracts a connected patch
//! whose quotient stays 5-connected and nonplanar, searches the smaller
//! graph, and lifts the witness back with [`lift_witness`]. Every witness
//! that leaves this module passes [`verify_tk5`] against the original graph.

use crate::graph::{self, bits, contract, mask_of, Graph};
use crate::paths::fan;
use crate::planarity::{planarity, Planarity};
use crate::quadruples::is_five_connected_contracted;
use crate::{Budget, Error, Result, Stepper};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;

/// Storage order of the ten paths as index pairs into `branch`.
pub const PAIR_ORDER: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

/// A K5 subdivision.
///
/// `paths[k]` joins the `PAIR_ORDER[k]` pair of `branch`, oriented from the
/// lower position to the higher. Serialization uses a readable map form:
/// `{"branch": [v...], "paths": {"u-v": [v...]}}` with keys built from the
/// smaller endpoint first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tk5Witness {
    pub branch: Vec<usize>,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct WitnessWire {
    branch: Vec<usize>,
    paths: BTreeMap<String, Vec<usize>>,
}

impl Serialize for Tk5Witness {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error;
        if self.branch.len() != 5 || self.paths.len() != 10 {
            return Err(S::Error::custom(
                "witness needs 5 branch vertices and 10 paths",
            ));
        }
        let mut paths = BTreeMap::new();
        for (k, &(i, j)) in PAIR_ORDER.iter().enumerate() {
            let (a, b) = (self.branch[i], self.branch[j]);
            paths.insert(format!("{}-{}", a.min(b), a.max(b)), self.paths[k].clone());
        }
        WitnessWire {
            branch: self.branch.clone(),
            paths,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Tk5Witness {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let mut wire = WitnessWire::deserialize(de)?;
        if wire.branch.len() != 5 {
            return Err(D::Error::custom("expected 5 branch vertices"));
        }
        let mut paths = Vec::with_capacity(10);
        for &(i, j) in PAIR_ORDER.iter() {
            let (a, b) = (wire.branch[i], wire.branch[j]);
            let key = format!("{}-{}", a.min(b), a.max(b));
            let p = wire
                .paths
                .remove(&key)
                .ok_or_else(|| D::Error::custom(format!("missing path {key}")))?;
            paths.push(p);
        }
        if let Some(k) = wire.paths.keys().next() {
            return Err(D::Error::custom(format!("unexpected path key {k}")));
        }
        Ok(Tk5Witness {
            branch: wire.branch,
            paths,
        })
    }
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

/// Outcome of [`verify_tk5`]: valid, or the first violated clause with an
/// explanation naming the offending pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum WitnessVerdict {
    Valid,
    Violation { clause: String, detail: String },
}

impl WitnessVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, WitnessVerdict::Valid)
    }
}

/// Check a witness against `g` from scratch: branch vertices distinct and
/// in range, ten paths with the declared endpoints, every step an edge,
/// simple paths of length ≥ 1, no branch vertex inside a path, and pairwise
/// internal disjointness.
pub fn verify_tk5(g: &Graph, w: &Tk5Witness) -> WitnessVerdict {
    let fail = |clause: &str, detail: String| WitnessVerdict::Violation {
        clause: clause.into(),
        detail,
    };
    if w.branch.len() != 5 {
        return fail("branch count", format!("{} branch vertices", w.branch.len()));
    }
    if let Some(&v) = w.branch.iter().find(|&&v| v >= g.n()) {
        return fail("branch range", format!("vertex {v} outside 0..{}", g.n()));
    }
    let bmask = mask_of(&w.branch);
    if bmask.count_ones() != 5 {
        return fail("branch distinct", format!("{:?}", w.branch));
    }
    if w.paths.len() != 10 {
        return fail("path count", format!("{} paths", w.paths.len()));
    }
    let pair_name = |k: usize| {
        let (i, j) = PAIR_ORDER[k];
        format!("{}–{}", w.branch[i], w.branch[j])
    };
    for (k, p) in w.paths.iter().enumerate() {
        let (i, j) = PAIR_ORDER[k];
        if p.len() < 2 {
            return fail(
                "path length",
                format!("pair {}: {} vertices", pair_name(k), p.len()),
            );
        }
        if let Some(&v) = p.iter().find(|&&v| v >= g.n()) {
            return fail(
                "path range",
                format!("pair {}: vertex {v} outside 0..{}", pair_name(k), g.n()),
            );
        }
        if p[0] != w.branch[i] || p[p.len() - 1] != w.branch[j] {
            return fail(
                "endpoints",
                format!(
                    "pair {} runs {}…{}",
                    pair_name(k),
                    p[0],
                    p[p.len() - 1]
                ),
            );
        }
        if mask_of(p).count_ones() as usize != p.len() {
            return fail("simplicity", format!("pair {} repeats a vertex", pair_name(k)));
        }
        if let Some(st) = p.windows(2).find(|st| !g.has_edge(st[0], st[1])) {
            return fail(
                "edges",
                format!("pair {}: {}–{} is not an edge", pair_name(k), st[0], st[1]),
            );
        }
        let internal = mask_of(&p[1..p.len() - 1]);
        if internal & bmask != 0 {
            return fail(
                "internal avoids branch",
                format!(
                    "pair {}: vertex {}",
                    pair_name(k),
                    (internal & bmask).trailing_zeros()
                ),
            );
        }
    }
    let internals: Vec<u64> = w
        .paths
        .iter()
        .map(|p| mask_of(&p[1..p.len() - 1]))
        .collect();
    for a in 0..10 {
        for b in a + 1..10 {
            let clash = internals[a] & internals[b];
            if clash != 0 {
                return fail(
                    "internal disjointness",
                    format!(
                        "pairs {} and {} share vertex {}",
                        pair_name(a),
                        pair_name(b),
                        clash.trailing_zeros()
                    ),
                );
            }
        }
    }
    WitnessVerdict::Valid
}

// ---------------------------------------------------------------------------
// Exhaustive search.
// ---------------------------------------------------------------------------

/// Cap on the fail-first path counts: pairs are ordered by how few
/// candidate paths they admit, and counting stops once a pair is clearly
/// unconstrained.
const FAIL_FIRST_CAP: u64 = 40;

fn binom(n: u64, k: u64) -> u64 {
    let mut out = 1u64;
    for i in 0..k.min(n) {
        out = out.saturating_mul(n - i) / (i + 1);
    }
    if k > n {
        0
    } else {
        out
    }
}

/// Simple paths from `u` to `v` with internal vertices outside `reserved`,
/// counted up to `cap`.
fn count_paths(
    g: &Graph,
    u: usize,
    v: usize,
    reserved: u64,
    cap: u64,
    stepper: &mut Stepper,
) -> Result<u64> {
    fn rec(
        g: &Graph,
        cur: usize,
        v: usize,
        reserved: u64,
        visited: u64,
        cap: u64,
        count: &mut u64,
        stepper: &mut Stepper,
    ) -> Result<()> {
        stepper.tick()?;
        for w in bits(g.neighbors(cur)) {
            if *count >= cap {
                return Ok(());
            }
            if w == v {
                *count += 1;
            } else if reserved & (1 << w) == 0 && visited & (1 << w) == 0 {
                rec(g, w, v, reserved, visited | (1 << w), cap, count, stepper)?;
            }
        }
        Ok(())
    }
    let mut count = 0;
    rec(g, u, v, reserved, 1 << u, cap, &mut count, stepper)?;
    Ok(count)
}

struct Packer<'a> {
    g: &'a Graph,
    branch: [usize; 5],
    order: Vec<usize>,
    slots: Vec<Vec<usize>>,
    stepper: &'a mut Stepper,
}

impl Packer<'_> {
    fn pack(&mut self, idx: usize, used: u64) -> Result<bool> {
        if idx == self.order.len() {
            return Ok(true);
        }
        let (i, j) = PAIR_ORDER[self.order[idx]];
        let u = self.branch[i];
        let mut path = vec![u];
        self.extend(idx, used, self.branch[j], &mut path, 1 << u)
    }

    fn extend(
        &mut self,
        idx: usize,
        used: u64,
        target: usize,
        path: &mut Vec<usize>,
        pmask: u64,
    ) -> Result<bool> {
        self.stepper.tick()?;
        let cur = *path.last().expect("path never empty");
        for w in bits(self.g.neighbors(cur)) {
            if w == target {
                path.push(w);
                let internal = mask_of(&path[1..path.len() - 1]);
                self.slots[self.order[idx]] = path.clone();
                if self.pack(idx + 1, used | internal)? {
                    return Ok(true);
                }
                self.slots[self.order[idx]].clear();
                path.pop();
            } else if used & (1 << w) == 0 && pmask & (1 << w) == 0 {
                path.push(w);
                if self.extend(idx, used, target, path, pmask | (1 << w))? {
                    return Ok(true);
                }
                path.pop();
            }
        }
        Ok(false)
    }
}

/// Try to realize a TK5 on an exact branch set. Pairs are packed in
/// ascending order of candidate-path count so scarce pairs fail first.
fn try_pack(g: &Graph, branch: [usize; 5], stepper: &mut Stepper) -> Result<Option<Tk5Witness>> {
    let bmask = mask_of(&branch);
    let mut counts = [0u64; 10];
    for (k, &(i, j)) in PAIR_ORDER.iter().enumerate() {
        counts[k] = count_paths(g, branch[i], branch[j], bmask, FAIL_FIRST_CAP, stepper)?;
        if counts[k] == 0 {
            return Ok(None);
        }
    }
    let mut order: Vec<usize> = (0..10).collect();
    order.sort_by_key(|&k| counts[k]);
    let mut packer = Packer {
        g,
        branch,
        order,
        slots: vec![Vec::new(); 10],
        stepper,
    };
    if packer.pack(0, bmask)? {
        let w = Tk5Witness {
            branch: branch.to_vec(),
            paths: packer.slots,
        };
        debug_assert!(verify_tk5(g, &w).is_valid());
        Ok(Some(w))
    } else {
        Ok(None)
    }
}

/// Iterate candidate branch 5-sets (descending degree sum, then
/// lexicographic) and return the first packable witness. With `require`
/// set, only 5-sets containing those four vertices are visited.
fn search_branch_sets(
    g: &Graph,
    require: Option<[usize; 4]>,
    stepper: &mut Stepper,
) -> Result<Option<Tk5Witness>> {
    let cands: Vec<usize> = g.vertices().filter(|&v| g.degree(v) >= 4).collect();
    let mut combos: Vec<[usize; 5]> = Vec::new();
    match require {
        Some(req) => {
            if req.iter().any(|&v| !cands.contains(&v)) {
                return Ok(None);
            }
            stepper.charge(cands.len() as u64)?;
            for &v in &cands {
                if req.contains(&v) {
                    continue;
                }
                let mut combo = [req[0], req[1], req[2], req[3], v];
                combo.sort_unstable();
                combos.push(combo);
            }
        }
        None => {
            if cands.len() < 5 {
                return Ok(None);
            }
            stepper.charge(binom(cands.len() as u64, 5))?;
            let mut pick = [0usize; 5];
            fn rec(
                cands: &[usize],
                start: usize,
                depth: usize,
                pick: &mut [usize; 5],
                out: &mut Vec<[usize; 5]>,
            ) {
                if depth == 5 {
                    out.push(*pick);
                    return;
                }
                for i in start..cands.len() {
                    pick[depth] = cands[i];
                    rec(cands, i + 1, depth + 1, pick, out);
                }
            }
            rec(&cands, 0, 0, &mut pick, &mut combos);
        }
    }
    let degsum = |c: &[usize; 5]| -> usize { c.iter().map(|&v| g.degree(v)).sum() };
    combos.sort_by(|a, b| degsum(b).cmp(&degsum(a)).then(a.cmp(b)));
    for combo in combos {
        if let Some(w) = try_pack(g, combo, stepper)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Exhaustive-with-pruning TK5 search: the oracle the rest of the crate is
/// measured against. Deterministic; `None` means no TK5 exists within the
/// budget's reach.
pub fn find_tk5(g: &Graph, budget: Budget) -> Result<Option<Tk5Witness>> {
    let mut stepper = Stepper::new(budget);
    search_branch_sets(g, None, &mut stepper)
}

// ---------------------------------------------------------------------------
// Lifting witnesses through a contraction.
// ---------------------------------------------------------------------------

/// Lift a witness found in `contract(original, contracted_set)` back to the
/// original graph.
///
/// Vertices outside the contracted set translate by the inverse of
/// `mapping`. The contraction vertex, when used, is expanded: as a path
/// internal it becomes a connecting path through the contracted set, and as
/// a branch vertex it becomes some base vertex of the set fanning out to
/// the four attachment vertices by independent paths. [`Error::LiftFailed`]
/// signals that no base vertex hosts the fan — a search-level retry, not a
/// structural impossibility.
pub fn lift_witness(
    w: &Tk5Witness,
    mapping: &[usize],
    original: &Graph,
    contracted_set: u64,
) -> Result<Tk5Witness> {
    if w.branch.len() != 5 || w.paths.len() != 10 {
        return Err(Error::BadParameters("malformed witness".into()));
    }
    if contracted_set == 0 {
        return Err(Error::EmptySet);
    }
    if mapping.len() != original.n() || contracted_set & !original.full_mask() != 0 {
        return Err(Error::BadParameters(
            "mapping or contracted set does not fit the graph".into(),
        ));
    }
    let rep = contracted_set.trailing_zeros() as usize;
    let xt = mapping[rep];
    let h_n = original.n() - contracted_set.count_ones() as usize + 1;
    let mut inv = vec![usize::MAX; h_n];
    for (v, &img) in mapping.iter().enumerate() {
        if contracted_set & (1 << v) == 0 {
            inv[img] = v;
        }
    }
    inv[xt] = rep; // only consulted when the set is a single vertex
    let translate = |p: &[usize]| -> Vec<usize> { p.iter().map(|&z| inv[z]).collect() };

    let branch_pos = w.branch.iter().position(|&b| b == xt);
    if branch_pos.is_none() && !w.paths.iter().any(|p| p[1..p.len() - 1].contains(&xt)) {
        // The contraction vertex is unused (or the set is a single vertex,
        // making `inv` a faithful relabeling): translate everything.
        return Ok(Tk5Witness {
            branch: translate(&w.branch),
            paths: w.paths.iter().map(|p| translate(p)).collect(),
        });
    }

    if let Some(bi) = branch_pos {
        return lift_branch(w, original, contracted_set, bi, &inv);
    }

    // Internal case: exactly one path passes through the contraction vertex.
    let k = w
        .paths
        .iter()
        .position(|p| p[1..p.len() - 1].contains(&xt))
        .expect("checked above");
    let p = &w.paths[k];
    let pos = p.iter().position(|&z| z == xt).expect("internal vertex");
    let u = inv[p[pos - 1]];
    let v = inv[p[pos + 1]];
    let through = bfs_through(original, contracted_set, u, v).ok_or_else(|| {
        Error::LiftFailed(format!("no {u}–{v} path through the contracted set"))
    })?;
    let mut lifted_path: Vec<usize> = p[..pos].iter().map(|&z| inv[z]).collect();
    lifted_path.extend_from_slice(&through[1..]);
    lifted_path.extend(p[pos + 2..].iter().map(|&z| inv[z]));
    let mut paths: Vec<Vec<usize>> = w.paths.iter().map(|q| translate(q)).collect();
    paths[k] = lifted_path;
    let lifted = Tk5Witness {
        branch: translate(&w.branch),
        paths,
    };
    match verify_tk5(original, &lifted) {
        WitnessVerdict::Valid => Ok(lifted),
        WitnessVerdict::Violation { clause, detail } => Err(Error::LiftFailed(format!(
            "rerouted witness fails {clause}: {detail}"
        ))),
    }
}

/// Shortest path from `u` to `v` whose internal vertices lie in `allowed`.
fn bfs_through(g: &Graph, allowed: u64, u: usize, v: usize) -> Option<Vec<usize>> {
    let scope = allowed | (1 << u) | (1 << v);
    let mut parent = vec![usize::MAX; g.n()];
    let mut queue = std::collections::VecDeque::from([u]);
    let mut seen = 1u64 << u;
    while let Some(cur) = queue.pop_front() {
        if cur == v {
            let mut path = vec![v];
            let mut z = v;
            while z != u {
                z = parent[z];
                path.push(z);
            }
            path.reverse();
            return Some(path);
        }
        for w in bits(g.neighbors(cur) & scope & !seen) {
            seen |= 1 << w;
            parent[w] = cur;
            queue.push_back(w);
        }
    }
    None
}

/// Branch-vertex lift: pick a base inside the contracted set and fan out to
/// the four attachment vertices of the incident witness paths.
fn lift_branch(
    w: &Tk5Witness,
    original: &Graph,
    contracted_set: u64,
    bi: usize,
    inv: &[usize],
) -> Result<Tk5Witness> {
    // Attachment vertex of each incident path: the neighbor of the branch
    // vertex along the path, translated to the original graph.
    let mut attachments = Vec::new(); // (path index, attachment, xt_at_start)
    for (k, &(i, j)) in PAIR_ORDER.iter().enumerate() {
        if i == bi {
            attachments.push((k, inv[w.paths[k][1]], true));
        } else if j == bi {
            let p = &w.paths[k];
            attachments.push((k, inv[p[p.len() - 2]], false));
        }
    }
    debug_assert_eq!(attachments.len(), 4);
    let targets: Vec<usize> = attachments.iter().map(|&(_, a, _)| a).collect();
    if mask_of(&targets).count_ones() != 4 {
        return Err(Error::LiftFailed("attachment vertices collide".into()));
    }

    // Fan graph: edges inside the contracted set plus set–attachment edges;
    // attachment–attachment edges are withheld so fan paths route through
    // the set or end immediately.
    let mut fan_g = Graph::empty(original.n())?;
    for (u, v) in original.edges() {
        let (iu, iv) = (
            contracted_set & (1 << u) != 0,
            contracted_set & (1 << v) != 0,
        );
        let (au, av) = (targets.contains(&u), targets.contains(&v));
        if (iu && iv) || (iu && av) || (au && iv) {
            fan_g.add_edge(u, v)?;
        }
    }

    for b in bits(contracted_set) {
        let Some(system) = fan(&fan_g, b, &targets, 4) else {
            continue;
        };
        let fan_path = |att: usize| -> &Vec<usize> {
            system
                .paths
                .iter()
                .find(|p| *p.last().expect("fan paths are nonempty") == att)
                .expect("fan covers every target")
        };
        let mut branch: Vec<usize> = w.branch.iter().map(|&z| inv[z]).collect();
        branch[bi] = b;
        let mut paths: Vec<Vec<usize>> = w
            .paths
            .iter()
            .map(|p| p.iter().map(|&z| inv[z]).collect())
            .collect();
        for &(k, att, xt_at_start) in &attachments {
            let old = &w.paths[k];
            let through = fan_path(att);
            if xt_at_start {
                // Path ran x_T → …: the fan path base → attachment leads in.
                let mut p: Vec<usize> = through.clone();
                p.extend(old[2..].iter().map(|&z| inv[z]));
                paths[k] = p;
            } else {
                // Path ran … → x_T: walk to the attachment, then back down
                // the fan path to the base.
                let mut p: Vec<usize> = old[..old.len() - 1].iter().map(|&z| inv[z]).collect();
                p.extend(through.iter().rev().skip(1));
                paths[k] = p;
            }
        }
        let lifted = Tk5Witness { branch, paths };
        if verify_tk5(original, &lifted).is_valid() {
            return Ok(lifted);
        }
    }
    Err(Error::LiftFailed(
        "no base vertex in the contracted set hosts a 4-fan".into(),
    ))
}

// ---------------------------------------------------------------------------
// Structured search.
// ---------------------------------------------------------------------------

/// Grow a connected patch from `x` while the quotient stays 5-connected
/// (in the contracted sense) and nonplanar, then search the quotient and
/// lift. `None` means this start vertex yielded nothing.
fn contract_and_search(
    g: &Graph,
    x: usize,
    stepper: &mut Stepper,
) -> Result<Option<Tk5Witness>> {
    let mut m = 1u64 << x;
    loop {
        let mut grown = false;
        for v in bits(g.set_neighbors(m) & !m) {
            stepper.tick()?;
            let cand = m | (1 << v);
            let (h, _) = contract(g, cand)?;
            if is_five_connected_contracted(&h)?
                && matches!(planarity(&h), Planarity::Kuratowski(_))
            {
                m = cand;
                grown = true;
                break;
            }
        }
        if !grown {
            break;
        }
    }
    if m.count_ones() < 2 {
        return Ok(None);
    }
    let (h, mapping) = contract(g, m)?;
    let mut found = None;
    if let Some(seed) = graph::find_k4_minus(&h) {
        found = search_branch_sets(&h, Some(seed), stepper)?;
    }
    if found.is_none() {
        found = search_branch_sets(&h, None, stepper)?;
    }
    match found {
        Some(w) => match lift_witness(&w, &mapping, g, m) {
            Ok(lifted) => Ok(Some(lifted)),
            Err(Error::LiftFailed(_)) => Ok(None),
            Err(e) => Err(e),
        },
        None => Ok(None),
    }
}

/// Structured TK5 search with a strategy trace.
///
/// Pipeline: planar inputs short-circuit to `None`; a K4⁻ seeds the
/// branch-set search; otherwise connected patches are contracted away and
/// the smaller graph searched, lifting any witness back; finally the
/// exhaustive oracle runs on the original graph. The trace records each
/// stage attempted, in order.
pub fn find_tk5_structured(
    g: &Graph,
    budget: Budget,
) -> Result<(Option<Tk5Witness>, Vec<String>)> {
    let mut trace = Vec::new();
    if let Planarity::Planar(_) = planarity(g) {
        trace.push("planar short-circuit".to_string());
        return Ok((None, trace));
    }
    let mut stepper = Stepper::new(budget);
    if let Some(seed) = graph::find_k4_minus(g) {
        trace.push("K4⁻ seed".to_string());
        if let Some(w) = search_branch_sets(g, Some(seed), &mut stepper)? {
            debug_assert!(verify_tk5(g, &w).is_valid());
            return Ok((Some(w), trace));
        }
    } else {
        for x in g.vertices() {
            if let Some(w) = contract_and_search(g, x, &mut stepper)? {
                trace.push(format!("contraction search at {x}"));
                debug_assert!(verify_tk5(g, &w).is_valid());
                return Ok((Some(w), trace));
            }
        }
        trace.push("contraction search exhausted".to_string());
    }
    trace.push("exhaustive fallback".to_string());
    let w = search_branch_sets(g, None, &mut stepper)?;
    if let Some(ref witness) = w {
        debug_assert!(verify_tk5(g, witness).is_valid());
    }
    Ok((w, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_edge_witness(branch: [usize; 5]) -> Tk5Witness {
        Tk5Witness {
            branch: branch.to_vec(),
            paths: PAIR_ORDER
                .iter()
                .map(|&(i, j)| vec![branch[i], branch[j]])
                .collect(),
        }
    }

    #[test]
    fn k5_with_single_edges_is_valid() {
        let g = Graph::complete(5);
        let w = single_edge_witness([0, 1, 2, 3, 4]);
        assert!(verify_tk5(&g, &w).is_valid());
    }

    #[test]
    fn shared_internal_vertex_is_named() {
        // K5 plus an apex: reroute two paths through the apex.
        let g = Graph::complete(6);
        let mut w = single_edge_witness([0, 1, 2, 3, 4]);
        w.paths[0] = vec![0, 5, 1];
        w.paths[7] = vec![2, 5, 3];
        match verify_tk5(&g, &w) {
            WitnessVerdict::Violation { clause, detail } => {
                assert_eq!(clause, "internal disjointness");
                assert!(detail.contains('5'), "{detail}");
            }
            WitnessVerdict::Valid => panic!("shared internal vertex accepted"),
        }
    }

    #[test]
    fn branch_vertex_inside_a_path_is_rejected() {
        let g = Graph::complete(5);
        let mut w = single_edge_witness([0, 1, 2, 3, 4]);
        w.paths[0] = vec![0, 2, 1];
        match verify_tk5(&g, &w) {
            WitnessVerdict::Violation { clause, .. } => {
                assert_eq!(clause, "internal avoids branch");
            }
            WitnessVerdict::Valid => panic!("branch-internal path accepted"),
        }
    }

    #[test]
    fn find_tk5_on_small_complete_graphs() {
        let w = find_tk5(&Graph::complete(5), Budget::default())
            .unwrap()
            .unwrap();
        assert_eq!(w, single_edge_witness([0, 1, 2, 3, 4]));

        let g = Graph::complete(6);
        let w = find_tk5(&g, Budget::default()).unwrap().unwrap();
        assert!(verify_tk5(&g, &w).is_valid());
        assert_eq!(w.branch, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn graphs_without_tk5_return_none() {
        // 3-regular: no vertex can host four paths.
        assert_eq!(
            find_tk5(&Graph::petersen(), Budget::default()).unwrap(),
            None
        );
        // Planar: no TK5 at all.
        assert_eq!(
            find_tk5(&Graph::octahedron(), Budget::default()).unwrap(),
            None
        );
        assert_eq!(
            find_tk5(&Graph::icosahedron(), Budget::default()).unwrap(),
            None
        );
    }

    #[test]
    fn witness_survives_edge_deletions_only_off_its_paths() {
        let g = Graph::complete(6);
        let w = find_tk5(&g, Budget::default()).unwrap().unwrap();
        let mut broken = g.clone();
        let p = &w.paths[0];
        broken.remove_edge(p[0], p[1]);
        match verify_tk5(&broken, &w) {
            WitnessVerdict::Violation { clause, .. } => assert_eq!(clause, "edges"),
            WitnessVerdict::Valid => panic!("deleted witness edge accepted"),
        }
    }

    #[test]
    fn structured_short_circuits_planar_inputs() {
        let (w, trace) = find_tk5_structured(&Graph::octahedron(), Budget::default()).unwrap();
        assert_eq!(w, None);
        assert_eq!(trace, vec!["planar short-circuit".to_string()]);
    }

    #[test]
    fn structured_seeds_from_a_k4_minus_on_k6() {
        let g = Graph::complete(6);
        let (w, trace) = find_tk5_structured(&g, Budget::default()).unwrap();
        let w = w.unwrap();
        assert!(verify_tk5(&g, &w).is_valid());
        assert_eq!(trace[0], "K4⁻ seed");
    }

    #[test]
    fn structured_handles_triangle_free_k55() {
        let g = Graph::complete_bipartite(5, 5);
        assert!(graph::find_k4_minus(&g).is_none());
        let (w, trace) = find_tk5_structured(&g, Budget::default()).unwrap();
        let w = w.unwrap();
        assert!(verify_tk5(&g, &w).is_valid());
        assert!(!trace.is_empty());
    }

    #[test]
    fn lift_is_the_identity_for_single_vertex_sets() {
        let g = Graph::complete(6);
        let w = find_tk5(&g, Budget::default()).unwrap().unwrap();
        let (_, mapping) = contract(&g, 1 << 5).unwrap();
        let lifted = lift_witness(&w, &mapping, &g, 1 << 5).unwrap();
        assert_eq!(lifted, w);
    }

    #[test]
    fn lift_reroutes_an_internal_contraction_vertex() {
        // K5 minus the edge 0–1, reconnected by the path 0–5–6–1; the
        // contraction of {5,6} restores a graph whose witness must thread
        // the contraction vertex.
        let mut g = Graph::complete(5);
        g.remove_edge(0, 1);
        let mut g = {
            let mut h = Graph::empty(7).unwrap();
            for (u, v) in g.edges() {
                h.add_edge(u, v).unwrap();
            }
            h
        };
        g.add_edge(0, 5).unwrap();
        g.add_edge(5, 6).unwrap();
        g.add_edge(6, 1).unwrap();
        let m = (1 << 5) | (1 << 6);
        let (h, mapping) = contract(&g, m).unwrap();
        let w = find_tk5(&h, Budget::default()).unwrap().unwrap();
        assert!(w.paths.iter().any(|p| p[1..p.len() - 1].contains(&5)));
        let lifted = lift_witness(&w, &mapping, &g, m).unwrap();
        assert!(verify_tk5(&g, &lifted).is_valid());
        let rerouted = lifted
            .paths
            .iter()
            .find(|p| p.contains(&5) && p.contains(&6))
            .expect("some path must thread the contracted set");
        assert_eq!(rerouted, &vec![0, 5, 6, 1]);
    }

    #[test]
    fn lift_fans_out_when_the_contraction_vertex_is_a_branch() {
        // K4 on {0,1,2,3}; 4 sees {0,1,2}, 5 sees {3}, and 4–5 is an edge.
        // Contracting {4,5} yields K5, whose witness uses the contraction
        // vertex as a branch; the lift must fan out from 4 through 5.
        let mut g = Graph::complete(4);
        let mut h = Graph::empty(6).unwrap();
        for (u, v) in g.edges() {
            h.add_edge(u, v).unwrap();
        }
        g = h;
        for a in [0, 1, 2] {
            g.add_edge(4, a).unwrap();
        }
        g.add_edge(5, 3).unwrap();
        g.add_edge(4, 5).unwrap();
        let m = (1 << 4) | (1 << 5);
        let (h, mapping) = contract(&g, m).unwrap();
        assert_eq!(h.n(), 5);
        let w = find_tk5(&h, Budget::default()).unwrap().unwrap();
        assert!(w.branch.contains(&4));
        let lifted = lift_witness(&w, &mapping, &g, m).unwrap();
        assert!(verify_tk5(&g, &lifted).is_valid());
        assert!(lifted.branch.contains(&4));
        let threaded = lifted
            .paths
            .iter()
            .find(|p| p.contains(&5))
            .expect("the 3-attachment must route through 5");
        assert!(threaded.contains(&3) && threaded.contains(&4));
    }

    #[test]
    fn lift_fails_cleanly_when_no_fan_base_exists() {
        // As above but the set's two vertices split the attachments 2–2,
        // so neither end can host four independent paths.
        let mut g = {
            let mut h = Graph::empty(6).unwrap();
            for (u, v) in Graph::complete(4).edges() {
                h.add_edge(u, v).unwrap();
            }
            h
        };
        g.add_edge(4, 0).unwrap();
        g.add_edge(4, 1).unwrap();
        g.add_edge(5, 2).unwrap();
        g.add_edge(5, 3).unwrap();
        g.add_edge(4, 5).unwrap();
        let m = (1 << 4) | (1 << 5);
        let (h, mapping) = contract(&g, m).unwrap();
        let w = find_tk5(&h, Budget::default()).unwrap().unwrap();
        assert!(w.branch.contains(&4));
        assert!(matches!(
            lift_witness(&w, &mapping, &g, m),
            Err(Error::LiftFailed(_))
        ));
    }

    #[test]
    fn witnesses_round_trip_through_the_map_form() {
        let g = Graph::complete(6);
        let w = find_tk5(&g, Budget::default()).unwrap().unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert!(json.contains("\"branch\""));
        assert!(json.contains("\"0-1\""));
        let back: Tk5Witness = serde_json::from_str(&json).unwrap();
        assert_eq!(w, back);

        let mangled = json.replace("\"0-1\"", "\"0-9\"");
        assert!(serde_json::from_str::<Tk5Witness>(&mangled).is_err());
    }

    #[test]
    fn tiny_budgets_bail_out() {
        assert_eq!(
            find_tk5(&Graph::complete(6), Budget::with_steps(2)),
            Err(Error::BudgetExceeded)
        );
    }
}
