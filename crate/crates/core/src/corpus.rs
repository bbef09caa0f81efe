//! Seeded corpus generation and property sweeps.
//!
//! A [`CorpusSpec`] names a graph family plus parameters and a 64-bit seed;
//! [`generate`] is a pure function of the spec, so corpora are reproducible
//! across runs and machines. [`sweep`] runs selected property checks over a
//! corpus and returns a [`Report`] with per-graph outcomes, counterexample
//! payloads, and timing. [`all_graphs`] enumerates every unlabeled graph on
//! up to 8 vertices for exhaustive small-scale runs.

use crate::certify::{certify, verify_certificate};
use crate::graph::{self, bits, Graph};
use crate::planarity::{planarity, Planarity};
use crate::quadruples::check_lemma_4_1;
use crate::tk5::{find_tk5, verify_tk5};
use crate::{format, Budget, Error, Result};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::time::Instant;

/// A graph family with its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Circulant { n: usize, jumps: Vec<usize> },
    RandomRegular { n: usize, d: usize },
    RandomGnp { n: usize, p: f64 },
    FromFile { path: String },
}

/// A reproducible corpus entry: family, parameters, seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
}

impl CorpusSpec {
    /// Human-readable tag used in sweep reports and CLI output.
    pub fn label(&self) -> String {
        match &self.family {
            Family::Complete { n } => format!("complete(n={n})"),
            Family::CompleteBipartite { a, b } => format!("complete_bipartite(a={a},b={b})"),
            Family::Circulant { n, jumps } => format!("circulant(n={n},jumps={jumps:?})"),
            Family::RandomRegular { n, d } => {
                format!("random_regular(n={n},d={d},seed={})", self.seed)
            }
            Family::RandomGnp { n, p } => format!("random_gnp(n={n},p={p},seed={})", self.seed),
            Family::FromFile { path } => format!("from_file({path})"),
        }
    }
}

/// Build the graph a spec describes. Deterministic: the same spec always
/// yields the same graph, with all randomness drawn from a stream seeded by
/// `spec.seed`.
pub fn generate(spec: &CorpusSpec) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    match &spec.family {
        Family::Complete { n } => {
            Graph::empty(*n)?; // size check
            Ok(Graph::complete(*n))
        }
        Family::CompleteBipartite { a, b } => {
            Graph::empty(a + b)?;
            Ok(Graph::complete_bipartite(*a, *b))
        }
        Family::Circulant { n, jumps } => Graph::circulant(*n, jumps),
        Family::RandomRegular { n, d } => random_regular(*n, *d, &mut rng),
        Family::RandomGnp { n, p } => {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::BadParameters(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
            let mut g = Graph::empty(*n)?;
            for u in 0..*n {
                for v in (u + 1)..*n {
                    if rng.gen_bool(*p) {
                        g.add_edge(u, v)?;
                    }
                }
            }
            Ok(g)
        }
        Family::FromFile { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Io(format!("{path}: {e}")))?;
            format::parse_auto(&text)
        }
    }
}

/// Configuration-model sample of a d-regular graph: pair up vertex stubs at
/// random and retry whenever the pairing produces a loop or parallel edge.
fn random_regular(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if d >= n.max(1) {
        return Err(Error::BadParameters(format!(
            "degree {d} is not realizable on {n} vertices"
        )));
    }
    if n * d % 2 != 0 {
        return Err(Error::BadParameters(format!(
            "no {d}-regular graph on {n} vertices: odd degree sum"
        )));
    }
    Graph::empty(n)?;
    'attempt: for _ in 0..200 {
        let mut g = Graph::empty(n)?;
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(d)).collect();
        stubs.shuffle(rng);
        while !stubs.is_empty() {
            let mut placed = false;
            for _ in 0..50 {
                let i = rng.gen_range(0..stubs.len());
                let j = rng.gen_range(0..stubs.len());
                let (u, v) = (stubs[i], stubs[j]);
                if i == j || u == v || g.has_edge(u, v) {
                    continue;
                }
                g.add_edge(u, v)?;
                stubs.swap_remove(i.max(j));
                stubs.swap_remove(i.min(j));
                placed = true;
                break;
            }
            if !placed {
                // Sampling may just have been unlucky; restart only when no
                // valid stub pair remains at all.
                let stuck = !stubs.iter().enumerate().any(|(i, &u)| {
                    stubs.iter().skip(i + 1).any(|&v| u != v && !g.has_edge(u, v))
                });
                if stuck {
                    continue 'attempt;
                }
            }
        }
        return Ok(g);
    }
    Err(Error::BadParameters(format!(
        "failed to realize a random {d}-regular graph on {n} vertices"
    )))
}

/// Property checks a sweep can run per graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Property {
    /// `certify` produces a certificate and `verify_certificate` accepts it.
    #[serde(rename = "dichotomy")]
    Dichotomy,
    /// Every 5-connected nonplanar graph admits a verified TK5 witness
    /// (vacuous otherwise).
    #[serde(rename = "theorem_1_1")]
    Theorem11,
    /// Every quadruple at every vertex of a 5-connected graph has both sides
    /// of order ≥ 5 unless a K4⁻ is present (vacuous when not 5-connected).
    #[serde(rename = "lemma_4_1")]
    Lemma41,
}

impl std::str::FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dichotomy" => Ok(Property::Dichotomy),
            "theorem_1_1" => Ok(Property::Theorem11),
            "lemma_4_1" => Ok(Property::Lemma41),
            other => Err(Error::BadParameters(format!(
                "unknown property {other:?}; expected dichotomy, theorem_1_1, or lemma_4_1"
            ))),
        }
    }
}

impl std::fmt::Display for Property {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Property::Dichotomy => "dichotomy",
            Property::Theorem11 => "theorem_1_1",
            Property::Lemma41 => "lemma_4_1",
        })
    }
}

/// Result of one property check on one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub property: Property,
    pub pass: bool,
    /// On failure this carries the counterexample payload (or the error);
    /// on success a one-line summary.
    pub detail: String,
}

/// All outcomes for one corpus entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub label: String,
    /// Set when the graph could not even be generated.
    pub error: Option<String>,
    pub outcomes: Vec<PropertyOutcome>,
    pub elapsed_ms: u64,
}

impl SweepEntry {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.outcomes.iter().all(|o| o.pass)
    }
}

/// Aggregate sweep result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub entries: Vec<SweepEntry>,
    pub failures: usize,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.failures == 0
    }
}

fn check_property(g: &Graph, property: Property, budget: Budget) -> PropertyOutcome {
    let (pass, detail) = match property {
        Property::Dichotomy => match certify(g, false, budget) {
            Ok(c) => match verify_certificate(g, &c) {
                Ok(true) => (true, format!("{:?} certificate verified", c.kind)),
                Ok(false) => (
                    false,
                    format!(
                        "certificate failed verification: {}",
                        serde_json::to_string(&c).unwrap_or_default()
                    ),
                ),
                Err(e) => (false, format!("verification errored: {e}")),
            },
            Err(e) => (false, format!("certify failed: {e}")),
        },
        Property::Theorem11 => {
            if !graph::is_k_connected(g, 5) {
                (true, "vacuous: not 5-connected".into())
            } else if matches!(planarity(g), Planarity::Planar(_)) {
                (true, "vacuous: planar".into())
            } else {
                match find_tk5(g, budget) {
                    Ok(Some(w)) => match verify_tk5(g, &w) {
                        v if v.is_valid() => (true, "TK5 witness verified".into()),
                        v => (
                            false,
                            format!(
                                "witness rejected ({v:?}): {}",
                                serde_json::to_string(&w).unwrap_or_default()
                            ),
                        ),
                    },
                    Ok(None) => (false, "5-connected nonplanar but no TK5 found".into()),
                    Err(e) => (false, format!("search failed: {e}")),
                }
            }
        }
        Property::Lemma41 => {
            if !graph::is_k_connected(g, 5) {
                (true, "vacuous: not 5-connected".into())
            } else {
                let mut failure = None;
                for x in g.vertices() {
                    match check_lemma_4_1(g, x, budget) {
                        Ok(true) => {}
                        Ok(false) => {
                            failure = Some(format!("violated at vertex {x}"));
                            break;
                        }
                        Err(e) => {
                            failure = Some(format!("check errored at vertex {x}: {e}"));
                            break;
                        }
                    }
                }
                match failure {
                    None => (true, "holds at every vertex".into()),
                    Some(d) => (false, d),
                }
            }
        }
    };
    PropertyOutcome {
        property,
        pass,
        detail,
    }
}

/// Run `properties` over already-built graphs. Generation is the caller's
/// problem; every entry in the result corresponds to one input graph.
pub fn sweep_graphs<I>(graphs: I, properties: &[Property], budget: Budget) -> Report
where
    I: IntoIterator<Item = (String, Graph)>,
{
    let mut entries = Vec::new();
    for (label, g) in graphs {
        let started = Instant::now();
        let outcomes = properties
            .iter()
            .map(|&p| check_property(&g, p, budget))
            .collect();
        entries.push(SweepEntry {
            label,
            error: None,
            outcomes,
            elapsed_ms: started.elapsed().as_millis() as u64,
        });
    }
    let failures = entries.iter().filter(|e| !e.passed()).count();
    Report { entries, failures }
}

/// Generate each spec and run `properties` on it. Generation failures are
/// recorded as failing entries rather than aborting the sweep.
pub fn sweep(specs: &[CorpusSpec], properties: &[Property], budget: Budget) -> Report {
    let mut entries = Vec::new();
    for spec in specs {
        let started = Instant::now();
        let entry = match generate(spec) {
            Ok(g) => SweepEntry {
                label: spec.label(),
                error: None,
                outcomes: properties
                    .iter()
                    .map(|&p| check_property(&g, p, budget))
                    .collect(),
                elapsed_ms: started.elapsed().as_millis() as u64,
            },
            Err(e) => SweepEntry {
                label: spec.label(),
                error: Some(e.to_string()),
                outcomes: Vec::new(),
                elapsed_ms: started.elapsed().as_millis() as u64,
            },
        };
        entries.push(entry);
    }
    let failures = entries.iter().filter(|e| !e.passed()).count();
    Report { entries, failures }
}

/// Neighborhood color refinement seeded by (degree, local triangle count).
/// Each round replaces a vertex's color with a digest of its own color and
/// the sorted colors around it, so color values depend only on local
/// structure and are comparable across graphs: isomorphic graphs always get
/// equal color multisets. (A digest collision could merge two classes and
/// cost a redundant isomorphism probe, never a wrong answer.)
fn refined_colors(g: &Graph) -> Vec<u64> {
    use std::collections::hash_map::DefaultHasher;
    use std::hash::{Hash, Hasher};
    let n = g.n();
    let mut color: Vec<u64> = (0..n)
        .map(|v| {
            let triangles: u32 = bits(g.neighbors(v))
                .map(|u| (g.neighbors(v) & g.neighbors(u)).count_ones())
                .sum();
            ((g.degree(v) as u64) << 8) | (triangles / 2) as u64
        })
        .collect();
    for _ in 0..3 {
        color = (0..n)
            .map(|v| {
                let mut around: Vec<u64> = bits(g.neighbors(v)).map(|u| color[u]).collect();
                around.sort_unstable();
                let mut h = DefaultHasher::new();
                color[v].hash(&mut h);
                around.hash(&mut h);
                h.finish()
            })
            .collect();
    }
    color
}

/// Cheap isomorphism-invariant bucket key: order, size, refined colors.
fn invariant(g: &Graph) -> Vec<u64> {
    let mut key = vec![g.n() as u64, g.edge_count() as u64];
    let mut colors = refined_colors(g);
    colors.sort_unstable();
    key.extend(colors);
    key
}

fn extend_iso(
    a: &Graph,
    b: &Graph,
    ca: &[u64],
    cb: &[u64],
    order: &[usize],
    map: &mut [usize],
    used: &mut [bool],
    i: usize,
) -> bool {
    if i == order.len() {
        return true;
    }
    let u = order[i];
    for v in 0..b.n() {
        if used[v] || cb[v] != ca[u] {
            continue;
        }
        if order[..i]
            .iter()
            .all(|&w| a.has_edge(u, w) == b.has_edge(v, map[w]))
        {
            map[u] = v;
            used[v] = true;
            if extend_iso(a, b, ca, cb, order, map, used, i + 1) {
                return true;
            }
            used[v] = false;
            map[u] = usize::MAX;
        }
    }
    false
}

/// Exact isomorphism test by color-pruned backtracking; fine for n ≤ 8.
fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if b.n() != n || a.edge_count() != b.edge_count() {
        return false;
    }
    let ca = refined_colors(a);
    let cb = refined_colors(b);
    let mut sa = ca.clone();
    let mut sb = cb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    // Rarest color classes first so mismatches surface early.
    let mut class_size = HashMap::new();
    for &c in &ca {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&ca[v]], ca[v], v));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_iso(a, b, &ca, &cb, &order, &mut map, &mut used, 0)
}

/// Every unlabeled graph on exactly `n` vertices, one representative per
/// isomorphism class, by vertex augmentation with bucketed deduplication.
/// Capped at n = 8 (12,346 classes); beyond that the census outgrows desk
/// scale.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > 8 {
        return Err(Error::TooLarge { n, max: 8 });
    }
    let mut current = vec![Graph::empty(0)?];
    for k in 1..=n {
        let mut accepted: Vec<Graph> = Vec::new();
        let mut buckets: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
        for h in &current {
            for sel in 0u64..(1 << (k - 1)) {
                let mut g = Graph::empty(k)?;
                for (u, v) in h.edges() {
                    g.add_edge(u, v)?;
                }
                for u in bits(sel) {
                    g.add_edge(u, k - 1)?;
                }
                let bucket = buckets.entry(invariant(&g)).or_default();
                if !bucket.iter().any(|&i| isomorphic(&accepted[i], &g)) {
                    bucket.push(accepted.len());
                    accepted.push(g);
                }
            }
        }
        current = accepted;
    }
    Ok(current)
}

/// The connected members of [`all_graphs`].
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    Ok(all_graphs(n)?
        .into_iter()
        .filter(|g| g.is_connected())
        .collect())
}
