//! Acceptance suite: one test per criterion, each printing a single
//! pass/fail line (visible with `--nocapture`; the per-test ok/FAILED status
//! mirrors it). Oracles live in `common` and share no search code with the
//! library.

mod common;

use common::{
    apollonian, cycle_masks, five_connected_nonplanar_samples, is_cycle_through,
    octahedron_plus_edge, set_bits, two_disjoint_paths_exist,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use std::time::Instant;
use tk5cert::certify::{certify, verify_certificate};
use tk5cert::corpus::{all_graphs, generate, CorpusSpec, Family};
use tk5cert::graph::{self, find_k4_minus, Graph};
use tk5cert::ladders::{
    build_ladder, classify_simple_rung, reduced_sequence, verify_ladder, RungInstance,
    SimpleShape,
};
use tk5cert::paths::{
    cycle_through_three, fan, forced_middle_triple, perfect_reroute, two_dp_or_three_planar,
    CycleOutcome, TripleOutcome, TwoDPOutcome,
};
use tk5cert::planarity::{euler_charge_sum, planarity, KuratowskiKind, Planarity};
use tk5cert::quadruples::{
    check_lemma_4_1, is_contraction_critical_at, min_quadruple, quadruple_for_edge,
};
use tk5cert::tk5::{find_tk5, verify_tk5};
use tk5cert::Budget;

fn census_to_7() -> &'static Vec<Vec<Graph>> {
    static CENSUS: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    CENSUS.get_or_init(|| (0..=7).map(|n| all_graphs(n).unwrap()).collect())
}

fn census_8() -> &'static Vec<Graph> {
    static CENSUS: OnceLock<Vec<Graph>> = OnceLock::new();
    CENSUS.get_or_init(|| all_graphs(8).unwrap())
}

/// Criterion 1: every graph on ≤ 7 vertices plus 1,000 seeded random graphs
/// on 8–12 vertices gets exactly one certificate, and every certificate
/// re-verifies; the whole sweep stays within ten minutes.
#[test]
fn criterion_1_dichotomy_sweep() {
    let started = Instant::now();
    let mut graphs: Vec<Graph> = census_to_7().iter().flatten().cloned().collect();
    assert_eq!(graphs.len(), 1 + 1 + 2 + 4 + 11 + 34 + 156 + 1044);
    let ps = [0.15, 0.3, 0.45, 0.6, 0.75];
    for i in 0..1000u64 {
        let spec = CorpusSpec {
            family: Family::RandomGnp {
                n: 8 + (i as usize % 5),
                p: ps[(i as usize / 5) % ps.len()],
            },
            seed: 90_000 + i,
        };
        graphs.push(generate(&spec).unwrap());
    }
    let total = graphs.len();
    for (i, g) in graphs.iter().enumerate() {
        let cert = certify(g, false, Budget::default())
            .unwrap_or_else(|e| panic!("certify failed on graph {i} ({g:?}): {e}"));
        assert_eq!(
            verify_certificate(g, &cert),
            Ok(true),
            "certificate for graph {i} ({g:?}) does not re-verify"
        );
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 600,
        "sweep took {elapsed:?}, over the ten-minute ceiling"
    );
    println!(
        "criterion 1: pass — {total} graphs certified and re-verified in {:.1}s",
        elapsed.as_secs_f64()
    );
}

/// Criterion 2: on the named dense graphs and on seeded random 5-connected
/// nonplanar samples, the direct search finds a TK5 witness that passes the
/// independent verifier — no failures.
#[test]
fn criterion_2_tk5_witnesses_on_dense_corpus() {
    let mut corpus: Vec<(String, Graph)> = vec![
        ("K6".into(), Graph::complete(6)),
        ("K7".into(), Graph::complete(7)),
        ("K5,5".into(), Graph::complete_bipartite(5, 5)),
        ("K2,2,2 plus an edge".into(), octahedron_plus_edge()),
    ];
    corpus.extend(five_connected_nonplanar_samples(20, 2024));
    let total = corpus.len();
    for (label, g) in &corpus {
        let w = find_tk5(g, Budget::default())
            .unwrap_or_else(|e| panic!("search failed on {label}: {e}"))
            .unwrap_or_else(|| panic!("no TK5 witness found in {label}"));
        assert!(
            verify_tk5(g, &w).is_valid(),
            "witness for {label} failed verification"
        );
    }
    println!("criterion 2: pass — TK5 witnesses found and verified on {total} graphs");
}

/// Criterion 3: the two-disjoint-paths decision agrees with brute-force
/// path enumeration on every graph with ≤ 7 vertices over every ordered
/// terminal quadruple.
#[test]
fn criterion_3_two_disjoint_paths_oracle() {
    let mut instances = 0u64;
    let mut linked = 0u64;
    let mut obstructed = 0u64;
    for level in &census_to_7()[4..] {
        for g in level {
            let n = g.n();
            for s1 in 0..n {
                for s2 in 0..n {
                    for t1 in 0..n {
                        for t2 in 0..n {
                            let m = (1u64 << s1) | (1 << s2) | (1 << t1) | (1 << t2);
                            if m.count_ones() != 4 {
                                continue;
                            }
                            instances += 1;
                            let want = two_disjoint_paths_exist(g, s1, t1, s2, t2);
                            match two_dp_or_three_planar(g, s1, s2, t1, t2, Budget::default()) {
                                Ok(TwoDPOutcome::Paths(ps)) => {
                                    assert!(
                                        want,
                                        "paths returned but oracle finds none: \
                                         {g:?} terminals ({s1},{t1}),({s2},{t2})"
                                    );
                                    assert!(ps.verify(g));
                                    let ends: Vec<u64> = ps
                                        .paths
                                        .iter()
                                        .map(|p| {
                                            (1u64 << p[0]) | (1 << p[p.len() - 1])
                                        })
                                        .collect();
                                    assert!(ends
                                        .contains(&((1u64 << s1) | (1 << t1))));
                                    assert!(ends
                                        .contains(&((1u64 << s2) | (1 << t2))));
                                    linked += 1;
                                }
                                Ok(TwoDPOutcome::Obstruction(_)) => {
                                    assert!(
                                        !want,
                                        "obstruction returned but oracle links: \
                                         {g:?} terminals ({s1},{t1}),({s2},{t2})"
                                    );
                                    obstructed += 1;
                                }
                                Err(e) => panic!(
                                    "decision failed on {g:?} terminals \
                                     ({s1},{t1}),({s2},{t2}): {e}"
                                ),
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(linked > 0 && obstructed > 0);
    println!(
        "criterion 3: pass — {instances} ordered quadruples agree with the oracle \
         ({linked} linked, {obstructed} obstructed)"
    );
}

/// Criterion 4: the cycle-through-three-vertices decision agrees with
/// exhaustive cycle enumeration on every 2-connected graph with ≤ 8
/// vertices over every vertex triple, and each obstruction re-verifies.
#[test]
fn criterion_4_cycle_through_three_oracle() {
    let mut graphs: Vec<&Graph> = census_to_7()[3..].iter().flatten().collect();
    graphs.extend(census_8().iter());
    graphs.retain(|g| graph::is_k_connected(g, 2));
    let mut instances = 0u64;
    let mut cycles = 0u64;
    let mut obstructions = 0u64;
    for g in &graphs {
        let masks = cycle_masks(g);
        let n = g.n();
        for y1 in 0..n {
            for y2 in y1 + 1..n {
                for y3 in y2 + 1..n {
                    instances += 1;
                    let tm = (1u64 << y1) | (1 << y2) | (1 << y3);
                    let want = masks.iter().any(|&m| m & tm == tm);
                    match cycle_through_three(g, y1, y2, y3, Budget::default()) {
                        Ok(CycleOutcome::Cycle(c)) => {
                            assert!(
                                want,
                                "cycle returned but oracle finds none: {g:?} {y1},{y2},{y3}"
                            );
                            assert!(
                                is_cycle_through(g, &c, &[y1, y2, y3]),
                                "bad cycle {c:?} on {g:?}"
                            );
                            cycles += 1;
                        }
                        Ok(CycleOutcome::Obstruction(o)) => {
                            assert!(
                                !want,
                                "obstruction returned but a cycle exists: {g:?} {y1},{y2},{y3}"
                            );
                            assert!(
                                o.verify(g, [y1, y2, y3]),
                                "obstruction fails re-verification on {g:?}: {o:?}"
                            );
                            obstructions += 1;
                        }
                        Err(e) => panic!("decision failed on {g:?} {y1},{y2},{y3}: {e}"),
                    }
                }
            }
        }
    }
    assert!(cycles > 0 && obstructions > 0);
    println!(
        "criterion 4: pass — {instances} triples across {} graphs agree with the oracle \
         ({cycles} cycles, {obstructions} obstructions)",
        graphs.len()
    );
}

/// Criterion 5: the per-vertex/per-face charge total is exactly −8 on at
/// least 100 verified connected plane embeddings.
#[test]
fn criterion_5_euler_charge_identity() {
    let mut graphs: Vec<(String, Graph)> = vec![
        ("K4".into(), Graph::complete(4)),
        ("cube".into(), Graph::cube()),
        ("octahedron".into(), Graph::octahedron()),
        ("dodecahedron".into(), Graph::dodecahedron()),
        ("icosahedron".into(), Graph::icosahedron()),
    ];
    for r in 1..=6 {
        for c in r..=6 {
            graphs.push((format!("grid {r}x{c}"), Graph::grid(r, c)));
        }
    }
    for n in 3..=14 {
        graphs.push((format!("C{n}"), Graph::cycle(n)));
    }
    for k in 3..=10 {
        graphs.push((format!("wheel {k}"), Graph::wheel(k)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5150);
    for i in 0..60 {
        let extra = rng.gen_range(1..=15);
        graphs.push((format!("triangulation #{i}"), apollonian(extra, &mut rng)));
    }
    let total = graphs.len();
    assert!(total >= 100);
    for (label, g) in &graphs {
        let emb = match planarity(g) {
            Planarity::Planar(emb) => emb,
            Planarity::Kuratowski(_) => panic!("{label} reported nonplanar"),
        };
        assert!(emb.verify(g), "embedding of {label} fails verification");
        assert_eq!(
            euler_charge_sum(g, &emb),
            -8,
            "charge total off on {label}"
        );
    }
    println!("criterion 5: pass — charge total −8 on {total} verified embeddings");
}

/// Criterion 6: every generated ladder (all mixes of shapes i/ii/iv, one to
/// four rungs) forces the middle linkage, witnessed by three disjoint
/// end-to-end paths.
#[test]
fn criterion_6_ladders_force_the_middle() {
    let shapes = [SimpleShape::I, SimpleShape::II, SimpleShape::IV];
    let mut chains: Vec<Vec<SimpleShape>> = Vec::new();
    for len in 1..=4usize {
        for code in 0..3usize.pow(len as u32) {
            let mut c = code;
            let chain = (0..len)
                .map(|_| {
                    let s = shapes[c % 3];
                    c /= 3;
                    s
                })
                .collect();
            chains.push(chain);
        }
    }
    assert!(chains.len() >= 50);
    for chain in &chains {
        let l = build_ladder(chain).unwrap();
        assert!(verify_ladder(&l).is_valid(), "invalid ladder from {chain:?}");
        let (from, to) = (l.first_triple(), l.last_triple());
        match forced_middle_triple(&l.graph, from, to, Budget::default()) {
            Ok(TripleOutcome::Forced(ps)) => {
                assert!(ps.verify(&l.graph), "witness fails on {chain:?}");
                assert_eq!(ps.paths.len(), 3);
                let middle = (1u64 << from.1) | (1 << to.1);
                assert!(
                    ps.paths
                        .iter()
                        .any(|p| (1u64 << p[0]) | (1 << p[p.len() - 1]) == middle),
                    "no middle-to-middle path in the witness for {chain:?}"
                );
            }
            other => panic!("ladder {chain:?} not forced: {other:?}"),
        }
    }
    println!(
        "criterion 6: pass — {} ladders all force the middle linkage",
        chains.len()
    );
}

/// Criterion 7: on ≥ 100 seeded fan instances whose hypotheses are verified
/// independently, rerouting succeeds and path i passes through anchor i.
#[test]
fn criterion_7_perfect_rerouting() {
    let mut rng = ChaCha8Rng::seed_from_u64(7777);
    let mut valid = 0usize;
    let mut attempts = 0usize;
    while valid < 100 && attempts < 5000 {
        attempts += 1;
        let n = rng.gen_range(8..=11);
        let g = generate(&CorpusSpec {
            family: Family::RandomGnp { n, p: 0.55 },
            seed: rng.gen(),
        })
        .unwrap();
        let u = rng.gen_range(0..n);
        let pool: Vec<usize> = (0..n).filter(|&v| v != u).collect();
        let t_count = rng.gen_range(4..=6);
        let mut targets: Vec<usize> =
            pool.choose_multiple(&mut rng, t_count).copied().collect();
        targets.sort_unstable();
        let k = rng.gen_range(1..=3);
        let anchors: Vec<usize> =
            targets.choose_multiple(&mut rng, k).copied().collect();
        let want = rng.gen_range(k..=targets.len());

        // Hypothesis 1: an independent fan of the full size exists.
        if fan(&g, u, &targets, want).is_none() {
            continue;
        }
        // Hypothesis 2: a fan onto exactly the anchors, avoiding the other
        // targets entirely, exists in the graph with those targets removed.
        let tmask = targets.iter().fold(0u64, |m, &t| m | (1 << t));
        let amask = anchors.iter().fold(0u64, |m, &a| m | (1 << a));
        let keep = g.full_mask() & !(tmask & !amask);
        let (h, old) = g.induced(keep);
        let pos = |v: usize| old.binary_search(&v).unwrap();
        let anchors_h: Vec<usize> = anchors.iter().map(|&a| pos(a)).collect();
        if fan(&h, pos(u), &anchors_h, k).is_none() {
            continue;
        }

        valid += 1;
        let ps = perfect_reroute(&g, u, &targets, &anchors, want).unwrap_or_else(|e| {
            panic!(
                "reroute failed with verified hypotheses: {g:?} u={u} \
                 targets={targets:?} anchors={anchors:?} n={want}: {e}"
            )
        });
        assert!(ps.verify(&g));
        assert_eq!(ps.paths.len(), want);
        for (i, &a) in anchors.iter().enumerate() {
            assert!(
                ps.paths[i].contains(&a),
                "path {i} misses anchor {a}: {:?}",
                ps.paths
            );
        }
        for p in &ps.paths {
            assert_eq!(p[0], u);
            assert!(tmask & (1 << p[p.len() - 1]) != 0);
        }
    }
    assert!(
        valid >= 100,
        "only {valid} hypothesis-verified instances in {attempts} attempts"
    );
    println!("criterion 7: pass — {valid} rerouting instances all anchored correctly");
}

/// Criterion 8: the quadruple side bound holds at every vertex of every
/// 5-connected corpus graph; on contraction-critical pairs the edge recipe
/// never comes back empty-handed when a K4⁻-free graph demands it (and, for
/// graphs on ≥ 8 vertices, never at all), and the minimum quadruple's seed
/// is a triangle on K4⁻-free instances.
#[test]
fn criterion_8_quadruple_properties() {
    let k7_minus_e = {
        let mut g = Graph::complete(7);
        g.remove_edge(0, 6);
        g
    };
    let mut corpus: Vec<(String, Graph)> = vec![
        ("K6".into(), Graph::complete(6)),
        ("K7".into(), Graph::complete(7)),
        ("K7 minus an edge".into(), k7_minus_e),
        ("K5,5".into(), Graph::complete_bipartite(5, 5)),
        ("K6,6".into(), Graph::complete_bipartite(6, 6)),
        ("icosahedron".into(), Graph::icosahedron()),
        ("C13(1,3,4)".into(), Graph::circulant(13, &[1, 3, 4]).unwrap()),
    ];
    for (n, level) in census_to_7().iter().enumerate() {
        for (i, g) in level.iter().enumerate() {
            if graph::is_k_connected(g, 5) {
                corpus.push((format!("census n={n} #{i}"), g.clone()));
            }
        }
    }
    corpus.extend(five_connected_nonplanar_samples(12, 808));
    for (label, g) in &corpus {
        assert!(graph::is_k_connected(g, 5), "{label} is not 5-connected");
    }

    let mut vertices_checked = 0u64;
    let mut critical_pairs = 0u64;
    let mut recipe_runs_k4free = 0u64;
    let mut recipe_runs_large = 0u64;
    for (label, g) in &corpus {
        let k4_free = find_k4_minus(g).is_none();
        for x in g.vertices() {
            assert_eq!(
                check_lemma_4_1(g, x, Budget::default()),
                Ok(true),
                "side bound fails at vertex {x} of {label}"
            );
            vertices_checked += 1;
            if !is_contraction_critical_at(g, x, Budget::default()).unwrap() {
                continue;
            }
            critical_pairs += 1;
            if k4_free {
                for a in set_bits(g.neighbors(x)) {
                    quadruple_for_edge(g, x, a, Budget::default()).unwrap_or_else(|e| {
                        panic!("recipe failed on K4⁻-free {label}, edge {x}-{a}: {e}")
                    });
                    recipe_runs_k4free += 1;
                }
                let q = min_quadruple(g, x, Budget::default())
                    .unwrap()
                    .unwrap_or_else(|| panic!("no quadruple at all at {x} of {label}"));
                assert_eq!(
                    q.t.len(),
                    3,
                    "minimum quadruple at {x} of K4⁻-free {label} has a non-triangle seed"
                );
            }
            if g.n() >= 8 {
                for a in set_bits(g.neighbors(x)) {
                    quadruple_for_edge(g, x, a, Budget::default()).unwrap_or_else(|e| {
                        panic!("recipe failed on {label} (n ≥ 8), edge {x}-{a}: {e}")
                    });
                    recipe_runs_large += 1;
                }
            }
        }
    }
    assert!(recipe_runs_large >= 60, "the n ≥ 8 recipe sweep is vacuous");
    println!(
        "criterion 8: pass — side bound at {vertices_checked} vertices across {} graphs; \
         {critical_pairs} contraction-critical pairs, recipe clean on {recipe_runs_large} \
         large-graph edges and {recipe_runs_k4free} K4⁻-free edges",
        corpus.len()
    );
}

/// Criterion 9: pinned unit values — duplicate collapsing, the six-terminal
/// hub gadget's shape, and verified Kuratowski witnesses for K5 and K3,3.
#[test]
fn criterion_9_pinned_unit_values() {
    let seq: Vec<char> = "aaabcca".chars().collect();
    assert_eq!(reduced_sequence(&seq), "abca".chars().collect::<Vec<_>>());

    let gadget = Graph::from_edges(
        7,
        &[
            (6, 0),
            (6, 1),
            (6, 2),
            (6, 3),
            (6, 4),
            (6, 5),
            (0, 3),
            (1, 4),
            (2, 5),
        ],
    )
    .unwrap();
    let r = RungInstance::new(gadget, (0, 1, 2), (3, 4, 5));
    assert_eq!(
        classify_simple_rung(&r, false, Budget::default()).unwrap(),
        Some(SimpleShape::IV)
    );

    for (g, kind) in [
        (Graph::complete(5), KuratowskiKind::TK5),
        (Graph::complete_bipartite(3, 3), KuratowskiKind::TK33),
    ] {
        match planarity(&g) {
            Planarity::Kuratowski(w) => {
                assert_eq!(w.kind, kind);
                assert!(w.verify(&g), "Kuratowski witness fails on {g:?}");
            }
            Planarity::Planar(_) => panic!("{g:?} reported planar"),
        }
    }
    println!("criterion 9: pass — collapsed sequence, hub-gadget shape, Kuratowski witnesses");
}
