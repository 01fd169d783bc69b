//! Acceptance suite. Each test covers one numbered criterion, prints one
//! pass or fail line, and compares exact sixteenths with zero tolerance:
//! delta tables at full grid size, the product metric against search, the
//! component count rule, structural invariants across the corpus, oracle
//! equivalence, embedding constants, growth experiments, and the detour
//! inequality.

mod support;

use hypgraph::cycles::odd_girth;
use hypgraph::delta::{delta_exact, delta_vertex, delta_with, DeltaMode, DeltaOptions};
use hypgraph::dist::Rat;
use hypgraph::families::{generate, FamilySpec};
use hypgraph::graph::{Graph, HOP_INF};
use hypgraph::parity::product_distance_vertices;
use hypgraph::product::{direct_product, predict_component_count};
use hypgraph::reports::{find, Expected, ReportConfig, Status, TheoremReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use support::{brute_delta16, corpus};

fn conclude(n: u32, what: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    match std::panic::catch_unwind(body) {
        Ok(()) => println!("acceptance criterion {n}: pass - {what}"),
        Err(cause) => {
            println!("acceptance criterion {n}: fail - {what}");
            std::panic::resume_unwind(cause);
        }
    }
}

fn check(id: &str) -> TheoremReport {
    find(id)
        .unwrap_or_else(|| panic!("no check registered for {id}"))
        .run(&ReportConfig::default())
        .unwrap_or_else(|e| panic!("{id} did not run: {e}"))
}

fn assert_green(report: &TheoremReport) {
    for inst in &report.instances {
        assert_eq!(
            inst.status,
            Status::Pass,
            "{}: instance '{}'",
            report.id,
            inst.label
        );
    }
    assert_eq!(report.pass, report.instances.len(), "{}", report.id);
}

fn computed(report: &TheoremReport, label: &str) -> Rat {
    report
        .instances
        .iter()
        .find(|i| i.label == label)
        .unwrap_or_else(|| panic!("{}: no instance '{label}'", report.id))
        .computed
        .unwrap_or_else(|| panic!("{}: instance '{label}' has no value", report.id))
}

/// Random factor with no isolated vertex, drawn from trees, cycles, and
/// seeded random graphs so both bipartite and non-bipartite factors occur.
fn random_factor(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = match rng.gen_range(0..3u32) {
            0 => generate(&FamilySpec::RandomTree {
                n: rng.gen_range(2..=12),
                seed: rng.gen(),
            }),
            1 => generate(&FamilySpec::Cycle {
                m: rng.gen_range(3..=12),
            }),
            _ => generate(&FamilySpec::RandomGraph {
                n: rng.gen_range(2..=12),
                p_num: rng.gen_range(1..=3),
                p_den: 3,
                seed: rng.gen(),
            }),
        }
        .expect("parameters are in range");
        if (0..g.n() as u32).all(|v| g.degree(v) >= 1) {
            return g;
        }
    }
}

fn connected_factor(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = random_factor(rng);
        if g.is_connected() {
            return g;
        }
    }
}

#[test]
fn criterion_01_odd_ring_path_table() {
    conclude(
        1,
        "odd ring x path deltas match the piecewise values on the full grid",
        || {
            let report = check("t:CmxPn");
            assert_green(&report);
            let mut grid: Vec<(u32, u32)> = Vec::new();
            for m in [3u32, 5] {
                grid.extend((2..=12u32).map(|n| (m, n)));
            }
            grid.extend([(7, 2), (7, 8)]);
            for (m, n) in grid {
                let _ = computed(&report, &format!("m={m} n={n}"));
            }
            for ((m, n), want) in [
                ((3u32, 2u32), Rat::new(3, 2)),
                ((3, 6), Rat::new(5, 2)),
                ((3, 8), Rat::new(5, 2)),
                ((5, 4), Rat::new(5, 2)),
                ((5, 9), Rat::integer(4)),
                ((5, 12), Rat::new(9, 2)),
            ] {
                assert_eq!(
                    computed(&report, &format!("m={m} n={n}")),
                    want,
                    "m={m} n={n}"
                );
            }
        },
    );
}

#[test]
fn criterion_02_path_grid() {
    conclude(
        2,
        "path x path deltas vanish against a single edge and hit the odd-band equality",
        || {
            let report = check("t:path");
            assert_green(&report);
            for m in 2..=9u32 {
                assert_eq!(
                    computed(&report, &format!("m={m} n=2")),
                    Rat::integer(0),
                    "m={m} n=2"
                );
            }
            for (m, n) in [(3u32, 3u32), (5, 4), (5, 5), (7, 5)] {
                assert_eq!(
                    computed(&report, &format!("m={m} n={n}")),
                    Rat::new(u64::from(m - 1), 2),
                    "m={m} n={n}"
                );
            }
            for m in 2..=7u32 {
                for n in 2..=m {
                    let _ = computed(&report, &format!("m={m} n={n}"));
                }
            }
        },
    );
}

#[test]
fn criterion_03_bipartite_products() {
    conclude(
        3,
        "bipartite product bounds hold and the even-diameter case pins delta to half the larger diameter",
        || {
            let report = check("t:bipartite");
            assert_green(&report);
            for (label, want) in [
                ("path-5 x path-4", Rat::integer(2)),
                ("tree-a x tree-b", Rat::integer(2)),
                ("tree-c x tree-d", Rat::integer(3)),
            ] {
                let inst = report
                    .instances
                    .iter()
                    .find(|i| i.label == label)
                    .unwrap_or_else(|| panic!("no instance '{label}'"));
                assert!(
                    matches!(inst.expected, Expected::Value { .. }),
                    "'{label}' is not pinned to a single value"
                );
                assert_eq!(inst.computed, Some(want), "'{label}'");
            }
        },
    );
}

#[test]
fn criterion_04_closed_form_distances() {
    conclude(
        4,
        "closed-form product distances match breadth-first search on 200 random pairs",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2026);
            let (mut bip, mut non_bip) = (0u32, 0u32);
            let mut compared = 0u32;
            for _ in 0..20 {
                let g1 = random_factor(&mut rng);
                let g2 = random_factor(&mut rng);
                for g in [&g1, &g2] {
                    if g.is_bipartite() {
                        bip += 1;
                    } else {
                        non_bip += 1;
                    }
                }
                let (prod, index) = direct_product(&g1, &g2).expect("factors are non-empty");
                let hops = prod.apsp();
                for _ in 0..10 {
                    let from = (
                        rng.gen_range(0..g1.n() as u32),
                        rng.gen_range(0..g2.n() as u32),
                    );
                    let to = (
                        rng.gen_range(0..g1.n() as u32),
                        rng.gen_range(0..g2.n() as u32),
                    );
                    let closed = product_distance_vertices(&g1, &g2, from, to);
                    let walked = hops.hops(index.id(from.0, from.1), index.id(to.0, to.1));
                    match closed {
                        Some(d) => assert_eq!(d, u32::from(walked), "{from:?} -> {to:?}"),
                        None => assert_eq!(walked, HOP_INF, "{from:?} -> {to:?}"),
                    }
                    compared += 1;
                }
            }
            assert_eq!(compared, 200);
            assert!(
                bip >= 5 && non_bip >= 5,
                "factor mix is skewed: {bip} bipartite, {non_bip} not"
            );
        },
    );
}

#[test]
fn criterion_05_component_counts() {
    conclude(
        5,
        "component counts of 30 random connected products match the power-of-two rule",
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(0xc011ec7);
            for trial in 0..30 {
                let g1 = connected_factor(&mut rng);
                let g2 = connected_factor(&mut rng);
                let flags = [g1.is_bipartite(), g2.is_bipartite()];
                let k = flags.iter().filter(|b| **b).count() as u32;
                let want = 1u64 << (k.max(1) - 1);
                let (prod, _) = direct_product(&g1, &g2).expect("factors are non-empty");
                assert_eq!(prod.components().len() as u64, want, "trial {trial}");
                assert_eq!(predict_component_count(&flags), want, "trial {trial}");
            }
        },
    );
}

#[test]
fn criterion_06_structural_invariants() {
    conclude(
        6,
        "grid, sandwich, diameter cap, short odd cycles, and monotone growth hold on the corpus",
        || {
            for (name, g) in corpus() {
                let full = delta_exact(&g).expect("within budget");
                assert_eq!(full.mode, DeltaMode::Exact, "{name}");
                let d = full.delta.sixteenths().expect("finite");
                assert_eq!(d % 4, 0, "{name}: quarter grid");
                let vertex = delta_vertex(&g).expect("within budget");
                assert_eq!(vertex.mode, DeltaMode::Exact, "{name}");
                let dv = vertex.delta.sixteenths().expect("finite");
                assert_eq!(dv % 8, 0, "{name}: half grid");
                assert!(dv <= d && d <= 4 * dv + 8, "{name}: sandwich {dv} vs {d}");
                for comp in g.components() {
                    let (sub, _) = g.induced(&comp);
                    let dc = sub
                        .diam_continuous()
                        .sixteenths()
                        .expect("component is connected");
                    let ds = delta_exact(&sub)
                        .expect("within budget")
                        .delta
                        .sixteenths()
                        .expect("finite");
                    assert!(2 * ds <= dc, "{name}: diameter cap");
                    if let Some(girth) = odd_girth(&sub) {
                        assert!(4 * girth <= ds, "{name}: odd girth {girth} vs delta {ds}");
                    }
                }
            }
            for m in [3u32, 5] {
                let ring = generate(&FamilySpec::Cycle { m }).expect("valid");
                let mut prev = 0u32;
                for n in 2..=6u32 {
                    let path = generate(&FamilySpec::Path { m: n }).expect("valid");
                    let (prod, _) = direct_product(&ring, &path).expect("factors are non-empty");
                    let d = delta_exact(&prod)
                        .expect("within budget")
                        .delta
                        .sixteenths()
                        .expect("finite");
                    assert!(d >= prev, "ring {m} x path {n} shrank");
                    prev = d;
                }
            }
        },
    );
}

#[test]
fn criterion_07_oracle_equivalence() {
    conclude(
        7,
        "the scan agrees with brute enumeration, pruned and unpruned, on every small corpus graph",
        || {
            let mut checked = 0u32;
            for (name, g) in corpus().iter().filter(|(_, g)| g.n() <= 8) {
                let want = brute_delta16(g);
                let pruned = delta_exact(g).expect("within budget");
                assert_eq!(pruned.mode, DeltaMode::Exact, "{name}");
                assert_eq!(pruned.delta.sixteenths(), Some(want), "{name} pruned");
                let unpruned = delta_with(
                    g,
                    &DeltaOptions {
                        prune: false,
                        ..DeltaOptions::default()
                    },
                )
                .expect("within budget");
                assert_eq!(unpruned.delta.sixteenths(), Some(want), "{name} unpruned");
                checked += 1;
            }
            assert!(checked >= 6, "only {checked} corpus graphs at this size");
        },
    );
}

#[test]
fn criterion_08_embedding_constants() {
    conclude(
        8,
        "embedding, fiber, collapse, and star constants stay within their stated bounds",
        || {
            for id in ["t:G2odd", "t:no-odd", "l:P2", "l:1", "l:2"] {
                let report = check(id);
                assert!(
                    report.instances.len() >= 3,
                    "{id}: only {} instances",
                    report.instances.len()
                );
                assert_green(&report);
            }
        },
    );
}

#[test]
fn criterion_09_growth_experiments() {
    conclude(
        9,
        "witness triangles and dumbbell detours grow as the bounds require",
        || {
            let tri = check("p:unbounded");
            assert_green(&tri);
            let thin = computed(&tri, "n=9 thin");
            assert!(thin.num >= 3 * thin.den, "thinness {thin:?} is below 3");
            let detour = check("t:P2");
            assert_green(&detour);
            for label in [
                "L=4 detour",
                "L=8 detour",
                "L=16 detour",
                "L=4<L=8 growth",
                "L=8<L=16 growth",
            ] {
                assert!(
                    detour.instances.iter().any(|i| i.label == label),
                    "missing '{label}'"
                );
            }
        },
    );
}

#[test]
fn criterion_10_detour_inequality() {
    conclude(
        10,
        "the detour inequality holds at every split of every short geodesic in the witness graphs",
        || {
            let report = check("l:dc");
            assert_green(&report);
            for label in [
                "strict cycle-5",
                "envelope cycle-5",
                "strict dumbbell-6",
                "envelope dumbbell-6",
                "strict pendant-3-4",
                "envelope pendant-3-4",
            ] {
                assert!(
                    report.instances.iter().any(|i| i.label == label),
                    "missing '{label}'"
                );
            }
        },
    );
}
