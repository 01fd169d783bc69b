//! Cross-module structural properties on random graphs and the shared
//! corpus: metric axioms, exact subdivision scaling, the midpoint diameter
//! gap, direct product composition laws, walk parity padding, odd cycle
//! reduction chains, lifted geodesics, and generator determinism.

mod support;

use std::collections::BTreeSet;

use hypgraph::cycles::{certify_cycle, minimal_cycles, odd_girth};
use hypgraph::families::{generate, FamilySpec};
use hypgraph::geodesic::enumerate_geodesics;
use hypgraph::graph::{to_edge_list, Graph, HOP_INF};
use hypgraph::parity::{parity_distances, parity_walk, product_distance_vertices, validate_walk};
use hypgraph::product::{direct_product, predict_component_count};
use hypgraph::qi::{lift_gamma, swap_r, GammaVariant};
use proptest::prelude::*;

use support::{corpus, cycle_is_isometric_brute, enumerate_cycles, floyd_warshall, INF};

fn random_graph(n_max: u32) -> impl Strategy<Value = Graph> {
    (2..=n_max, 1u32..=3, any::<u64>()).prop_map(|(n, p_num, seed)| {
        generate(&FamilySpec::RandomGraph {
            n,
            p_num,
            p_den: 4,
            seed,
        })
        .expect("parameters are in range")
    })
}

proptest! {
    /// Hop distances agree with an independent Floyd-Warshall run and
    /// satisfy the metric axioms, with unreachable pairs infinite on both
    /// sides.
    #[test]
    fn hop_distances_form_a_metric(g in random_graph(10)) {
        let hops = g.apsp();
        let fw = floyd_warshall(g.n(), g.edges());
        let n = g.n() as u32;
        for u in 0..n {
            prop_assert_eq!(hops.hops(u, u), 0);
            for v in 0..n {
                let h = hops.hops(u, v);
                prop_assert_eq!(h, hops.hops(v, u));
                if fw[u as usize][v as usize] >= INF {
                    prop_assert_eq!(h, HOP_INF);
                } else {
                    prop_assert_eq!(h as u32, fw[u as usize][v as usize]);
                }
                for w in 0..n {
                    let uw = hops.hops(u, w);
                    let wv = hops.hops(w, v);
                    if uw != HOP_INF && wv != HOP_INF {
                        prop_assert!(h != HOP_INF && h as u32 <= uw as u32 + wv as u32);
                    }
                }
            }
        }
    }

    /// Subdividing every edge into k parts multiplies every distance between
    /// original vertices by exactly k; original vertices keep their ids.
    #[test]
    fn subdivision_scales_distances_exactly(g in random_graph(10), k in prop::sample::select(vec![2u32, 4, 8])) {
        let (s, _) = g.subdivide(k).expect("factor is supported");
        let hops = g.apsp();
        let shops = s.apsp();
        let n = g.n() as u32;
        for u in 0..n {
            for v in u..n {
                let h = hops.hops(u, v);
                let sh = shops.hops(u, v);
                if h == HOP_INF {
                    prop_assert_eq!(sh, HOP_INF);
                } else {
                    prop_assert_eq!(sh as u32, k * h as u32);
                }
            }
        }
    }

    /// The continuous diameter exceeds the vertex diameter by at most one
    /// edge, in half-edge steps, and the two agree on bipartite graphs.
    #[test]
    fn continuous_diameter_gap_is_at_most_one_edge(g in random_graph(10)) {
        prop_assume!(g.is_connected());
        let dv = g.diam_vertices().sixteenths().expect("connected");
        let dc = g.diam_continuous().sixteenths().expect("connected");
        let gap = dc - dv;
        prop_assert!(gap == 0 || gap == 8 || gap == 16, "gap {gap} sixteenths");
        if g.is_bipartite() {
            prop_assert_eq!(gap, 0);
        }
    }

    /// Component count of a product of connected factors matches the closed
    /// form driven by how many factors are bipartite.
    #[test]
    fn product_component_count_matches_prediction(g1 in random_graph(9), g2 in random_graph(9)) {
        prop_assume!(g1.is_connected() && g2.is_connected());
        let (p, _) = direct_product(&g1, &g2).expect("factors are non-empty");
        let predicted = predict_component_count(&[g1.is_bipartite(), g2.is_bipartite()]);
        prop_assert_eq!(p.components().len() as u64, predicted);
    }

    /// Swapping the factors yields the same product up to the coordinate
    /// relabeling, as an exact edge set equality.
    #[test]
    fn product_commutes_up_to_relabeling(g1 in random_graph(9), g2 in random_graph(9)) {
        let (p12, idx12) = direct_product(&g1, &g2).expect("factors are non-empty");
        let (p21, idx21) = direct_product(&g2, &g1).expect("factors are non-empty");
        prop_assert_eq!(p12.n(), p21.n());
        let edges12: BTreeSet<(u32, u32)> = p12.edges().iter().copied().collect();
        let relabeled: BTreeSet<(u32, u32)> = p21
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (j1, i1) = idx21.pair(a);
                let (j2, i2) = idx21.pair(b);
                let x = idx12.id(i1, j1);
                let y = idx12.id(i2, j2);
                (x.min(y), x.max(y))
            })
            .collect();
        prop_assert_eq!(edges12, relabeled);
    }

    /// Degrees multiply: deg(u, v) = deg(u) * deg(v).
    #[test]
    fn product_degrees_multiply(g1 in random_graph(9), g2 in random_graph(9)) {
        let (p, idx) = direct_product(&g1, &g2).expect("factors are non-empty");
        for u in 0..g1.n() as u32 {
            for v in 0..g2.n() as u32 {
                prop_assert_eq!(
                    p.degree(idx.id(u, v)),
                    g1.degree(u) * g2.degree(v)
                );
            }
        }
    }

    /// Wherever a parity distance L is finite, a walk of length L + 2 with
    /// the same parity exists; shown by construction, bouncing once across
    /// the walk's last edge. A length-0 walk needs any incident edge instead.
    #[test]
    fn parity_walks_extend_by_two(g in random_graph(10), src_raw in any::<u32>(), dst_raw in any::<u32>()) {
        let n = g.n() as u32;
        let src = src_raw % n;
        let dst = dst_raw % n;
        let at = parity_distances(&g, src).at(dst);
        for (odd, len) in [(false, at.even), (true, at.odd)] {
            let Some(len) = len else { continue };
            let walk = parity_walk(&g, src, dst, odd).expect("distance is finite");
            prop_assert_eq!(walk.len() as u32, len + 1);
            prop_assert_eq!((walk[0], walk[walk.len() - 1]), (src, dst));
            validate_walk(&g, &walk).expect("reconstructed walk is valid");

            let mut padded = walk.clone();
            if len == 0 {
                match g.neighbors(dst).first() {
                    Some(&w) => padded.extend([w, dst]),
                    None => continue,
                }
            } else {
                padded.extend([walk[walk.len() - 2], dst]);
            }
            prop_assert_eq!(padded.len() as u32, len + 3);
            validate_walk(&g, &padded).expect("padded walk is valid");
        }
    }

    /// Generating the same family twice yields byte-identical edge lists.
    #[test]
    fn generators_are_deterministic(n in 2u32..=12, seed in any::<u64>()) {
        let specs = [
            FamilySpec::RandomGraph { n, p_num: 2, p_den: 5, seed },
            FamilySpec::RandomTree { n, seed },
        ];
        for spec in specs {
            let a = to_edge_list(&generate(&spec).expect("parameters are in range"));
            let b = to_edge_list(&generate(&spec).expect("parameters are in range"));
            prop_assert_eq!(a, b);
        }
    }
}

/// On every non-bipartite corpus graph: the certified isometry flag matches
/// a brute-force check, even cycles never carry a reduction, every reduction
/// of an odd cycle drops the length by at least 2 while keeping it odd, and
/// iterating reductions ends at an isometric cycle no shorter than the odd
/// girth.
#[test]
fn odd_cycle_reductions_terminate_at_isometric_cycles() {
    for (name, g) in corpus().iter().filter(|(_, g)| g.n() <= 10) {
        let Some(girth) = odd_girth(g) else { continue };
        for cycle in enumerate_cycles(g, 9) {
            let cert = certify_cycle(g, &cycle).expect("enumerated cycles are valid");
            assert_eq!(
                cert.isometric,
                cycle_is_isometric_brute(g, &cycle),
                "{name}: isometry flag for {cycle:?}"
            );
            if cycle.len() % 2 == 0 {
                assert!(cert.reduction.is_none(), "{name}: even cycle reduced");
                continue;
            }
            let mut cur = cert;
            while let Some(red) = cur.reduction.clone() {
                assert!(!cur.isometric, "{name}: isometric cycle reduced");
                assert_eq!(red.cycle.len() % 2, 1, "{name}: reduction lost oddness");
                assert!(
                    red.cycle.len() + 2 <= cur.vertices.len(),
                    "{name}: reduction did not shrink by 2"
                );
                cur = certify_cycle(g, &red.cycle).expect("reduced cycles are valid");
            }
            assert!(cur.isometric, "{name}: chain ended on a shortcut");
            assert!(
                cur.vertices.len() as u32 >= girth,
                "{name}: chain undershot the odd girth"
            );
        }
        let certs = minimal_cycles(g, None).expect("graph has odd cycles");
        assert_eq!(
            certs.first().map(|c| c.length),
            Some(girth),
            "{name}: shortest minimal cycle"
        );
        for cert in certs {
            assert!(cert.odd && cert.isometric, "{name}: minimal cycle flags");
            assert!(cert.reduction.is_none(), "{name}: minimal cycle reduced");
            assert!(
                cycle_is_isometric_brute(g, &cert.vertices),
                "{name}: minimal cycle fails brute isometry"
            );
        }
    }
}

/// Both lifts of a geodesic, and their swaps, are geodesics of the same
/// length in the product with a single edge.
#[test]
fn lifted_geodesics_are_geodesics_in_the_prism() {
    let p2 = generate(&FamilySpec::Path { m: 2 }).expect("path exists");
    for (name, g) in corpus().iter().filter(|(_, g)| g.n() <= 10) {
        let hops = g.apsp();
        let n = g.n() as u32;
        for a in 0..n {
            for b in a + 1..n {
                let h = hops.hops(a, b);
                if h == HOP_INF || h > 10 {
                    continue;
                }
                for geo in enumerate_geodesics(g, a, b, 10_000).expect("within budget") {
                    for variant in [GammaVariant::One, GammaVariant::Two] {
                        let lift = lift_gamma(g, &geo, variant).expect("geodesics are walks");
                        for path in [lift.clone(), swap_r(&lift)] {
                            assert_eq!(path.len(), geo.len(), "{name}: lift length");
                            for pair in path.windows(2) {
                                assert!(
                                    g.has_edge(pair[0].0, pair[1].0) && pair[0].1 != pair[1].1,
                                    "{name}: lift leaves the edge set"
                                );
                            }
                            let d = product_distance_vertices(
                                g,
                                &p2,
                                path[0],
                                path[path.len() - 1],
                            );
                            assert_eq!(
                                d,
                                Some(h as u32),
                                "{name}: lift of a {a}-{b} geodesic is not geodesic"
                            );
                        }
                    }
                }
            }
        }
    }
}
