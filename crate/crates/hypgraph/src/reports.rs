//! Claim checks: each check replays one numbered claim id on a fixed grid of
//! finite instances and tabulates pass/fail/indeterminate rows. Ids double as
//! report keys on the command line; registry order fixes serialized order, so
//! report output is byte-stable across runs and worker counts.

use crate::cycles::{dist_to_minimal_cycles, minimal_cycles, odd_girth};
use crate::delta::{
    delta_upper_diam, delta_with, DeltaBudget, DeltaMode, DeltaOptions, DeltaResult,
};
use crate::dist::{Dist16, Rat, RatOrInf};
use crate::error::Result;
use crate::families::{generate, FamilySpec};
use crate::geodesic::enumerate_geodesics;
use crate::graph::{Graph, HOP_INF};
use crate::parity::{cmxpn_distance, lower_bound_gap, parity_distances, product_distance_vertices};
use crate::product::{direct_product, predict_component_count};
use crate::graph::Point;
use crate::qi::{
    collapse_balls, detour_check, embedding_g2odd, embedding_l_p2, embedding_no_odd,
    extend_vertex_map, product_star, qi_constants, BallSpec, QiReport,
};
use crate::triangle::{thin_constant_with, Triangle};
use rayon::prelude::*;
use serde::Serialize;

/// Every claim id the report registry must cover; the audit test checks the
/// union of all `claims()` lists against it.
pub const CLAIM_IDS: &[&str] = &[
    "prop:5.7",
    "prop:5.8",
    "c:lower",
    "thm:5.9",
    "cor:5.10",
    "p:unbounded",
    "l:vertices",
    "t:G2odd",
    "t:no-odd",
    "l:P2",
    "l:subgraph",
    "l:oddcycle",
    "l:dc",
    "c:dc",
    "thm:2.5",
    "thm:2.6",
    "thm:2.7",
    "t:main2",
    "t:P2",
    "l:dense",
    "t:dense",
    "l:1",
    "l:2",
    "t:diameter1",
    "r:bipartite",
    "r:path",
    "l:path",
    "t:path",
    "t:bipartite",
    "t:CmxPn",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

/// What an instance is compared against. Values are exact rationals; bounds
/// are closed on the stated side.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Expected {
    Value { value: Rat },
    Range { lo: Rat, hi: Rat },
    AtMost { bound: Rat },
    AtLeast { bound: Rat },
    Holds,
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub label: String,
    pub expected: Expected,
    pub computed: Option<Rat>,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub instances: Vec<Instance>,
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
}

impl TheoremReport {
    pub fn new(id: &str, instances: Vec<Instance>) -> TheoremReport {
        let count = |s| instances.iter().filter(|i| i.status == s).count();
        TheoremReport {
            id: id.to_string(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            indeterminate: count(Status::Indeterminate),
            instances,
        }
    }

    pub fn status(&self) -> Status {
        if self.fail > 0 {
            Status::Fail
        } else if self.indeterminate > 0 {
            Status::Indeterminate
        } else {
            Status::Pass
        }
    }
}

/// Worst status across reports: any failure dominates, then indeterminate.
pub fn worst_status(reports: &[TheoremReport]) -> Status {
    let mut worst = Status::Pass;
    for r in reports {
        match r.status() {
            Status::Fail => return Status::Fail,
            Status::Indeterminate => worst = Status::Indeterminate,
            Status::Pass => {}
        }
    }
    worst
}

#[derive(Clone, Copy, Debug)]
pub struct ReportConfig {
    pub budget: DeltaBudget,
    /// Seed for the randomized corpora; fixed instances ignore it.
    pub seed: u64,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            budget: DeltaBudget::default(),
            seed: 17,
        }
    }
}

pub trait TheoremCheck: Sync {
    /// Report key; equals the primary claim id the check covers.
    fn id(&self) -> &'static str;
    /// All claim ids this check gives evidence for.
    fn claims(&self) -> &'static [&'static str];
    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport>;
}

fn drat(d: Dist16) -> Rat {
    d.as_rational().expect("finite distance")
}

fn rat16(sixteenths: u64) -> Rat {
    Rat::new(sixteenths, 16)
}

/// Sixteenths of a rational whose denominator divides 16.
fn to_sixteenths(r: Rat) -> u64 {
    assert_eq!(16 % r.den, 0, "rational {r} off the sixteenth grid");
    r.num * (16 / r.den)
}

/// Judge a computed value against the expectation, honoring bound direction:
/// a lower-bound run can only refute upper claims or confirm lower ones.
fn judge(expected: &Expected, value: Rat, mode: DeltaMode) -> Status {
    use std::cmp::Ordering::*;
    let (pass, fail) = match expected {
        Expected::Value { value: v } => (
            value == *v,
            match mode {
                DeltaMode::Exact => value != *v,
                DeltaMode::LowerBound => v.cmp_exact(value) == Less,
                DeltaMode::UpperBound => value.cmp_exact(*v) == Less,
            },
        ),
        Expected::Range { lo, hi } => (
            lo.le(value) && value.le(*hi),
            match mode {
                DeltaMode::Exact => !(lo.le(value) && value.le(*hi)),
                DeltaMode::LowerBound => hi.cmp_exact(value) == Less,
                DeltaMode::UpperBound => value.cmp_exact(*lo) == Less,
            },
        ),
        Expected::AtMost { bound } => (
            value.le(*bound),
            bound.cmp_exact(value) == Less && mode != DeltaMode::UpperBound,
        ),
        Expected::AtLeast { bound } => (
            bound.le(value),
            value.cmp_exact(*bound) == Less && mode != DeltaMode::LowerBound,
        ),
        Expected::Holds => (true, false),
    };
    match mode {
        DeltaMode::Exact => {
            if pass {
                Status::Pass
            } else {
                Status::Fail
            }
        }
        DeltaMode::LowerBound => {
            if fail {
                Status::Fail
            } else if pass && matches!(expected, Expected::AtLeast { .. }) {
                Status::Pass
            } else {
                Status::Indeterminate
            }
        }
        DeltaMode::UpperBound => {
            if fail {
                Status::Fail
            } else if pass && matches!(expected, Expected::AtMost { .. }) {
                Status::Pass
            } else {
                Status::Indeterminate
            }
        }
    }
}

fn exact_row(label: impl Into<String>, expected: Expected, value: Rat) -> Instance {
    Instance {
        label: label.into(),
        status: judge(&expected, value, DeltaMode::Exact),
        computed: Some(value),
        expected,
    }
}

fn delta_row(label: impl Into<String>, expected: Expected, result: &DeltaResult) -> Instance {
    let value = drat(result.delta);
    Instance {
        label: label.into(),
        status: judge(&expected, value, result.mode),
        computed: Some(value),
        expected,
    }
}

fn holds_row(label: impl Into<String>, ok: bool) -> Instance {
    Instance {
        label: label.into(),
        expected: Expected::Holds,
        computed: None,
        status: if ok { Status::Pass } else { Status::Fail },
    }
}

/// Row that needs several exact sub-results: any downgrade makes it
/// indeterminate instead of guessing.
fn guarded_row(label: impl Into<String>, expected: Expected, value: Rat, exact: bool) -> Instance {
    Instance {
        label: label.into(),
        status: if exact {
            judge(&expected, value, DeltaMode::Exact)
        } else {
            Status::Indeterminate
        },
        computed: Some(value),
        expected,
    }
}

fn run_delta(g: &Graph, cfg: &ReportConfig) -> Result<DeltaResult> {
    delta_with(
        g,
        &DeltaOptions {
            budget: cfg.budget,
            ..DeltaOptions::default()
        },
    )
}

fn run_delta_vertex(g: &Graph, cfg: &ReportConfig) -> Result<DeltaResult> {
    delta_with(
        g,
        &DeltaOptions {
            budget: cfg.budget,
            vertex_corners: true,
            ..DeltaOptions::default()
        },
    )
}

fn gen(spec: FamilySpec) -> Graph {
    generate(&spec).expect("fixed family parameters are valid")
}

fn path(m: u32) -> Graph {
    gen(FamilySpec::Path { m })
}

fn cycle(m: u32) -> Graph {
    gen(FamilySpec::Cycle { m })
}

fn dumbbell(bridge: u32) -> Graph {
    gen(FamilySpec::Dumbbell { bridge })
}

fn pendant(c: u32, tail: u32) -> Graph {
    gen(FamilySpec::CycleWithPendant { cycle: c, tail })
}

/// Shared desk-scale corpus for the structural suites; seeds are fixed so
/// report rows keep stable labels.
fn corpus() -> Vec<(&'static str, Graph)> {
    vec![
        ("path-2", path(2)),
        ("path-5", path(5)),
        ("path-6", path(6)),
        ("cycle-3", cycle(3)),
        ("cycle-5", cycle(5)),
        ("cycle-6", cycle(6)),
        ("cycle-8", cycle(8)),
        ("complete-4", gen(FamilySpec::Complete { n: 4 })),
        ("bipartite-2-3", gen(FamilySpec::CompleteBipartite { a: 2, b: 3 })),
        ("dumbbell-1", dumbbell(1)),
        ("dumbbell-4", dumbbell(4)),
        ("pendant-3-4", pendant(3, 4)),
        ("tree-10", gen(FamilySpec::RandomTree { n: 10, seed: 3 })),
        (
            "random-10",
            gen(FamilySpec::RandomGraph {
                n: 10,
                p_num: 2,
                p_den: 5,
                seed: 7,
            }),
        ),
        (
            "random-9",
            gen(FamilySpec::RandomGraph {
                n: 9,
                p_num: 1,
                p_den: 3,
                seed: 11,
            }),
        ),
    ]
}

/// Random graph with no isolated vertex, found along a seed ray. The parity
/// closed form pads walks by bouncing on an incident edge, so the oracle
/// corpora stay inside graphs of minimum degree one.
fn random_factor(n: u32, p_num: u32, p_den: u32, seed: u64) -> Graph {
    for t in 0..200 {
        let g = gen(FamilySpec::RandomGraph {
            n,
            p_num,
            p_den,
            seed: seed.wrapping_add(t * 1_009),
        });
        if (0..g.n() as u32).all(|v| g.degree(v) > 0) {
            return g;
        }
    }
    unreachable!("min-degree-one random graphs appear within the attempt budget")
}

/// Random factor pairs for the product-metric oracles, derived from the run
/// seed so rows stay reproducible per seed.
fn factor_pairs(seed: u64, count: usize) -> Vec<(String, Graph, Graph)> {
    (0..count)
        .map(|i| {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
            let g1 = random_factor(6 + (i as u32 % 5), 2, 5, s);
            let g2 = random_factor(5 + (i as u32 % 6), 1, 2, s.wrapping_add(1));
            (format!("pair-{i}"), g1, g2)
        })
        .collect()
}

/// First connected random graph along a seed ray.
fn connected_random(n: u32, seed: u64) -> Graph {
    for t in 0..200 {
        let g = gen(FamilySpec::RandomGraph {
            n,
            p_num: 3,
            p_den: 5,
            seed: seed.wrapping_add(t),
        });
        if g.is_connected() {
            return g;
        }
    }
    unreachable!("dense random graphs connect within the attempt budget")
}

/// Walk lengths between two vertices form two upward-closed parity classes;
/// checks the closed form against a direct reachability table.
fn walks_match(g: &Graph, max_len: u32) -> bool {
    let n = g.n();
    for src in 0..n as u32 {
        let row = parity_distances(g, src);
        let mut reach = vec![false; n];
        reach[src as usize] = true;
        for k in 1..=max_len {
            let mut next = vec![false; n];
            for v in 0..n as u32 {
                if reach[v as usize] {
                    for &w in g.neighbors(v) {
                        next[w as usize] = true;
                    }
                }
            }
            reach = next;
            for v in 0..n as u32 {
                let wp = row.at(v);
                let bound = if k % 2 == 0 { wp.even } else { wp.odd };
                let expected = bound.is_some_and(|d| d <= k);
                if reach[v as usize] != expected {
                    return false;
                }
            }
        }
    }
    true
}

struct WalkParityCheck;

impl TheoremCheck for WalkParityCheck {
    fn id(&self) -> &'static str {
        "prop:5.8"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["prop:5.7", "prop:5.8"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let mut pairs = vec![
            ("cycle-5 x path-4".to_string(), cycle(5), path(4)),
            ("dumbbell-1 x cycle-6".to_string(), dumbbell(1), cycle(6)),
            (
                "pendant-3-4 x bipartite-2-3".to_string(),
                pendant(3, 4),
                gen(FamilySpec::CompleteBipartite { a: 2, b: 3 }),
            ),
        ];
        pairs.extend(factor_pairs(cfg.seed, 3));
        let rows: Vec<Vec<Instance>> = pairs
            .par_iter()
            .map(|(label, g1, g2)| -> Result<Vec<Instance>> {
                let walks = walks_match(g1, 12) && walks_match(g2, 12);
                let (prod, index) = direct_product(g1, g2)?;
                let hops = prod.apsp();
                let mut agree = true;
                for u in 0..prod.n() as u32 {
                    for v in 0..prod.n() as u32 {
                        let d = product_distance_vertices(g1, g2, index.pair(u), index.pair(v));
                        let h = hops.hops(u, v);
                        let bfs = (h != HOP_INF).then_some(u32::from(h));
                        if d != bfs {
                            agree = false;
                        }
                    }
                }
                Ok(vec![
                    holds_row(format!("walks {label}"), walks),
                    holds_row(format!("distance {label}"), agree),
                ])
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

struct FactorLowerBound;

impl TheoremCheck for FactorLowerBound {
    fn id(&self) -> &'static str {
        "c:lower"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["c:lower"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let pairs = factor_pairs(cfg.seed.wrapping_add(101), 5);
        let rows: Vec<Instance> = pairs
            .par_iter()
            .map(|(label, g1, g2)| {
                let mut ok = true;
                for u1 in 0..g1.n() as u32 {
                    for u2 in 0..g2.n() as u32 {
                        for v1 in 0..g1.n() as u32 {
                            for v2 in 0..g2.n() as u32 {
                                let gap = lower_bound_gap(g1, g2, (u1, u2), (v1, v2));
                                ok &= match (gap.product, gap.factor_max) {
                                    (Some(p), Some(f)) => p >= f,
                                    (Some(_), None) => false,
                                    (None, _) => true,
                                };
                            }
                        }
                    }
                }
                holds_row(label.clone(), ok)
            })
            .collect();
        Ok(TheoremReport::new(self.id(), rows))
    }
}

struct ComponentCount;

impl TheoremCheck for ComponentCount {
    fn id(&self) -> &'static str {
        "thm:5.9"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["thm:5.9", "cor:5.10"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let mut pairs = vec![
            ("path-3 x path-3".to_string(), path(3), path(3)),
            (
                "complete-3 x complete-3".to_string(),
                gen(FamilySpec::Complete { n: 3 }),
                gen(FamilySpec::Complete { n: 3 }),
            ),
            ("cycle-6 x cycle-5".to_string(), cycle(6), cycle(5)),
            ("path-4 x cycle-6".to_string(), path(4), cycle(6)),
        ];
        for i in 0..6u64 {
            let s = cfg.seed.wrapping_add(7_700 + 31 * i);
            pairs.push((
                format!("connected-{i}"),
                connected_random(5 + (i as u32 % 4), s),
                connected_random(6 + (i as u32 % 3), s.wrapping_add(500)),
            ));
        }
        let mut rows: Vec<Instance> = pairs
            .par_iter()
            .map(|(label, g1, g2)| -> Result<Vec<Instance>> {
                let (prod, _) = direct_product(g1, g2)?;
                let comps = prod.components().len() as u64;
                let predicted =
                    predict_component_count(&[g1.is_bipartite(), g2.is_bipartite()]);
                let connected_iff = prod.is_connected()
                    == (g1.is_connected()
                        && g2.is_connected()
                        && (!g1.is_bipartite() || !g2.is_bipartite()));
                Ok(vec![
                    exact_row(
                        format!("count {label}"),
                        Expected::Value {
                            value: Rat::integer(predicted),
                        },
                        Rat::integer(comps),
                    ),
                    holds_row(format!("connected-iff {label}"), connected_iff),
                ])
            })
            .collect::<Result<Vec<Vec<Instance>>>>()?
            .into_iter()
            .flatten()
            .collect();
        for (label, flags, want) in [
            ("formula one-factor", vec![true], 1u64),
            ("formula no-bipartite", vec![false, false], 1),
            ("formula three-bipartite", vec![true, true, true], 4),
        ] {
            rows.push(exact_row(
                label,
                Expected::Value {
                    value: Rat::integer(want),
                },
                Rat::integer(predict_component_count(&flags)),
            ));
        }
        Ok(TheoremReport::new(self.id(), rows))
    }
}

/// The zigzag triangle in the square of an odd path: corners `(0,1)`,
/// `(1,n-1)`, `(n-1,1)`, with an anti-diagonal side whose middle vertex is
/// far from the other two sides.
fn zigzag_triangle(n: u32) -> Result<(Graph, Triangle)> {
    assert!(n >= 5 && n % 2 == 1);
    let p = path(n);
    let (prod, index) = direct_product(&p, &p)?;
    let v = |a: u32, b: u32| Point::Vertex(index.id(a, b));
    let side_ab: Vec<Point> = (0..=n - 2)
        .map(|k| v(if k % 2 == 0 { 0 } else { 1 }, 1 + k))
        .collect();
    let side_bc: Vec<Point> = (0..=n - 2).map(|k| v(1 + k, n - 1 - k)).collect();
    let side_ca: Vec<Point> = (0..=n - 1)
        .rev()
        .map(|t| v(t, if t % 2 == 0 { 1 } else { 0 }))
        .collect();
    let tri = Triangle {
        corners: [v(0, 1), v(1, n - 1), v(n - 1, 1)],
        sides: [side_ab, side_bc, side_ca],
    };
    Ok((prod, tri))
}

/// Rows for the zigzag-triangle lower bound in each square path product
/// P_n x P_n: the three sides are geodesics of the stated lengths and the
/// triangle is at least (n-3)/2 thin. Requires every n odd and >= 3.
pub fn triangle_growth_rows(ns: &[u32]) -> Result<Vec<Instance>> {
    for &n in ns {
        if n % 2 == 0 || n < 3 {
            return Err(crate::Error::BadParameter(format!(
                "triangle side parameter must be odd and at least 3, got {n}"
            )));
        }
    }
    let rows: Vec<Vec<Instance>> = ns
        .par_iter()
        .map(|&n| -> Result<Vec<Instance>> {
            let (prod, tri) = zigzag_triangle(n)?;
            let hops = prod.apsp();
            let p = path(n);
            let ends = [
                ((0, 1), (1, n - 1), n - 2),
                ((1, n - 1), (n - 1, 1), n - 2),
                ((0, 1), (n - 1, 1), n - 1),
            ];
            let lengths_ok = ends
                .iter()
                .all(|&(a, b, len)| product_distance_vertices(&p, &p, a, b) == Some(len));
            let geodesic_ok = tri.validate(&prod, &hops).is_ok();
            let thin = thin_constant_with(&prod, &hops, &tri)?;
            Ok(vec![
                holds_row(format!("n={n} sides"), lengths_ok && geodesic_ok),
                exact_row(
                    format!("n={n} thin"),
                    Expected::AtLeast {
                        bound: Rat::new(u64::from(n - 3), 2),
                    },
                    drat(thin.value),
                ),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

struct WitnessTriangleGrowth;

impl TheoremCheck for WitnessTriangleGrowth {
    fn id(&self) -> &'static str {
        "p:unbounded"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["p:unbounded"]
    }

    fn run(&self, _cfg: &ReportConfig) -> Result<TheoremReport> {
        Ok(TheoremReport::new(
            self.id(),
            triangle_growth_rows(&[5, 7, 9])?,
        ))
    }
}

struct ExtensionConstants;

impl TheoremCheck for ExtensionConstants {
    fn id(&self) -> &'static str {
        "l:vertices"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["l:vertices"]
    }

    fn run(&self, _cfg: &ReportConfig) -> Result<TheoremReport> {
        let c5 = cycle(5);
        let identity: Vec<u32> = (0..5).collect();
        let odd = embedding_g2odd(&path(4), &cycle(3))?;
        let d4 = dumbbell(4);
        let coll = collapse_balls(
            &d4,
            &[
                BallSpec { center: 2, radius: 1 },
                BallSpec { center: 6, radius: 1 },
            ],
        )?;
        let cases: Vec<(&str, Graph, Graph, Vec<u32>)> = vec![
            ("identity cycle-5", c5.clone(), c5, identity),
            ("odd-product path-4", path(4), odd.codomain, odd.map),
            ("collapsed dumbbell-4", d4, coll.graph, coll.map),
        ];
        let rows: Vec<Vec<Instance>> = cases
            .par_iter()
            .map(|(label, g1, g2, f)| -> Result<Vec<Instance>> {
                let ext = extend_vertex_map(g1, g2, f)?;
                let beta_bound = rat16(to_sixteenths(ext.vertex_report.beta) + 16);
                let mut rows = vec![match ext.point_report.embedding_ok {
                    true => exact_row(
                        format!("beta {label}"),
                        Expected::AtMost { bound: beta_bound },
                        ext.point_report.beta,
                    ),
                    false => holds_row(format!("beta {label}"), false),
                }];
                let full = match (ext.vertex_report.epsilon, ext.point_report.epsilon) {
                    (RatOrInf::Finite(v), RatOrInf::Finite(p)) => exact_row(
                        format!("fullness {label}"),
                        Expected::AtMost {
                            bound: rat16(to_sixteenths(v) + 8),
                        },
                        p,
                    ),
                    _ => holds_row(format!("fullness {label}"), false),
                };
                rows.push(full);
                Ok(rows)
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

/// Rows for one measured embedding: a beta bound and an epsilon bound, both
/// failed outright when the map has unmatched infinite distances.
fn embedding_rows(
    label: &str,
    report: &QiReport,
    beta_bound: Rat,
    eps_bound: Rat,
) -> Vec<Instance> {
    let beta = match report.embedding_ok {
        true => exact_row(
            format!("beta {label}"),
            Expected::AtMost { bound: beta_bound },
            report.beta,
        ),
        false => holds_row(format!("beta {label}"), false),
    };
    let eps = match report.epsilon {
        RatOrInf::Finite(e) => exact_row(
            format!("epsilon {label}"),
            Expected::AtMost { bound: eps_bound },
            e,
        ),
        RatOrInf::Inf => holds_row(format!("epsilon {label}"), false),
    };
    vec![beta, eps]
}

struct OddAnchorEmbedding;

impl TheoremCheck for OddAnchorEmbedding {
    fn id(&self) -> &'static str {
        "t:G2odd"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["t:G2odd"]
    }

    fn run(&self, _cfg: &ReportConfig) -> Result<TheoremReport> {
        let cases = vec![
            ("path-4 x cycle-3", path(4), cycle(3)),
            ("path-6 x cycle-5", path(6), cycle(5)),
            ("cycle-4 x complete-4", cycle(4), gen(FamilySpec::Complete { n: 4 })),
        ];
        let rows: Vec<Vec<Instance>> = cases
            .par_iter()
            .map(|(label, g1, g2)| -> Result<Vec<Instance>> {
                let girth = u64::from(odd_girth(g2).expect("second factor has an odd cycle"));
                let diam = to_sixteenths(drat(g2.diam_vertices())) / 16;
                let emb = embedding_g2odd(g1, g2)?;
                Ok(embedding_rows(
                    label,
                    &emb.report,
                    Rat::integer(girth),
                    Rat::integer(diam + girth),
                ))
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

struct ParityMatchedEmbedding;

impl TheoremCheck for ParityMatchedEmbedding {
    fn id(&self) -> &'static str {
        "t:no-odd"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["t:no-odd"]
    }

    fn run(&self, _cfg: &ReportConfig) -> Result<TheoremReport> {
        let cases = vec![
            ("path-5 x path-2", path(5), path(2)),
            ("path-4 x path-6", path(4), path(6)),
            ("cycle-6 x path-3", cycle(6), path(3)),
        ];
        let rows: Vec<Vec<Instance>> = cases
            .par_iter()
            .map(|(label, g1, g2)| -> Result<Vec<Instance>> {
                let emb = embedding_no_odd(g1, g2)?;
                let mut rows = vec![match emb.report.embedding_ok {
                    true => exact_row(
                        format!("beta {label}"),
                        Expected::Value {
                            value: Rat::integer(0),
                        },
                        emb.report.beta,
                    ),
                    false => holds_row(format!("beta {label}"), false),
                }];
                rows.push(match emb.report.epsilon {
                    RatOrInf::Finite(e) => exact_row(
                        format!("epsilon {label}"),
                        Expected::AtMost {
                            bound: drat(g2.diam_continuous()),
                        },
                        e,
                    ),
                    RatOrInf::Inf => holds_row(format!("epsilon {label}"), false),
                });
                Ok(rows)
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

struct EdgeFiberIsometry;

impl TheoremCheck for EdgeFiberIsometry {
    fn id(&self) -> &'static str {
        "l:P2"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["l:P2"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let cases = vec![
            ("cycle-5 x path-3", cycle(5), path(3)),
            ("dumbbell-6 x path-4", dumbbell(6), path(4)),
            ("pendant-3-4 x cycle-6", pendant(3, 4), cycle(6)),
        ];
        let rows: Vec<Vec<Instance>> = cases
            .par_iter()
            .map(|(label, g1, g2)| -> Result<Vec<Instance>> {
                let emb = embedding_l_p2(g1, g2, None)?;
                let agree = match emb.report.embedding_ok {
                    true => exact_row(
                        format!("agree {label}"),
                        Expected::Value {
                            value: Rat::integer(0),
                        },
                        emb.report.beta,
                    ),
                    false => holds_row(format!("agree {label}"), false),
                };
                let p2 = path(2);
                let (small, _) = direct_product(g1, &p2)?;
                let (big, _) = direct_product(g1, g2)?;
                let rs = run_delta(&small, cfg)?;
                let rb = run_delta(&big, cfg)?;
                let exact = rs.mode == DeltaMode::Exact && rb.mode == DeltaMode::Exact;
                let mono = guarded_row(
                    format!("delta {label}"),
                    Expected::AtMost {
                        bound: drat(rb.delta),
                    },
                    drat(rs.delta),
                    exact,
                );
                Ok(vec![agree, mono])
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

struct IsometricMonotone;

impl TheoremCheck for IsometricMonotone {
    fn id(&self) -> &'static str {
        "l:subgraph"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["l:subgraph"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let triples: [(u32, u32, u32); 3] = [(3, 3, 5), (5, 4, 6), (5, 2, 5)];
        let rows: Vec<Vec<Instance>> = triples
            .par_iter()
            .map(|&(m, small_n, big_n)| -> Result<Vec<Instance>> {
                let label = format!("m={m} n={small_n}<{big_n}");
                let c = cycle(m);
                let ps = path(small_n);
                let pb = path(big_n);
                let mut iso = true;
                for u1 in 0..m {
                    for u2 in 0..small_n {
                        for v1 in 0..m {
                            for v2 in 0..small_n {
                                iso &= product_distance_vertices(&c, &ps, (u1, u2), (v1, v2))
                                    == product_distance_vertices(&c, &pb, (u1, u2), (v1, v2));
                            }
                        }
                    }
                }
                let (gs, _) = direct_product(&c, &ps)?;
                let (gb, _) = direct_product(&c, &pb)?;
                let rs = run_delta(&gs, cfg)?;
                let rb = run_delta(&gb, cfg)?;
                let exact = rs.mode == DeltaMode::Exact && rb.mode == DeltaMode::Exact;
                Ok(vec![
                    holds_row(format!("isometric {label}"), iso),
                    guarded_row(
                        format!("delta {label}"),
                        Expected::AtMost {
                            bound: drat(rb.delta),
                        },
                        drat(rs.delta),
                        exact,
                    ),
                ])
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

struct MinimalCycleBound;

impl TheoremCheck for MinimalCycleBound {
    fn id(&self) -> &'static str {
        "l:oddcycle"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["l:oddcycle"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let graphs: Vec<(&'static str, Graph)> = corpus()
            .into_iter()
            .filter(|(_, g)| !g.is_bipartite())
            .collect();
        let rows: Vec<Instance> = graphs
            .par_iter()
            .map(|(label, g)| -> Result<Instance> {
                let cycles = minimal_cycles(g, None)?;
                let result = run_delta(g, cfg)?;
                let bound = drat(result.delta.scaled(4));
                Ok(match cycles.iter().map(|c| c.length).max() {
                    Some(longest) => guarded_row(
                        *label,
                        Expected::AtMost { bound },
                        Rat::integer(u64::from(longest)),
                        result.mode == DeltaMode::Exact,
                    ),
                    None => holds_row(*label, false),
                })
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(self.id(), rows))
    }
}

struct DetourInequality;

impl TheoremCheck for DetourInequality {
    fn id(&self) -> &'static str {
        "l:dc"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["l:dc", "c:dc"]
    }

    fn run(&self, _cfg: &ReportConfig) -> Result<TheoremReport> {
        let graphs = vec![
            ("cycle-5", cycle(5)),
            ("dumbbell-6", dumbbell(6)),
            ("pendant-3-4", pendant(3, 4)),
        ];
        let rows: Vec<Vec<Instance>> = graphs
            .par_iter()
            .map(|(label, g)| -> Result<Vec<Instance>> {
                let hops = g.apsp();
                let mut strict = true;
                let mut envelope = true;
                for u in 0..g.n() as u32 {
                    for v in u + 1..g.n() as u32 {
                        let h = hops.hops(u, v);
                        if h == HOP_INF || u32::from(h) > 8 {
                            continue;
                        }
                        for geo in enumerate_geodesics(g, u, v, 10_000)? {
                            for j in 0..geo.len() {
                                let check = detour_check(g, &geo, j)?;
                                strict &= check.strict_ok;
                                envelope &= check.lower_ok && check.upper_ok;
                            }
                        }
                    }
                }
                Ok(vec![
                    holds_row(format!("strict {label}"), strict),
                    holds_row(format!("envelope {label}"), envelope),
                ])
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

struct QuarterGridEngine;

impl TheoremCheck for QuarterGridEngine {
    fn id(&self) -> &'static str {
        "thm:2.5"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["thm:2.5", "thm:2.6", "thm:2.7"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let doubled = vec![
            ("cycle-5", cycle(5)),
            ("complete-4", gen(FamilySpec::Complete { n: 4 })),
            ("dumbbell-1", dumbbell(1)),
            ("pendant-3-4", pendant(3, 4)),
            ("bipartite-2-3", gen(FamilySpec::CompleteBipartite { a: 2, b: 3 })),
        ];
        let mut rows: Vec<Instance> = doubled
            .par_iter()
            .map(|(label, g)| -> Result<Instance> {
                let (sub, _) = g.subdivide(2)?;
                let base = run_delta(g, cfg)?;
                let refined = run_delta(&sub, cfg)?;
                let exact =
                    base.mode == DeltaMode::Exact && refined.mode == DeltaMode::Exact;
                Ok(guarded_row(
                    format!("subdivide {label}"),
                    Expected::Value {
                        value: drat(base.delta.scaled(2)),
                    },
                    drat(refined.delta),
                    exact,
                ))
            })
            .collect::<Result<_>>()?;
        let structural: Vec<Vec<Instance>> = corpus()
            .par_iter()
            .map(|(label, g)| -> Result<Vec<Instance>> {
                let result = run_delta(g, cfg)?;
                if result.mode != DeltaMode::Exact {
                    return Ok(vec![
                        guarded_row(
                            format!("quarter {label}"),
                            Expected::Holds,
                            drat(result.delta),
                            false,
                        ),
                        guarded_row(
                            format!("witness {label}"),
                            Expected::Holds,
                            drat(result.delta),
                            false,
                        ),
                    ]);
                }
                let quarter = result.delta.is_multiple_of(4);
                let hops = g.apsp();
                let witness_ok = match &result.witness {
                    Some(w) => {
                        let thin = thin_constant_with(g, &hops, &w.triangle)?;
                        thin.value == result.delta && w.distance == result.delta
                    }
                    None => result.delta == Dist16::ZERO,
                };
                Ok(vec![
                    holds_row(format!("quarter {label}"), quarter),
                    holds_row(format!("witness {label}"), witness_ok),
                ])
            })
            .collect::<Result<_>>()?;
        rows.extend(structural.into_iter().flatten());
        Ok(TheoremReport::new(self.id(), rows))
    }
}

struct VertexSandwich;

impl TheoremCheck for VertexSandwich {
    fn id(&self) -> &'static str {
        "t:main2"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["t:main2"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let rows: Vec<Vec<Instance>> = corpus()
            .par_iter()
            .map(|(label, g)| -> Result<Vec<Instance>> {
                let full = run_delta(g, cfg)?;
                let vertex = run_delta_vertex(g, cfg)?;
                let exact =
                    full.mode == DeltaMode::Exact && vertex.mode == DeltaMode::Exact;
                let dv = to_sixteenths(drat(vertex.delta));
                let half_grid = Instance {
                    label: format!("half-grid {label}"),
                    expected: Expected::Holds,
                    computed: Some(rat16(dv)),
                    status: if !exact {
                        Status::Indeterminate
                    } else if dv % 8 == 0 {
                        Status::Pass
                    } else {
                        Status::Fail
                    },
                };
                Ok(vec![
                    guarded_row(
                        format!("sandwich {label}"),
                        Expected::Range {
                            lo: rat16(dv),
                            hi: rat16(4 * dv + 8),
                        },
                        drat(full.delta),
                        exact,
                    ),
                    half_grid,
                ])
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

/// Rows for the dumbbell family: for each bridge length L the edge product
/// with P_2 satisfies (2*delta(D_L x P_2) + 4*delta(D_L))^2 >= L/2, and the
/// product delta strictly grows between consecutive listed lengths.
pub fn detour_growth_rows(bridges: &[u32], cfg: &ReportConfig) -> Result<Vec<Instance>> {
    for &bridge in bridges {
        if bridge == 0 {
            return Err(crate::Error::BadParameter(
                "bridge length must be at least 1".into(),
            ));
        }
    }
    let measured: Vec<(u32, DeltaResult, DeltaResult)> = bridges
        .par_iter()
        .map(|&bridge| -> Result<(u32, DeltaResult, DeltaResult)> {
            let d = dumbbell(bridge);
            let (prod, _) = direct_product(&d, &path(2))?;
            Ok((bridge, run_delta(&d, cfg)?, run_delta(&prod, cfg)?))
        })
        .collect::<Result<_>>()?;
    let mut rows = Vec::new();
    for (bridge, factor, product) in &measured {
        let sd = u64::from(factor.delta.sixteenths().expect("finite"));
        let sp = u64::from(product.delta.sixteenths().expect("finite"));
        let reach = 2 * sp + 4 * sd;
        let exact = factor.mode == DeltaMode::Exact && product.mode == DeltaMode::Exact;
        rows.push(guarded_row(
            format!("L={bridge} detour"),
            Expected::AtLeast {
                bound: Rat::new(u64::from(*bridge), 2),
            },
            Rat::new(reach * reach, 256),
            exact,
        ));
    }
    for w in measured.windows(2) {
        let (la, _, pa) = &w[0];
        let (lb, _, pb) = &w[1];
        let exact = pa.mode == DeltaMode::Exact && pb.mode == DeltaMode::Exact;
        let grew = pa.delta < pb.delta;
        rows.push(Instance {
            label: format!("L={la}<L={lb} growth"),
            expected: Expected::Holds,
            computed: Some(drat(pb.delta)),
            status: if !exact {
                Status::Indeterminate
            } else if grew {
                Status::Pass
            } else {
                Status::Fail
            },
        });
    }
    Ok(rows)
}

struct DumbbellGrowth;

impl TheoremCheck for DumbbellGrowth {
    fn id(&self) -> &'static str {
        "t:P2"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["t:P2"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        Ok(TheoremReport::new(
            self.id(),
            detour_growth_rows(&[4, 8, 16], cfg)?,
        ))
    }
}

/// Largest vertex distance to the union of minimal cycles, in edges.
fn anchor_radius(g: &Graph) -> Result<u64> {
    let dists = dist_to_minimal_cycles(g, None)?;
    let worst = dists
        .iter()
        .map(|d| d.sixteenths().expect("anchors reach every vertex"))
        .max()
        .unwrap_or(0);
    Ok(u64::from(worst) / 16)
}

struct DenseAnchorsEmbedding;

impl TheoremCheck for DenseAnchorsEmbedding {
    fn id(&self) -> &'static str {
        "l:dense"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["l:dense"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let graphs = vec![
            ("cycle-5", cycle(5)),
            ("dumbbell-6", dumbbell(6)),
            ("pendant-3-4", pendant(3, 4)),
        ];
        let rows: Vec<Vec<Instance>> = graphs
            .par_iter()
            .map(|(label, g)| -> Result<Vec<Instance>> {
                let k = anchor_radius(g)?;
                let result = run_delta(g, cfg)?;
                let bound = rat16(32 * k + 4 * u64::from(result.delta.sixteenths().expect("finite")));
                let (prod, index) = direct_product(g, &path(2))?;
                let f: Vec<u32> = (0..g.n() as u32).map(|w| index.id(w, 0)).collect();
                let report = qi_constants(g, &prod, &f)?;
                let exact = result.mode == DeltaMode::Exact;
                let beta = match report.embedding_ok {
                    true => guarded_row(
                        format!("beta {label}"),
                        Expected::AtMost { bound },
                        report.beta,
                        exact,
                    ),
                    false => holds_row(format!("beta {label}"), false),
                };
                let eps = match report.epsilon {
                    RatOrInf::Finite(e) => exact_row(
                        format!("fullness {label}"),
                        Expected::AtMost {
                            bound: Rat::integer(1),
                        },
                        e,
                    ),
                    RatOrInf::Inf => holds_row(format!("fullness {label}"), false),
                };
                Ok(vec![beta, eps])
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

struct DenseComposition;

impl TheoremCheck for DenseComposition {
    fn id(&self) -> &'static str {
        "t:dense"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["t:dense"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let cases = vec![
            ("dumbbell-6 x cycle-3", dumbbell(6), cycle(3)),
            ("cycle-5 x path-2", cycle(5), path(2)),
            ("pendant-3-4 x path-4", pendant(3, 4), path(4)),
        ];
        let rows: Vec<Vec<Instance>> = cases
            .par_iter()
            .map(|(label, g1, g2)| -> Result<Vec<Instance>> {
                let k = anchor_radius(g1)?;
                let result = run_delta(g1, cfg)?;
                let bound = rat16(32 * k + 4 * u64::from(result.delta.sixteenths().expect("finite")));
                let anchor = g2.edges().first().expect("second factor has an edge").0;
                let (prod, index) = direct_product(g1, g2)?;
                let f: Vec<u32> = (0..g1.n() as u32).map(|w| index.id(w, anchor)).collect();
                let report = qi_constants(g1, &prod, &f)?;
                let exact = result.mode == DeltaMode::Exact;
                let beta = match report.embedding_ok {
                    true => guarded_row(
                        format!("beta {label}"),
                        Expected::AtMost { bound },
                        report.beta,
                        exact,
                    ),
                    false => holds_row(format!("beta {label}"), false),
                };
                let eps = match report.epsilon {
                    RatOrInf::Finite(e) => Instance {
                        label: format!("epsilon-finite {label}"),
                        expected: Expected::Holds,
                        computed: Some(e),
                        status: Status::Pass,
                    },
                    RatOrInf::Inf => holds_row(format!("epsilon-finite {label}"), false),
                };
                Ok(vec![beta, eps])
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

fn ball_cases() -> Vec<(&'static str, Graph, Vec<BallSpec>)> {
    vec![
        (
            "cycle-5",
            cycle(5),
            vec![BallSpec { center: 0, radius: 1 }],
        ),
        (
            "dumbbell-4",
            dumbbell(4),
            vec![
                BallSpec { center: 2, radius: 1 },
                BallSpec { center: 6, radius: 1 },
            ],
        ),
        (
            "dumbbell-6",
            dumbbell(6),
            vec![
                BallSpec { center: 2, radius: 2 },
                BallSpec { center: 8, radius: 2 },
            ],
        ),
    ]
}

struct BallCollapse;

impl TheoremCheck for BallCollapse {
    fn id(&self) -> &'static str {
        "l:1"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["l:1"]
    }

    fn run(&self, _cfg: &ReportConfig) -> Result<TheoremReport> {
        let rows: Vec<Vec<Instance>> = ball_cases()
            .par_iter()
            .map(|(label, g, balls)| -> Result<Vec<Instance>> {
                let coll = collapse_balls(g, balls)?;
                let k = u64::from(coll.k_max);
                let beta = coll.analysis.beta_for_alpha(Rat::integer(k));
                let full = match coll.report.epsilon {
                    RatOrInf::Finite(e) => exact_row(
                        format!("fullness {label}"),
                        Expected::Value {
                            value: Rat::integer(0),
                        },
                        e,
                    ),
                    RatOrInf::Inf => holds_row(format!("fullness {label}"), false),
                };
                Ok(vec![
                    exact_row(
                        format!("beta {label}"),
                        Expected::AtMost {
                            bound: Rat::integer(2 * k),
                        },
                        beta,
                    ),
                    full,
                ])
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

struct StarQuotient;

impl TheoremCheck for StarQuotient {
    fn id(&self) -> &'static str {
        "l:2"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["l:2"]
    }

    fn run(&self, _cfg: &ReportConfig) -> Result<TheoremReport> {
        let rows: Vec<Vec<Instance>> = ball_cases()
            .par_iter()
            .map(|(label, g, balls)| -> Result<Vec<Instance>> {
                let star = product_star(g, balls, None)?;
                let k = u64::from(star.k_max);
                let m = u64::from(star.m_effective);
                let beta = star.analysis.beta_for_alpha(Rat::integer(4 * k + m + 1));
                let full = match star.report.epsilon {
                    RatOrInf::Finite(e) => exact_row(
                        format!("fullness {label}"),
                        Expected::Value {
                            value: Rat::integer(0),
                        },
                        e,
                    ),
                    RatOrInf::Inf => holds_row(format!("fullness {label}"), false),
                };
                Ok(vec![
                    exact_row(
                        format!("beta {label}"),
                        Expected::AtMost {
                            bound: Rat::integer(4 * k + m),
                        },
                        beta,
                    ),
                    full,
                ])
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(
            self.id(),
            rows.into_iter().flatten().collect(),
        ))
    }
}

struct DiameterCap;

impl TheoremCheck for DiameterCap {
    fn id(&self) -> &'static str {
        "t:diameter1"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["t:diameter1"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let rows: Vec<Instance> = corpus()
            .par_iter()
            .map(|(label, g)| -> Result<Instance> {
                let cap = delta_upper_diam(g)?;
                let result = run_delta(g, cfg)?;
                Ok(delta_row(
                    *label,
                    Expected::AtMost {
                        bound: drat(cap.delta),
                    },
                    &result,
                ))
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(self.id(), rows))
    }
}

struct BipartiteDiameters;

impl TheoremCheck for BipartiteDiameters {
    fn id(&self) -> &'static str {
        "r:bipartite"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["r:bipartite"]
    }

    fn run(&self, _cfg: &ReportConfig) -> Result<TheoremReport> {
        let mut rows = Vec::new();
        for (label, g) in [
            ("path-6", path(6)),
            ("cycle-6", cycle(6)),
            ("bipartite-2-3", gen(FamilySpec::CompleteBipartite { a: 2, b: 3 })),
            ("tree-10", gen(FamilySpec::RandomTree { n: 10, seed: 3 })),
        ] {
            rows.push(holds_row(
                format!("diam {label}"),
                g.diam_continuous() == g.diam_vertices(),
            ));
        }
        for (label, g1, g2) in [
            ("path-5 x path-4", path(5), path(4)),
            (
                "cycle-6 x bipartite-2-3",
                cycle(6),
                gen(FamilySpec::CompleteBipartite { a: 2, b: 3 }),
            ),
        ] {
            let (prod, _) = direct_product(&g1, &g2)?;
            let comps = prod.components();
            let ok = comps.len() == 2
                && comps.iter().all(|c| {
                    let (sub, _) = prod.induced(c);
                    sub.is_bipartite() && sub.diam_continuous() == sub.diam_vertices()
                });
            rows.push(holds_row(format!("split {label}"), ok));
        }
        Ok(TheoremReport::new(self.id(), rows))
    }
}

struct PathProductMetric;

impl TheoremCheck for PathProductMetric {
    fn id(&self) -> &'static str {
        "r:path"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["r:path"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let mut rows = Vec::new();
        for (m, n) in [(4u32, 3u32), (5, 4), (6, 2)] {
            let (prod, index) = direct_product(&path(m), &path(n))?;
            let hops = prod.apsp();
            let mut metric = true;
            for u in 0..prod.n() as u32 {
                for v in 0..prod.n() as u32 {
                    let (u1, u2) = index.pair(u);
                    let (v1, v2) = index.pair(v);
                    let h = hops.hops(u, v);
                    let same_comp = (u1 + u2) % 2 == (v1 + v2) % 2;
                    metric &= if same_comp {
                        u32::from(h) == u1.abs_diff(v1).max(u2.abs_diff(v2))
                    } else {
                        h == HOP_INF
                    };
                }
            }
            rows.push(holds_row(format!("distance m={m} n={n}"), metric));
            let diam_ok = prod.components().iter().all(|c| {
                let (sub, _) = prod.induced(c);
                sub.diam_vertices() == Dist16::from_edges(m - 1)
                    && sub.diam_continuous() == Dist16::from_edges(m - 1)
            });
            rows.push(holds_row(format!("diam m={m} n={n}"), diam_ok));
        }
        let mut deltas = Vec::new();
        for (m, n) in [(4u32, 3u32), (5, 3), (5, 4)] {
            let (prod, _) = direct_product(&path(m), &path(n))?;
            deltas.push(((m, n), run_delta(&prod, cfg)?));
        }
        for w in deltas.windows(2) {
            let ((ma, na), ra) = &w[0];
            let ((mb, nb), rb) = &w[1];
            let exact = ra.mode == DeltaMode::Exact && rb.mode == DeltaMode::Exact;
            rows.push(guarded_row(
                format!("monotone {ma}x{na}<={mb}x{nb}"),
                Expected::AtMost {
                    bound: drat(rb.delta),
                },
                drat(ra.delta),
                exact,
            ));
        }
        Ok(TheoremReport::new(self.id(), rows))
    }
}

struct EqualProjectionGeodesics;

impl TheoremCheck for EqualProjectionGeodesics {
    fn id(&self) -> &'static str {
        "l:path"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["l:path"]
    }

    fn run(&self, _cfg: &ReportConfig) -> Result<TheoremReport> {
        let rows: Vec<Instance> = [(4u32, 3u32), (5, 4), (5, 3)]
            .par_iter()
            .map(|&(m, n)| -> Result<Instance> {
                let (prod, index) = direct_product(&path(m), &path(n))?;
                let hops = prod.apsp();
                let mut ok = true;
                for u in 0..prod.n() as u32 {
                    for v in u + 1..prod.n() as u32 {
                        if hops.hops(u, v) == HOP_INF {
                            continue;
                        }
                        for geo in enumerate_geodesics(&prod, u, v, 10_000)? {
                            let firsts: Vec<u32> =
                                geo.iter().map(|&id| index.pair(id).0).collect();
                            let mut sorted = firsts.clone();
                            sorted.sort_unstable();
                            sorted.dedup();
                            if sorted.len() < firsts.len() {
                                ok &= geo.len() as u32 - 1 <= n - 1;
                            }
                        }
                    }
                }
                Ok(holds_row(format!("m={m} n={n}"), ok))
            })
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(self.id(), rows))
    }
}

/// Expected delta of a path-times-path product, in the theorem's piecewise
/// form: zero for a single edge, exact on odd first factors that fit the
/// second, a closed range otherwise.
fn path_expected(m: u32, n: u32) -> Expected {
    assert!(m >= n && n >= 2);
    if n == 2 {
        return Expected::Value {
            value: Rat::integer(0),
        };
    }
    if m % 2 == 1 && m + 3 <= 2 * n {
        return Expected::Value {
            value: Rat::new(u64::from(m - 1), 2),
        };
    }
    let m = u64::from(m);
    let n = u64::from(n);
    Expected::Range {
        lo: rat16((8 * m).min(16 * (n - 1)) - 16),
        hi: rat16((8 * m).min(16 * n) - 8),
    }
}

/// Rows for the path-times-path table: measured delta of P_m x P_n against
/// the piecewise expectation. Requires m >= n >= 2 in every pair.
pub fn path_grid_rows(grid: &[(u32, u32)], cfg: &ReportConfig) -> Result<Vec<Instance>> {
    for &(m, n) in grid {
        if n < 2 || m < n {
            return Err(crate::Error::BadParameter(format!(
                "path pair needs m >= n >= 2, got m={m} n={n}"
            )));
        }
    }
    grid.par_iter()
        .map(|&(m, n)| -> Result<Instance> {
            let (prod, _) = direct_product(&path(m), &path(n))?;
            let result = run_delta(&prod, cfg)?;
            Ok(delta_row(
                format!("m={m} n={n}"),
                path_expected(m, n),
                &result,
            ))
        })
        .collect()
}

struct PathPathTable;

impl TheoremCheck for PathPathTable {
    fn id(&self) -> &'static str {
        "t:path"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["t:path"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let mut grid = Vec::new();
        for m in 2..=7u32 {
            for n in 2..=m {
                grid.push((m, n));
            }
        }
        grid.push((8, 2));
        grid.push((9, 2));
        Ok(TheoremReport::new(self.id(), path_grid_rows(&grid, cfg)?))
    }
}

/// Expected delta of a product of two connected bipartite graphs from its
/// vertex diameters and factor deltas: the closed bounds, collapsed to a
/// value when they meet or when the even-diameter equality case applies.
fn bipartite_expected(k1: u64, k2: u64, s1: u64, s2: u64) -> Expected {
    let lo = (8 * (k1 - 1)).min(16 * (k2 - 1)).max(s1).max(s2);
    let hi = 8 * k1;
    if k1 % 2 == 0 && k1 + 2 <= 2 * k2 {
        return Expected::Value { value: rat16(hi) };
    }
    if lo == hi {
        return Expected::Value { value: rat16(lo) };
    }
    Expected::Range {
        lo: rat16(lo),
        hi: rat16(hi),
    }
}

/// Row for one product of connected bipartite factors, ordered internally so
/// the larger vertex diameter comes first. Budget cuts on any of the three
/// delta runs downgrade the row to indeterminate.
pub fn bipartite_pair_row(
    label: &str,
    g1: &Graph,
    g2: &Graph,
    cfg: &ReportConfig,
) -> Result<Instance> {
    if !g1.is_bipartite() || !g2.is_bipartite() {
        return Err(crate::Error::BadParameter(
            "both factors must be bipartite".into(),
        ));
    }
    if !g1.is_connected() || !g2.is_connected() {
        return Err(crate::Error::BadParameter(
            "both factors must be connected".into(),
        ));
    }
    let (g1, g2) = if g1.diam_vertices() >= g2.diam_vertices() {
        (g1, g2)
    } else {
        (g2, g1)
    };
    let k1 = to_sixteenths(drat(g1.diam_vertices())) / 16;
    let k2 = to_sixteenths(drat(g2.diam_vertices())) / 16;
    let r1 = run_delta(g1, cfg)?;
    let r2 = run_delta(g2, cfg)?;
    let (prod, _) = direct_product(g1, g2)?;
    let result = run_delta(&prod, cfg)?;
    let expected = bipartite_expected(
        k1,
        k2,
        to_sixteenths(drat(r1.delta)),
        to_sixteenths(drat(r2.delta)),
    );
    let exact = r1.mode == DeltaMode::Exact
        && r2.mode == DeltaMode::Exact
        && result.mode == DeltaMode::Exact;
    Ok(if exact {
        delta_row(label.to_string(), expected, &result)
    } else {
        guarded_row(label.to_string(), expected, drat(result.delta), false)
    })
}

struct BipartiteProductTable;

impl TheoremCheck for BipartiteProductTable {
    fn id(&self) -> &'static str {
        "t:bipartite"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["t:bipartite"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let tree_a = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])?;
        let tree_b = Graph::new(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (3, 6)])?;
        let tree_c = Graph::new(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7)],
        )?;
        let tree_d = Graph::new(
            8,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 7)],
        )?;
        let cases = vec![
            ("path-5 x path-4", path(5), path(4)),
            ("tree-a x tree-b", tree_a, tree_b),
            ("tree-c x tree-d", tree_c, tree_d),
            ("cycle-6 x cycle-6", cycle(6), cycle(6)),
            ("path-9 x path-2", path(9), path(2)),
        ];
        let rows: Vec<Instance> = cases
            .par_iter()
            .map(|(label, g1, g2)| bipartite_pair_row(label, g1, g2, cfg))
            .collect::<Result<_>>()?;
        Ok(TheoremReport::new(self.id(), rows))
    }
}

/// Piecewise expected delta of an odd ring times a path, in sixteenths.
fn ring_path_expected16(m: u64, n: u64) -> u64 {
    if n - 1 <= m {
        8 * m
    } else if n - 1 < 2 * m {
        8 * (n - 1)
    } else {
        16 * m - 8
    }
}

/// Rows for the odd-ring-times-path table: measured delta of C_m x P_n
/// against the piecewise formula. Requires m odd >= 3 and n >= 2.
pub fn ring_path_rows(grid: &[(u32, u32)], cfg: &ReportConfig) -> Result<Vec<Instance>> {
    for &(m, n) in grid {
        if m % 2 == 0 || m < 3 || n < 2 {
            return Err(crate::Error::BadParameter(format!(
                "ring pair needs odd m >= 3 and n >= 2, got m={m} n={n}"
            )));
        }
    }
    grid.par_iter()
        .map(|&(m, n)| -> Result<Instance> {
            let (prod, _) = direct_product(&cycle(m), &path(n))?;
            let result = run_delta(&prod, cfg)?;
            Ok(delta_row(
                format!("m={m} n={n}"),
                Expected::Value {
                    value: rat16(ring_path_expected16(u64::from(m), u64::from(n))),
                },
                &result,
            ))
        })
        .collect()
}

/// Rows checking the closed-form distance in C_m x P_n against breadth-first
/// search over every vertex pair. Same parameter range as `ring_path_rows`.
pub fn ring_path_distance_rows(cases: &[(u32, u32)]) -> Result<Vec<Instance>> {
    for &(m, n) in cases {
        if m % 2 == 0 || m < 3 || n < 2 {
            return Err(crate::Error::BadParameter(format!(
                "ring pair needs odd m >= 3 and n >= 2, got m={m} n={n}"
            )));
        }
    }
    cases
        .par_iter()
        .map(|&(m, n)| -> Result<Instance> {
            let (prod, index) = direct_product(&cycle(m), &path(n))?;
            let hops = prod.apsp();
            let mut ok = true;
            for u in 0..prod.n() as u32 {
                for v in 0..prod.n() as u32 {
                    let (w, i) = index.pair(u);
                    let (r, s) = index.pair(v);
                    let closed = cmxpn_distance(m, n, (w + 1, i + 1), (r + 1, s + 1))?;
                    ok &= u32::from(hops.hops(u, v)) == closed;
                }
            }
            Ok(holds_row(format!("distance m={m} n={n}"), ok))
        })
        .collect()
}

struct RingPathTable;

impl TheoremCheck for RingPathTable {
    fn id(&self) -> &'static str {
        "t:CmxPn"
    }

    fn claims(&self) -> &'static [&'static str] {
        &["t:CmxPn"]
    }

    fn run(&self, cfg: &ReportConfig) -> Result<TheoremReport> {
        let mut grid = Vec::new();
        for m in [3u32, 5] {
            for n in 2..=12u32 {
                grid.push((m, n));
            }
        }
        grid.push((7, 2));
        grid.push((7, 8));
        let mut rows = ring_path_rows(&grid, cfg)?;
        rows.extend(ring_path_distance_rows(&[(3, 7), (5, 6), (7, 4)])?);
        Ok(TheoremReport::new(self.id(), rows))
    }
}

pub fn registry() -> &'static [&'static dyn TheoremCheck] {
    static CHECKS: [&dyn TheoremCheck; 25] = [
        &WalkParityCheck,
        &FactorLowerBound,
        &ComponentCount,
        &WitnessTriangleGrowth,
        &ExtensionConstants,
        &OddAnchorEmbedding,
        &ParityMatchedEmbedding,
        &EdgeFiberIsometry,
        &IsometricMonotone,
        &MinimalCycleBound,
        &DetourInequality,
        &QuarterGridEngine,
        &VertexSandwich,
        &DumbbellGrowth,
        &DenseAnchorsEmbedding,
        &DenseComposition,
        &BallCollapse,
        &StarQuotient,
        &DiameterCap,
        &BipartiteDiameters,
        &PathProductMetric,
        &EqualProjectionGeodesics,
        &PathPathTable,
        &BipartiteProductTable,
        &RingPathTable,
    ];
    &CHECKS
}

/// Look a check up by its primary id, falling back to any claim it covers.
pub fn find(id: &str) -> Option<&'static dyn TheoremCheck> {
    registry()
        .iter()
        .copied()
        .find(|c| c.id() == id)
        .or_else(|| {
            registry()
                .iter()
                .copied()
                .find(|c| c.claims().contains(&id))
        })
}

/// Runs every registered check in registry order.
pub fn run_all(cfg: &ReportConfig) -> Result<Vec<TheoremReport>> {
    registry().iter().map(|c| c.run(cfg)).collect()
}
