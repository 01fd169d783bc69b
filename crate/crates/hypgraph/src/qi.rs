//! Quasi-isometry measurement and the explicit product constructions:
//! factor embeddings, alternating walk lifts, the opposite-parity detour
//! check, and ball collapses with their star graphs.
//!
//! Constants are measured, never assumed: a scan over all vertex (or point)
//! pairs records the deduplicated (domain, image) distance pairs, and the
//! exact minimal additive constant for any given multiplicative one falls
//! out of that set by rational arithmetic.

use crate::cycles::{hops_to_cycles, minimal_cycles, odd_girth};
use crate::delta::delta_exact;
use crate::dist::{Dist16, Rat, RatOrInf};
use crate::error::{Error, Result};
use crate::graph::{point_distance, Graph, Point, HOP_INF};
use crate::parity::{parity_distances, validate_walk};
use crate::product::{direct_product, ProductIndex};
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};

/// Deduplicated (domain, image) distance pairs of a map, in sixteenths.
/// The feasible constants of the map are exactly
/// { (alpha, beta) : beta >= beta_for_alpha(alpha) }.
#[derive(Clone, Debug, Default)]
pub struct QiAnalysis {
    pairs: Vec<(u32, u32)>,
    /// Some pair is finite on exactly one side, so no constants exist.
    pub mismatch: bool,
}

impl QiAnalysis {
    pub fn from_pairs(iter: impl IntoIterator<Item = (Dist16, Dist16)>) -> QiAnalysis {
        let mut set = BTreeSet::new();
        let mut mismatch = false;
        for (a, b) in iter {
            match (a.sixteenths(), b.sixteenths()) {
                (Some(0), Some(0)) | (None, None) => {}
                (Some(x), Some(y)) => {
                    set.insert((x, y));
                }
                _ => mismatch = true,
            }
        }
        QiAnalysis {
            pairs: set.into_iter().collect(),
            mismatch,
        }
    }

    /// Least beta (in edge units) such that
    /// `a / alpha - beta <= b <= alpha * a + beta` holds for every pair.
    pub fn beta_for_alpha(&self, alpha: Rat) -> Rat {
        let (p, q) = (alpha.num as i128, alpha.den as i128);
        let mut best = (0i128, 1i128);
        for &(a, b) in &self.pairs {
            let (a, b) = (a as i128, b as i128);
            for cand in [(b * q - p * a, q), (a * q - b * p, p)] {
                if cand.0 * best.1 > best.0 * cand.1 {
                    best = cand;
                }
            }
        }
        if best.0 <= 0 {
            return Rat::integer(0);
        }
        Rat::new(best.0 as u64, (best.1 * 16) as u64)
    }

    /// Least alpha making beta = 0 feasible, when one exists.
    pub fn alpha_star(&self) -> Option<Rat> {
        let mut best = Rat::integer(1);
        for &(a, b) in &self.pairs {
            if a == 0 || b == 0 {
                return None;
            }
            for r in [Rat::new(a as u64, b as u64), Rat::new(b as u64, a as u64)] {
                if best.le(r) {
                    best = r;
                }
            }
        }
        Some(best)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParetoPoint {
    pub alpha: Rat,
    pub beta: Rat,
}

#[derive(Clone, Debug, Serialize)]
pub struct QiReport {
    pub alpha: Rat,
    pub beta: Rat,
    pub epsilon: RatOrInf,
    pub embedding_ok: bool,
    /// Trade-off anchors: the least-alpha point and, when beta = 0 is
    /// attainable, the least alpha attaining it.
    pub pareto: Vec<ParetoPoint>,
}

fn report_from(analysis: &QiAnalysis, epsilon: RatOrInf) -> QiReport {
    let beta = analysis.beta_for_alpha(Rat::integer(1));
    let mut pareto = vec![ParetoPoint {
        alpha: Rat::integer(1),
        beta,
    }];
    if let Some(star) = analysis.alpha_star() {
        if !star.le(Rat::integer(1)) {
            pareto.push(ParetoPoint {
                alpha: star,
                beta: Rat::integer(0),
            });
        }
    }
    QiReport {
        alpha: Rat::integer(1),
        beta,
        epsilon,
        embedding_ok: !analysis.mismatch,
        pareto,
    }
}

fn check_vertex_map(g1: &Graph, g2: &Graph, f: &[u32]) -> Result<()> {
    if f.len() != g1.n() {
        return Err(Error::BadParameter(format!(
            "map has {} entries for {} vertices",
            f.len(),
            g1.n()
        )));
    }
    for &v in f {
        if v as usize >= g2.n() {
            return Err(Error::BadId {
                id: v,
                n: g2.n(),
            });
        }
    }
    Ok(())
}

/// Largest hop distance from a codomain vertex to the image set.
fn image_epsilon(g: &Graph, image: impl IntoIterator<Item = u32>) -> RatOrInf {
    let mut dist = vec![HOP_INF; g.n()];
    let mut queue = VecDeque::new();
    for v in image {
        if dist[v as usize] != 0 {
            dist[v as usize] = 0;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w as usize] == HOP_INF {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    match dist.iter().copied().max().unwrap_or(0) {
        HOP_INF => RatOrInf::Inf,
        worst => RatOrInf::Finite(Rat::integer(u64::from(worst))),
    }
}

fn scan_vertex_map(g1: &Graph, g2: &Graph, f: &[u32]) -> (QiAnalysis, RatOrInf) {
    let h1 = g1.apsp();
    let h2 = g2.apsp();
    let mut pairs = Vec::new();
    for u in 0..g1.n() as u32 {
        for v in u + 1..g1.n() as u32 {
            pairs.push((h1.dist(u, v), h2.dist(f[u as usize], f[v as usize])));
        }
    }
    (
        QiAnalysis::from_pairs(pairs),
        image_epsilon(g2, f.iter().copied()),
    )
}

/// Exact optimal constants of a vertex map by exhaustive pair scan.
pub fn qi_constants(g1: &Graph, g2: &Graph, f: &[u32]) -> Result<QiReport> {
    check_vertex_map(g1, g2, f)?;
    let (analysis, epsilon) = scan_vertex_map(g1, g2, f);
    Ok(report_from(&analysis, epsilon))
}

/// A vertex map into a product (or one of its components), with the target
/// graph, the factor pair behind each target vertex, and measured constants.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub codomain: Graph,
    pub codomain_pairs: Vec<(u32, u32)>,
    /// Factor pair of each domain vertex when the domain is itself a product.
    pub domain_pairs: Option<Vec<(u32, u32)>>,
    pub map: Vec<u32>,
    pub report: QiReport,
}

fn all_pairs(index: &ProductIndex, n: usize) -> Vec<(u32, u32)> {
    (0..n as u32).map(|id| index.pair(id)).collect()
}

/// Embed the first factor into the product along a fixed second coordinate
/// on a shortest odd cycle of the second factor.
pub fn embedding_g2odd(g1: &Graph, g2: &Graph) -> Result<Embedding> {
    let girth = odd_girth(g2).ok_or(Error::NoOddCycle)?;
    let v0 = (0..g2.n() as u32)
        .find(|&v| parity_distances(g2, v).at(v).odd == Some(girth))
        .expect("some vertex realizes the odd girth");
    let (prod, index) = direct_product(g1, g2)?;
    let map: Vec<u32> = (0..g1.n() as u32).map(|w| index.id(w, v0)).collect();
    let report = qi_constants(g1, &prod, &map)?;
    Ok(Embedding {
        codomain_pairs: all_pairs(&index, prod.n()),
        codomain: prod,
        domain_pairs: None,
        map,
        report,
    })
}

/// Embed a connected bipartite first factor into the component of the
/// product holding its parity-matched copy, second factor also bipartite.
pub fn embedding_no_odd(g1: &Graph, g2: &Graph) -> Result<Embedding> {
    let bip = g1
        .bipartition()
        .ok_or_else(|| Error::BadParameter("first factor has an odd cycle".into()))?;
    if !g2.is_bipartite() {
        return Err(Error::BadParameter("second factor has an odd cycle".into()));
    }
    if !g1.is_connected() {
        return Err(Error::BadParameter("first factor is disconnected".into()));
    }
    let &(v1, v2) = g2
        .edges()
        .first()
        .ok_or_else(|| Error::BadParameter("second factor has no edges".into()))?;
    let (prod, index) = direct_product(g1, g2)?;
    let full_map: Vec<u32> = (0..g1.n() as u32)
        .map(|w| {
            index.id(w, if bip.color[w as usize] == 0 { v1 } else { v2 })
        })
        .collect();
    let comp = prod
        .components()
        .into_iter()
        .find(|c| c.binary_search(&full_map[0]).is_ok())
        .expect("image vertex lies in some component");
    let (sub, back) = prod.induced(&comp);
    let mut fwd = vec![u32::MAX; prod.n()];
    for (new, &old) in back.iter().enumerate() {
        fwd[old as usize] = new as u32;
    }
    let map: Vec<u32> = full_map.iter().map(|&x| fwd[x as usize]).collect();
    debug_assert!(map.iter().all(|&x| x != u32::MAX));
    let report = qi_constants(g1, &sub, &map)?;
    Ok(Embedding {
        codomain_pairs: back.iter().map(|&old| index.pair(old)).collect(),
        codomain: sub,
        domain_pairs: None,
        map,
        report,
    })
}

/// Include the product with a single edge into the product with the whole
/// bipartite second factor, sending the edge onto a chosen edge of it.
pub fn embedding_l_p2(g1: &Graph, g2: &Graph, edge: Option<(u32, u32)>) -> Result<Embedding> {
    if !g2.is_bipartite() {
        return Err(Error::BadParameter("second factor has an odd cycle".into()));
    }
    let (v1, v2) = match edge {
        Some((a, b)) => {
            if !g2.has_edge(a, b) {
                return Err(Error::BadParameter(format!("no edge between {a} and {b}")));
            }
            (a, b)
        }
        None => *g2
            .edges()
            .first()
            .ok_or_else(|| Error::BadParameter("second factor has no edges".into()))?,
    };
    let p2 = Graph::new(2, &[(0, 1)])?;
    let (dom, dom_index) = direct_product(g1, &p2)?;
    let (prod, index) = direct_product(g1, g2)?;
    let map: Vec<u32> = (0..dom.n() as u32)
        .map(|id| {
            let (w, i) = dom_index.pair(id);
            index.id(w, if i == 0 { v1 } else { v2 })
        })
        .collect();
    let report = qi_constants(&dom, &prod, &map)?;
    Ok(Embedding {
        codomain_pairs: all_pairs(&index, prod.n()),
        codomain: prod,
        domain_pairs: Some(all_pairs(&dom_index, dom.n())),
        map,
        report,
    })
}

/// Image of one point under the nearest-vertex extension of a vertex map;
/// ties go to the lower-id endpoint.
pub fn extend_point(f: &[u32], p: Point) -> u32 {
    match p {
        Point::Vertex(v) => f[v as usize],
        Point::Interior { u, v, sixteenths } => match sixteenths.cmp(&8) {
            std::cmp::Ordering::Less => f[u as usize],
            std::cmp::Ordering::Greater => f[v as usize],
            std::cmp::Ordering::Equal => f[u.min(v) as usize],
        },
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtendedMap {
    /// Half-grid sample points with their images.
    pub points: Vec<(Point, u32)>,
    /// Constants of the vertex map alone.
    pub vertex_report: QiReport,
    /// Constants of the extension over the domain half-grid, with fullness
    /// measured against the codomain half-grid.
    pub point_report: QiReport,
}

/// Extend a vertex map to all points via the nearest vertex and measure the
/// extension on the half-grid of vertices and edge midpoints.
pub fn extend_vertex_map(g1: &Graph, g2: &Graph, f: &[u32]) -> Result<ExtendedMap> {
    check_vertex_map(g1, g2, f)?;
    let vertex_report = qi_constants(g1, g2, f)?;
    let h1 = g1.apsp();
    let h2 = g2.apsp();
    let mut points: Vec<Point> = (0..g1.n() as u32).map(Point::Vertex).collect();
    points.extend(g1.edges().iter().map(|&(u, v)| Point::on_edge(u, v, 8)));
    let images: Vec<u32> = points.iter().map(|&p| extend_point(f, p)).collect();
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            pairs.push((
                point_distance(&h1, points[i], points[j]),
                h2.dist(images[i], images[j]),
            ));
        }
    }
    let analysis = QiAnalysis::from_pairs(pairs);
    let image_set: BTreeSet<u32> = images.iter().copied().collect();
    let mut grid2: Vec<Point> = (0..g2.n() as u32).map(Point::Vertex).collect();
    grid2.extend(g2.edges().iter().map(|&(u, v)| Point::on_edge(u, v, 8)));
    let mut epsilon = RatOrInf::Finite(Rat::integer(0));
    for &q in &grid2 {
        let near = image_set
            .iter()
            .map(|&u| point_distance(&h2, q, Point::Vertex(u)))
            .min()
            .unwrap_or(Dist16::INFINITY);
        let d = match near.as_rational() {
            Some(r) => RatOrInf::Finite(r),
            None => RatOrInf::Inf,
        };
        if !d.le(epsilon) {
            epsilon = d;
        }
    }
    Ok(ExtendedMap {
        points: points.into_iter().zip(images).collect(),
        vertex_report,
        point_report: report_from(&analysis, epsilon),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaVariant {
    One,
    Two,
}

/// Alternating lift of a walk into the product with a single edge: the first
/// variant starts in the first parity class, the second is its pointwise
/// coordinate swap.
pub fn lift_gamma(g1: &Graph, walk: &[u32], variant: GammaVariant) -> Result<Vec<(u32, u32)>> {
    if walk.is_empty() {
        return Err(Error::BadParameter("empty walk".into()));
    }
    validate_walk(g1, walk)?;
    let base = match variant {
        GammaVariant::One => 0,
        GammaVariant::Two => 1,
    };
    Ok(walk
        .iter()
        .enumerate()
        .map(|(i, &w)| (w, (base + i as u32) % 2))
        .collect())
}

/// Swap the second coordinate of every entry of a lifted walk.
pub fn swap_r(lift: &[(u32, u32)]) -> Vec<(u32, u32)> {
    lift.iter().map(|&(w, v)| (w, 1 - v)).collect()
}

/// Exact comparison data for the opposite-parity detour of a geodesic: the
/// detour distance against the square root of the distance from a marked
/// vertex to the union of minimal cycles, and the matching sandwich bounds.
#[derive(Clone, Debug, Serialize)]
pub struct DetourCheck {
    /// Length of the input geodesic.
    pub k: u32,
    /// Product distance from the lift's start to the opposite-parity copy of
    /// the far endpoint.
    pub lhs: u32,
    /// Hop distance from the marked vertex to the union of minimal cycles.
    pub dist_to_cycles: u32,
    pub delta: Dist16,
    /// lhs > sqrt(dist_to_cycles).
    pub strict_ok: bool,
    /// (k + sqrt(dist_to_cycles)) / 2 <= lhs.
    pub lower_ok: bool,
    /// lhs <= k + 2 dist_to_cycles + 4 delta.
    pub upper_ok: bool,
}

/// Measure the opposite-parity detour of a geodesic in the product with a
/// single edge and compare it against the minimal-cycle distance bounds at
/// the `j`-th vertex. All square-root comparisons are done on squares.
pub fn detour_check(g1: &Graph, geodesic: &[u32], j: usize) -> Result<DetourCheck> {
    if geodesic.is_empty() {
        return Err(Error::BadParameter("empty walk".into()));
    }
    if j >= geodesic.len() {
        return Err(Error::BadParameter(format!(
            "marked index {} on a walk of {} vertices",
            j,
            geodesic.len()
        )));
    }
    validate_walk(g1, geodesic)?;
    let k = (geodesic.len() - 1) as u32;
    let (w0, wk) = (geodesic[0], geodesic[k as usize]);
    if u32::from(g1.bfs_hops(w0)[wk as usize]) != k {
        return Err(Error::BadParameter("walk is not a geodesic".into()));
    }
    if g1.is_bipartite() {
        return Err(Error::NoOddCycle);
    }
    let p2 = Graph::new(2, &[(0, 1)])?;
    let (prod, index) = direct_product(g1, &p2)?;
    let start = index.id(w0, 0);
    let end = index.id(wk, (k + 1) % 2);
    let lhs_hops = prod.bfs_hops(start)[end as usize];
    if lhs_hops == HOP_INF {
        return Err(Error::NoOddCycle);
    }
    let lhs = u32::from(lhs_hops);
    let cycles = minimal_cycles(g1, None)?;
    let row = hops_to_cycles(g1, &cycles);
    let d = u32::from(row[geodesic[j] as usize]);
    let delta = delta_exact(g1)?.delta;
    let d16 = delta.sixteenths().expect("finite delta");
    let (lhs2, d64) = (u64::from(lhs) * u64::from(lhs), u64::from(d));
    let slack = u64::from(2 * lhs - k);
    Ok(DetourCheck {
        k,
        lhs,
        dist_to_cycles: d,
        delta,
        strict_ok: lhs2 > d64,
        lower_ok: 2 * lhs >= k && slack * slack >= d64,
        upper_ok: 16 * lhs <= 16 * k + 32 * d + 4 * d16,
    })
}

/// An open ball to collapse: interior {v : d(v, center) < radius}.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BallSpec {
    pub center: u32,
    pub radius: u32,
}

struct BallContext {
    /// Hop row from each ball center.
    rows: Vec<Vec<u16>>,
}

impl BallContext {
    fn in_open_ball(&self, balls: &[BallSpec], v: u32) -> Option<usize> {
        balls
            .iter()
            .enumerate()
            .find(|(j, b)| u32::from(self.rows[*j][v as usize]) < b.radius)
            .map(|(j, _)| j)
    }

    fn on_sphere(&self, balls: &[BallSpec], j: usize, v: u32) -> bool {
        u32::from(self.rows[j][v as usize]) == balls[j].radius
    }
}

/// Shortest odd cycle of a graph, as global ids through `back`.
fn shortest_odd_cycle(g: &Graph, back: &[u32]) -> Vec<u32> {
    let best = (0..g.n() as u32)
        .filter_map(|v| parity_distances(g, v).at(v).odd.map(|l| (l, v)))
        .min()
        .expect("graph has an odd cycle");
    let walk = crate::parity::parity_walk(g, best.1, best.1, true).expect("odd walk exists");
    walk[..walk.len() - 1]
        .iter()
        .map(|&v| back[v as usize])
        .collect()
}

fn validate_balls(g1: &Graph, balls: &[BallSpec]) -> Result<BallContext> {
    for b in balls {
        if b.center as usize >= g1.n() {
            return Err(Error::BadId {
                id: b.center,
                n: g1.n(),
            });
        }
        if b.radius == 0 {
            return Err(Error::BadParameter(format!(
                "ball at vertex {} has radius 0",
                b.center
            )));
        }
    }
    let rows: Vec<Vec<u16>> = balls.iter().map(|b| g1.bfs_hops(b.center)).collect();
    for i in 0..balls.len() {
        for j in i + 1..balls.len() {
            let d = rows[i][balls[j].center as usize];
            if d != HOP_INF && u32::from(d) <= balls[i].radius + balls[j].radius {
                return Err(Error::OverlappingBalls(balls[i].center, balls[j].center));
            }
        }
    }
    Ok(BallContext { rows })
}

fn retained_vertices(g1: &Graph, balls: &[BallSpec], ctx: &BallContext) -> Vec<u32> {
    (0..g1.n() as u32)
        .filter(|&v| ctx.in_open_ball(balls, v).is_none())
        .collect()
}

/// Check that removing all open balls leaves a bipartite remainder, so no
/// odd cycle evades every ball.
fn check_coverage(sub: &Graph, back: &[u32]) -> Result<()> {
    if sub.is_bipartite() {
        Ok(())
    } else {
        Err(Error::UncoveredOddCycle(shortest_odd_cycle(sub, back)))
    }
}

/// A collapsed graph: each open ball contracted to a fresh star vertex
/// joined to the ball's boundary sphere.
#[derive(Clone, Debug)]
pub struct Collapse {
    pub graph: Graph,
    /// Original vertex to collapsed vertex.
    pub map: Vec<u32>,
    /// Star vertex of each ball, in ball order.
    pub star_ids: Vec<u32>,
    /// Original ids of the retained vertices, indexed by their new id.
    pub kept: Vec<u32>,
    pub k_max: u32,
    pub report: QiReport,
    pub analysis: QiAnalysis,
}

pub fn collapse_balls(g1: &Graph, balls: &[BallSpec]) -> Result<Collapse> {
    let ctx = validate_balls(g1, balls)?;
    let kept = retained_vertices(g1, balls, &ctx);
    let (sub, back) = g1.induced(&kept);
    check_coverage(&sub, &back)?;
    let mut fwd = vec![u32::MAX; g1.n()];
    for (new, &old) in back.iter().enumerate() {
        fwd[old as usize] = new as u32;
    }
    let mut edges: Vec<(u32, u32)> = sub.edges().to_vec();
    let star_ids: Vec<u32> = (0..balls.len()).map(|j| (sub.n() + j) as u32).collect();
    for (j, &star) in star_ids.iter().enumerate() {
        for &old in &back {
            if ctx.on_sphere(balls, j, old) {
                edges.push((fwd[old as usize], star));
            }
        }
    }
    let graph = Graph::new(sub.n() + balls.len(), &edges)?;
    let map: Vec<u32> = (0..g1.n() as u32)
        .map(|v| match ctx.in_open_ball(balls, v) {
            Some(j) => star_ids[j],
            None => fwd[v as usize],
        })
        .collect();
    let (analysis, epsilon) = scan_vertex_map(g1, &graph, &map);
    let report = report_from(&analysis, epsilon);
    Ok(Collapse {
        graph,
        map,
        star_ids,
        kept: back,
        k_max: balls.iter().map(|b| b.radius).max().unwrap_or(0),
        report,
        analysis,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Regularity {
    pub regular: bool,
    /// One odd cycle shorter than the bound through each ball, where found.
    pub witnesses: Vec<Option<Vec<u32>>>,
}

/// Depth-first search for a simple odd cycle through `root` of length at
/// most `max_len`, pruned by parity distances back to the root.
fn rooted_odd_cycle(g: &Graph, root: u32, max_len: u32) -> Option<Vec<u32>> {
    if max_len < 3 {
        return None;
    }
    let row = parity_distances(g, root);
    let mut path = vec![root];
    let mut on_path = vec![false; g.n()];
    on_path[root as usize] = true;
    let mut iters = vec![0usize];
    while let Some(&v) = path.last() {
        let i = *iters.last().expect("one iterator per path entry");
        if i >= g.degree(v) {
            path.pop();
            iters.pop();
            on_path[v as usize] = false;
            continue;
        }
        *iters.last_mut().expect("non-empty") += 1;
        let w = g.neighbors(v)[i];
        let closing = path.len() as u32;
        if w == root && closing >= 3 && closing % 2 == 1 {
            return Some(path);
        }
        if on_path[w as usize] || closing >= max_len {
            continue;
        }
        let p = row.at(w);
        let back = if closing % 2 == 0 { p.odd } else { p.even };
        if back.is_none_or(|r| closing + r > max_len) {
            continue;
        }
        on_path[w as usize] = true;
        path.push(w);
        iters.push(0);
    }
    None
}

/// True iff every ball meets a simple odd cycle of length strictly below
/// `m`; `None` caps the search at the vertex count instead.
pub fn is_m_regular(g1: &Graph, balls: &[BallSpec], m: Option<u32>) -> Result<Regularity> {
    let ctx = validate_balls(g1, balls)?;
    let kept = retained_vertices(g1, balls, &ctx);
    let (sub, back) = g1.induced(&kept);
    check_coverage(&sub, &back)?;
    let max_len = m.map_or(g1.n() as u32, |mm| mm.saturating_sub(1));
    let mut witnesses = Vec::with_capacity(balls.len());
    for (j, _) in balls.iter().enumerate() {
        let mut witness = None;
        if !g1.is_bipartite() {
            for v in 0..g1.n() as u32 {
                if u32::from(ctx.rows[j][v as usize]) < balls[j].radius {
                    witness = rooted_odd_cycle(g1, v, max_len);
                    if witness.is_some() {
                        break;
                    }
                }
            }
        }
        witnesses.push(witness);
    }
    Ok(Regularity {
        regular: witnesses.iter().all(|w| w.is_some()),
        witnesses,
    })
}

/// The collapsed product: the retained subgraph times a single edge, plus
/// one star vertex per ball joined to both parity copies of its sphere.
#[derive(Clone, Debug)]
pub struct ProductStar {
    /// Full product of the original graph with a single edge.
    pub domain: Graph,
    pub domain_pairs: Vec<(u32, u32)>,
    pub graph: Graph,
    /// Domain vertex to collapsed vertex.
    pub map: Vec<u32>,
    pub star_ids: Vec<u32>,
    pub k_max: u32,
    /// Regularity bound actually used: the given one, or the least one the
    /// found witnesses support.
    pub m_effective: u32,
    pub report: QiReport,
    pub analysis: QiAnalysis,
}

pub fn product_star(g1: &Graph, balls: &[BallSpec], m: Option<u32>) -> Result<ProductStar> {
    let reg = is_m_regular(g1, balls, m)?;
    if !reg.regular {
        let j = reg
            .witnesses
            .iter()
            .position(|w| w.is_none())
            .expect("some ball lacks a witness");
        let reason = if g1.is_bipartite() {
            "graph has no odd cycles".into()
        } else {
            format!(
                "ball at vertex {} meets no odd cycle of length below {}",
                balls[j].center,
                m.map_or(g1.n() as u32 + 1, |mm| mm)
            )
        };
        return Err(Error::NotMRegular(reason));
    }
    let m_effective = m.unwrap_or_else(|| {
        reg.witnesses
            .iter()
            .map(|w| w.as_ref().expect("regular").len() as u32)
            .max()
            .expect("at least one ball")
            + 1
    });
    let ctx = validate_balls(g1, balls)?;
    let kept = retained_vertices(g1, balls, &ctx);
    let (sub, back) = g1.induced(&kept);
    let mut fwd = vec![u32::MAX; g1.n()];
    for (new, &old) in back.iter().enumerate() {
        fwd[old as usize] = new as u32;
    }
    let p2 = Graph::new(2, &[(0, 1)])?;
    let (strip, strip_index) = direct_product(&sub, &p2)?;
    let star_ids: Vec<u32> = (0..balls.len()).map(|j| (strip.n() + j) as u32).collect();
    let mut edges: Vec<(u32, u32)> = strip.edges().to_vec();
    for (j, &star) in star_ids.iter().enumerate() {
        for &old in &back {
            if ctx.on_sphere(balls, j, old) {
                for side in 0..2 {
                    edges.push((strip_index.id(fwd[old as usize], side), star));
                }
            }
        }
    }
    let graph = Graph::new(strip.n() + balls.len(), &edges)?;
    let (dom, dom_index) = direct_product(g1, &p2)?;
    let map: Vec<u32> = (0..dom.n() as u32)
        .map(|id| {
            let (w, side) = dom_index.pair(id);
            match ctx.in_open_ball(balls, w) {
                Some(j) => star_ids[j],
                None => strip_index.id(fwd[w as usize], side),
            }
        })
        .collect();
    let (analysis, epsilon) = scan_vertex_map(&dom, &graph, &map);
    let report = report_from(&analysis, epsilon);
    Ok(ProductStar {
        domain_pairs: all_pairs(&dom_index, dom.n()),
        domain: dom,
        graph,
        map,
        star_ids,
        k_max: balls.iter().map(|b| b.radius).max().unwrap_or(0),
        m_effective,
        report,
        analysis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parity::product_distance_vertices;

    fn cycle(m: u32) -> Graph {
        let edges: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        Graph::new(m as usize, &edges).unwrap()
    }

    fn path(m: u32) -> Graph {
        let edges: Vec<_> = (0..m - 1).map(|i| (i, i + 1)).collect();
        Graph::new(m as usize, &edges).unwrap()
    }

    fn dumbbell(bridge: u32) -> Graph {
        let mut edges = vec![(0, 1), (1, 2), (0, 2)];
        edges.extend((2..2 + bridge).map(|i| (i, i + 1)));
        let b = 2 + bridge;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
        Graph::new(bridge as usize + 5, &edges).unwrap()
    }

    #[test]
    fn identity_is_exact() {
        let g = cycle(5);
        let f: Vec<u32> = (0..5).collect();
        let r = qi_constants(&g, &g, &f).unwrap();
        assert_eq!(r.beta, Rat::integer(0));
        assert_eq!(r.epsilon.finite(), Some(Rat::integer(0)));
        assert!(r.embedding_ok);
        assert_eq!(r.pareto.len(), 1);
    }

    #[test]
    fn fixed_coordinate_embedding_on_an_odd_factor() {
        let e = embedding_g2odd(&path(4), &cycle(3)).unwrap();
        assert_eq!(e.codomain.n(), 12);
        assert!(e.report.embedding_ok);
        assert!(e.report.beta.le(Rat::integer(3)));
        assert!(e.report.epsilon.le(RatOrInf::Finite(Rat::integer(4))));
        assert_eq!(e.codomain_pairs[e.map[0] as usize], (0, 0));
    }

    #[test]
    fn parity_matched_embedding_is_isometric() {
        let e = embedding_no_odd(&path(5), &path(2)).unwrap();
        assert_eq!(e.codomain.n(), 5);
        assert!(e.report.embedding_ok);
        assert_eq!(e.report.beta, Rat::integer(0));
        assert!(e.report.epsilon.le(RatOrInf::Finite(Rat::integer(1))));
    }

    #[test]
    fn edge_inclusion_is_isometric() {
        let e = embedding_l_p2(&path(3), &path(4), None).unwrap();
        assert!(e.report.embedding_ok);
        assert_eq!(e.report.beta, Rat::integer(0));
        assert!(e.report.epsilon.le(RatOrInf::Finite(Rat::integer(3))));
    }

    #[test]
    fn extension_resolves_ties_downward() {
        let g = cycle(5);
        let f: Vec<u32> = vec![3, 1, 4, 0, 2];
        assert_eq!(extend_point(&f, Point::on_edge(0, 1, 8)), f[0]);
        assert_eq!(extend_point(&f, Point::on_edge(0, 1, 4)), f[0]);
        assert_eq!(extend_point(&f, Point::on_edge(0, 1, 12)), f[1]);

        // Midpoints flanking one vertex sit at distance 1 and share an
        // image, so the extension hits the additive bound exactly.
        let id: Vec<u32> = (0..5).collect();
        let ext = extend_vertex_map(&g, &g, &id).unwrap();
        assert_eq!(ext.vertex_report.beta, Rat::integer(0));
        assert_eq!(ext.point_report.beta, Rat::integer(1));
        assert!(ext
            .point_report
            .epsilon
            .le(RatOrInf::Finite(Rat::new(1, 2))));
    }

    #[test]
    fn lifts_alternate_and_stay_geodesic() {
        let c3 = cycle(3);
        let lift = lift_gamma(&c3, &[0, 1, 2], GammaVariant::One).unwrap();
        assert_eq!(lift, vec![(0, 0), (1, 1), (2, 0)]);
        assert_eq!(swap_r(&lift), vec![(0, 1), (1, 0), (2, 1)]);
        assert_eq!(
            lift_gamma(&c3, &[0, 1, 2], GammaVariant::Two).unwrap(),
            swap_r(&lift)
        );

        let p4 = path(4);
        let p2 = path(2);
        let lifted = lift_gamma(&p4, &[0, 1, 2, 3], GammaVariant::One).unwrap();
        let (start, end) = (lifted[0], lifted[3]);
        assert_eq!(product_distance_vertices(&p4, &p2, start, end), Some(3));

        assert!(matches!(
            lift_gamma(&c3, &[0, 2, 1, 0, 2], GammaVariant::One),
            Ok(_)
        ));
        assert!(matches!(
            lift_gamma(&c3, &[0, 0], GammaVariant::One),
            Err(Error::NotAWalk(0))
        ));
    }

    #[test]
    fn detour_check_on_the_dumbbell_bridge() {
        let g = dumbbell(6);
        let c = detour_check(&g, &[2, 3, 4, 5, 6, 7, 8], 3).unwrap();
        assert_eq!(c.k, 6);
        assert_eq!(c.lhs, 9);
        assert_eq!(c.dist_to_cycles, 3);
        assert!(c.strict_ok && c.lower_ok && c.upper_ok);
    }

    #[test]
    fn detour_check_degenerate_cases() {
        let c5 = cycle(5);
        let c = detour_check(&c5, &[0, 1], 0).unwrap();
        assert_eq!(c.lhs, 4);
        assert_eq!(c.dist_to_cycles, 0);
        assert!(c.strict_ok && c.lower_ok && c.upper_ok);

        assert!(matches!(
            detour_check(&path(4), &[0, 1], 0),
            Err(Error::NoOddCycle)
        ));
        assert!(matches!(
            detour_check(&c5, &[0, 1, 2, 3], 0),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn radius_one_collapse_relabels() {
        let c = collapse_balls(&cycle(5), &[BallSpec { center: 0, radius: 1 }]).unwrap();
        assert_eq!(c.graph.n(), 5);
        assert_eq!(c.graph.edge_count(), 5);
        assert!((0..5).all(|v| c.graph.degree(v) == 2));
        assert_eq!(c.report.beta, Rat::integer(0));
        assert_eq!(c.report.epsilon.finite(), Some(Rat::integer(0)));
    }

    #[test]
    fn collapse_rejects_bad_ball_systems() {
        let c5 = cycle(5);
        assert!(matches!(
            collapse_balls(
                &c5,
                &[
                    BallSpec { center: 0, radius: 2 },
                    BallSpec { center: 2, radius: 2 }
                ]
            ),
            Err(Error::OverlappingBalls(0, 2))
        ));

        let d6 = dumbbell(6);
        match collapse_balls(&d6, &[BallSpec { center: 2, radius: 1 }]) {
            Err(Error::UncoveredOddCycle(mut c)) => {
                c.sort_unstable();
                assert_eq!(c, vec![8, 9, 10]);
            }
            other => panic!("expected an uncovered cycle, got {other:?}"),
        }
    }

    #[test]
    fn attachment_collapse_stays_close() {
        let d4 = dumbbell(4);
        let balls = [
            BallSpec { center: 2, radius: 1 },
            BallSpec { center: 6, radius: 1 },
        ];
        let c = collapse_balls(&d4, &balls).unwrap();
        assert!(c.report.embedding_ok);
        assert!(c.report.beta.le(Rat::integer(2)));
        assert!(c
            .analysis
            .beta_for_alpha(Rat::integer(1))
            .le(Rat::integer(2)));
        assert_eq!(c.report.epsilon.finite(), Some(Rat::integer(0)));
    }

    #[test]
    fn regularity_thresholds() {
        let d6 = dumbbell(6);
        let balls = [
            BallSpec { center: 2, radius: 1 },
            BallSpec { center: 8, radius: 1 },
        ];
        assert!(is_m_regular(&d6, &balls, Some(4)).unwrap().regular);
        assert!(!is_m_regular(&d6, &balls, Some(3)).unwrap().regular);
        let open = is_m_regular(&d6, &balls, None).unwrap();
        assert!(open.regular);
        assert!(open.witnesses.iter().all(|w| w.as_ref().is_some_and(|c| c.len() == 3)));
    }

    #[test]
    fn star_product_within_bounds() {
        let d4 = dumbbell(4);
        let balls = [
            BallSpec { center: 2, radius: 1 },
            BallSpec { center: 6, radius: 1 },
        ];
        let ps = product_star(&d4, &balls, Some(4)).unwrap();
        assert_eq!(ps.k_max, 1);
        assert_eq!(ps.m_effective, 4);
        assert_eq!(ps.graph.n(), 7 * 2 + 2);
        assert!(ps.report.embedding_ok);
        let (alpha, beta) = (4 * 1 + 4 + 1, 4 * 1 + 4);
        assert!(ps
            .analysis
            .beta_for_alpha(Rat::integer(alpha))
            .le(Rat::integer(beta)));
    }

    #[test]
    fn bipartite_graphs_are_never_regular() {
        let p5 = path(5);
        let balls = [BallSpec { center: 2, radius: 1 }];
        let reg = is_m_regular(&p5, &balls, Some(4)).unwrap();
        assert!(!reg.regular);
        assert!(matches!(
            product_star(&p5, &balls, Some(4)),
            Err(Error::NotMRegular(_))
        ));
    }
}
