//! Hyperbolicity constants of finite metric graphs, computed exactly on the
//! quarter grid of the twofold subdivision.
//!
//! For corners a, b and apex c, every point p of a geodesic joining a and b
//! must be within delta of the union of one geodesic a-c and one geodesic
//! b-c. The two side choices are independent, so the worst case over all
//! triangles factors through per-pair tables: M[p, (x, c)] is the largest
//! distance from p to a geodesic joining x and c, a bottleneck value over
//! the pair's shortest-path dag. Scanning (pair, apex, grid point) against
//! the tables recovers the exact supremum without enumerating geodesics.
//!
//! Along any half-edge of the subdivision every distance profile is linear
//! between consecutive quarter points, so vertices and edge midpoints of the
//! subdivision carry all extrema and the result is an exact multiple of 1/4.

use crate::dist::Dist16;
use crate::error::{Error, Result};
use crate::graph::{Graph, HopMatrix, Point};
use crate::triangle::{distance_to_sides, Triangle};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::atomic::{AtomicU32, Ordering};

#[derive(Clone, Copy, Debug)]
pub struct DeltaBudget {
    /// Cap on explicitly enumerated geodesics between one pair of points.
    /// The delta scan never enumerates geodesics; this guards callers that
    /// list them, such as geodesic stability checks.
    pub max_geodesics_per_pair: u64,
    /// Cap on (corner pair, apex) roles the scan may examine, counted before
    /// pruning. When it does not cover every pair the scan stops at a pair
    /// boundary and the result is a lower bound.
    pub max_triangle_roles: u64,
}

impl Default for DeltaBudget {
    fn default() -> Self {
        DeltaBudget {
            max_geodesics_per_pair: 10_000,
            max_triangle_roles: 10_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DeltaOptions {
    pub budget: DeltaBudget,
    /// Skip corner pairs that provably cannot beat the best value seen.
    /// Never changes the result or the witness.
    pub prune: bool,
    /// Restrict triangle corners to vertices, giving the vertex relaxation;
    /// its value is a multiple of 1/2 instead of 1/4.
    pub vertex_corners: bool,
}

impl Default for DeltaOptions {
    fn default() -> Self {
        DeltaOptions {
            budget: DeltaBudget::default(),
            prune: true,
            vertex_corners: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaMode {
    Exact,
    LowerBound,
    UpperBound,
}

/// A triangle and the point on its first side realizing the reported value.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub triangle: Triangle,
    pub point: Point,
    pub side: usize,
    pub distance: Dist16,
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaResult {
    pub delta: Dist16,
    pub mode: DeltaMode,
    pub witness: Option<Witness>,
}

pub fn delta_exact(g: &Graph) -> Result<DeltaResult> {
    delta_with(g, &DeltaOptions::default())
}

pub fn delta_vertex(g: &Graph) -> Result<DeltaResult> {
    delta_with(
        g,
        &DeltaOptions {
            vertex_corners: true,
            ..DeltaOptions::default()
        },
    )
}

/// Half the diameter bounds the hyperbolicity constant from above.
pub fn delta_upper_diam(g: &Graph) -> Result<DeltaResult> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut best = Dist16::ZERO;
    for comp in g.components() {
        let (sub, _) = g.induced(&comp);
        let half = sub.diam_continuous().half();
        best = best.max(half);
    }
    Ok(DeltaResult {
        delta: best,
        mode: DeltaMode::UpperBound,
        witness: None,
    })
}

pub fn delta_with(g: &Graph, opts: &DeltaOptions) -> Result<DeltaResult> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut remaining = opts.budget.max_triangle_roles;
    let mut cut = false;
    let mut best: Option<(u32, Option<Witness>)> = None;
    for comp in g.components() {
        let (sub, map) = g.induced(&comp);
        let engine = Engine::new(&sub, opts.vertex_corners);
        let (value, witness, comp_cut) = engine.run(opts.prune, &mut remaining);
        cut |= comp_cut;
        if best.as_ref().is_none_or(|(bv, _)| value > *bv) {
            best = Some((value, witness.map(|w| remap_witness(w, &map))));
        }
    }
    let (value, witness) = best.expect("graph has a component");
    assert_eq!(value % 4, 0, "hyperbolicity off the quarter grid");
    if opts.vertex_corners {
        debug_assert_eq!(value % 8, 0, "vertex corners give half-integral values");
    }
    if let Some(w) = &witness {
        verify_witness(g, w);
    }
    Ok(DeltaResult {
        delta: Dist16::from_sixteenths(value),
        mode: if cut {
            DeltaMode::LowerBound
        } else {
            DeltaMode::Exact
        },
        witness,
    })
}

fn remap_point(p: Point, map: &[u32]) -> Point {
    match p {
        Point::Vertex(v) => Point::Vertex(map[v as usize]),
        Point::Interior { u, v, sixteenths } => Point::Interior {
            u: map[u as usize],
            v: map[v as usize],
            sixteenths,
        },
    }
}

fn remap_witness(w: Witness, map: &[u32]) -> Witness {
    Witness {
        triangle: Triangle {
            corners: w.triangle.corners.map(|p| remap_point(p, map)),
            sides: w
                .triangle
                .sides
                .map(|s| s.into_iter().map(|p| remap_point(p, map)).collect()),
        },
        point: remap_point(w.point, map),
        side: w.side,
        distance: w.distance,
    }
}

/// Replays the witness against the plain graph metric: the sides must be
/// geodesics and the point's distance to the union of the other two sides
/// must equal the reported value.
fn verify_witness(g: &Graph, w: &Witness) {
    let hops = g.apsp();
    w.triangle
        .validate(g, &hops)
        .expect("engine produced an invalid triangle");
    let d = distance_to_sides(g, &hops, &w.triangle, w.point, &[1, 2])
        .expect("engine produced an unmeasurable witness");
    assert_eq!(d, w.distance, "witness distance mismatch");
}

const UNREACH: u16 = u16::MAX;

/// A quarter-grid point of the subdivision: one of its vertices or the
/// midpoint of one of its edges.
#[derive(Clone, Copy, Debug)]
enum GridPoint {
    SVertex(u32),
    SEdgeMid(u32, u32),
}

fn skips(p: GridPoint, w: u32, v: u32) -> bool {
    match p {
        GridPoint::SVertex(_) => false,
        GridPoint::SEdgeMid(a, b) => (w == a && v == b) || (w == b && v == a),
    }
}

#[derive(Clone, Copy)]
struct Candidate {
    value: u32,
    key: (u32, u32, u32, u32),
}

fn better(x: Option<Candidate>, y: Option<Candidate>) -> Option<Candidate> {
    match (x, y) {
        (None, c) | (c, None) => c,
        (Some(p), Some(q)) => {
            if q.value > p.value || (q.value == p.value && q.key < p.key) {
                Some(q)
            } else {
                Some(p)
            }
        }
    }
}

/// Row index of the unordered corner pair (i, j) in a table that stores the
/// diagonal.
fn tri_index(l: u32, i: u32, j: u32) -> usize {
    debug_assert!(i <= j && j < l);
    let (l, i, j) = (l as usize, i as usize, j as usize);
    i * l - (i * i - i) / 2 + (j - i)
}

/// Shortest-path dag between two subdivision vertices. `order` lists the dag
/// vertices by distance from the source, so the source is first and the
/// destination last; `preds` holds each vertex's dag predecessors in a flat
/// slab.
struct Dag {
    order: Vec<u32>,
    pos: Vec<u32>,
    pred_start: Vec<u32>,
    preds: Vec<u32>,
}

impl Dag {
    fn build(s: &Graph, hops: &HopMatrix, x: u32, c: u32) -> Dag {
        let h = hops.hops(x, c);
        let n_s = s.n() as u32;
        let mut order: Vec<u32> = (0..n_s)
            .filter(|&v| hops.hops(x, v) + hops.hops(v, c) == h)
            .collect();
        order.sort_by_key(|&v| (hops.hops(x, v), v));
        let mut pos = vec![u32::MAX; n_s as usize];
        for (k, &v) in order.iter().enumerate() {
            pos[v as usize] = k as u32;
        }
        let mut pred_start = Vec::with_capacity(order.len() + 1);
        let mut preds = Vec::new();
        pred_start.push(0u32);
        for &v in &order {
            let level = hops.hops(x, v);
            for &w in s.neighbors(v) {
                if pos[w as usize] != u32::MAX && hops.hops(x, w) + 1 == level {
                    preds.push(w);
                }
            }
            pred_start.push(preds.len() as u32);
        }
        Dag {
            order,
            pos,
            pred_start,
            preds,
        }
    }

    fn preds_of(&self, k: usize) -> &[u32] {
        &self.preds[self.pred_start[k] as usize..self.pred_start[k + 1] as usize]
    }

    /// Largest over geodesics of the smallest point cost along the path.
    /// A grid point interior to an edge removes that edge from the dag; if
    /// the destination then becomes unreachable, every geodesic runs through
    /// the point and the value is zero.
    fn farthest(&self, eng: &Engine, p: GridPoint, val: &mut [u16]) -> u16 {
        val[0] = eng.cost(p, self.order[0]);
        for k in 1..self.order.len() {
            let v = self.order[k];
            let mut incoming = UNREACH;
            let mut reachable = false;
            for &w in self.preds_of(k) {
                if skips(p, w, v) {
                    continue;
                }
                let pv = val[self.pos[w as usize] as usize];
                if pv == UNREACH {
                    continue;
                }
                if !reachable || pv > incoming {
                    incoming = pv;
                    reachable = true;
                }
            }
            val[k] = if reachable {
                incoming.min(eng.cost(p, v))
            } else {
                UNREACH
            };
        }
        let out = val[self.order.len() - 1];
        if out == UNREACH {
            0
        } else {
            out
        }
    }
}

struct Engine {
    s: Graph,
    hops: HopMatrix,
    point_map: Vec<Point>,
    n_orig: u32,
    ncorners: u32,
    grid: Vec<GridPoint>,
}

impl Engine {
    /// `g` must be connected.
    fn new(g: &Graph, vertex_corners: bool) -> Engine {
        let (s, point_map) = g.subdivide(2).expect("factor 2 is valid");
        let hops = s.apsp();
        let n_s = s.n();
        assert!(
            8 * n_s + 4 < UNREACH as usize,
            "graph too large for exact sixteenth arithmetic"
        );
        let mut grid: Vec<GridPoint> = (0..n_s as u32).map(GridPoint::SVertex).collect();
        grid.extend(
            s.edges()
                .iter()
                .map(|&(a, b)| GridPoint::SEdgeMid(a, b)),
        );
        let ncorners = if vertex_corners { g.n() } else { n_s } as u32;
        Engine {
            s,
            hops,
            point_map,
            n_orig: g.n() as u32,
            ncorners,
            grid,
        }
    }

    /// Distance in sixteenths from a grid point to a subdivision vertex.
    fn cost(&self, p: GridPoint, y: u32) -> u16 {
        match p {
            GridPoint::SVertex(w) => 8 * self.hops.hops(w, y),
            GridPoint::SEdgeMid(a, b) => 4 + 8 * self.hops.hops(a, y).min(self.hops.hops(b, y)),
        }
    }

    fn run(&self, prune: bool, remaining: &mut u64) -> (u32, Option<Witness>, bool) {
        let l = self.ncorners as u64;
        let mut pairs = Vec::new();
        for a in 0..self.ncorners {
            for b in a + 1..self.ncorners {
                pairs.push((a, b));
            }
        }
        let total = pairs.len() as u64;
        let processed = total.min(*remaining / l);
        *remaining -= processed * l;
        pairs.truncate(processed as usize);
        let cut = processed < total;
        if pairs.is_empty() {
            if cut {
                return (0, None, true);
            }
            let p = self.point_map[0];
            let degenerate = Witness {
                triangle: Triangle {
                    corners: [p; 3],
                    sides: [vec![p], vec![p], vec![p]],
                },
                point: p,
                side: 0,
                distance: Dist16::ZERO,
            };
            return (0, Some(degenerate), false);
        }
        let m = self.fill_m();
        let cand = self.scan(&m, &pairs, prune).expect("pairs are non-empty");
        (cand.value, Some(self.witness(cand)), cut)
    }

    fn fill_m(&self) -> Vec<u16> {
        let l = self.ncorners;
        let mut row_pairs = Vec::new();
        for i in 0..l {
            for j in i..l {
                row_pairs.push((i, j));
            }
        }
        let npoints = self.grid.len();
        let mut m = vec![0u16; row_pairs.len() * npoints];
        m.par_chunks_mut(npoints)
            .zip(row_pairs.par_iter())
            .for_each(|(row, &(x, c))| {
                let dag = Dag::build(&self.s, &self.hops, x, c);
                let mut val = vec![0u16; dag.order.len()];
                for (pid, &p) in self.grid.iter().enumerate() {
                    row[pid] = dag.farthest(self, p, &mut val);
                }
            });
        m
    }

    /// Grid points lying on some geodesic between the pair.
    fn pair_grid(&self, a: u32, b: u32) -> Vec<u32> {
        let h = self.hops.hops(a, b);
        let n_s = self.s.n() as u32;
        let mut out: Vec<u32> = (0..n_s)
            .filter(|&v| self.hops.hops(a, v) + self.hops.hops(v, b) == h)
            .collect();
        for (k, &(u, v)) in self.s.edges().iter().enumerate() {
            if self.hops.hops(a, u) + 1 + self.hops.hops(v, b) == h
                || self.hops.hops(a, v) + 1 + self.hops.hops(u, b) == h
            {
                out.push(n_s + k as u32);
            }
        }
        out
    }

    /// The candidate with the largest value; ties go to the smallest
    /// (pair, apex, point) key, so the result does not depend on pruning,
    /// thread count or evaluation order. A pair is skipped only when half
    /// its corner distance is strictly below an already realized value,
    /// which no role of the pair can then reach.
    fn scan(&self, m: &[u16], pairs: &[(u32, u32)], prune: bool) -> Option<Candidate> {
        let npoints = self.grid.len();
        let best_seen = AtomicU32::new(0);
        pairs
            .par_iter()
            .map(|&(a, b)| {
                let hop_ab = self.hops.hops(a, b) as u32;
                if prune && 4 * hop_ab < best_seen.load(Ordering::Relaxed) {
                    return None;
                }
                let grid_ids = self.pair_grid(a, b);
                let mut local: Option<Candidate> = None;
                for c in 0..self.ncorners {
                    let row_ac =
                        &m[tri_index(self.ncorners, a.min(c), a.max(c)) * npoints..][..npoints];
                    let row_bc =
                        &m[tri_index(self.ncorners, b.min(c), b.max(c)) * npoints..][..npoints];
                    for &pid in &grid_ids {
                        let v = row_ac[pid as usize].min(row_bc[pid as usize]) as u32;
                        if local.as_ref().is_none_or(|l| v > l.value) {
                            local = Some(Candidate {
                                value: v,
                                key: (a, b, c, pid),
                            });
                        }
                    }
                }
                if let Some(l) = &local {
                    best_seen.fetch_max(l.value, Ordering::Relaxed);
                }
                local
            })
            .reduce(|| None, better)
    }

    /// Geodesic that always steps to the smallest-id neighbor closer to the
    /// target.
    fn lex_geodesic(&self, x: u32, y: u32) -> Vec<u32> {
        let mut path = vec![x];
        let mut cur = x;
        while cur != y {
            let next = self
                .s
                .neighbors(cur)
                .iter()
                .copied()
                .find(|&w| self.hops.hops(w, y) + 1 == self.hops.hops(cur, y))
                .expect("component is connected");
            path.push(next);
            cur = next;
        }
        path
    }

    /// Geodesic from c back to x realizing the bottleneck value for p: walk
    /// the dag backwards through the predecessor with the largest value,
    /// smallest id on ties. When every geodesic runs through p the plain
    /// lexicographic geodesic already attains the value zero.
    fn traceback(&self, x: u32, c: u32, p: GridPoint) -> Vec<u32> {
        if x == c {
            return vec![x];
        }
        let dag = Dag::build(&self.s, &self.hops, x, c);
        let mut val = vec![0u16; dag.order.len()];
        dag.farthest(self, p, &mut val);
        if val[dag.order.len() - 1] == UNREACH {
            let mut g = self.lex_geodesic(x, c);
            g.reverse();
            return g;
        }
        let mut out = vec![c];
        let mut cur = c;
        while cur != x {
            let k = dag.pos[cur as usize] as usize;
            let mut chosen: Option<(u16, u32)> = None;
            for &w in dag.preds_of(k) {
                if skips(p, w, cur) {
                    continue;
                }
                let pv = val[dag.pos[w as usize] as usize];
                if pv == UNREACH {
                    continue;
                }
                if chosen.is_none_or(|(bv, _)| pv > bv) {
                    chosen = Some((pv, w));
                }
            }
            let (_, w) = chosen.expect("destination is reachable");
            out.push(w);
            cur = w;
        }
        out
    }

    /// Anchor polyline of a subdivision path: original vertices plus the two
    /// endpoints, which may be edge midpoints.
    fn anchors(&self, spath: &[u32]) -> Vec<Point> {
        let last = spath.len() - 1;
        spath
            .iter()
            .enumerate()
            .filter(|&(i, &v)| i == 0 || i == last || v < self.n_orig)
            .map(|(_, &v)| self.point_map[v as usize])
            .collect()
    }

    /// Original-graph location of a grid point. Midpoints of subdivision
    /// edges sit a quarter of the way along an original edge.
    fn grid_point(&self, pid: u32) -> Point {
        let n_s = self.s.n() as u32;
        if pid < n_s {
            return self.point_map[pid as usize];
        }
        let (w, mid) = self.s.edges()[(pid - n_s) as usize];
        debug_assert!(w < self.n_orig && mid >= self.n_orig);
        let Point::Interior { u, v, .. } = self.point_map[mid as usize] else {
            unreachable!("subdivision edges join a vertex to a midpoint")
        };
        Point::on_edge(u, v, if w == u { 4 } else { 12 })
    }

    fn witness(&self, cand: Candidate) -> Witness {
        let (a, b, c, pid) = cand.key;
        let p = self.grid[pid as usize];
        let main = match p {
            GridPoint::SVertex(y) => {
                let mut path = self.lex_geodesic(a, y);
                path.extend_from_slice(&self.lex_geodesic(y, b)[1..]);
                path
            }
            GridPoint::SEdgeMid(u, v) => {
                let h = self.hops.hops(a, b);
                let (alpha, beta) =
                    if self.hops.hops(a, u) + 1 + self.hops.hops(v, b) == h {
                        (u, v)
                    } else {
                        debug_assert!(self.hops.hops(a, v) + 1 + self.hops.hops(u, b) == h);
                        (v, u)
                    };
                let mut path = self.lex_geodesic(a, alpha);
                path.extend_from_slice(&self.lex_geodesic(beta, b));
                path
            }
        };
        let mut side_bc = self.traceback(b, c, p);
        side_bc.reverse();
        let side_ca = self.traceback(a, c, p);
        let corner = |v: u32| self.point_map[v as usize];
        Witness {
            triangle: Triangle {
                corners: [corner(a), corner(b), corner(c)],
                sides: [
                    self.anchors(&main),
                    self.anchors(&side_bc),
                    self.anchors(&side_ca),
                ],
            },
            point: self.grid_point(pid),
            side: 0,
            distance: Dist16::from_sixteenths(cand.value),
        }
    }
}


#[cfg(test)]
mod perf_probe {
    use super::*;
    use crate::product::direct_product;

    #[test]
    #[ignore]
    fn probe_c5_x_p12() {
        let c5 = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let p12 = Graph::new(12, &(0..11).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        let (g, _) = direct_product(&c5, &p12).unwrap();
        let t = std::time::Instant::now();
        let r = delta_exact(&g).unwrap();
        eprintln!("c5 x p12: delta = {} mode {:?} in {:?}", r.delta, r.mode, t.elapsed());
        assert_eq!(r.delta, Dist16::from_sixteenths(72));
    }
}
