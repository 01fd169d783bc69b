//! Explicit geodesic triangles and their exact thin constants. Sides are
//! anchor polylines: the two ends are the corners (vertices or edge
//! midpoints), every intermediate anchor is a vertex, and consecutive
//! anchors lie on one edge. The thin constant is evaluated on the sixteenth
//! grid of each side, which is exact: corners on the half-edge grid keep all
//! breakpoints of the distance profile on the grid.

use crate::dist::Dist16;
use crate::error::{Error, Result};
use crate::graph::{point_distance, Graph, HopMatrix, Point};
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Triangle {
    /// Corner `i` joins sides `i` and `(i + 2) % 3`.
    pub corners: [Point; 3],
    /// Side `i` runs from corner `i` to corner `(i + 1) % 3`.
    pub sides: [Vec<Point>; 3],
}

/// One directed run inside a single edge: positions `from` to `to` in
/// sixteenths along the canonical `(u, v)` edge.
#[derive(Clone, Copy, Debug)]
struct Segment {
    u: u32,
    v: u32,
    from: u8,
    to: u8,
}

impl Segment {
    fn lo(&self) -> u8 {
        self.from.min(self.to)
    }

    fn hi(&self) -> u8 {
        self.from.max(self.to)
    }

    fn len(&self) -> u32 {
        self.from.abs_diff(self.to) as u32
    }
}

fn position_on(p: Point, u: u32, v: u32) -> Option<u8> {
    debug_assert!(u < v);
    match p {
        Point::Vertex(w) if w == u => Some(0),
        Point::Vertex(w) if w == v => Some(16),
        Point::Interior { u: a, v: b, sixteenths } if (a, b) == (u, v) => Some(sixteenths),
        _ => None,
    }
}

/// The edge shared by two points, if any, with both positions on it.
fn common_segment(g: &Graph, p: Point, q: Point) -> Option<Segment> {
    let candidates: Vec<(u32, u32)> = match (p.interior_edge(), q.interior_edge()) {
        (Some(e), Some(f)) => (e == f).then_some(e).into_iter().collect(),
        (Some(e), None) | (None, Some(e)) => vec![e],
        (None, None) => {
            let (Point::Vertex(a), Point::Vertex(b)) = (p, q) else {
                unreachable!()
            };
            g.has_edge(a, b).then(|| (a.min(b), a.max(b))).into_iter().collect()
        }
    };
    for (u, v) in candidates {
        if let (Some(from), Some(to)) = (position_on(p, u, v), position_on(q, u, v)) {
            return Some(Segment { u, v, from, to });
        }
    }
    None
}

fn corner_on_half_grid(p: Point) -> bool {
    match p {
        Point::Vertex(_) => true,
        Point::Interior { sixteenths, .. } => sixteenths == 8,
    }
}

struct SideGeometry {
    segments: Vec<Segment>,
    length: Dist16,
}

fn side_geometry(g: &Graph, side_idx: usize, side: &[Point], from: Point, to: Point) -> Result<SideGeometry> {
    let fail = |reason: String| Error::BadSide {
        side: side_idx,
        reason,
    };
    if side.is_empty() {
        return Err(fail("empty anchor list".into()));
    }
    for p in side {
        p.validate(g).map_err(|e| fail(e.to_string()))?;
    }
    if side[0] != from || *side.last().expect("non-empty") != to {
        return Err(fail("side does not join its corners".into()));
    }
    if from == to {
        if side.len() != 1 {
            return Err(fail("degenerate side must be a single anchor".into()));
        }
        return Ok(SideGeometry {
            segments: Vec::new(),
            length: Dist16::ZERO,
        });
    }
    let mut segments = Vec::with_capacity(side.len() - 1);
    let mut length = Dist16::ZERO;
    for (i, w) in side.windows(2).enumerate() {
        let (p, q) = (w[0], w[1]);
        if p == q {
            return Err(fail(format!("repeated anchor {p:?}")));
        }
        if i > 0 && !matches!(p, Point::Vertex(_)) {
            return Err(fail(format!("interior anchor {p:?} is not a vertex")));
        }
        let seg = common_segment(g, p, q)
            .ok_or_else(|| fail(format!("anchors {p:?} and {q:?} share no edge")))?;
        length = length.checked_add(Dist16::from_sixteenths(seg.len()));
        segments.push(seg);
    }
    Ok(SideGeometry { segments, length })
}

/// Sixteenth-grid points along the side, in order from its first corner.
fn side_grid(geometry: &SideGeometry, from: Point) -> Vec<Point> {
    if geometry.segments.is_empty() {
        return vec![from];
    }
    let mut out = Vec::new();
    for (i, seg) in geometry.segments.iter().enumerate() {
        let step: i16 = if seg.to >= seg.from { 1 } else { -1 };
        let mut t = seg.from as i16;
        if i > 0 {
            t += step;
        }
        loop {
            out.push(Point::on_edge(seg.u, seg.v, t as u8));
            if t == seg.to as i16 {
                break;
            }
            t += step;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ThinResult {
    pub value: Dist16,
    /// First grid point realizing the value, with the side it lies on.
    pub point: Point,
    pub side: usize,
}

impl Triangle {
    /// Checks anchors, corner placement and that every side is a geodesic.
    pub fn validate(&self, g: &Graph, hops: &HopMatrix) -> Result<[SideStats; 3]> {
        let mut out = Vec::with_capacity(3);
        for (i, corner) in self.corners.iter().enumerate() {
            corner.validate(g)?;
            if !corner_on_half_grid(*corner) {
                return Err(Error::BadSide {
                    side: i,
                    reason: format!("corner {corner:?} is off the half-edge grid"),
                });
            }
        }
        for i in 0..3 {
            let (from, to) = (self.corners[i], self.corners[(i + 1) % 3]);
            let geom = side_geometry(g, i, &self.sides[i], from, to)?;
            let direct = point_distance(hops, from, to);
            if geom.length != direct {
                return Err(Error::NotAGeodesic {
                    side: i,
                    reason: format!("length {} exceeds distance {direct}", geom.length),
                });
            }
            out.push(SideStats { geom });
        }
        Ok(out.try_into().ok().expect("three sides"))
    }
}

pub struct SideStats {
    geom: SideGeometry,
}

/// Exact thin constant of an explicit geodesic triangle: the largest distance
/// from a point of one side to the union of the other two.
pub fn thin_constant(g: &Graph, t: &Triangle) -> Result<ThinResult> {
    let hops = g.apsp();
    thin_constant_with(g, &hops, t)
}

pub fn thin_constant_with(g: &Graph, hops: &HopMatrix, t: &Triangle) -> Result<ThinResult> {
    let stats = t.validate(g, hops)?;
    let mut best: Option<(Dist16, usize, Point)> = None;
    for i in 0..3 {
        let mut other_anchors: Vec<Point> = Vec::new();
        let mut other_intervals: Vec<Segment> = Vec::new();
        for j in [(i + 1) % 3, (i + 2) % 3] {
            other_anchors.extend_from_slice(&t.sides[j]);
            other_intervals.extend_from_slice(&stats[j].geom.segments);
        }
        for p in side_grid(&stats[i].geom, t.corners[i]) {
            let covered = p.interior_edge().is_some_and(|(u, v)| {
                let s = position_on(p, u, v).expect("interior point sits on its edge");
                other_intervals
                    .iter()
                    .any(|seg| (seg.u, seg.v) == (u, v) && seg.lo() <= s && s <= seg.hi())
            });
            let d = if covered {
                Dist16::ZERO
            } else {
                other_anchors
                    .iter()
                    .map(|&q| point_distance(hops, p, q))
                    .min()
                    .expect("other sides are non-empty")
            };
            if best.as_ref().is_none_or(|(b, _, _)| d > *b) {
                best = Some((d, i, p));
            }
        }
    }
    let (value, side, point) = best.expect("triangle has at least one grid point");
    debug_assert!(value.is_multiple_of(4), "thin constant {value} off the quarter grid");
    Ok(ThinResult { value, point, side })
}

/// Distance from a point to the union of the listed sides, measured with the
/// same interval and anchor rules as the thin-constant evaluation.
pub fn distance_to_sides(
    g: &Graph,
    hops: &HopMatrix,
    t: &Triangle,
    p: Point,
    sides: &[usize],
) -> Result<Dist16> {
    p.validate(g)?;
    let stats = t.validate(g, hops)?;
    let mut anchors: Vec<Point> = Vec::new();
    let mut intervals: Vec<Segment> = Vec::new();
    for &i in sides {
        anchors.extend_from_slice(&t.sides[i]);
        intervals.extend_from_slice(&stats[i].geom.segments);
    }
    let covered = p.interior_edge().is_some_and(|(u, v)| {
        let s = position_on(p, u, v).expect("interior point sits on its edge");
        intervals
            .iter()
            .any(|seg| (seg.u, seg.v) == (u, v) && seg.lo() <= s && s <= seg.hi())
    });
    if covered {
        return Ok(Dist16::ZERO);
    }
    Ok(anchors
        .iter()
        .map(|&q| point_distance(hops, p, q))
        .min()
        .expect("at least one side is listed"))
}
