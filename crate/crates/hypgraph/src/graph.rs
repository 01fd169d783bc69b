//! Finite simple graphs, viewed as geodesic metric spaces in which every edge
//! is an isometric copy of the unit interval. Vertices are `0..n`; adjacency
//! lists are kept sorted so that every traversal order is deterministic.

use crate::dist::Dist16;
use crate::error::{Error, Result};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph on `n` vertices from an undirected edge list.
    /// Rejects loops, duplicate edges (in either orientation) and out-of-range ids.
    pub fn new(n: usize, edge_list: &[(u32, u32)]) -> Result<Graph> {
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            for id in [u, v] {
                if id as usize >= n {
                    return Err(Error::BadId { id, n });
                }
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        for &(u, v) in &edges {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            adj,
            edges,
            labels: None,
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_id(&self, u: u32, v: u32) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.edge_id(u, v).is_some()
    }

    pub fn neighbors(&self, u: u32) -> &[u32] {
        &self.adj[u as usize]
    }

    pub fn degree(&self, u: u32) -> usize {
        self.adj[u as usize].len()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.n() {
            return Err(Error::BadParameter(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn label(&self, u: u32) -> Option<&str> {
        self.labels.as_ref().map(|l| l[u as usize].as_str())
    }

    /// Hop counts from `src` to every vertex; unreachable entries are `HOP_INF`.
    pub fn bfs_hops(&self, src: u32) -> Vec<u16> {
        let mut d = vec![HOP_INF; self.n()];
        d[src as usize] = 0;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = d[u as usize];
            for &v in self.neighbors(u) {
                if d[v as usize] == HOP_INF {
                    d[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        d
    }

    /// All-pairs shortest paths over the vertex set.
    pub fn apsp(&self) -> HopMatrix {
        let n = self.n();
        let mut d = Vec::with_capacity(n * n);
        for u in 0..n {
            d.extend_from_slice(&self.bfs_hops(u as u32));
        }
        HopMatrix { n, d }
    }

    pub fn components(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for root in 0..self.n() as u32 {
            if seen[root as usize] {
                continue;
            }
            let mut comp = vec![root];
            seen[root as usize] = true;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// Two-coloring per component (component roots colored 0 in ascending
    /// order), or `None` when some odd cycle exists.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut color = vec![u8::MAX; self.n()];
        for root in 0..self.n() as u32 {
            if color[root as usize] != u8::MAX {
                continue;
            }
            color[root as usize] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for &v in self.neighbors(u) {
                    if color[v as usize] == u8::MAX {
                        color[v as usize] = 1 - color[u as usize];
                        queue.push_back(v);
                    } else if color[v as usize] == color[u as usize] {
                        return None;
                    }
                }
            }
        }
        Some(Bipartition { color })
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Induced subgraph on a sorted, duplicate-free vertex set.
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced(&self, vertices: &[u32]) -> (Graph, Vec<u32>) {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let mut old_to_new = vec![u32::MAX; self.n()];
        for (new, &old) in vertices.iter().enumerate() {
            old_to_new[old as usize] = new as u32;
        }
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            let (nu, nv) = (old_to_new[u as usize], old_to_new[v as usize]);
            if nu != u32::MAX && nv != u32::MAX {
                edges.push((nu, nv));
            }
        }
        let g = Graph::new(vertices.len(), &edges).expect("induced subgraph is valid");
        (g, vertices.to_vec())
    }

    /// Replaces every edge by a path of `k` edges (`k` in {2, 4, 8, 16}).
    /// Returns the subdivision together with, for each new vertex, the point
    /// of the original graph it realizes. Original ids are preserved.
    pub fn subdivide(&self, k: u32) -> Result<(Graph, Vec<Point>)> {
        if !matches!(k, 2 | 4 | 8 | 16) {
            return Err(Error::BadParameter(format!("subdivision factor {k}")));
        }
        let n = self.n() as u32;
        let step = 16 / k as u8;
        let mut points: Vec<Point> = (0..n).map(Point::Vertex).collect();
        let mut edges = Vec::new();
        for (idx, &(u, v)) in self.edges.iter().enumerate() {
            let mut prev = u;
            for j in 1..k {
                let id = n + idx as u32 * (k - 1) + (j - 1);
                points.push(Point::on_edge(u, v, step * j as u8));
                edges.push((prev, id));
                prev = id;
            }
            edges.push((prev, v));
        }
        let g = Graph::new(points.len(), &edges).expect("subdivision is simple");
        Ok((g, points))
    }

    /// Largest vertex-to-vertex distance; infinite when disconnected.
    pub fn diam_vertices(&self) -> Dist16 {
        if self.n() == 0 {
            return Dist16::ZERO;
        }
        let hops = self.apsp();
        let mut best = 0u16;
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                let h = hops.hops(u as u32, v as u32);
                if h == HOP_INF {
                    return Dist16::INFINITY;
                }
                best = best.max(h);
            }
        }
        Dist16::from_edges(best as u32)
    }

    /// Largest distance between arbitrary points of the metric graph.
    /// Extrema occur at vertices or edge midpoints, so the value is read off
    /// the twofold subdivision exactly.
    pub fn diam_continuous(&self) -> Dist16 {
        if self.n() == 0 {
            return Dist16::ZERO;
        }
        let (s, _) = self.subdivide(2).expect("factor 2 is valid");
        match s.diam_vertices().sixteenths() {
            Some(v) => Dist16::from_sixteenths(v / 2),
            None => Dist16::INFINITY,
        }
    }
}

pub const HOP_INF: u16 = u16::MAX;

/// Dense all-pairs hop table; exposes distances in exact sixteenths.
#[derive(Clone)]
pub struct HopMatrix {
    n: usize,
    d: Vec<u16>,
}

impl HopMatrix {
    pub fn hops(&self, u: u32, v: u32) -> u16 {
        self.d[u as usize * self.n + v as usize]
    }

    pub fn dist(&self, u: u32, v: u32) -> Dist16 {
        match self.hops(u, v) {
            HOP_INF => Dist16::INFINITY,
            h => Dist16::from_edges(h as u32),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub color: Vec<u8>,
}

impl Bipartition {
    pub fn classes(&self) -> (Vec<u32>, Vec<u32>) {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (v, &c) in self.color.iter().enumerate() {
            if c == 0 {
                a.push(v as u32);
            } else {
                b.push(v as u32);
            }
        }
        (a, b)
    }
}

/// A point of the metric graph: a vertex, or an interior point of an edge at
/// a sixteenth-grid offset. Interior points are canonical: the lower endpoint
/// comes first and the offset is measured from it, strictly between 0 and 16.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Point {
    Vertex(u32),
    Interior { u: u32, v: u32, sixteenths: u8 },
}

impl Point {
    /// Point on edge `(u, v)` at `sixteenths` from `u`. Offsets 0 and 16
    /// normalize to the endpoints; other offsets canonicalize to `u < v`.
    pub fn on_edge(u: u32, v: u32, sixteenths: u8) -> Point {
        assert!(sixteenths <= 16, "offset {sixteenths} off the grid");
        assert!(u != v, "degenerate edge");
        match sixteenths {
            0 => Point::Vertex(u),
            16 => Point::Vertex(v),
            s if u < v => Point::Interior { u, v, sixteenths: s },
            s => Point::Interior {
                u: v,
                v: u,
                sixteenths: 16 - s,
            },
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        match *self {
            Point::Vertex(u) => {
                if (u as usize) < g.n() {
                    Ok(())
                } else {
                    Err(Error::BadId { id: u, n: g.n() })
                }
            }
            Point::Interior { u, v, sixteenths } => {
                if !(1..=15).contains(&sixteenths) || u >= v {
                    return Err(Error::BadPoint(format!("{self:?} is not canonical")));
                }
                if !g.has_edge(u, v) {
                    return Err(Error::BadPoint(format!("no edge {u} {v}")));
                }
                Ok(())
            }
        }
    }

    /// Endpoint anchors as (vertex, offset to reach it in sixteenths).
    pub fn anchors(&self) -> Vec<(u32, u32)> {
        match *self {
            Point::Vertex(u) => vec![(u, 0)],
            Point::Interior { u, v, sixteenths } => {
                vec![(u, sixteenths as u32), (v, 16 - sixteenths as u32)]
            }
        }
    }

    /// The edge this point lies strictly inside, if any.
    pub fn interior_edge(&self) -> Option<(u32, u32)> {
        match *self {
            Point::Vertex(_) => None,
            Point::Interior { u, v, .. } => Some((u, v)),
        }
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            Point::Vertex(id) => {
                let mut st = s.serialize_struct("Point", 2)?;
                st.serialize_field("kind", "vertex")?;
                st.serialize_field("id", &id)?;
                st.end()
            }
            Point::Interior { u, v, sixteenths } => {
                let mut st = s.serialize_struct("Point", 4)?;
                st.serialize_field("kind", "interior")?;
                st.serialize_field("u", &u)?;
                st.serialize_field("v", &v)?;
                st.serialize_field("sixteenths", &sixteenths)?;
                st.end()
            }
        }
    }
}

/// Exact distance between two points of the metric graph. Any path between
/// interior points leaves through an edge endpoint, so the distance is the
/// best endpoint route, except that two points of one edge may also connect
/// straight through it.
pub fn point_distance(hops: &HopMatrix, p: Point, q: Point) -> Dist16 {
    let mut best = Dist16::INFINITY;
    if let (Some(e), Some(f)) = (p.interior_edge(), q.interior_edge()) {
        if e == f {
            let (Point::Interior { sixteenths: a, .. }, Point::Interior { sixteenths: b, .. }) =
                (p, q)
            else {
                unreachable!()
            };
            best = Dist16::from_sixteenths(a.abs_diff(b) as u32);
        }
    }
    for &(x, off_p) in &p.anchors() {
        for &(y, off_q) in &q.anchors() {
            let via = Dist16::from_sixteenths(off_p)
                .checked_add(hops.dist(x, y))
                .checked_add(Dist16::from_sixteenths(off_q));
            best = best.min(via);
        }
    }
    best
}

/// Parses the plain text edge list format: one `u v` pair per line, `#`
/// starts a comment, and an optional leading `n <count>` line pins the
/// vertex count (otherwise it is the largest id plus one).
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut saw_data = false;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let first = tokens.next().expect("non-empty line has a token");
        if first == "n" && !saw_data && n.is_none() {
            let count = tokens
                .next()
                .and_then(|t| t.parse::<usize>().ok())
                .ok_or_else(|| Error::BadEdgeList(format!("line {}: bad header", lineno + 1)))?;
            if tokens.next().is_some() {
                return Err(Error::BadEdgeList(format!(
                    "line {}: trailing tokens after header",
                    lineno + 1
                )));
            }
            n = Some(count);
            continue;
        }
        saw_data = true;
        let u = first.parse::<u32>().map_err(|_| {
            Error::BadEdgeList(format!("line {}: bad vertex id {first:?}", lineno + 1))
        })?;
        let v = tokens
            .next()
            .and_then(|t| t.parse::<u32>().ok())
            .ok_or_else(|| Error::BadEdgeList(format!("line {}: expected two ids", lineno + 1)))?;
        if tokens.next().is_some() {
            return Err(Error::BadEdgeList(format!(
                "line {}: trailing tokens",
                lineno + 1
            )));
        }
        edges.push((u, v));
    }
    let n = n.unwrap_or_else(|| {
        edges
            .iter()
            .map(|&(u, v)| u.max(v) as usize + 1)
            .max()
            .unwrap_or(0)
    });
    Graph::new(n, &edges)
}

/// Canonical edge list bytes: header line, then sorted edges.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
