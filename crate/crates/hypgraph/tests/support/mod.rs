//! Independent oracles for the integration suite. Everything here is built
//! straight from edge lists: plain Floyd-Warshall distances, a hand-rolled
//! twofold subdivision, recursive geodesic enumeration, and two brute-force
//! hyperbolicity scans that maximize over explicitly listed geodesics. None
//! of it shares code with the library's scan.

// Each integration test target compiles this module separately and uses a
// different slice of it.
#![allow(dead_code)]

use hypgraph::families::{generate, FamilySpec};
use hypgraph::Graph;

pub const INF: u32 = u32::MAX / 4;

/// All-pairs distances by Floyd-Warshall over an explicit edge list.
pub fn floyd_warshall(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in edges {
        d[u as usize][v as usize] = 1;
        d[v as usize][u as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k].saturating_add(d[k][j]);
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Every geodesic between two vertices as a vertex sequence, by depth-first
/// descent along strictly distance-decreasing edges.
pub fn all_geodesics(adj: &[Vec<u32>], dist: &[Vec<u32>], a: u32, b: u32) -> Vec<Vec<u32>> {
    assert!(dist[a as usize][b as usize] < INF, "endpoints disconnected");
    let mut out = Vec::new();
    let mut prefix = vec![a];
    descend(adj, dist, b, &mut prefix, &mut out);
    assert!(out.len() <= 100_000, "geodesic enumeration blew up");
    out
}

fn descend(
    adj: &[Vec<u32>],
    dist: &[Vec<u32>],
    b: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    let cur = *prefix.last().expect("prefix starts non-empty");
    if cur == b {
        out.push(prefix.clone());
        return;
    }
    for &w in &adj[cur as usize] {
        if dist[w as usize][b as usize] + 1 == dist[cur as usize][b as usize] {
            prefix.push(w);
            descend(adj, dist, b, prefix, out);
            prefix.pop();
        }
    }
}

fn adjacency(n: usize, edges: &[(u32, u32)]) -> Vec<Vec<u32>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    adj
}

/// The twofold subdivision as a plain structure: original vertices keep
/// their ids, edge k gains midpoint vertex n + k, grid points append the
/// midpoints of the subdivision's own edges.
pub struct Subdivision {
    pub np: usize,
    pub adj: Vec<Vec<u32>>,
    pub dist: Vec<Vec<u32>>,
    /// Subdivision edges, each joining an original vertex to a midpoint.
    pub sedges: Vec<(u32, u32)>,
}

impl Subdivision {
    pub fn build(g: &Graph) -> Subdivision {
        let n = g.n();
        let mut sedges = Vec::with_capacity(2 * g.edges().len());
        for (k, &(u, v)) in g.edges().iter().enumerate() {
            let mid = (n + k) as u32;
            sedges.push((u, mid));
            sedges.push((v, mid));
        }
        let np = n + g.edges().len();
        Subdivision {
            np,
            adj: adjacency(np, &sedges),
            dist: floyd_warshall(np, &sedges),
            sedges,
        }
    }

    /// Distance in sixteenths from grid point `p` to subdivision vertex `y`.
    /// Grid ids below `np` are subdivision vertices; the rest are midpoints
    /// of subdivision edges in `sedges` order.
    pub fn cost16(&self, p: usize, y: u32) -> u32 {
        if p < self.np {
            return 8 * self.dist[p][y as usize];
        }
        let (a, b) = self.sedges[p - self.np];
        4 + 8 * self.dist[a as usize][y as usize].min(self.dist[b as usize][y as usize])
    }

    /// Grid points lying on a geodesic given as a vertex sequence: its
    /// vertices and the midpoints of its edges.
    pub fn points_on(&self, geodesic: &[u32]) -> Vec<usize> {
        let mut pts: Vec<usize> = geodesic.iter().map(|&v| v as usize).collect();
        for w in geodesic.windows(2) {
            pts.push(self.np + self.sedge_id(w[0], w[1]));
        }
        pts
    }

    fn sedge_id(&self, a: u32, b: u32) -> usize {
        self.sedges
            .iter()
            .position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
            .expect("consecutive geodesic vertices are adjacent")
    }

    /// Distance in sixteenths from grid point `p` to the geodesic as a
    /// curve: zero when the point lies on it, otherwise the best vertex
    /// since interior dips only happen on the point's own edge.
    pub fn dist_to_geodesic16(&self, p: usize, geodesic: &[u32]) -> u32 {
        if p < self.np {
            if geodesic.contains(&(p as u32)) {
                return 0;
            }
        } else {
            let (a, b) = self.sedges[p - self.np];
            if geodesic
                .windows(2)
                .any(|w| (w[0], w[1]) == (a, b) || (w[0], w[1]) == (b, a))
            {
                return 0;
            }
        }
        geodesic
            .iter()
            .map(|&v| self.cost16(p, v))
            .min()
            .expect("geodesics are non-empty")
    }
}

/// Exact hyperbolicity in sixteenths by explicit enumeration. Corners run
/// over subdivision vertices and evaluation points over the quarter grid of
/// a side; the two far sides are maximized independently, which equals the
/// maximum over joint choices because min(f(x), g(y)) peaks at the
/// separately maximized arguments.
pub fn brute_delta16(g: &Graph) -> u32 {
    brute_scan(g, false)
}

/// The vertex relaxation: corners restricted to original vertices, points
/// still over the full quarter grid.
pub fn brute_delta16_vertex_corners(g: &Graph) -> u32 {
    brute_scan(g, true)
}

fn brute_scan(g: &Graph, vertex_corners: bool) -> u32 {
    let s = Subdivision::build(g);
    let ncorners = if vertex_corners { g.n() } else { s.np };
    let npts = s.np + s.sedges.len();
    let mut geos: Vec<Vec<Vec<Vec<u32>>>> = vec![Vec::new(); ncorners];
    for (x, row) in geos.iter_mut().enumerate() {
        *row = (0..ncorners)
            .map(|c| {
                if s.dist[x][c] < INF {
                    all_geodesics(&s.adj, &s.dist, x as u32, c as u32)
                } else {
                    Vec::new()
                }
            })
            .collect();
    }
    let far = |p: usize, x: usize, c: usize| -> u32 {
        geos[x][c]
            .iter()
            .map(|geo| s.dist_to_geodesic16(p, geo))
            .max()
            .expect("connected pairs have geodesics")
    };
    let mut best = 0;
    for a in 0..ncorners {
        for b in a + 1..ncorners {
            if s.dist[a][b] >= INF {
                continue;
            }
            let mut pts = vec![false; npts];
            for geo in &geos[a][b] {
                for p in s.points_on(geo) {
                    pts[p] = true;
                }
            }
            for c in 0..ncorners {
                if s.dist[a][c] >= INF {
                    continue;
                }
                for (p, _) in pts.iter().enumerate().filter(|&(_, on)| *on) {
                    best = best.max(far(p, a, c).min(far(p, b, c)));
                }
            }
        }
    }
    best
}

/// The same value by the fully nested definition: every geodesic triangle
/// over every corner triple, every quarter point of the first side, distance
/// to the union of the other two sides. Only viable on tiny graphs.
pub fn naive_delta16(g: &Graph) -> u32 {
    let s = Subdivision::build(g);
    let mut best = 0;
    for a in 0..s.np as u32 {
        for b in a + 1..s.np as u32 {
            if s.dist[a as usize][b as usize] >= INF {
                continue;
            }
            for c in 0..s.np as u32 {
                if s.dist[a as usize][c as usize] >= INF {
                    continue;
                }
                let gab = all_geodesics(&s.adj, &s.dist, a, b);
                let gbc = all_geodesics(&s.adj, &s.dist, b, c);
                let gca = all_geodesics(&s.adj, &s.dist, c, a);
                for ab in &gab {
                    let pts = s.points_on(ab);
                    for bc in &gbc {
                        for ca in &gca {
                            for &p in &pts {
                                let d = s
                                    .dist_to_geodesic16(p, bc)
                                    .min(s.dist_to_geodesic16(p, ca));
                                best = best.max(d);
                            }
                        }
                    }
                }
            }
        }
    }
    best
}

/// Whether the cycle's own metric matches the graph metric on every vertex
/// pair, checked against Floyd-Warshall distances.
pub fn cycle_is_isometric_brute(g: &Graph, cycle: &[u32]) -> bool {
    let d = floyd_warshall(g.n(), g.edges());
    let len = cycle.len() as u32;
    for i in 0..cycle.len() {
        for j in i + 1..cycle.len() {
            let arc = (j - i) as u32;
            let cyc = arc.min(len - arc);
            if d[cycle[i] as usize][cycle[j] as usize] != cyc {
                return false;
            }
        }
    }
    true
}

/// Every simple cycle with at most `max_len` vertices, written with its
/// smallest vertex first and the smaller of that vertex's two cycle
/// neighbors second, so each cycle appears exactly once.
pub fn enumerate_cycles(g: &Graph, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    for s in 0..g.n() as u32 {
        path.push(s);
        cycle_dfs(g, s, max_len, &mut path, &mut out);
        path.pop();
    }
    out
}

fn cycle_dfs(g: &Graph, s: u32, max_len: usize, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let cur = *path.last().unwrap();
    for &w in g.neighbors(cur) {
        if w == s && path.len() >= 3 && path[1] < cur {
            out.push(path.clone());
        }
        if w > s && path.len() < max_len && !path.contains(&w) {
            path.push(w);
            cycle_dfs(g, s, max_len, path, out);
            path.pop();
        }
    }
}

/// Shared desk-scale corpus: named families plus seeded random graphs, all
/// at most twelve vertices.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut specs: Vec<(String, FamilySpec)> = vec![
        ("path-2".into(), FamilySpec::Path { m: 2 }),
        ("path-6".into(), FamilySpec::Path { m: 6 }),
        ("path-9".into(), FamilySpec::Path { m: 9 }),
        ("cycle-3".into(), FamilySpec::Cycle { m: 3 }),
        ("cycle-5".into(), FamilySpec::Cycle { m: 5 }),
        ("cycle-6".into(), FamilySpec::Cycle { m: 6 }),
        ("cycle-8".into(), FamilySpec::Cycle { m: 8 }),
        ("complete-4".into(), FamilySpec::Complete { n: 4 }),
        (
            "bipartite-2-3".into(),
            FamilySpec::CompleteBipartite { a: 2, b: 3 },
        ),
        ("dumbbell-1".into(), FamilySpec::Dumbbell { bridge: 1 }),
        ("dumbbell-4".into(), FamilySpec::Dumbbell { bridge: 4 }),
        (
            "pendant-3-4".into(),
            FamilySpec::CycleWithPendant { cycle: 3, tail: 4 },
        ),
        ("tree-9".into(), FamilySpec::RandomTree { n: 9, seed: 5 }),
    ];
    for (i, seed) in [2u64, 23, 61].into_iter().enumerate() {
        specs.push((
            format!("random-{i}"),
            FamilySpec::RandomGraph {
                n: 8 + i as u32 * 2,
                p_num: 2,
                p_den: 5,
                seed,
            },
        ));
    }
    specs
        .into_iter()
        .map(|(name, spec)| {
            let g = generate(&spec).expect("corpus specs are valid");
            (name, g)
        })
        .collect()
}
