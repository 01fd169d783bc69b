//! Walk lengths split by parity, and the distance formula for direct
//! products built from them: the distance between two product vertices is
//! the least `n` such that each factor joins the projected endpoints by a
//! walk of length exactly `n`. Walk lengths here are plain edge counts.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Shortest even and odd walk lengths from a fixed source to one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkParity {
    pub even: Option<u32>,
    pub odd: Option<u32>,
}

/// Shortest walk lengths of each parity from `src` to every vertex, via
/// breadth-first search on the parity double cover (vertex, length mod 2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityRow {
    pub even: Vec<Option<u32>>,
    pub odd: Vec<Option<u32>>,
}

impl ParityRow {
    pub fn at(&self, v: u32) -> WalkParity {
        WalkParity {
            even: self.even[v as usize],
            odd: self.odd[v as usize],
        }
    }
}

pub fn parity_distances(g: &Graph, src: u32) -> ParityRow {
    let n = g.n();
    debug_assert!((src as usize) < n);
    // State v + parity * n.
    let mut dist = vec![u32::MAX; 2 * n];
    dist[src as usize] = 0;
    let mut queue = std::collections::VecDeque::from([src as usize]);
    while let Some(state) = queue.pop_front() {
        let (v, parity) = (state % n, state / n);
        let d = dist[state];
        for &w in g.neighbors(v as u32) {
            let next = w as usize + (1 - parity) * n;
            if dist[next] == u32::MAX {
                dist[next] = d + 1;
                queue.push_back(next);
            }
        }
    }
    let lift = |x: u32| (x != u32::MAX).then_some(x);
    ParityRow {
        even: dist[..n].iter().map(|&x| lift(x)).collect(),
        odd: dist[n..].iter().map(|&x| lift(x)).collect(),
    }
}

/// Full table, one row per source.
pub struct ParityTable {
    pub rows: Vec<ParityRow>,
}

impl ParityTable {
    pub fn build(g: &Graph) -> ParityTable {
        ParityTable {
            rows: (0..g.n() as u32).map(|v| parity_distances(g, v)).collect(),
        }
    }
}

/// An explicit walk realizing the shortest length of the given parity
/// (`true` for odd), reconstructed from the double cover search.
pub fn parity_walk(g: &Graph, src: u32, dst: u32, odd: bool) -> Option<Vec<u32>> {
    let n = g.n();
    let mut dist = vec![u32::MAX; 2 * n];
    let mut parent = vec![usize::MAX; 2 * n];
    dist[src as usize] = 0;
    let mut queue = std::collections::VecDeque::from([src as usize]);
    while let Some(state) = queue.pop_front() {
        let (v, parity) = (state % n, state / n);
        for &w in g.neighbors(v as u32) {
            let next = w as usize + (1 - parity) * n;
            if dist[next] == u32::MAX {
                dist[next] = dist[state] + 1;
                parent[next] = state;
                queue.push_back(next);
            }
        }
    }
    let goal = dst as usize + usize::from(odd) * n;
    if dist[goal] == u32::MAX {
        return None;
    }
    let mut walk = Vec::with_capacity(dist[goal] as usize + 1);
    let mut state = goal;
    loop {
        walk.push((state % n) as u32);
        if state == src as usize && walk.len() as u32 == dist[goal] + 1 {
            break;
        }
        state = parent[state];
    }
    walk.reverse();
    Some(walk)
}

pub fn validate_walk(g: &Graph, walk: &[u32]) -> Result<()> {
    for (i, w) in walk.windows(2).enumerate() {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::NotAWalk(i));
        }
    }
    Ok(())
}

/// Distance between two product vertices from their factors' parity entries:
/// the best parity where both factors admit a walk, padded to a common
/// length by the larger of the two. Padding bounces on an edge incident to
/// the walk, so the closed form assumes no isolated vertices: the trivial
/// closed walk at an isolated vertex admits no longer even walk.
pub fn product_distance(a: WalkParity, b: WalkParity) -> Option<u32> {
    let join = |x: Option<u32>, y: Option<u32>| Some(x?.max(y?));
    match (join(a.even, b.even), join(a.odd, b.odd)) {
        (Some(e), Some(o)) => Some(e.min(o)),
        (Some(e), None) => Some(e),
        (None, Some(o)) => Some(o),
        (None, None) => None,
    }
}

/// Convenience wrapper: product distance between `(u1, u2)` and `(v1, v2)`.
pub fn product_distance_vertices(
    g1: &Graph,
    g2: &Graph,
    from: (u32, u32),
    to: (u32, u32),
) -> Option<u32> {
    let row1 = parity_distances(g1, from.0);
    let row2 = parity_distances(g2, from.1);
    product_distance(row1.at(to.0), row2.at(to.1))
}

/// The product distance next to the max-of-factors lower bound it dominates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerBoundGap {
    pub product: Option<u32>,
    pub factor_max: Option<u32>,
}

impl LowerBoundGap {
    /// Excess of the product distance over the factor bound; `None` when the
    /// product distance is infinite.
    pub fn gap(&self) -> Option<u32> {
        Some(self.product? - self.factor_max?)
    }
}

pub fn lower_bound_gap(
    g1: &Graph,
    g2: &Graph,
    from: (u32, u32),
    to: (u32, u32),
) -> LowerBoundGap {
    let h1 = g1.bfs_hops(from.0)[to.0 as usize];
    let h2 = g2.bfs_hops(from.1)[to.1 as usize];
    let factor_max = (h1 != crate::graph::HOP_INF && h2 != crate::graph::HOP_INF)
        .then(|| h1.max(h2) as u32);
    LowerBoundGap {
        product: product_distance_vertices(g1, g2, from, to),
        factor_max,
    }
}

/// Closed form for distances in `C_m x P_n` (`m` odd, coordinates 1-based:
/// ring vertex `w_j`, path vertex `v_i`): walks in the path are parity-fixed,
/// so the distance is `max(|i-s|, |j-r|)` when `|i-s|` and `|j-r|` share
/// parity and `max(|i-s|, m-|j-r|)` otherwise.
pub fn cmxpn_distance(m: u32, n: u32, from: (u32, u32), to: (u32, u32)) -> Result<u32> {
    if m < 3 || m % 2 == 0 {
        return Err(Error::BadCoordinate(format!("ring order {m} must be odd and >= 3")));
    }
    if n < 2 {
        return Err(Error::BadCoordinate(format!("path order {n} must be >= 2")));
    }
    let ((j, i), (r, s)) = (from, to);
    for (ring, path) in [(j, i), (r, s)] {
        if !(1..=m).contains(&ring) || !(1..=n).contains(&path) {
            return Err(Error::BadCoordinate(format!(
                "vertex (w_{ring}, v_{path}) outside C_{m} x P_{n}"
            )));
        }
    }
    let dj = j.abs_diff(r);
    let di = i.abs_diff(s);
    Ok(if di % 2 == dj % 2 {
        di.max(dj)
    } else {
        di.max(m - dj)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::direct_product;

    fn cycle(m: u32) -> Graph {
        let edges: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        Graph::new(m as usize, &edges).unwrap()
    }

    fn path(m: u32) -> Graph {
        let edges: Vec<_> = (0..m - 1).map(|i| (i, i + 1)).collect();
        Graph::new(m as usize, &edges).unwrap()
    }

    /// Walk-length oracle by direct dynamic programming over lengths.
    fn brute_parity(g: &Graph, src: u32, dst: u32) -> WalkParity {
        let cap = 2 * g.n() + 2;
        let mut reach = vec![false; g.n()];
        reach[src as usize] = true;
        let (mut even, mut odd) = (if src == dst { Some(0) } else { None }, None);
        for len in 1..=cap as u32 {
            let mut next = vec![false; g.n()];
            for v in 0..g.n() {
                if reach[v] {
                    for &w in g.neighbors(v as u32) {
                        next[w as usize] = true;
                    }
                }
            }
            reach = next;
            if reach[dst as usize] {
                if len % 2 == 0 {
                    even.get_or_insert(len);
                } else {
                    odd.get_or_insert(len);
                }
            }
        }
        WalkParity { even, odd }
    }

    #[test]
    fn cycle5_row_matches_oracle() {
        let g = cycle(5);
        let row = parity_distances(&g, 0);
        assert_eq!(row.at(1), WalkParity { even: Some(4), odd: Some(1) });
        assert_eq!(row.at(2), WalkParity { even: Some(2), odd: Some(3) });
        for v in 0..5 {
            assert_eq!(row.at(v), brute_parity(&g, 0, v));
        }
    }

    #[test]
    fn path3_has_unreachable_parities() {
        let row = parity_distances(&path(3), 0);
        assert_eq!(row.even, vec![Some(0), None, Some(2)]);
        assert_eq!(row.odd, vec![None, Some(1), None]);
    }

    #[test]
    fn triangle_odd_closed_walk() {
        let row = parity_distances(&cycle(3), 0);
        assert_eq!(row.at(0), WalkParity { even: Some(0), odd: Some(3) });
    }

    #[test]
    fn padding_by_two_is_realizable() {
        let g = cycle(5);
        for (u, v) in [(0u32, 1u32), (0, 2), (1, 4)] {
            let row = parity_distances(&g, u);
            let l = row.at(v).odd.unwrap();
            let walk = parity_walk(&g, u, v, true).unwrap();
            assert_eq!(walk.len() as u32, l + 1);
            validate_walk(&g, &walk).unwrap();
            // Same walk with one neighbor bounce appended realizes l + 2.
            let mut padded = walk.clone();
            let last = *padded.last().unwrap();
            padded.push(g.neighbors(last)[0]);
            padded.push(last);
            assert_eq!(padded.len() as u32, l + 3);
            validate_walk(&g, &padded).unwrap();
        }
    }

    #[test]
    fn product_distance_examples() {
        let (c5, p3) = (cycle(5), path(3));
        assert_eq!(product_distance_vertices(&c5, &p3, (0, 0), (1, 0)), Some(4));
        assert_eq!(product_distance_vertices(&c5, &p3, (0, 0), (2, 2)), Some(2));
        let p3b = path(3);
        assert_eq!(product_distance_vertices(&p3, &p3b, (0, 0), (0, 1)), None);
    }

    #[test]
    fn product_distance_matches_bfs_on_product() {
        let (g1, g2) = (cycle(5), path(4));
        let (p, idx) = direct_product(&g1, &g2).unwrap();
        let t1 = ParityTable::build(&g1);
        let t2 = ParityTable::build(&g2);
        for a1 in 0..5u32 {
            for a2 in 0..4u32 {
                let hops = p.bfs_hops(idx.id(a1, a2));
                for b1 in 0..5u32 {
                    for b2 in 0..4u32 {
                        let direct = product_distance(t1.rows[a1 as usize].at(b1), t2.rows[a2 as usize].at(b2));
                        let via_bfs = match hops[idx.id(b1, b2) as usize] {
                            crate::graph::HOP_INF => None,
                            h => Some(h as u32),
                        };
                        assert_eq!(direct, via_bfs, "({a1},{a2}) -> ({b1},{b2})");
                    }
                }
            }
        }
    }

    #[test]
    fn gap_examples() {
        let (c5, p3) = (cycle(5), path(3));
        let gap = lower_bound_gap(&c5, &p3, (0, 0), (1, 0));
        assert_eq!(gap.product, Some(4));
        assert_eq!(gap.factor_max, Some(1));
        assert_eq!(gap.gap(), Some(3));
        let same_parity = lower_bound_gap(&c5, &p3, (0, 0), (2, 2));
        assert_eq!(same_parity.gap(), Some(0));
    }

    #[test]
    fn cmxpn_closed_form() {
        assert_eq!(cmxpn_distance(5, 4, (1, 1), (2, 1)).unwrap(), 4);
        assert_eq!(cmxpn_distance(3, 2, (1, 1), (1, 2)).unwrap(), 3);
        assert!(cmxpn_distance(4, 2, (1, 1), (1, 2)).is_err());
        assert!(cmxpn_distance(5, 4, (6, 1), (1, 1)).is_err());
        assert!(cmxpn_distance(5, 1, (1, 1), (1, 1)).is_err());
    }

    #[test]
    fn cmxpn_matches_product_bfs() {
        for (m, n) in [(3u32, 4u32), (5, 3), (7, 2)] {
            let (cm, pn) = (cycle(m), path(n));
            let (p, idx) = direct_product(&cm, &pn).unwrap();
            let hops = p.apsp();
            for j in 1..=m {
                for i in 1..=n {
                    for r in 1..=m {
                        for s in 1..=n {
                            let formula = cmxpn_distance(m, n, (j, i), (r, s)).unwrap();
                            let bfs = hops.hops(idx.id(j - 1, i - 1), idx.id(r - 1, s - 1));
                            assert_eq!(formula, bfs as u32, "C{m}xP{n} ({j},{i})->({r},{s})");
                        }
                    }
                }
            }
        }
    }
}
