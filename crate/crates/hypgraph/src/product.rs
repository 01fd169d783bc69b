//! Direct (tensor) products. The product of `G1` and `G2` has vertex set
//! `V1 x V2`, and `(u1, u2) ~ (v1, v2)` exactly when both coordinate pairs
//! are edges of their factors.

use crate::error::Result;
use crate::graph::Graph;
use serde::Serialize;

/// Row-major pairing of factor coordinates: `(i, j) -> i * n2 + j`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProductIndex {
    pub n1: usize,
    pub n2: usize,
}

impl ProductIndex {
    pub fn id(&self, i: u32, j: u32) -> u32 {
        debug_assert!((i as usize) < self.n1 && (j as usize) < self.n2);
        i * self.n2 as u32 + j
    }

    pub fn pair(&self, id: u32) -> (u32, u32) {
        (id / self.n2 as u32, id % self.n2 as u32)
    }
}

pub fn direct_product(g1: &Graph, g2: &Graph) -> Result<(Graph, ProductIndex)> {
    let index = ProductIndex {
        n1: g1.n(),
        n2: g2.n(),
    };
    let mut edges = Vec::with_capacity(2 * g1.edge_count() * g2.edge_count());
    for &(u1, v1) in g1.edges() {
        for &(u2, v2) in g2.edges() {
            edges.push((index.id(u1, u2), index.id(v1, v2)));
            edges.push((index.id(u1, v2), index.id(v1, u2)));
        }
    }
    let g = Graph::new(g1.n() * g2.n(), &edges)?;
    Ok((g, index))
}

/// Number of connected components of a direct product of connected factors
/// with at least one edge each: `2^(max(k, 1) - 1)` where `k` counts the
/// bipartite factors.
pub fn predict_component_count(bipartite_flags: &[bool]) -> u64 {
    let k = bipartite_flags.iter().filter(|&&b| b).count() as u32;
    2u64.pow(k.max(1) - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(m: u32) -> Graph {
        let edges: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
        Graph::new(m as usize, &edges).unwrap()
    }

    fn path(m: u32) -> Graph {
        let edges: Vec<_> = (0..m - 1).map(|i| (i, i + 1)).collect();
        Graph::new(m as usize, &edges).unwrap()
    }

    fn complete(n: u32) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::new(n as usize, &edges).unwrap()
    }

    /// Adjacency by definition, one pair at a time.
    fn product_oracle(g1: &Graph, g2: &Graph) -> Vec<(u32, u32)> {
        let idx = ProductIndex {
            n1: g1.n(),
            n2: g2.n(),
        };
        let mut edges = Vec::new();
        for a1 in 0..g1.n() as u32 {
            for a2 in 0..g2.n() as u32 {
                for b1 in 0..g1.n() as u32 {
                    for b2 in 0..g2.n() as u32 {
                        let (x, y) = (idx.id(a1, a2), idx.id(b1, b2));
                        if x < y && g1.has_edge(a1, b1) && g2.has_edge(a2, b2) {
                            edges.push((x, y));
                        }
                    }
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    #[test]
    fn k3_times_k3() {
        let k3 = complete(3);
        let (p, _) = direct_product(&k3, &k3).unwrap();
        assert_eq!(p.n(), 9);
        assert_eq!(p.edge_count(), 18);
        assert!(p.is_connected());
        assert!((0..9).all(|v| p.degree(v) == 4));
        assert_eq!(p.edges(), product_oracle(&k3, &k3).as_slice());
    }

    #[test]
    fn c3_times_p2_is_c6() {
        let (p, _) = direct_product(&cycle(3), &path(2)).unwrap();
        assert_eq!(p.n(), 6);
        assert!(p.is_connected());
        assert!((0..6).all(|v| p.degree(v) == 2));
        assert!(p.is_bipartite());
    }

    #[test]
    fn edge_count_and_degrees() {
        let (p, idx) = direct_product(&path(3), &cycle(4)).unwrap();
        assert_eq!(p.edge_count(), 2 * 2 * 4);
        for i in 0..3u32 {
            for j in 0..4u32 {
                let g1 = if i == 1 { 2 } else { 1 };
                assert_eq!(p.degree(idx.id(i, j)), g1 * 2);
            }
        }
    }

    #[test]
    fn commutes_up_to_coordinate_swap() {
        let (ab, iab) = direct_product(&path(3), &cycle(4)).unwrap();
        let (ba, iba) = direct_product(&cycle(4), &path(3)).unwrap();
        let mut mapped: Vec<(u32, u32)> = ab
            .edges()
            .iter()
            .map(|&(x, y)| {
                let (i, j) = iab.pair(x);
                let (k, l) = iab.pair(y);
                let (a, b) = (iba.id(j, i), iba.id(l, k));
                (a.min(b), a.max(b))
            })
            .collect();
        mapped.sort_unstable();
        assert_eq!(mapped, ba.edges());
    }

    #[test]
    fn component_count_formula() {
        assert_eq!(predict_component_count(&[false, false]), 1);
        assert_eq!(predict_component_count(&[true, false]), 1);
        assert_eq!(predict_component_count(&[true, true]), 2);
        assert_eq!(predict_component_count(&[true, true, true]), 4);
    }
}
