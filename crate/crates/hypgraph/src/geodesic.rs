//! Shortest-path structure between a fixed vertex pair. The edges lying on
//! some geodesic form a directed acyclic graph; explicit enumeration walks it
//! in lexicographic order under a hard cap.

use crate::error::{Error, Result};
use crate::graph::{Graph, HOP_INF};

pub struct GeodesicDag {
    pub src: u32,
    pub dst: u32,
    /// Hop count from `src` to `dst`.
    pub hops: u16,
    /// Hop counts from `src` and to `dst`, for membership tests.
    pub from_src: Vec<u16>,
    pub to_dst: Vec<u16>,
    /// Sorted successor lists restricted to on-geodesic edges.
    pub succ: Vec<Vec<u32>>,
}

impl GeodesicDag {
    pub fn new(g: &Graph, src: u32, dst: u32) -> Result<GeodesicDag> {
        let from_src = g.bfs_hops(src);
        let to_dst = g.bfs_hops(dst);
        let total = from_src[dst as usize];
        if total == HOP_INF {
            return Err(Error::Disconnected(src, dst));
        }
        let mut succ = vec![Vec::new(); g.n()];
        for v in 0..g.n() as u32 {
            if from_src[v as usize] == HOP_INF {
                continue;
            }
            for &w in g.neighbors(v) {
                if from_src[v as usize] + 1 + to_dst[w as usize] == total {
                    succ[v as usize].push(w);
                }
            }
        }
        Ok(GeodesicDag {
            src,
            dst,
            hops: total,
            from_src,
            to_dst,
            succ,
        })
    }

    pub fn on_geodesic(&self, v: u32) -> bool {
        let (a, b) = (self.from_src[v as usize], self.to_dst[v as usize]);
        a != HOP_INF && b != HOP_INF && a + b == self.hops
    }

    /// Number of geodesics, saturating.
    pub fn count(&self) -> u128 {
        let mut order: Vec<u32> = (0..self.succ.len() as u32)
            .filter(|&v| self.on_geodesic(v))
            .collect();
        order.sort_unstable_by_key(|&v| std::cmp::Reverse(self.from_src[v as usize]));
        let mut ways = vec![0u128; self.succ.len()];
        ways[self.dst as usize] = 1;
        for &v in &order {
            if v == self.dst {
                continue;
            }
            let mut total = 0u128;
            for &w in &self.succ[v as usize] {
                total = total.saturating_add(ways[w as usize]);
            }
            ways[v as usize] = total;
        }
        ways[self.src as usize]
    }

    /// All geodesics as vertex paths, lexicographically ordered. Fails with
    /// `GeodesicBudgetExceeded` once more than `cap` paths exist.
    pub fn enumerate(&self, cap: u64) -> Result<Vec<Vec<u32>>> {
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut path = vec![self.src];
        // Stack of iteration positions into the successor lists.
        let mut pos = vec![0usize];
        loop {
            let cur = *path.last().expect("path is never empty");
            if cur == self.dst && path.len() == self.hops as usize + 1 {
                if out.len() as u64 >= cap {
                    return Err(Error::GeodesicBudgetExceeded {
                        found: out.len() as u64,
                    });
                }
                out.push(path.clone());
            }
            let next = 'descend: {
                let i = *pos.last().expect("pos parallels path");
                let options = &self.succ[cur as usize];
                if path.len() <= self.hops as usize && i < options.len() {
                    break 'descend Some(options[i]);
                }
                None
            };
            match next {
                Some(w) => {
                    *pos.last_mut().expect("pos parallels path") += 1;
                    path.push(w);
                    pos.push(0);
                }
                None => {
                    path.pop();
                    pos.pop();
                    if path.is_empty() {
                        return Ok(out);
                    }
                }
            }
        }
    }
}

pub fn enumerate_geodesics(g: &Graph, src: u32, dst: u32, cap: u64) -> Result<Vec<Vec<u32>>> {
    GeodesicDag::new(g, src, dst)?.enumerate(cap)
}
