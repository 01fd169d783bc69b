//! Odd cycles as metric objects: odd girth, isometric embedding checks,
//! shortcut reductions, the set of minimal cycles, and distances to it.
//!
//! A shortcut of a cycle C is a path g between two cycle vertices, interior
//! disjoint from C, shorter than the cycle distance of its endpoints. An odd
//! cycle with no shortcut is minimal; replacing the arc of matching parity
//! with a shortcut shortens an odd cycle by at least two while keeping it
//! odd, so iterated reduction terminates at a minimal cycle.

use crate::dist::Dist16;
use crate::error::{Error, Result};
use crate::geodesic::enumerate_geodesics;
use crate::graph::{Graph, HOP_INF};
use crate::parity::parity_distances;
use serde::Serialize;
use std::collections::{BTreeSet, VecDeque};

/// Cap on explicitly enumerated geodesics per endpoint pair during cycle
/// enumeration.
const GEODESIC_CAP: u64 = 10_000;

/// Length of the shortest odd cycle; `None` when the graph is bipartite.
/// The shortest odd closed walk through any vertex is realized by a cycle,
/// so the parity search already yields the girth.
pub fn odd_girth(g: &Graph) -> Option<u32> {
    (0..g.n() as u32)
        .filter_map(|v| parity_distances(g, v).at(v).odd)
        .min()
}

#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    /// Path between two cycle vertices, interior disjoint from the cycle,
    /// shorter than their cycle distance.
    pub shortcut: Vec<u32>,
    /// Subarc of the original cycle kept in the reduced cycle, running from
    /// the shortcut's last vertex back to its first.
    pub retained: Vec<u32>,
    /// The reduced odd cycle: the shortcut followed by the retained
    /// subarc's interior.
    pub cycle: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CycleCertificate {
    pub vertices: Vec<u32>,
    pub length: u32,
    pub odd: bool,
    pub isometric: bool,
    pub reduction: Option<Reduction>,
}

fn validate_cycle(g: &Graph, c: &[u32]) -> Result<()> {
    if c.len() < 3 {
        return Err(Error::BadCycle(format!("length {} is below 3", c.len())));
    }
    let mut seen = BTreeSet::new();
    for &v in c {
        if v as usize >= g.n() {
            return Err(Error::BadCycle(format!("vertex {v} out of range")));
        }
        if !seen.insert(v) {
            return Err(Error::BadCycle(format!("repeated vertex {v}")));
        }
    }
    for i in 0..c.len() {
        let (u, v) = (c[i], c[(i + 1) % c.len()]);
        if !g.has_edge(u, v) {
            return Err(Error::BadCycle(format!("missing edge between {u} and {v}")));
        }
    }
    Ok(())
}

fn cycle_dist(len: usize, i: usize, j: usize) -> u32 {
    let a = i.abs_diff(j);
    a.min(len - a) as u32
}

/// True iff distances along the cycle agree with graph distances for every
/// vertex pair of the cycle.
pub fn is_isometric_cycle(g: &Graph, c: &[u32]) -> Result<bool> {
    validate_cycle(g, c)?;
    let rows: Vec<Vec<u16>> = c.iter().map(|&v| g.bfs_hops(v)).collect();
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            if u32::from(rows[i][c[j] as usize]) != cycle_dist(c.len(), i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hop counts from `src` inside the subgraph induced by `allowed`.
fn restricted_hops(g: &Graph, src: u32, allowed: &[bool]) -> Vec<u32> {
    let mut dist = vec![u32::MAX; g.n()];
    dist[src as usize] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if allowed[w as usize] && dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Lexicographically smallest shortest path from `u` to `v` through allowed
/// vertices.
fn lex_shortest_restricted(g: &Graph, u: u32, v: u32, allowed: &[bool]) -> Option<Vec<u32>> {
    let to_v = restricted_hops(g, v, allowed);
    if to_v[u as usize] == u32::MAX {
        return None;
    }
    let mut path = vec![u];
    let mut cur = u;
    while cur != v {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| {
                allowed[w as usize]
                    && to_v[w as usize] != u32::MAX
                    && to_v[w as usize] + 1 == to_v[cur as usize]
            })
            .expect("destination is reachable");
        path.push(next);
        cur = next;
    }
    Some(path)
}

/// One reduction step of an odd cycle: the shortest shortcut (ties broken by
/// lexicographic path order) glued to the cycle arc of opposite parity.
/// Returns `None` exactly when the cycle is minimal.
pub fn reduce_cycle(g: &Graph, c: &[u32]) -> Result<Option<Reduction>> {
    validate_cycle(g, c)?;
    let l = c.len();
    if l % 2 == 0 {
        return Err(Error::EvenCycle);
    }
    let on_cycle = {
        let mut m = vec![false; g.n()];
        for &v in c {
            m[v as usize] = true;
        }
        m
    };
    let mut best: Option<(u32, Vec<u32>, usize, usize)> = None;
    for i in 0..l {
        for j in i + 1..l {
            let dc = cycle_dist(l, i, j);
            if dc < 2 {
                continue;
            }
            let mut allowed: Vec<bool> = on_cycle.iter().map(|&b| !b).collect();
            allowed[c[i] as usize] = true;
            allowed[c[j] as usize] = true;
            let Some(path) = lex_shortest_restricted(g, c[i], c[j], &allowed) else {
                continue;
            };
            let len = (path.len() - 1) as u32;
            if len >= dc {
                continue;
            }
            let replace = match &best {
                None => true,
                Some((bl, bp, _, _)) => len < *bl || (len == *bl && path < *bp),
            };
            if replace {
                best = Some((len, path, i, j));
            }
        }
    }
    let Some((len, shortcut, i, j)) = best else {
        return Ok(None);
    };
    let forward: Vec<u32> = c[i..=j].to_vec();
    let forward_len = (j - i) as u32;
    let retained: Vec<u32> = if (len + forward_len) % 2 == 1 {
        let mut arc = forward;
        arc.reverse();
        arc
    } else {
        let mut arc: Vec<u32> = c[j..].to_vec();
        arc.extend_from_slice(&c[..=i]);
        arc
    };
    let mut cycle = shortcut.clone();
    cycle.extend_from_slice(&retained[1..retained.len() - 1]);
    debug_assert!(cycle.len() % 2 == 1 && cycle.len() + 2 <= l);
    debug_assert!(validate_cycle(g, &cycle).is_ok());
    Ok(Some(Reduction {
        shortcut,
        retained,
        cycle,
    }))
}

/// Full certificate for one cycle: parity, isometry, and a reduction when
/// the cycle is odd and admits one.
pub fn certify_cycle(g: &Graph, c: &[u32]) -> Result<CycleCertificate> {
    validate_cycle(g, c)?;
    let odd = c.len() % 2 == 1;
    let isometric = is_isometric_cycle(g, c)?;
    let reduction = if odd { reduce_cycle(g, c)? } else { None };
    Ok(CycleCertificate {
        vertices: c.to_vec(),
        length: c.len() as u32,
        odd,
        isometric,
        reduction,
    })
}

/// Lexicographically smallest rotation or reflection of a cyclic sequence.
fn canonical_cycle(c: &[u32]) -> Vec<u32> {
    let l = c.len();
    let mut best: Option<Vec<u32>> = None;
    for reflect in [false, true] {
        let mut seq = c.to_vec();
        if reflect {
            seq.reverse();
        }
        for s in 0..l {
            let rot: Vec<u32> = (0..l).map(|k| seq[(s + k) % l]).collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
    }
    best.expect("cycle is non-empty")
}

fn default_l_max(sub: &Graph) -> u32 {
    let d = sub
        .diam_continuous()
        .sixteenths()
        .expect("component is connected");
    // Minimal cycles are no longer than four times delta, which is at most
    // twice the diameter.
    d / 8
}

/// All minimal cycles of length at most `l_max` (default: twice the diameter
/// of each component), deduplicated up to rotation and reflection, sorted by
/// length and then lexicographically. Every vertex of a minimal cycle sees
/// its antipodal edge at equal distance along two internally disjoint
/// geodesics, so scanning (vertex, edge) pairs with an isometry filter finds
/// them all.
pub fn minimal_cycles(g: &Graph, l_max: Option<u32>) -> Result<Vec<CycleCertificate>> {
    if let Some(lm) = l_max {
        if lm < 3 {
            return Err(Error::BadParameter(format!("cycle length cap {lm}")));
        }
    }
    let mut found: BTreeSet<Vec<u32>> = BTreeSet::new();
    for comp in g.components() {
        if comp.len() < 3 {
            continue;
        }
        let (sub, map) = g.induced(&comp);
        let cap = l_max.unwrap_or_else(|| default_l_max(&sub));
        let hops = sub.apsp();
        for w in 0..sub.n() as u32 {
            for &(a, b) in sub.edges() {
                let r = hops.hops(w, a);
                if r == 0 || r != hops.hops(w, b) || u32::from(2 * r + 1) > cap {
                    continue;
                }
                let to_a = enumerate_geodesics(&sub, w, a, GEODESIC_CAP)?;
                let to_b = enumerate_geodesics(&sub, w, b, GEODESIC_CAP)?;
                for ga in &to_a {
                    for gb in &to_b {
                        if ga[1..].iter().any(|x| gb[1..].contains(x)) {
                            continue;
                        }
                        let mut cycle = ga.clone();
                        cycle.extend(gb[1..].iter().rev());
                        if is_isometric_cycle(&sub, &cycle)? {
                            let global: Vec<u32> =
                                cycle.iter().map(|&v| map[v as usize]).collect();
                            found.insert(canonical_cycle(&global));
                        }
                    }
                }
            }
        }
    }
    let mut out = Vec::with_capacity(found.len());
    for c in found {
        let cert = certify_cycle(g, &c)?;
        debug_assert!(cert.odd && cert.isometric && cert.reduction.is_none());
        out.push(cert);
    }
    out.sort_by(|x, y| (x.length, &x.vertices).cmp(&(y.length, &y.vertices)));
    Ok(out)
}

/// Hop distance from every vertex to the union of all minimal cycles;
/// infinite where no minimal cycle is reachable.
pub fn dist_to_minimal_cycles(g: &Graph, l_max: Option<u32>) -> Result<Vec<Dist16>> {
    let cycles = minimal_cycles(g, l_max)?;
    let mut dist = vec![u32::MAX; g.n()];
    let mut queue = VecDeque::new();
    for cert in &cycles {
        for &v in &cert.vertices {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = 0;
                queue.push_back(v);
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = dist[v as usize] + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(dist
        .into_iter()
        .map(|d| {
            if d == u32::MAX {
                Dist16::INFINITY
            } else {
                Dist16::from_edges(d)
            }
        })
        .collect())
}

/// Hop count to the nearest vertex of any listed cycle, as a plain row.
pub fn hops_to_cycles(g: &Graph, cycles: &[CycleCertificate]) -> Vec<u16> {
    let mut dist = vec![HOP_INF; g.n()];
    let mut queue = VecDeque::new();
    for cert in cycles {
        for &v in &cert.vertices {
            if dist[v as usize] == HOP_INF {
                dist[v as usize] = 0;
                queue.push_back(v);
            }
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
    dist
}
