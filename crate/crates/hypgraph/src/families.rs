//! Deterministic generators for the graph families the checks quantify
//! over, plus a by-name registry so callers can select one at runtime.

use crate::error::{Error, Result};
use crate::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A generation request. Same spec, same graph, byte for byte; randomized
/// kinds carry their seed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilySpec {
    /// Path on `m` vertices.
    Path { m: u32 },
    /// Cycle on `m` vertices, `m >= 3`.
    Cycle { m: u32 },
    /// Complete graph on `n` vertices.
    Complete { n: u32 },
    /// Complete bipartite graph with classes of size `a` and `b`.
    CompleteBipartite { a: u32, b: u32 },
    /// Random attachment tree on `n` vertices.
    RandomTree { n: u32, seed: u64 },
    /// Two triangles joined by a bridge of `bridge` edges. The first
    /// triangle is {0, 1, 2}, the bridge runs 2..2+bridge, the second
    /// triangle sits last; attachment vertices belong to both their
    /// triangle and the bridge.
    Dumbbell { bridge: u32 },
    /// Cycle 0..cycle with a pendant path of `tail` edges hanging at 0.
    CycleWithPendant { cycle: u32, tail: u32 },
    /// Independent edges with exact probability `p_num / p_den`.
    RandomGraph {
        n: u32,
        p_num: u32,
        p_den: u32,
        seed: u64,
    },
}

pub fn generate(spec: &FamilySpec) -> Result<Graph> {
    match *spec {
        FamilySpec::Path { m } => {
            require(m >= 1, "path needs at least 1 vertex")?;
            let edges: Vec<_> = (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            Graph::new(m as usize, &edges)
        }
        FamilySpec::Cycle { m } => {
            require(m >= 3, "cycle needs at least 3 vertices")?;
            let edges: Vec<_> = (0..m).map(|i| (i, (i + 1) % m)).collect();
            Graph::new(m as usize, &edges)
        }
        FamilySpec::Complete { n } => {
            require(n >= 1, "complete graph needs at least 1 vertex")?;
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    edges.push((u, v));
                }
            }
            Graph::new(n as usize, &edges)
        }
        FamilySpec::CompleteBipartite { a, b } => {
            require(a >= 1 && b >= 1, "both classes need at least 1 vertex")?;
            let mut edges = Vec::new();
            for u in 0..a {
                for v in 0..b {
                    edges.push((u, a + v));
                }
            }
            Graph::new((a + b) as usize, &edges)
        }
        FamilySpec::RandomTree { n, seed } => {
            require(n >= 1, "tree needs at least 1 vertex")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
            Graph::new(n as usize, &edges)
        }
        FamilySpec::Dumbbell { bridge } => {
            require(bridge >= 1, "bridge needs at least 1 edge")?;
            let b = 2 + bridge;
            let mut edges = vec![(0, 1), (1, 2), (0, 2)];
            edges.extend((2..b).map(|i| (i, i + 1)));
            edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
            Graph::new(bridge as usize + 5, &edges)
        }
        FamilySpec::CycleWithPendant { cycle, tail } => {
            require(cycle >= 3, "cycle needs at least 3 vertices")?;
            let mut edges: Vec<_> = (0..cycle).map(|i| (i, (i + 1) % cycle)).collect();
            if tail > 0 {
                edges.push((0, cycle));
                edges.extend((cycle..cycle + tail - 1).map(|i| (i, i + 1)));
            }
            Graph::new((cycle + tail) as usize, &edges)
        }
        FamilySpec::RandomGraph {
            n,
            p_num,
            p_den,
            seed,
        } => {
            require(n >= 1, "graph needs at least 1 vertex")?;
            require(p_den > 0 && p_num <= p_den, "probability must be in [0, 1]")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_range(0..p_den) < p_num {
                        edges.push((u, v));
                    }
                }
            }
            Graph::new(n as usize, &edges)
        }
    }
}

fn require(ok: bool, msg: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::BadParameter(msg.into()))
    }
}

/// One nameable family: parses positional arguments into a spec.
pub trait FamilyGen: Sync {
    fn name(&self) -> &'static str;
    /// Positional parameters, for usage messages.
    fn usage(&self) -> &'static str;
    fn parse(&self, args: &[String], seed: u64) -> Result<FamilySpec>;
}

fn arg(args: &[String], i: usize, what: &str) -> Result<u32> {
    let raw = args
        .get(i)
        .ok_or_else(|| Error::BadParameter(format!("missing {what}")))?;
    raw.parse()
        .map_err(|_| Error::BadParameter(format!("{what}: {raw} is not a number")))
}

fn arity(args: &[String], n: usize, usage: &str) -> Result<()> {
    require(args.len() == n, &format!("expected {n} parameters: {usage}"))
}

struct PathGen;
impl FamilyGen for PathGen {
    fn name(&self) -> &'static str {
        "path"
    }
    fn usage(&self) -> &'static str {
        "<m>"
    }
    fn parse(&self, args: &[String], _seed: u64) -> Result<FamilySpec> {
        arity(args, 1, self.usage())?;
        Ok(FamilySpec::Path {
            m: arg(args, 0, "vertex count")?,
        })
    }
}

struct CycleGen;
impl FamilyGen for CycleGen {
    fn name(&self) -> &'static str {
        "cycle"
    }
    fn usage(&self) -> &'static str {
        "<m>"
    }
    fn parse(&self, args: &[String], _seed: u64) -> Result<FamilySpec> {
        arity(args, 1, self.usage())?;
        Ok(FamilySpec::Cycle {
            m: arg(args, 0, "vertex count")?,
        })
    }
}

struct CompleteGen;
impl FamilyGen for CompleteGen {
    fn name(&self) -> &'static str {
        "complete"
    }
    fn usage(&self) -> &'static str {
        "<n>"
    }
    fn parse(&self, args: &[String], _seed: u64) -> Result<FamilySpec> {
        arity(args, 1, self.usage())?;
        Ok(FamilySpec::Complete {
            n: arg(args, 0, "vertex count")?,
        })
    }
}

struct CompleteBipartiteGen;
impl FamilyGen for CompleteBipartiteGen {
    fn name(&self) -> &'static str {
        "complete-bipartite"
    }
    fn usage(&self) -> &'static str {
        "<a> <b>"
    }
    fn parse(&self, args: &[String], _seed: u64) -> Result<FamilySpec> {
        arity(args, 2, self.usage())?;
        Ok(FamilySpec::CompleteBipartite {
            a: arg(args, 0, "first class size")?,
            b: arg(args, 1, "second class size")?,
        })
    }
}

struct RandomTreeGen;
impl FamilyGen for RandomTreeGen {
    fn name(&self) -> &'static str {
        "random-tree"
    }
    fn usage(&self) -> &'static str {
        "<n>"
    }
    fn parse(&self, args: &[String], seed: u64) -> Result<FamilySpec> {
        arity(args, 1, self.usage())?;
        Ok(FamilySpec::RandomTree {
            n: arg(args, 0, "vertex count")?,
            seed,
        })
    }
}

struct DumbbellGen;
impl FamilyGen for DumbbellGen {
    fn name(&self) -> &'static str {
        "dumbbell"
    }
    fn usage(&self) -> &'static str {
        "<bridge>"
    }
    fn parse(&self, args: &[String], _seed: u64) -> Result<FamilySpec> {
        arity(args, 1, self.usage())?;
        Ok(FamilySpec::Dumbbell {
            bridge: arg(args, 0, "bridge length")?,
        })
    }
}

struct CycleWithPendantGen;
impl FamilyGen for CycleWithPendantGen {
    fn name(&self) -> &'static str {
        "cycle-with-pendant"
    }
    fn usage(&self) -> &'static str {
        "<cycle> <tail>"
    }
    fn parse(&self, args: &[String], _seed: u64) -> Result<FamilySpec> {
        arity(args, 2, self.usage())?;
        Ok(FamilySpec::CycleWithPendant {
            cycle: arg(args, 0, "cycle length")?,
            tail: arg(args, 1, "tail length")?,
        })
    }
}

struct RandomGraphGen;
impl FamilyGen for RandomGraphGen {
    fn name(&self) -> &'static str {
        "random-graph"
    }
    fn usage(&self) -> &'static str {
        "<n> <p as num/den>"
    }
    fn parse(&self, args: &[String], seed: u64) -> Result<FamilySpec> {
        arity(args, 2, self.usage())?;
        let p = &args[1];
        let (num, den) = p
            .split_once('/')
            .ok_or_else(|| Error::BadParameter(format!("probability {p} is not num/den")))?;
        let parse = |s: &str| {
            s.parse::<u32>()
                .map_err(|_| Error::BadParameter(format!("probability {p} is not num/den")))
        };
        Ok(FamilySpec::RandomGraph {
            n: arg(args, 0, "vertex count")?,
            p_num: parse(num)?,
            p_den: parse(den)?,
            seed,
        })
    }
}

/// All generators, selectable by name.
pub fn registry() -> &'static [&'static dyn FamilyGen] {
    &[
        &PathGen,
        &CycleGen,
        &CompleteGen,
        &CompleteBipartiteGen,
        &RandomTreeGen,
        &DumbbellGen,
        &CycleWithPendantGen,
        &RandomGraphGen,
    ]
}

pub fn find(name: &str) -> Option<&'static dyn FamilyGen> {
    registry().iter().copied().find(|g| g.name() == name)
}
