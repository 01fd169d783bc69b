//! Quasi-isometry constructions behind one dispatch table. Each entry reads
//! the shared flag set, runs one library construction, and returns a JSON
//! summary plus an optional built graph for `-o`.

use anyhow::{bail, Context, Result};
use hypgraph::qi::{
    collapse_balls, embedding_g2odd, embedding_l_p2, embedding_no_odd, lift_gamma, product_star,
    swap_r, BallSpec, Embedding, GammaVariant,
};
use hypgraph::Graph;
use serde_json::{json, Value};

/// Parsed inputs shared by every construction; each one validates the
/// subset it needs.
pub struct Request {
    pub factor1: Option<Graph>,
    pub factor2: Option<Graph>,
    pub graph: Option<Graph>,
    pub edge: Option<(u32, u32)>,
    pub walk: Option<Vec<u32>>,
    pub variant: GammaVariant,
    pub swap: bool,
    pub balls: Vec<BallSpec>,
    pub m: Option<u32>,
}

pub struct Output {
    pub value: Value,
    /// Built graph, written to `-o` when given.
    pub graph: Option<Graph>,
}

pub trait Construction: Sync {
    fn name(&self) -> &'static str;
    /// Required flags, for the usage message.
    fn usage(&self) -> &'static str;
    fn run(&self, req: &Request) -> Result<Output>;
}

fn factor1<'a>(req: &'a Request) -> Result<&'a Graph> {
    req.factor1.as_ref().context("missing --factor1")
}

fn factor2<'a>(req: &'a Request) -> Result<&'a Graph> {
    req.factor2.as_ref().context("missing --factor2")
}

fn base_graph<'a>(req: &'a Request) -> Result<&'a Graph> {
    req.graph.as_ref().context("missing --graph")
}

fn embedding_value(name: &str, emb: &Embedding) -> Result<Value> {
    let mut value = json!({
        "construction": name,
        "map": emb.map,
        "codomain_vertices": emb.codomain.n(),
        "codomain_pairs": emb.codomain_pairs,
        "report": serde_json::to_value(&emb.report)?,
    });
    if let Some(pairs) = &emb.domain_pairs {
        value["domain_pairs"] = serde_json::to_value(pairs)?;
    }
    Ok(value)
}

struct G2Odd;

impl Construction for G2Odd {
    fn name(&self) -> &'static str {
        "g2odd"
    }

    fn usage(&self) -> &'static str {
        "--factor1 G1.edges --factor2 G2.edges"
    }

    fn run(&self, req: &Request) -> Result<Output> {
        let emb = embedding_g2odd(factor1(req)?, factor2(req)?)?;
        let value = embedding_value(self.name(), &emb)?;
        Ok(Output {
            value,
            graph: Some(emb.codomain),
        })
    }
}

struct NoOdd;

impl Construction for NoOdd {
    fn name(&self) -> &'static str {
        "no-odd"
    }

    fn usage(&self) -> &'static str {
        "--factor1 G1.edges --factor2 G2.edges"
    }

    fn run(&self, req: &Request) -> Result<Output> {
        let emb = embedding_no_odd(factor1(req)?, factor2(req)?)?;
        let value = embedding_value(self.name(), &emb)?;
        Ok(Output {
            value,
            graph: Some(emb.codomain),
        })
    }
}

struct LP2;

impl Construction for LP2 {
    fn name(&self) -> &'static str {
        "l-p2"
    }

    fn usage(&self) -> &'static str {
        "--factor1 G1.edges --factor2 G2.edges [--edge u,v]"
    }

    fn run(&self, req: &Request) -> Result<Output> {
        let emb = embedding_l_p2(factor1(req)?, factor2(req)?, req.edge)?;
        let value = embedding_value(self.name(), &emb)?;
        Ok(Output {
            value,
            graph: Some(emb.codomain),
        })
    }
}

struct Gamma1;

impl Construction for Gamma1 {
    fn name(&self) -> &'static str {
        "gamma1"
    }

    fn usage(&self) -> &'static str {
        "--graph G.edges --walk u,v,... [--variant 1|2] [--swap]"
    }

    fn run(&self, req: &Request) -> Result<Output> {
        let g = base_graph(req)?;
        let walk = req.walk.as_ref().context("missing --walk")?;
        let mut lift = lift_gamma(g, walk, req.variant)?;
        if req.swap {
            lift = swap_r(&lift);
        }
        Ok(Output {
            value: json!({ "construction": self.name(), "lift": lift }),
            graph: None,
        })
    }
}

struct Collapse;

impl Construction for Collapse {
    fn name(&self) -> &'static str {
        "collapse"
    }

    fn usage(&self) -> &'static str {
        "--graph G.edges --ball c,r [--ball c,r ...]"
    }

    fn run(&self, req: &Request) -> Result<Output> {
        let g = base_graph(req)?;
        if req.balls.is_empty() {
            bail!("collapse needs at least one --ball");
        }
        let c = collapse_balls(g, &req.balls)?;
        let value = json!({
            "construction": self.name(),
            "k_max": c.k_max,
            "star_ids": c.star_ids,
            "map": c.map,
            "report": serde_json::to_value(&c.report)?,
        });
        Ok(Output {
            value,
            graph: Some(c.graph),
        })
    }
}

struct ProductStar;

impl Construction for ProductStar {
    fn name(&self) -> &'static str {
        "product-star"
    }

    fn usage(&self) -> &'static str {
        "--graph G.edges --ball c,r [--ball c,r ...] [--m N]"
    }

    fn run(&self, req: &Request) -> Result<Output> {
        let g = base_graph(req)?;
        if req.balls.is_empty() {
            bail!("product-star needs at least one --ball");
        }
        let p = product_star(g, &req.balls, req.m)?;
        let value = json!({
            "construction": self.name(),
            "k_max": p.k_max,
            "m_effective": p.m_effective,
            "star_ids": p.star_ids,
            "map": p.map,
            "report": serde_json::to_value(&p.report)?,
        });
        Ok(Output {
            value,
            graph: Some(p.graph),
        })
    }
}

pub fn registry() -> &'static [&'static dyn Construction] {
    &[&G2Odd, &NoOdd, &LP2, &Gamma1, &Collapse, &ProductStar]
}

pub fn find(name: &str) -> Option<&'static dyn Construction> {
    registry().iter().copied().find(|c| c.name() == name)
}
