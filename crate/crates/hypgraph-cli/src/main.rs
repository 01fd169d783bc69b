//! Command line surface: family generation, direct products, product
//! distances, hyperbolicity constants, odd cycle certificates, the
//! quasi-isometry constructions, and the claim-check reports.

mod constructions;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hypgraph::cycles::{dist_to_minimal_cycles, minimal_cycles};
use hypgraph::delta::{delta_with, DeltaBudget, DeltaOptions, DeltaResult};
use hypgraph::families;
use hypgraph::graph::{parse_edge_list, to_edge_list};
use hypgraph::parity::parity_distances;
use hypgraph::product::direct_product;
use hypgraph::qi::{BallSpec, GammaVariant};
use hypgraph::reports::{
    self, bipartite_pair_row, detour_growth_rows, path_grid_rows, ring_path_rows,
    triangle_growth_rows, Expected, ReportConfig, Status, TheoremReport,
};
use hypgraph::{Graph, Rat, RatOrInf};
use serde_json::{json, Value};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Parser)]
#[command(
    name = "hypgraph",
    version,
    about = "Exact hyperbolicity constants of finite metric graphs and their direct products"
)]
struct Cli {
    /// Output format for structured results.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Cap on triangle corner roles scanned per delta run; small caps
    /// downgrade results to lower bounds.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Seed for randomized report corpora and random families.
    #[arg(long, global = true, default_value_t = 17)]
    seed: u64,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a named family graph as an edge list.
    Gen(GenArgs),
    /// Build the direct product of two edge lists.
    Product(ProductArgs),
    /// Distance between two product vertices computed from the factors.
    Distance(DistanceArgs),
    /// Hyperbolicity constant of one graph.
    Delta(DeltaArgs),
    /// Minimal odd cycles and distances to their union.
    OddCycles(OddCyclesArgs),
    /// Run one quasi-isometry construction.
    Qi(QiArgs),
    /// Print claim-check reports by id, or all of them.
    Report(ReportArgs),
    /// Run every claim check and gate on the outcome.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Family name; an unknown name lists the available families.
    kind: String,
    /// Positional family parameters.
    params: Vec<String>,
    /// Output file; stdout when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProductArgs {
    factor1: PathBuf,
    factor2: PathBuf,
    /// Output file for the product edge list; stdout when absent.
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Write the factor sizes behind the product ids as JSON.
    #[arg(long)]
    index: Option<PathBuf>,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    factor1: PathBuf,
    #[arg(long)]
    factor2: PathBuf,
    /// Source product vertex as factor coordinates u,v.
    #[arg(long)]
    from: String,
    /// Target product vertex as factor coordinates u,v.
    #[arg(long)]
    to: String,
}

#[derive(Args)]
struct DeltaArgs {
    graph: PathBuf,
    /// Restrict triangle corners to vertices.
    #[arg(long)]
    vertex_variant: bool,
    /// Disable the corner-pair pruning bound.
    #[arg(long)]
    no_prune: bool,
}

#[derive(Args)]
struct OddCyclesArgs {
    graph: PathBuf,
    /// Only consider cycles up to this length.
    #[arg(long)]
    lmax: Option<u32>,
    /// Also print each vertex's distance to the union of minimal cycles.
    #[arg(long)]
    distances: bool,
}

#[derive(Args)]
struct QiArgs {
    /// Construction name; an unknown name lists the available ones.
    #[arg(long)]
    construction: String,
    #[arg(long)]
    factor1: Option<PathBuf>,
    #[arg(long)]
    factor2: Option<PathBuf>,
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Edge of the second factor as u,v.
    #[arg(long)]
    edge: Option<String>,
    /// Walk as comma-separated vertex ids.
    #[arg(long)]
    walk: Option<String>,
    /// Lift variant: 1 starts even, 2 starts odd.
    #[arg(long, default_value_t = 1)]
    variant: u8,
    /// Swap the second coordinate of the lift.
    #[arg(long)]
    swap: bool,
    /// Open ball to collapse, as center,radius; repeatable.
    #[arg(long = "ball")]
    balls: Vec<String>,
    /// Regularity bound for product-star; measured when absent.
    #[arg(long)]
    m: Option<u32>,
    /// Output file for the built graph's edge list.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    /// Claim ids; all registered checks when empty.
    ids: Vec<String>,
    /// First-parameter list for grid overrides, comma separated.
    #[arg(long, value_delimiter = ',')]
    m: Option<Vec<u32>>,
    /// Second-parameter list for grid overrides, comma separated.
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u32>>,
    /// Bridge-length list for the growth check, comma separated.
    #[arg(long, value_delimiter = ',')]
    l: Option<Vec<u32>>,
    /// First bipartite factor for a custom product row.
    #[arg(long)]
    factor1: Option<PathBuf>,
    /// Second bipartite factor for a custom product row.
    #[arg(long)]
    factor2: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Compare the serialized reports byte for byte against this file.
    #[arg(long)]
    golden: Option<PathBuf>,
    /// Write the serialized reports to this file.
    #[arg(long)]
    write_golden: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("worker pool")?;
    }
    let mut budget = DeltaBudget::default();
    if let Some(roles) = cli.budget {
        budget.max_triangle_roles = roles;
    }
    let cfg = ReportConfig {
        budget,
        seed: cli.seed,
    };
    match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args, cli.seed),
        Cmd::Product(args) => cmd_product(args),
        Cmd::Distance(args) => cmd_distance(args, cli.format),
        Cmd::Delta(args) => cmd_delta(args, budget, cli.format),
        Cmd::OddCycles(args) => cmd_odd_cycles(args, cli.format),
        Cmd::Qi(args) => cmd_qi(args, cli.format),
        Cmd::Report(args) => cmd_report(args, &cfg, cli.format),
        Cmd::Verify(args) => cmd_verify(args, &cfg, cli.format),
    }
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_or_print(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_pair(s: &str, what: &str) -> Result<(u32, u32)> {
    let (a, b) = s
        .split_once(',')
        .with_context(|| format!("{what}: expected two comma-separated numbers, got {s}"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<u32>()
            .with_context(|| format!("{what}: {x} is not a number"))
    };
    Ok((parse(a)?, parse(b)?))
}

fn parse_ids(s: &str, what: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .with_context(|| format!("{what}: {x} is not a number"))
        })
        .collect()
}

fn emit(format: Format, value: &Value, tsv: &str) -> Result<()> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value)?),
        Format::Tsv => print!("{tsv}"),
    }
    Ok(())
}

/// Key-value TSV lines from a flat JSON object, nested values compacted.
fn object_tsv(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = value {
        for (key, val) in map {
            let rendered = match val {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{key}\t{rendered}\n"));
        }
    }
    out
}

fn cmd_gen(args: GenArgs, seed: u64) -> Result<ExitCode> {
    let Some(gen) = families::find(&args.kind) else {
        let listing: Vec<String> = families::registry()
            .iter()
            .map(|g| format!("  {} {}", g.name(), g.usage()))
            .collect();
        bail!(
            "unknown family {}; available:\n{}",
            args.kind,
            listing.join("\n")
        );
    };
    let spec = gen.parse(&args.params, seed)?;
    let g = families::generate(&spec)?;
    write_or_print(&args.out, &to_edge_list(&g))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_product(args: ProductArgs) -> Result<ExitCode> {
    let g1 = read_graph(&args.factor1)?;
    let g2 = read_graph(&args.factor2)?;
    let (prod, _) = direct_product(&g1, &g2)?;
    write_or_print(&args.out, &to_edge_list(&prod))?;
    if let Some(path) = &args.index {
        let index = json!({ "n1": g1.n(), "n2": g2.n() });
        fs::write(path, serde_json::to_string_pretty(&index)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_distance(args: DistanceArgs, format: Format) -> Result<ExitCode> {
    let g1 = read_graph(&args.factor1)?;
    let g2 = read_graph(&args.factor2)?;
    let from = parse_pair(&args.from, "--from")?;
    let to = parse_pair(&args.to, "--to")?;
    for (graph, coords, flag) in [(&g1, (from.0, to.0), 1), (&g2, (from.1, to.1), 2)] {
        for v in [coords.0, coords.1] {
            if v as usize >= graph.n() {
                bail!("vertex {v} is out of range for factor {flag}");
            }
        }
    }
    let a = parity_distances(&g1, from.0).at(to.0);
    let b = parity_distances(&g2, from.1).at(to.1);
    let join = |x: Option<u32>, y: Option<u32>| Some(x?.max(y?));
    let (dist, parity) = match (join(a.even, b.even), join(a.odd, b.odd)) {
        (Some(e), Some(o)) if e <= o => (Some(e), Some("even")),
        (Some(_), Some(o)) => (Some(o), Some("odd")),
        (Some(e), None) => (Some(e), Some("even")),
        (None, Some(o)) => (Some(o), Some("odd")),
        (None, None) => (None, None),
    };
    let rendered = dist.map_or(RatOrInf::Inf, |d| {
        RatOrInf::Finite(Rat::integer(u64::from(d)))
    });
    let value = json!({
        "from": [from.0, from.1],
        "to": [to.0, to.1],
        "distance": rendered,
        "parity": parity,
    });
    let tsv = format!(
        "distance\t{rendered}\nparity\t{}\n",
        parity.unwrap_or("-")
    );
    emit(format, &value, &tsv)?;
    Ok(ExitCode::SUCCESS)
}

fn delta_value(result: &DeltaResult) -> Result<Value> {
    let rat = result
        .delta
        .as_rational()
        .ok_or_else(|| anyhow!("delta is infinite"))?;
    Ok(json!({
        "delta_num": rat.num,
        "delta_den": rat.den,
        "mode": serde_json::to_value(result.mode)?,
        "witness": serde_json::to_value(&result.witness)?,
    }))
}

fn cmd_delta(args: DeltaArgs, budget: DeltaBudget, format: Format) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let opts = DeltaOptions {
        budget,
        prune: !args.no_prune,
        vertex_corners: args.vertex_variant,
    };
    let result = delta_with(&g, &opts)?;
    let value = delta_value(&result)?;
    let tsv = format!(
        "delta\t{}\nmode\t{}\n",
        result.delta,
        value["mode"].as_str().expect("mode is a string")
    );
    emit(format, &value, &tsv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_odd_cycles(args: OddCyclesArgs, format: Format) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let cycles = minimal_cycles(&g, args.lmax)?;
    let mut value = json!({ "cycles": cycles });
    let mut tsv = String::from("vertices\tlength\todd\tisometric\n");
    for c in &cycles {
        let verts: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
        tsv.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            verts.join(","),
            c.length,
            c.odd,
            c.isometric
        ));
    }
    if args.distances {
        let dists = dist_to_minimal_cycles(&g, args.lmax)?;
        for (v, d) in dists.iter().enumerate() {
            tsv.push_str(&format!("dist\t{v}\t{d}\n"));
        }
        value["distances"] = serde_json::to_value(&dists)?;
    }
    emit(format, &value, &tsv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_qi(args: QiArgs, format: Format) -> Result<ExitCode> {
    let Some(construction) = constructions::find(&args.construction) else {
        let listing: Vec<String> = constructions::registry()
            .iter()
            .map(|c| format!("  {} {}", c.name(), c.usage()))
            .collect();
        bail!(
            "unknown construction {}; available:\n{}",
            args.construction,
            listing.join("\n")
        );
    };
    let variant = match args.variant {
        1 => GammaVariant::One,
        2 => GammaVariant::Two,
        other => bail!("--variant must be 1 or 2, got {other}"),
    };
    let balls = args
        .balls
        .iter()
        .map(|s| {
            let (center, radius) = parse_pair(s, "--ball")?;
            Ok(BallSpec { center, radius })
        })
        .collect::<Result<Vec<_>>>()?;
    let req = constructions::Request {
        factor1: args.factor1.as_deref().map(read_graph).transpose()?,
        factor2: args.factor2.as_deref().map(read_graph).transpose()?,
        graph: args.graph.as_deref().map(read_graph).transpose()?,
        edge: args
            .edge
            .as_deref()
            .map(|s| parse_pair(s, "--edge"))
            .transpose()?,
        walk: args
            .walk
            .as_deref()
            .map(|s| parse_ids(s, "--walk"))
            .transpose()?,
        variant,
        swap: args.swap,
        balls,
        m: args.m,
    };
    let output = construction
        .run(&req)
        .with_context(|| format!("construction {}", construction.name()))?;
    if let Some(graph) = &output.graph {
        if args.out.is_some() {
            write_or_print(&args.out, &to_edge_list(graph))?;
        }
    }
    emit(format, &output.value, &object_tsv(&output.value))?;
    Ok(ExitCode::SUCCESS)
}

fn expected_str(e: &Expected) -> String {
    match e {
        Expected::Value { value } => format!("={value}"),
        Expected::Range { lo, hi } => format!("[{lo},{hi}]"),
        Expected::AtMost { bound } => format!("<={bound}"),
        Expected::AtLeast { bound } => format!(">={bound}"),
        Expected::Holds => "holds".into(),
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Indeterminate => "indeterminate",
    }
}

fn reports_tsv(reports: &[TheoremReport]) -> String {
    let mut out = String::from("id\tlabel\texpected\tcomputed\tstatus\n");
    for report in reports {
        for inst in &report.instances {
            let computed = inst
                .computed
                .map_or_else(|| "-".into(), |r| r.to_string());
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                report.id,
                inst.label,
                expected_str(&inst.expected),
                computed,
                status_str(inst.status)
            ));
        }
    }
    out
}

/// A single report rebuilt on a caller-supplied grid instead of the
/// registered default.
fn override_report(args: &ReportArgs, cfg: &ReportConfig) -> Result<TheoremReport> {
    if args.ids.len() != 1 {
        bail!("grid overrides need exactly one claim id");
    }
    let id = args.ids[0].as_str();
    let cartesian = |ms: &[u32], ns: &[u32]| -> Vec<(u32, u32)> {
        ms.iter()
            .flat_map(|&m| ns.iter().map(move |&n| (m, n)))
            .collect()
    };
    let rows = match id {
        "t:CmxPn" | "t:path" => {
            let (Some(ms), Some(ns)) = (&args.m, &args.n) else {
                bail!("{id} needs both --m and --n");
            };
            let grid = cartesian(ms, ns);
            if id == "t:CmxPn" {
                ring_path_rows(&grid, cfg)?
            } else {
                path_grid_rows(&grid, cfg)?
            }
        }
        "p:unbounded" => {
            let ns = args.n.as_ref().context("p:unbounded needs --n")?;
            triangle_growth_rows(ns)?
        }
        "t:P2" => {
            let ls = args.l.as_ref().context("t:P2 needs --l")?;
            detour_growth_rows(ls, cfg)?
        }
        "t:bipartite" => {
            let (Some(p1), Some(p2)) = (&args.factor1, &args.factor2) else {
                bail!("t:bipartite needs both --factor1 and --factor2");
            };
            let g1 = read_graph(p1)?;
            let g2 = read_graph(p2)?;
            let label = format!("{} x {}", p1.display(), p2.display());
            vec![bipartite_pair_row(&label, &g1, &g2, cfg)?]
        }
        other => bail!("{other} does not take grid overrides"),
    };
    Ok(TheoremReport::new(id, rows))
}

fn cmd_report(args: ReportArgs, cfg: &ReportConfig, format: Format) -> Result<ExitCode> {
    let overridden = args.m.is_some()
        || args.n.is_some()
        || args.l.is_some()
        || args.factor1.is_some()
        || args.factor2.is_some();
    let reports: Vec<TheoremReport> = if overridden {
        vec![override_report(&args, cfg)?]
    } else if args.ids.is_empty() {
        reports::run_all(cfg)?
    } else {
        args.ids
            .iter()
            .map(|id| {
                reports::find(id)
                    .ok_or_else(|| anyhow!("unknown claim id {id}"))
                    .and_then(|check| Ok(check.run(cfg)?))
            })
            .collect::<Result<_>>()?
    };
    emit(format, &serde_json::to_value(&reports)?, &reports_tsv(&reports))?;
    Ok(ExitCode::SUCCESS)
}

/// Id of the first report that differs between the two serialized lists.
fn first_difference(want: &Value, got: &Value) -> String {
    let (Value::Array(want), Value::Array(got)) = (want, got) else {
        return "unknown".into();
    };
    for (w, g) in want.iter().zip(got.iter()) {
        if w != g {
            return w["id"]
                .as_str()
                .or_else(|| g["id"].as_str())
                .unwrap_or("unknown")
                .to_string();
        }
    }
    let spare = if want.len() > got.len() {
        want.get(got.len())
    } else {
        got.get(want.len())
    };
    spare
        .and_then(|v| v["id"].as_str())
        .unwrap_or("unknown")
        .to_string()
}

fn cmd_verify(args: VerifyArgs, cfg: &ReportConfig, format: Format) -> Result<ExitCode> {
    let reports = reports::run_all(cfg)?;
    let serialized = serde_json::to_string_pretty(&reports)? + "\n";
    if let Some(path) = &args.write_golden {
        fs::write(path, &serialized).with_context(|| format!("writing {}", path.display()))?;
    }
    match format {
        Format::Json => print!("{serialized}"),
        Format::Tsv => {
            for report in &reports {
                println!(
                    "{}\t{}\t{}\t{}\t{}",
                    report.id,
                    report.pass,
                    report.fail,
                    report.indeterminate,
                    status_str(report.status())
                );
            }
        }
    }
    if let Some(path) = &args.golden {
        let want_bytes =
            fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        if want_bytes != serialized.as_bytes() {
            let id = match serde_json::from_slice::<Value>(&want_bytes) {
                Ok(want) => first_difference(&want, &serde_json::to_value(&reports)?),
                Err(_) => {
                    eprintln!("golden mismatch: {} is not valid JSON", path.display());
                    return Ok(ExitCode::from(1));
                }
            };
            eprintln!("golden mismatch at {id}");
            return Ok(ExitCode::from(1));
        }
    }
    let code = if reports.iter().any(|r| r.fail > 0) {
        1
    } else if reports.iter().any(|r| r.indeterminate > 0) {
        2
    } else {
        0
    };
    Ok(ExitCode::from(code))
}
