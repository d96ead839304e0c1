use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use snark_forge::certificate::Certificate;
use snark_forge::constructions::{
    build_family, cube, extend_bf_cover, hagglund, hagglund_triple, k33, k4, np_reduction,
    petersen, prism, tietze, windmill, FamilyRecipe, DEFAULT_HAGGLUND_EDGES,
};
use snark_forge::covers::{
    excessive_index_with, find_bf_coloring_with, BfColoring, ExcessiveIndex, SearchLimits,
};
use snark_forge::cyclecover::{scc_classify_with, ScanState, SccOptions, SccRun};
use snark_forge::graph::{
    bridges, cyclically_edge_connected_at_least, girth, is_bridgeless, parse_graph, to_graph6,
    GraphFormat,
};
use snark_forge::matching::{count_perfect_matchings, three_edge_color};
use snark_forge::{CubicGraph, Error};

#[derive(Parser)]
#[command(
    name = "snark-forge",
    version,
    about = "Cubic graph constructions, cover solvers and certificates"
)]
struct Cli {
    /// Indent JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Leave timings out so that equal inputs give byte-identical output.
    #[arg(long, global = true)]
    deterministic: bool,
    /// Worker threads for the parallel searches.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Search node budget.
    #[arg(long, global = true, env = "SNARK_FORGE_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named graph or a construction.
    Gen(GenArgs),
    /// Girth, bridges, cyclic connectivity and 3-edge-colorability.
    Invariants {
        #[command(flatten)]
        input: GraphInput,
        /// Largest cyclic connectivity to test.
        #[arg(long, default_value_t = 4)]
        cyclic_max: usize,
    },
    /// Excessive index with a witness cover.
    Xindex {
        #[command(flatten)]
        input: GraphInput,
        /// Stop with a definitive "more than K" verdict above K matchings.
        #[arg(long)]
        max_k: Option<usize>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Berge-Fulkerson colorings.
    Bf {
        #[command(subcommand)]
        action: BfAction,
    },
    /// Classify the shortest cycle cover length.
    Scc {
        #[command(flatten)]
        input: GraphInput,
        /// Continue from a saved state.
        #[arg(long)]
        resume: Option<PathBuf>,
        /// Where to save the state when the budget runs out. Defaults to the
        /// resume path, else the graph path with `.scc-state.json` added.
        #[arg(long)]
        state: Option<PathBuf>,
        /// Also save the state every N search nodes, so that a killed run
        /// can restart from the last save.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        checkpoint: Option<u64>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Check a certificate against a graph.
    Verify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        cert: PathBuf,
        /// For cycle cover certificates, rerun the infeasibility searches.
        #[arg(long)]
        recheck: bool,
    },
}

#[derive(Args)]
struct GraphInput {
    #[arg(long)]
    graph: PathBuf,
    /// graph6 or edge-list; guessed from the file when absent.
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(value_enum)]
    kind: GenKind,
    /// Input graphs for `windmill`.
    #[arg(long, num_args = 3)]
    inputs: Vec<PathBuf>,
    /// Removed edges as `x:y`, one per input, for `windmill` and
    /// `hagglund-triple`.
    #[arg(long, num_args = 3, value_parser = parse_edge)]
    edges: Vec<(usize, usize)>,
    /// Source graph for `reduction`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Recipe JSON for `family`.
    #[arg(long)]
    recipe: Option<PathBuf>,
    /// Write graph6 here; labels go to `<out>.labels.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    K4,
    K33,
    Prism,
    Cube,
    Petersen,
    Tietze,
    Hagglund,
    HagglundTriple,
    Windmill,
    Reduction,
    Family,
}

#[derive(Subcommand)]
enum BfAction {
    Find {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Color a windmill of three colored graphs.
    Extend {
        #[arg(long, num_args = 3, required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, num_args = 3, required = true, value_parser = parse_edge)]
        edges: Vec<(usize, usize)>,
        /// Certificates coloring the inputs; searched for when absent.
        #[arg(long, num_args = 3)]
        colorings: Vec<PathBuf>,
        /// Write the windmill graph6 here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    Verify {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        cert: PathBuf,
    },
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (x, y) = s
        .split_once(':')
        .ok_or_else(|| format!("expected x:y, got {s:?}"))?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((p(x)?, p(y)?))
}

/// How a run ended, besides printing its JSON.
enum Outcome {
    Done,
    VerifyFailed,
    Suspended,
}

struct Ctx {
    pretty: bool,
    deterministic: bool,
    budget: Option<u64>,
    start: Instant,
}

impl Ctx {
    fn emit(&self, mut value: Value) -> anyhow::Result<()> {
        if !self.deterministic {
            if let Value::Object(map) = &mut value {
                map.insert(
                    "elapsed_ms".into(),
                    json!(self.start.elapsed().as_millis() as u64),
                );
            }
        }
        let text = if self.pretty {
            serde_json::to_string_pretty(&value)?
        } else {
            serde_json::to_string(&value)?
        };
        println!("{text}");
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let ctx = Ctx {
        pretty: cli.pretty,
        deterministic: cli.deterministic,
        budget: cli.budget,
        start: Instant::now(),
    };
    match run(&ctx, cli.command) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::VerifyFailed) => ExitCode::from(1),
        Ok(Outcome::Suspended) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            let budget = e
                .chain()
                .any(|c| matches!(c.downcast_ref(), Some(Error::SearchBudgetExceeded { .. })));
            ExitCode::from(if budget { 3 } else { 2 })
        }
    }
}

fn run(ctx: &Ctx, command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Gen(args) => gen(ctx, args),
        Command::Invariants { input, cyclic_max } => invariants(ctx, &input, cyclic_max),
        Command::Xindex { input, max_k, cert } => xindex(ctx, &input, max_k, cert.as_deref()),
        Command::Bf { action } => bf(ctx, action),
        Command::Scc {
            input,
            resume,
            state,
            checkpoint,
            cert,
        } => scc(ctx, &input, resume, state, checkpoint, cert.as_deref()),
        Command::Verify {
            input,
            cert,
            recheck,
        } => verify(ctx, &read_graph(&input)?, &cert, recheck),
    }
}

fn read_graph(input: &GraphInput) -> anyhow::Result<CubicGraph> {
    let text = fs::read_to_string(&input.graph)
        .with_context(|| format!("reading {}", input.graph.display()))?;
    let format = match &input.format {
        Some(f) => f.parse::<GraphFormat>()?,
        None => guess_format(&input.graph, &text),
    };
    parse_graph(&text, format).with_context(|| format!("parsing {}", input.graph.display()))
}

fn guess_format(path: &Path, text: &str) -> GraphFormat {
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    if ext == "g6"
        || (!matches!(ext, "txt" | "edges")
            && text.trim().lines().count() == 1
            && !text.contains(' '))
    {
        GraphFormat::Graph6
    } else {
        GraphFormat::EdgeList
    }
}

fn read_path_graph(path: &Path) -> anyhow::Result<CubicGraph> {
    read_graph(&GraphInput {
        graph: path.to_path_buf(),
        format: None,
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

fn read_certificate(path: &Path) -> anyhow::Result<Certificate> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing certificate {}", path.display()))
}

fn graph_summary(g: &CubicGraph) -> Value {
    json!({ "graph6": to_graph6(g), "graph_sha256": g.id(), "n": g.n(), "m": g.m() })
}

fn gen(ctx: &Ctx, args: GenArgs) -> anyhow::Result<Outcome> {
    let need = |v: &Option<PathBuf>, flag: &str| {
        v.clone().ok_or_else(|| anyhow!("{flag} is required here"))
    };
    let (g, labels): (CubicGraph, Value) = match args.kind {
        GenKind::K4 => (k4(), Value::Null),
        GenKind::K33 => (k33(), Value::Null),
        GenKind::Prism => (prism(), Value::Null),
        GenKind::Cube => (cube(), Value::Null),
        GenKind::Petersen => (petersen(), Value::Null),
        GenKind::Tietze => (tietze(), Value::Null),
        GenKind::Hagglund => {
            let (g, l) = hagglund();
            (g, serde_json::to_value(l)?)
        }
        GenKind::HagglundTriple => {
            let edges = if args.edges.is_empty() {
                DEFAULT_HAGGLUND_EDGES
            } else {
                edge_triple(&args.edges)?
            };
            let node = hagglund_triple(edges)?;
            (node.graph.clone(), serde_json::to_value(&node)?)
        }
        GenKind::Windmill => {
            let inputs = graph_triple(&args.inputs)?;
            let edges = edge_triple(&args.edges)?;
            let (g, l) = windmill(std::array::from_fn(|i| (&inputs[i], edges[i])))?;
            (g, serde_json::to_value(l)?)
        }
        GenKind::Reduction => {
            let source = read_path_graph(&need(&args.input, "--input")?)?;
            let r = np_reduction(&source);
            (r.graph, serde_json::to_value(&r.provenance)?)
        }
        GenKind::Family => {
            let path = need(&args.recipe, "--recipe")?;
            let text =
                fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let recipe: FamilyRecipe = serde_json::from_str(&text).context("parsing recipe")?;
            let node = build_family(&recipe)?;
            (node.graph.clone(), serde_json::to_value(&node)?)
        }
    };
    if let Some(out) = &args.out {
        fs::write(out, to_graph6(&g) + "\n")
            .with_context(|| format!("writing {}", out.display()))?;
        if !labels.is_null() {
            write_json(&sidecar(out, "labels"), &labels)?;
        }
    }
    let mut value = graph_summary(&g);
    value["labels"] = labels;
    ctx.emit(value)?;
    Ok(Outcome::Done)
}

fn sidecar(path: &Path, what: &str) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(format!(".{what}.json"));
    PathBuf::from(s)
}

fn graph_triple(paths: &[PathBuf]) -> anyhow::Result<[CubicGraph; 3]> {
    if paths.len() != 3 {
        bail!("--inputs takes three graphs");
    }
    let gs = paths
        .iter()
        .map(|p| read_path_graph(p))
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(gs.try_into().unwrap_or_else(|_| unreachable!()))
}

fn edge_triple(edges: &[(usize, usize)]) -> anyhow::Result<[(usize, usize); 3]> {
    edges
        .try_into()
        .map_err(|_| anyhow!("--edges takes three x:y pairs"))
}

fn invariants(ctx: &Ctx, input: &GraphInput, cyclic_max: usize) -> anyhow::Result<Outcome> {
    let g = read_graph(input)?;
    let gi = girth(&g);
    let mut connected_up_to = 0;
    let mut cyclic_cut = Value::Null;
    for k in 1..=cyclic_max.min(gi + 1) {
        let c = cyclically_edge_connected_at_least(&g, k)?;
        if !c.holds {
            cyclic_cut = serde_json::to_value(&c.witness)?;
            break;
        }
        connected_up_to = k;
    }
    let mut value = graph_summary(&g);
    value["girth"] = json!(gi);
    value["bridgeless"] = json!(is_bridgeless(&g));
    value["bridges"] = json!(bridges(&g));
    value["cyclically_edge_connected_at_least"] = json!(connected_up_to);
    value["cyclic_cut"] = cyclic_cut;
    value["perfect_matchings"] = json!(count_perfect_matchings(&g));
    value["three_edge_colorable"] = json!(three_edge_color(&g).is_some());
    ctx.emit(value)?;
    Ok(Outcome::Done)
}

fn xindex(
    ctx: &Ctx,
    input: &GraphInput,
    max_k: Option<usize>,
    cert: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let g = read_graph(input)?;
    let limits = SearchLimits {
        node_limit: ctx.budget,
        ..SearchLimits::default()
    };
    let mut value = graph_summary(&g);
    match excessive_index_with(&g, max_k, limits)? {
        ExcessiveIndex::Exact { value: k, witness } => {
            let c = Certificate::from_matching_cover(&g, &witness);
            if let Some(path) = cert {
                write_json(path, &c)?;
            }
            value["excessive_index"] = json!(k);
            value["certificate"] = serde_json::to_value(&c)?;
        }
        ExcessiveIndex::ExceedsBudget { budget } => {
            value["excessive_index"] = Value::Null;
            value["exceeds"] = json!(budget);
        }
    }
    ctx.emit(value)?;
    Ok(Outcome::Done)
}

fn bf(ctx: &Ctx, action: BfAction) -> anyhow::Result<Outcome> {
    match action {
        BfAction::Find { input, cert } => {
            let g = read_graph(&input)?;
            let mut value = graph_summary(&g);
            match find_bf_coloring_with(&g, ctx.budget)? {
                Some(c) => {
                    let c = Certificate::from_bf_coloring(&g, &c);
                    if let Some(path) = cert {
                        write_json(&path, &c)?;
                    }
                    value["found"] = json!(true);
                    value["certificate"] = serde_json::to_value(&c)?;
                }
                None => value["found"] = json!(false),
            }
            ctx.emit(value)?;
            Ok(Outcome::Done)
        }
        BfAction::Extend {
            inputs,
            edges,
            colorings,
            out,
            cert,
        } => {
            let gs = graph_triple(&inputs)?;
            let edges = edge_triple(&edges)?;
            let cs = (0..3)
                .map(|i| match colorings.get(i) {
                    Some(path) => coloring_from_certificate(&gs[i], &read_certificate(path)?),
                    None => find_bf_coloring_with(&gs[i], ctx.budget)?
                        .ok_or_else(|| anyhow!("input {i} has no Berge-Fulkerson coloring")),
                })
                .collect::<anyhow::Result<Vec<_>>>()?;
            let (w, labels) = windmill(std::array::from_fn(|i| (&gs[i], edges[i])))?;
            let c = extend_bf_cover(&w, &labels, std::array::from_fn(|i| (&gs[i], &cs[i])))?;
            let c = Certificate::from_bf_coloring(&w, &c);
            if let Some(path) = &out {
                fs::write(path, to_graph6(&w) + "\n")
                    .with_context(|| format!("writing {}", path.display()))?;
                write_json(&sidecar(path, "labels"), &labels)?;
            }
            if let Some(path) = cert {
                write_json(&path, &c)?;
            }
            let mut value = graph_summary(&w);
            value["certificate"] = serde_json::to_value(&c)?;
            ctx.emit(value)?;
            Ok(Outcome::Done)
        }
        BfAction::Verify { input, cert } => verify(ctx, &read_graph(&input)?, &cert, false),
    }
}

fn coloring_from_certificate(g: &CubicGraph, cert: &Certificate) -> anyhow::Result<BfColoring> {
    let Certificate::BfColoring { assignment, .. } = cert else {
        bail!("expected a bf_coloring certificate")
    };
    if !cert.verify(g)?.valid {
        bail!("input coloring does not verify");
    }
    let pairs: Vec<(u8, u8)> = assignment
        .iter()
        .map(|&[a, b]| (a as u8 + 1, b as u8 + 1))
        .collect();
    Ok(BfColoring::from_pairs(g.id(), &pairs)?)
}

fn scc(
    ctx: &Ctx,
    input: &GraphInput,
    resume: Option<PathBuf>,
    state: Option<PathBuf>,
    checkpoint: Option<u64>,
    cert: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let g = read_graph(input)?;
    let mut current = match &resume {
        Some(path) => {
            let text =
                fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Some(serde_json::from_str::<ScanState>(&text).context("parsing resume state")?)
        }
        None => None,
    };
    let state_path = state
        .or(resume)
        .unwrap_or_else(|| sidecar(&input.graph, "scc-state"));
    let mut left = ctx.budget;
    let mut value = graph_summary(&g);
    loop {
        let node_limit = match (checkpoint, left) {
            (Some(c), Some(l)) => Some(c.min(l)),
            (c, l) => c.or(l),
        };
        let before = current.as_ref().map_or(0, |s| s.nodes);
        let opts = SccOptions {
            node_limit,
            resume: current.take(),
            ..SccOptions::default()
        };
        match scc_classify_with(&g, &opts)? {
            SccRun::Done(v) => {
                let c = Certificate::from_scc(&g, &v);
                if let Some(path) = cert {
                    write_json(path, &c)?;
                }
                value["class"] = serde_json::to_value(v.class)?;
                value["length"] = json!(v.length().unwrap_or(v.class.length(g.m())));
                value["length_is_lower_bound"] = json!(v.witness.is_none());
                value["nodes"] = json!(v.nodes);
                value["certificate"] = serde_json::to_value(&c)?;
                ctx.emit(value)?;
                return Ok(Outcome::Done);
            }
            SccRun::Suspended(s) => {
                write_json(&state_path, &s)?;
                left = left.map(|l| l.saturating_sub(s.nodes - before));
                if left != Some(0) {
                    current = Some(s);
                    continue;
                }
                eprintln!(
                    "budget exhausted; resume with --resume {}",
                    state_path.display()
                );
                value["status"] = json!("suspended");
                value["state"] = json!(state_path);
                value["exhausted"] = serde_json::to_value(&s.exhausted)?;
                value["nodes"] = json!(s.nodes);
                ctx.emit(value)?;
                return Ok(Outcome::Suspended);
            }
        }
    }
}

fn verify(ctx: &Ctx, g: &CubicGraph, path: &Path, recheck: bool) -> anyhow::Result<Outcome> {
    let cert = read_certificate(path)?;
    let mut check = match cert.verify(g) {
        Ok(v) => v,
        Err(Error::HostMismatch { expected, found }) => {
            ctx.emit(json!({ "valid": false, "reason": format!("certificate is for graph {found}, not {expected}") }))?;
            return Ok(Outcome::VerifyFailed);
        }
        Err(e) => return Err(e.into()),
    };
    if check.valid && recheck {
        if let Certificate::Scc {
            class, exhausted, ..
        } = &cert
        {
            let opts = SccOptions {
                node_limit: ctx.budget,
                ..SccOptions::default()
            };
            match scc_classify_with(g, &opts)? {
                SccRun::Done(v) if v.class == *class && v.exhausted == *exhausted => {}
                SccRun::Done(v) => {
                    check.valid = false;
                    check.reason = Some(format!("rerun gives {:?}", v.class));
                }
                SccRun::Suspended(s) => {
                    return Err(Error::SearchBudgetExceeded { nodes: s.nodes }.into())
                }
            }
        }
    }
    let kind = match &cert {
        Certificate::MatchingCover { .. } => "matching_cover",
        Certificate::BfColoring { .. } => "bf_coloring",
        Certificate::Scc { .. } => "scc",
    };
    ctx.emit(json!({ "kind": kind, "graph_sha256": g.id(), "valid": check.valid, "reason": check.reason }))?;
    Ok(if check.valid {
        Outcome::Done
    } else {
        Outcome::VerifyFailed
    })
}
