use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use floodgraph::dendrogram::{build_lake_dendrogram, dendrogram_flood};
use floodgraph::hydrostatics::{check_flooding, derive_edge_graph, lakes, node_lakes, Semantics};
use floodgraph::io::{
    parse_graph, parse_markers, parse_node_values, read_pgm, total_function, write_graph, write_node_values,
    write_pgm_binary, HEADER,
};
use floodgraph::reductions::{contract_flat_zones, local_flood};
use floodgraph::solvers::{
    berge_flood, ceiling_sources, core_expanding_flood, dijkstra_flood, marker_segmentation, prim_flood, Engine,
    Init, Schedule, SolverResult, SolverStats,
};
use floodgraph::ultrametric::{flooding_distance_all, mst};
use floodgraph::{grid_graph, Connectivity, FloodError, Graph, NodeFunction, Raster, Weight};

const CONNECTIVITY_VAR: &str = "FLOODGRAPH_CONNECTIVITY";

#[derive(Parser)]
#[command(name = "floodgraph", version, about = "Highest floodings of weighted graphs under a ceiling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Highest flooding below the ceiling.
    Flood {
        #[arg(long, value_enum, default_value_t = Algo::Dijkstra)]
        algo: Algo,
        #[arg(long, value_enum, default_value_t = SweepOrder::Jacobi)]
        schedule: SweepOrder,
        /// Print solver counters on stderr.
        #[arg(long)]
        stats: bool,
        /// Re-check the result and fail if it is not a valid flooding.
        #[arg(long)]
        validate_after: bool,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Watershed segmentation from markers.
    Segment {
        /// File of `<node> <label>` lines.
        #[arg(long)]
        markers: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Dijkstra)]
        engine: EngineArg,
        /// Also print the distance to the nearest marker.
        #[arg(long)]
        tau: bool,
        /// Write the label map as a PGM (grid inputs only).
        #[arg(long)]
        label_pgm: Option<PathBuf>,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Flooding distances from one node.
    Fldist {
        #[arg(long)]
        from: String,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimum spanning forest, as a graph file.
    Mst {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dendrogram of lakes, optionally flooded under the ceiling.
    Dendro {
        #[arg(long)]
        flood: bool,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Lakes of a flooding (given with --tau, or the highest one below the ceiling).
    Lakes {
        #[arg(long)]
        tau: Option<PathBuf>,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Checks whether a function is a valid flooding.
    Validate {
        #[arg(long)]
        tau: PathBuf,
        /// Defaults to edge semantics when the graph has edge weights.
        #[arg(long, value_enum)]
        semantics: Option<SemanticsArg>,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Merges flat zones of the ground into super-nodes.
    Contract {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Flooding level of a single node, computed locally.
    Localflood {
        #[arg(long)]
        node: String,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Graph file, or a P2/P5 grey map.
    #[arg(long)]
    graph: PathBuf,
    /// Ceiling: a graph file with `omega=` attributes, `<node> <value>` lines,
    /// or a grey map of the same size as the input image.
    #[arg(long)]
    ceiling: Option<PathBuf>,
    /// Grid connectivity for image input (default from FLOODGRAPH_CONNECTIVITY, else 4).
    #[arg(long)]
    connectivity: Option<u32>,
    /// Derive edge weights `f_p ∨ f_q` when the input only has node levels.
    #[arg(long)]
    derive_edges: bool,
}

#[derive(Args)]
struct OutputArgs {
    /// Output file (stdout if omitted).
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Berge,
    Dijkstra,
    Prim,
    Core,
    Dendro,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepOrder {
    Jacobi,
    GaussSeidel,
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Dijkstra,
    Prim,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Node,
    Edge,
}

/// Failure classes, mapped to exit codes.
#[derive(Debug)]
enum Failure {
    /// Bad input file or arguments.
    Usage(anyhow::Error),
    /// Input parsed but the request cannot be carried out on it.
    Domain(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

fn is_parse_error(e: &FloodError) -> bool {
    matches!(
        e,
        FloodError::Parse { .. }
            | FloodError::Pgm(_)
            | FloodError::BadWeight(_)
            | FloodError::DuplicateNode(_)
            | FloodError::SelfLoop(_)
            | FloodError::DuplicateEdge(_, _)
            | FloodError::DanglingEndpoint(_)
            | FloodError::NonFiniteEdgeWeight(_, _)
            | FloodError::Connectivity(_)
            | FloodError::EmptyRaster
            | FloodError::Io(_)
    )
}

fn domain(e: FloodError) -> Failure {
    if is_parse_error(&e) {
        Failure::Usage(e.into())
    } else {
        Failure::Domain(e.into())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> Outcome<Vec<u8>> {
    fs::read(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::Usage)
}

fn read_text(path: &Path) -> Outcome<String> {
    String::from_utf8(read(path)?).map_err(|_| Failure::Usage(anyhow!("{} is not UTF-8 text", path.display())))
}

fn in_file(path: &Path, e: FloodError) -> Failure {
    let usage = is_parse_error(&e);
    let err = anyhow::Error::from(e).context(format!("in {}", path.display()));
    if usage {
        Failure::Usage(err)
    } else {
        Failure::Domain(err)
    }
}

fn is_pgm(bytes: &[u8]) -> bool {
    matches!(bytes.get(..2), Some(b"P2") | Some(b"P5"))
}

struct Input {
    graph: Graph,
    ceiling: NodeFunction,
    /// Width and height when the input was an image.
    raster: Option<(usize, usize)>,
}

impl InputArgs {
    fn connectivity(&self) -> Outcome<Connectivity> {
        let value = match self.connectivity {
            Some(v) => v,
            None => match std::env::var(CONNECTIVITY_VAR) {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map_err(|_| Failure::Usage(anyhow!("{CONNECTIVITY_VAR} must be 4 or 8, got `{s}`")))?,
                Err(_) => 4,
            },
        };
        Connectivity::try_from(value).map_err(domain)
    }

    fn load(&self) -> Outcome<Input> {
        let bytes = read(&self.graph)?;
        let (graph, inline, raster) = if is_pgm(&bytes) {
            let image = read_pgm(&bytes).map_err(|e| in_file(&self.graph, e))?;
            let g = grid_graph(&image, self.connectivity()?).map_err(domain)?;
            (g, None, Some((image.width, image.height)))
        } else {
            let text = String::from_utf8(bytes)
                .map_err(|_| Failure::Usage(anyhow!("{} is not UTF-8 text", self.graph.display())))?;
            let file = parse_graph(&text).map_err(|e| in_file(&self.graph, e))?;
            (file.graph, file.ceiling, None)
        };
        let ceiling = match &self.ceiling {
            Some(path) => load_ceiling(path, &graph, raster)?,
            None => inline.unwrap_or_else(|| NodeFunction::constant(graph.node_count(), Weight::Top)),
        };
        Ok(Input {
            graph,
            ceiling,
            raster,
        })
    }
}

fn load_ceiling(path: &Path, g: &Graph, raster: Option<(usize, usize)>) -> Outcome<NodeFunction> {
    let bytes = read(path)?;
    if is_pgm(&bytes) {
        let image = read_pgm(&bytes).map_err(|e| in_file(path, e))?;
        return match raster {
            Some(dims) if dims == (image.width, image.height) => Ok(NodeFunction::new(image.data)),
            Some((w, h)) => Err(Failure::Usage(anyhow!(
                "ceiling image is {}x{}, input image is {w}x{h}",
                image.width,
                image.height
            ))),
            None => Err(Failure::Usage(anyhow!("an image ceiling needs an image input"))),
        };
    }
    let text = String::from_utf8(bytes).map_err(|_| Failure::Usage(anyhow!("{} is not UTF-8 text", path.display())))?;
    let first = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty());
    let values = if first == Some(HEADER) {
        let file = parse_graph(&text).map_err(|e| in_file(path, e))?;
        let omega = file
            .ceiling
            .ok_or_else(|| Failure::Usage(anyhow!("{} declares no `omega=` values", path.display())))?;
        let mut values = vec![None; g.node_count()];
        for p in file.graph.nodes() {
            let q = g.node_id(file.graph.name(p)).map_err(|e| in_file(path, e))?;
            values[q] = Some(omega[p]);
        }
        values
    } else {
        parse_node_values(&text, g).map_err(|e| in_file(path, e))?
    };
    Ok(values.into_iter().map(|v| v.unwrap_or(Weight::Top)).collect())
}

/// The graph with edge weights, deriving them from the ground if allowed.
fn edge_view(input: &Input, args: &InputArgs, what: &str) -> Outcome<Graph> {
    if input.graph.has_edge_weights() {
        return Ok(input.graph.clone());
    }
    if !input.graph.has_ground() {
        return Err(Failure::Domain(anyhow!("{what} needs edge weights or node levels")));
    }
    if !args.derive_edges {
        return Err(Failure::Domain(anyhow!(
            "{what} works on edge weights but the input only has node levels; \
             pass --derive-edges to use e_pq = f_p ∨ f_q"
        )));
    }
    derive_edge_graph(&input.graph).map_err(domain)
}

fn emit(output: &OutputArgs, text: &str) -> Outcome<()> {
    match &output.output {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))
            .map_err(Failure::Usage),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn node_id(g: &Graph, name: &str) -> Outcome<usize> {
    g.node_id(name).map_err(|e| Failure::Usage(e.into()))
}

fn print_stats(stats: &SolverStats) {
    eprintln!(
        "stats extractions={} stale={} sweeps={} relaxations={}",
        stats.extractions, stats.stale, stats.sweeps, stats.relaxations
    );
}

fn flood(input: &Input, args: &InputArgs, algo: Algo, schedule: SweepOrder) -> Outcome<(SolverResult, Graph, Semantics)> {
    let omega = &input.ceiling;
    if let Algo::Core = algo {
        let r = core_expanding_flood(&input.graph, omega).map_err(domain)?;
        return Ok((r, input.graph.clone(), Semantics::Node));
    }
    let g = edge_view(input, args, "this algorithm")?;
    let r = match algo {
        Algo::Berge => {
            let schedule = match schedule {
                SweepOrder::Jacobi => Schedule::Jacobi,
                SweepOrder::GaussSeidel => Schedule::GaussSeidelAlternating,
            };
            berge_flood(&g, omega, schedule)
        }
        Algo::Dijkstra => dijkstra_flood(&g, omega, &Init::AllFiniteCeiling),
        Algo::Prim => {
            let sources = ceiling_sources(omega);
            if sources.is_empty() {
                // Nothing drains anywhere: the flooding is the ceiling itself.
                Ok(SolverResult {
                    tau: omega.clone(),
                    labels: None,
                    order: Vec::new(),
                    stats: SolverStats::default(),
                })
            } else {
                prim_flood(&g, &sources)
            }
        }
        Algo::Dendro => build_lake_dendrogram(&g).and_then(|d| {
            Ok(SolverResult {
                tau: dendrogram_flood(&d, omega)?,
                labels: None,
                order: Vec::new(),
                stats: SolverStats::default(),
            })
        }),
        Algo::Core => unreachable!(),
    }
    .map_err(domain)?;
    Ok((r, g, Semantics::Edge))
}

fn run(cli: Cli) -> Outcome<()> {
    match cli.command {
        Command::Flood {
            algo,
            schedule,
            stats,
            validate_after,
            input: args,
            output,
        } => {
            let input = args.load()?;
            let (r, g, semantics) = flood(&input, &args, algo, schedule)?;
            if stats {
                print_stats(&r.stats);
            }
            if validate_after {
                let verdict = check_flooding(&g, &r.tau, semantics).map_err(domain)?;
                if let Some(v) = verdict.violations.first() {
                    return Err(Failure::Domain(anyhow!("result is not a valid flooding: {}", v.describe(&g, &r.tau))));
                }
                eprintln!("valid");
            }
            emit(&output, &write_node_values(&g, &r.tau))
        }
        Command::Segment {
            markers,
            engine,
            tau,
            label_pgm,
            input: args,
            output,
        } => {
            let input = args.load()?;
            let g = edge_view(&input, &args, "segmentation")?;
            let text = read_text(&markers)?;
            let markers = parse_markers(&text, &g).map_err(|e| in_file(&markers, e))?;
            let engine = match engine {
                EngineArg::Dijkstra => Engine::Dijkstra,
                EngineArg::Prim => Engine::Prim,
            };
            let r = marker_segmentation(&g, &markers, engine).map_err(domain)?;
            let labels = r.labels.expect("segmentation yields labels");
            if let Some(path) = label_pgm {
                let (width, height) = input
                    .raster
                    .ok_or_else(|| Failure::Usage(anyhow!("--label-pgm needs an image input")))?;
                let data = labels.iter().map(|&l| Weight::Finite(l)).collect();
                let raster = Raster::new(width, height, data).map_err(domain)?;
                let bytes = write_pgm_binary(&raster).map_err(domain)?;
                fs::write(&path, bytes)
                    .with_context(|| format!("cannot write {}", path.display()))
                    .map_err(Failure::Usage)?;
            }
            let mut out = String::new();
            for p in g.nodes() {
                if tau {
                    writeln!(out, "{} {} {}", g.name(p), labels[p], r.tau[p]).unwrap();
                } else {
                    writeln!(out, "{} {}", g.name(p), labels[p]).unwrap();
                }
            }
            emit(&output, &out)
        }
        Command::Fldist { from, input: args, output } => {
            let input = args.load()?;
            let g = edge_view(&input, &args, "fldist")?;
            let source = node_id(&g, &from)?;
            let d = flooding_distance_all(&g, source).map_err(domain)?;
            emit(&output, &write_node_values(&g, &d))
        }
        Command::Mst { input: args, output } => {
            let input = args.load()?;
            let g = edge_view(&input, &args, "mst")?;
            let tree = mst(&g, None).map_err(domain)?;
            emit(&output, &write_graph(&tree, None))
        }
        Command::Dendro {
            flood,
            input: args,
            output,
        } => {
            let input = args.load()?;
            let g = edge_view(&input, &args, "dendro")?;
            let d = build_lake_dendrogram(&g).map_err(domain)?;
            let mut out = String::new();
            for (i, c) in d.clusters().iter().enumerate() {
                let father = c.father.map_or("none".to_string(), |f| f.to_string());
                let leaves: Vec<&str> = c.leaves.iter().map(|&p| g.name(p)).collect();
                writeln!(out, "cluster {i} diam={} father={father} leaves={}", c.diam, leaves.join(",")).unwrap();
            }
            if flood {
                let tau = dendrogram_flood(&d, &input.ceiling).map_err(domain)?;
                out.push_str(&write_node_values(&g, &tau));
            }
            emit(&output, &out)
        }
        Command::Lakes { tau, input: args, output } => {
            let input = args.load()?;
            let g = &input.graph;
            let tau = match tau {
                Some(path) => read_function(&path, g)?,
                None => {
                    let edge = edge_view(&input, &args, "lakes without --tau")?;
                    dijkstra_flood(&edge, &input.ceiling, &Init::AllFiniteCeiling)
                        .map_err(domain)?
                        .tau
                }
            };
            let partition = if g.has_edge_weights() {
                lakes(g, &tau)
            } else {
                node_lakes(g, &tau)
            }
            .map_err(domain)?;
            emit(&output, &partition.report(g))
        }
        Command::Validate {
            tau,
            semantics,
            input: args,
            output,
        } => {
            let input = args.load()?;
            let g = &input.graph;
            let values = read_function(&tau, g)?;
            let semantics = match semantics {
                Some(SemanticsArg::Node) => Semantics::Node,
                Some(SemanticsArg::Edge) => Semantics::Edge,
                None if g.has_edge_weights() => Semantics::Edge,
                None => Semantics::Node,
            };
            let verdict = check_flooding(g, &values, semantics).map_err(domain)?;
            if verdict.is_valid() {
                return emit(&output, "valid\n");
            }
            let mut out = String::from("invalid\n");
            for v in &verdict.violations {
                writeln!(out, "{}", v.describe(g, &values)).unwrap();
            }
            emit(&output, &out)?;
            Err(Failure::Domain(anyhow!(
                "{} violation(s), first: {}",
                verdict.violations.len(),
                verdict.violations[0].describe(g, &values)
            )))
        }
        Command::Contract { input: args, output } => {
            let input = args.load()?;
            let k = contract_flat_zones(&input.graph, Some(&input.ceiling)).map_err(domain)?;
            let mut out = write_graph(&k.graph, k.ceiling.as_ref());
            for (s, block) in k.map.backward.iter().enumerate() {
                let members: Vec<&str> = block.iter().map(|&p| input.graph.name(p)).collect();
                writeln!(out, "block {} {}", k.graph.name(s), members.join(",")).unwrap();
            }
            emit(&output, &out)
        }
        Command::Localflood { node, input: args, output } => {
            let input = args.load()?;
            let p = node_id(&input.graph, &node)?;
            let level = local_flood(&input.graph, &input.ceiling, p).map_err(domain)?;
            emit(&output, &format!("{} {level}\n", input.graph.name(p)))
        }
    }
}

fn read_function(path: &Path, g: &Graph) -> Outcome<NodeFunction> {
    let text = read_text(path)?;
    let values = parse_node_values(&text, g).map_err(|e| in_file(path, e))?;
    total_function(values, g).map_err(|e| in_file(path, e))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let code = failure.code();
            let (Failure::Usage(e) | Failure::Domain(e)) = failure;
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
