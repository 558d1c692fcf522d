//! The `rainbow-sat` command line.
//!
//! Exit codes: 0 for a definitive answer, 1 for usage or input errors, 2
//! when a budget left something undecided.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cnf::{decode_assignment, encode, encode_compact, formula_to_dimacs, parse_model, Encoding, RainbowBlock};
use crate::coloring::{is_rainbow_free, EdgeColoring};
use crate::constructions::{
    build_c4_construction, build_c5_construction, build_c6_construction, build_fixture, c4_edge_count,
    c5_edge_count, c6_edge_count, ConstructionResult, Fixture,
};
use crate::dimacs_path::{decide_via_dimacs, Engine};
use crate::error::{Error, Result};
use crate::graph::{EdgeList, Graph};
use crate::graph6::{parse_graph6, to_graph6};
use crate::interval::color_interval;
use crate::maxfree::max_cycle_free_subgraph;
use crate::patterns::detect_forbidden_patterns;
use crate::saturation::{
    audit_structural_conditions, check_rainbow_saturated_with, sat_star, verify_lemma_traps, SaturationOptions,
    Tri,
};
use crate::search::{search, Budget, SearchConfig, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "rainbow-sat", version, about = "Rainbow cycle saturation toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Wall-time budget per search, in seconds.
    #[arg(long, global = true, value_parser = positive_f64)]
    pub time_limit: Option<f64>,
    /// Node budget per search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub node_limit: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,
    /// Drop timing fields so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub deterministic: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the main output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Graph6,
    Dot,
    Dimacs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    C4,
    C5,
    C6,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum EngineArg {
    Backtrack,
    /// Literal CNF through DIMACS and CaDiCaL.
    Cnf,
    /// Compact CNF through DIMACS and CaDiCaL.
    Compact,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Backtrack => Engine::Backtrack,
            EngineArg::Cnf => Engine::Cnf,
            EngineArg::Compact => Engine::CompactCnf,
        }
    }
}

/// Where the input graph comes from. Exactly one source is required.
#[derive(Args, Debug, Clone, Default)]
pub struct GraphArgs {
    /// Graph in graph6.
    #[arg(long, group = "source")]
    pub graph6: Option<String>,
    /// File whose first non-empty line is a graph6 string.
    #[arg(long, group = "source")]
    pub input: Option<PathBuf>,
    /// One of core, core+T1, H, F.
    #[arg(long, group = "source", value_parser = Fixture::from_str)]
    pub fixture: Option<Fixture>,
    /// Construction family; needs --n.
    #[arg(long, group = "source", value_enum, requires = "n")]
    pub target: Option<Target>,
    /// Vertex count for --target.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a construction or fixture with its witness coloring.
    Construct {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Check a coloring (JSON map edge index -> color) for properness and rainbow copies.
    VerifyColoring {
        #[command(flatten)]
        graph: GraphArgs,
        /// Cycle length; implied by --target and fixtures.
        #[arg(long)]
        k: Option<usize>,
        /// JSON file mapping edge index to color.
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Search for a proper coloring without a rainbow C_k.
    Color {
        #[command(flatten)]
        graph: GraphArgs,
        /// Cycle length; implied by --target and fixtures.
        #[arg(long)]
        k: Option<usize>,
        /// Require exactly this many colors, all used.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        colors: Option<u64>,
        /// Comma-separated; with several engines their verdicts must agree.
        #[arg(long, value_enum, value_delimiter = ',', default_value = "backtrack")]
        engine: Vec<EngineArg>,
    },
    /// Decide every color count up to --c-max.
    ColorInterval {
        #[command(flatten)]
        graph: GraphArgs,
        /// Cycle length; implied by --target and fixtures.
        #[arg(long)]
        k: Option<usize>,
        /// Largest color count to decide.
        #[arg(long)]
        c_max: usize,
        #[arg(long, value_enum, default_value_t = EngineArg::Backtrack)]
        engine: EngineArg,
    },
    /// Decide rainbow C_k-saturation.
    CheckSaturated {
        #[command(flatten)]
        graph: GraphArgs,
        /// Cycle length; implied by --target and fixtures.
        #[arg(long)]
        k: Option<usize>,
        /// Skip pattern certificates.
        #[arg(long)]
        no_patterns: bool,
        /// Re-check pattern certificates by search on small hosts.
        #[arg(long)]
        audit: bool,
        #[arg(long, value_enum, default_value_t = EngineArg::Backtrack)]
        engine: EngineArg,
    },
    /// Minimum edge count of a saturated graph on n vertices.
    SatStar {
        /// Vertex count, at most 7.
        #[arg(long)]
        n: usize,
        /// Cycle length.
        #[arg(long)]
        k: usize,
    },
    /// Forbidden neighborhood patterns at each apex.
    Patterns {
        #[command(flatten)]
        graph: GraphArgs,
        /// Only this apex; all vertices otherwise.
        #[arg(long)]
        apex: Option<usize>,
    },
    /// Largest C_k-free spanning subgraph.
    MaxFree {
        #[command(flatten)]
        graph: GraphArgs,
        /// Cycle length; implied by --target and fixtures.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Write the CNF encoding as DIMACS.
    ExportCnf {
        #[command(flatten)]
        graph: GraphArgs,
        /// Cycle length; implied by --target and fixtures.
        #[arg(long)]
        k: Option<usize>,
        /// Palette size.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        colors: u64,
        /// Every color used and one color per edge.
        #[arg(long)]
        exact: bool,
        /// Emit the compact form instead of the literal one.
        #[arg(long)]
        compact: bool,
        /// JSON mapping of variables to (edge, color).
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Decode a solver model into a verified coloring.
    DecodeModel {
        #[command(flatten)]
        graph: GraphArgs,
        /// Cycle length; implied by --target and fixtures.
        #[arg(long)]
        k: Option<usize>,
        /// Palette size the formula was built with.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        colors: u64,
        /// The formula was exported with --exact.
        #[arg(long)]
        exact: bool,
        /// The formula was exported with --compact.
        #[arg(long)]
        compact: bool,
        /// Solver output with `v` lines, or bare literals.
        #[arg(long)]
        model: PathBuf,
    },
    /// Structural conditions of saturated graphs, or the four neighborhood traps.
    Audit {
        #[command(flatten)]
        graph: GraphArgs,
        /// Check the four trap graphs instead of an input graph.
        #[arg(long)]
        lemma_traps: bool,
    },
}

fn positive_f64(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

/// What a subcommand produced.
struct Outcome {
    json: Value,
    /// Text for non-JSON formats, when the command supports them.
    text: Option<String>,
    unknown: bool,
}

impl Outcome {
    fn json(json: Value) -> Self {
        Outcome {
            json,
            text: None,
            unknown: false,
        }
    }
}

/// Parses `args` (including the program name) and runs. Output goes to
/// `out` unless `--output` is given; errors go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => match emit(&cli.global, outcome, out) {
            Ok(code) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(global: &GlobalArgs, outcome: Outcome, out: &mut dyn Write) -> Result<i32> {
    let body = match (global.format, outcome.text) {
        (Format::Json, _) => {
            let mut json = outcome.json;
            if global.deterministic {
                strip_timing(&mut json);
            }
            let mut s = serde_json::to_string_pretty(&json)?;
            s.push('\n');
            s
        }
        (_, Some(text)) => text,
        (f, None) => {
            return Err(Error::Precondition(format!(
                "format {f:?} is not available for this command"
            )))
        }
    };
    match &global.output {
        Some(path) => std::fs::write(path, body)?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(if outcome.unknown { EXIT_UNKNOWN } else { EXIT_OK })
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

fn budget(global: &GlobalArgs) -> Budget {
    Budget {
        max_nodes: global.node_limit,
        max_millis: global
            .time_limit
            .map(|s| Duration::from_secs_f64(s).as_millis().max(1) as u64),
    }
}

struct Input {
    graph: Graph,
    /// Cycle length implied by the source, if any.
    k: Option<usize>,
    construction: Option<ConstructionResult>,
}

fn load(args: &GraphArgs) -> Result<Input> {
    if let Some(s) = &args.graph6 {
        return Ok(Input {
            graph: parse_graph6(s)?,
            k: None,
            construction: None,
        });
    }
    if let Some(path) = &args.input {
        return Ok(Input {
            graph: read_graph6_file(path)?,
            k: None,
            construction: None,
        });
    }
    let construction = if let Some(f) = args.fixture {
        build_fixture(f)?
    } else if let Some(t) = args.target {
        let n = args
            .n
            .ok_or_else(|| Error::Precondition("--target needs --n".into()))?;
        match t {
            Target::C4 => build_c4_construction(n)?,
            Target::C5 => build_c5_construction(n)?,
            Target::C6 => build_c6_construction(n)?,
        }
    } else {
        return Err(Error::Precondition(
            "no input graph: give one of --graph6, --input, --fixture, --target".into(),
        ));
    };
    Ok(Input {
        graph: construction.graph.clone(),
        k: Some(construction.k),
        construction: Some(construction),
    })
}

fn read_graph6_file(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path)?;
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| Error::Precondition(format!("{} has no graph6 line", path.display())))?;
    parse_graph6(line)
}

/// Reconciles an explicit `--k` with the one implied by the input.
fn cycle_length(input: &Input, k: Option<usize>) -> Result<usize> {
    let k = match (k, input.k) {
        (Some(a), Some(b)) if a != b => {
            return Err(Error::Precondition(format!(
                "--k {a} is inconsistent with the input, which targets C_{b}"
            )))
        }
        (Some(a), _) | (None, Some(a)) => a,
        (None, None) => return Err(Error::Precondition("--k is required for this input".into())),
    };
    if k < 3 {
        return Err(Error::Precondition(format!("cycle length must be at least 3, got {k}")));
    }
    Ok(k)
}

fn graph_json(g: &Graph) -> Result<Value> {
    Ok(json!({
        "n": g.n(),
        "edge_count": g.edge_count(),
        "graph6": to_graph6(g)?,
        "edges": EdgeList::from(g).edges,
    }))
}

/// DOT rendering, edges labelled by color when a coloring is given.
pub fn to_dot(g: &Graph, coloring: Option<&EdgeColoring>, labels: Option<&[String]>) -> String {
    let mut s = String::from("graph G {\n");
    for v in 0..g.n() {
        match labels {
            Some(l) => {
                let _ = writeln!(s, "  {v} [label=\"{v}\\n{}\"];", l[v]);
            }
            None => {
                let _ = writeln!(s, "  {v};");
            }
        }
    }
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        match coloring {
            Some(c) => {
                let _ = writeln!(s, "  {u} -- {v} [label=\"{}\"];", c.color(e));
            }
            None => {
                let _ = writeln!(s, "  {u} -- {v};");
            }
        }
    }
    s.push_str("}\n");
    s
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let global = &cli.global;
    if global.threads > 1 {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(global.threads as usize)
            .build_global();
    }
    let b = budget(global);
    match &cli.command {
        Command::Construct { graph } => construct(graph, global),
        Command::VerifyColoring { graph, k, coloring } => {
            let input = load(graph)?;
            let k = cycle_length(&input, *k)?;
            let map = serde_json::from_str(&std::fs::read_to_string(coloring)?)?;
            let c = EdgeColoring::from_json_map(&map, input.graph.edge_count())?;
            let check = is_rainbow_free(&input.graph, &c, k)?;
            Ok(Outcome::json(json!({
                "k": k,
                "verified": check.proper && check.rainbow_free,
                "check": check,
            })))
        }
        Command::Color {
            graph,
            k,
            colors,
            engine,
        } => {
            let input = load(graph)?;
            let k = cycle_length(&input, *k)?;
            color(&input.graph, k, colors.map(|c| c as usize), engine, b)
        }
        Command::ColorInterval {
            graph,
            k,
            c_max,
            engine,
        } => {
            let input = load(graph)?;
            let k = cycle_length(&input, *k)?;
            let r = color_interval(&input.graph, k, *c_max, b, (*engine).into())?;
            let unknown = !r.is_complete();
            Ok(Outcome {
                json: json!({
                    "members": r.members,
                    "unknown": r.unknown,
                    "complete": r.is_complete(),
                    "max": r.max(),
                    "report": r,
                }),
                text: None,
                unknown,
            })
        }
        Command::CheckSaturated {
            graph,
            k,
            no_patterns,
            audit,
            engine,
        } => {
            let input = load(graph)?;
            let k = cycle_length(&input, *k)?;
            let opts = SaturationOptions {
                budget: b,
                patterns: !no_patterns,
                audit: *audit,
                stop_early: false,
                parallel: global.threads > 1,
                engine: (*engine).into(),
            };
            let r = check_rainbow_saturated_with(&input.graph, k, &opts)?;
            Ok(Outcome {
                json: json!({
                    "is_saturated": r.is_saturated,
                    "non_edges": r.per_nonedge.len(),
                    "pattern_certified": r.pattern_certified(),
                    "unknown_non_edges": r.unknown_nonedges(),
                    "report": r,
                }),
                text: None,
                unknown: r.is_saturated == Tri::Unknown,
            })
        }
        Command::SatStar { n, k } => {
            let r = sat_star(*n, *k, b)?;
            let audits: Vec<Value> = if *k == 4 {
                r.witnesses
                    .iter()
                    .map(|w| -> Result<Value> {
                        let v = audit_structural_conditions(&parse_graph6(w)?);
                        Ok(json!({ "graph6": w, "violations": v }))
                    })
                    .collect::<Result<_>>()?
            } else {
                Vec::new()
            };
            let unknown = r.value.is_none() && r.levels.iter().any(|l| l.unknown > 0);
            let text = r.witnesses.iter().map(|w| format!("{w}\n")).collect();
            Ok(Outcome {
                json: json!({ "result": r, "audits": audits }),
                text: Some(text),
                unknown,
            })
        }
        Command::Patterns { graph, apex } => {
            let input = load(graph)?;
            let g = &input.graph;
            let apexes: Vec<usize> = match apex {
                Some(v) if *v >= g.n() => {
                    return Err(Error::Precondition(format!("apex {v} is not a vertex")))
                }
                Some(v) => vec![*v],
                None => (0..g.n()).collect(),
            };
            let hits: Vec<_> = apexes
                .iter()
                .flat_map(|&v| detect_forbidden_patterns(g, v))
                .collect();
            Ok(Outcome::json(json!({ "hits": hits })))
        }
        Command::MaxFree { graph, k } => {
            let input = load(graph)?;
            let k = cycle_length(&input, *k)?;
            let r = max_cycle_free_subgraph(&input.graph, k)?;
            Ok(Outcome {
                json: json!({
                    "k": k,
                    "best_count": r.best_count,
                    "witness": graph_json(&r.witness)?,
                    "selected": r.selected,
                    "stats": r.stats,
                }),
                text: Some(match global.format {
                    Format::Dot => to_dot(&r.witness, None, None),
                    _ => format!("{}\n", to_graph6(&r.witness)?),
                }),
                unknown: false,
            })
        }
        Command::ExportCnf {
            graph,
            k,
            colors,
            exact,
            compact,
            sidecar,
        } => {
            let input = load(graph)?;
            let k = cycle_length(&input, *k)?;
            let f = formula(&input.graph, k, *colors as usize, *exact, *compact)?;
            if let Some(path) = sidecar {
                std::fs::write(path, serde_json::to_string_pretty(&f.sidecar())?)?;
            }
            let dimacs = formula_to_dimacs(&f);
            Ok(Outcome {
                json: json!({
                    "num_vars": f.num_vars,
                    "num_clauses": f.clauses.len(),
                    "counts": f.counts,
                    "dimacs": dimacs,
                }),
                text: Some(dimacs),
                unknown: false,
            })
        }
        Command::DecodeModel {
            graph,
            k,
            colors,
            exact,
            compact,
            model,
        } => {
            let input = load(graph)?;
            let k = cycle_length(&input, *k)?;
            let f = formula(&input.graph, k, *colors as usize, *exact, *compact)?;
            let lits = parse_model(&std::fs::read_to_string(model)?)?;
            let c = decode_assignment(&f, &lits)?;
            Ok(Outcome::json(json!({
                "verified": true,
                "distinct_colors": c.distinct_colors(),
                "coloring": c,
            })))
        }
        Command::Audit { graph, lemma_traps } => {
            if *lemma_traps {
                let traps = verify_lemma_traps(b)?;
                let unknown = traps.iter().any(|t| t.status == Status::Unknown);
                let all_infeasible = traps.iter().all(|t| t.status == Status::Infeasible);
                return Ok(Outcome {
                    json: json!({ "all_infeasible": all_infeasible, "traps": traps }),
                    text: None,
                    unknown,
                });
            }
            let input = load(graph)?;
            let v = audit_structural_conditions(&input.graph);
            Ok(Outcome::json(json!({ "violations": v, "clean": v.is_empty() })))
        }
    }
}

fn construct(graph: &GraphArgs, global: &GlobalArgs) -> Result<Outcome> {
    if graph.graph6.is_some() || graph.input.is_some() {
        return Err(Error::Precondition("construct takes --target/--n or --fixture".into()));
    }
    let input = load(graph)?;
    let c = input.construction.expect("target or fixture");
    let g = &c.graph;
    let n = g.n();
    let expected = match (graph.target, graph.fixture) {
        (Some(Target::C4), _) => Some(c4_edge_count(n)),
        (Some(Target::C5), _) => Some(c5_edge_count(n)),
        (Some(Target::C6), _) => Some(c6_edge_count(n)?),
        _ => None,
    };
    let check = match &c.witness {
        Some(w) => Some(is_rainbow_free(g, w, c.k)?),
        None => None,
    };
    let roles: Vec<String> = c.roles.iter().map(|r| r.to_string()).collect();
    let text = match global.format {
        Format::Dot => Some(to_dot(g, c.witness.as_ref(), Some(&roles))),
        Format::Graph6 => Some(format!("{}\n", to_graph6(g)?)),
        _ => None,
    };
    Ok(Outcome {
        json: json!({
            "name": c.name,
            "k": c.k,
            "graph": graph_json(g)?,
            "expected_edge_count": expected,
            "roles": c.role_map(),
            "witness": c.witness,
            "witness_verified": check.as_ref().map(|r| r.proper && r.rainbow_free),
        }),
        text,
        unknown: false,
    })
}

fn formula(g: &Graph, k: usize, colors: usize, exact: bool, compact: bool) -> Result<crate::cnf::CnfFormula> {
    let encoding = if exact { Encoding::ExactColors } else { Encoding::Feasibility };
    if compact {
        encode_compact(g, k, colors, encoding)
    } else {
        encode(g, k, colors, encoding)
    }
}

fn color(g: &Graph, k: usize, colors: Option<usize>, engines: &[EngineArg], b: Budget) -> Result<Outcome> {
    let encoding = if colors.is_some() { Encoding::ExactColors } else { Encoding::Feasibility };
    let palette = colors.unwrap_or(g.edge_count());
    let mut runs = Vec::new();
    for &engine in engines {
        let verdict = match engine {
            EngineArg::Backtrack => {
                let config = match colors {
                    Some(c) => SearchConfig::exact(k, c, b),
                    None => SearchConfig::feasibility(g, k, b),
                };
                search(g, &config)?
            }
            EngineArg::Cnf => decide_via_dimacs(g, k, palette, encoding, RainbowBlock::Tuples, b)?,
            EngineArg::Compact => decide_via_dimacs(g, k, palette, encoding, RainbowBlock::PairEquality, b)?,
        };
        runs.push((Engine::from(engine), verdict));
    }
    let decided: Vec<Status> = runs
        .iter()
        .map(|(_, v)| v.status)
        .filter(|&s| s != Status::Unknown)
        .collect();
    if decided.windows(2).any(|w| w[0] != w[1]) {
        let all: Vec<_> = runs.iter().map(|(e, v)| (e, v.status)).collect();
        return Err(Error::Precondition(format!("engines disagree: {all:?}")));
    }
    let status = decided.first().copied().unwrap_or(Status::Unknown);
    let witness = runs.iter().find_map(|(_, v)| v.witness.clone());
    let per_engine: Vec<Value> = runs
        .iter()
        .map(|(e, v)| json!({ "engine": e, "verdict": v }))
        .collect();
    Ok(Outcome {
        json: json!({
            "status": status,
            "k": k,
            "palette": palette,
            "witness": witness,
            "engines": per_engine,
        }),
        text: None,
        unknown: status == Status::Unknown,
    })
}
