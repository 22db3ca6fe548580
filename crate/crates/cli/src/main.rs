use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bbcage::bounds::{excess_of, improved_bound};
use bbcage::delete::{construct_named, NamedFamily};
use bbcage::designs::{design_load, far_partners, steiner_truncate, sts_generate};
use bbcage::export::{export, import, GraphFormat};
use bbcage::polygons::{gq_q4, gq_q5, hexagon_split_cayley};
use bbcage::prune::{
    default_prime, free_edge_branch_graph, gamma_f_graph, induced_branch_graph, t2_slab_graph, ag2_girth6_graph,
    MooreTreeAnchor,
};
use bbcage::table::{table1, PublishedExcess};
use bbcage::{BipartiteGraph, Error, Field, IncidenceStructure};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_DOMAIN: u8 = 2;
const EXIT_VIOLATION: u8 = 3;

#[derive(Parser)]
#[command(name = "bbcage", version, about = "Bipartite biregular cages from finite geometries")]
struct Cli {
    /// Increase log verbosity (repeatable).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and write it with its bounds report.
    Construct(ConstructArgs),
    /// Measure a graph file and check expectations.
    Verify(VerifyArgs),
    /// Evaluate the Moore bound and the improved lower bound.
    Bounds {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        girth: u32,
    },
    /// Recompute the polygon table for each prime power.
    Table1 {
        #[arg(long = "q", required = true)]
        q: Vec<u32>,
        /// Emit JSON rows instead of a text table.
        #[arg(long)]
        json: bool,
        /// Skip building graphs for the measured-order check.
        #[arg(long)]
        no_measure: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Edge {
    Auto,
    Lex,
}

#[derive(Clone, Copy, ValueEnum)]
enum Host {
    Q4,
    Q5,
    Hexagon,
}

#[derive(clap::Args)]
struct ConstructArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: Option<u32>,
    /// Number of points of the Steiner triple system to generate.
    #[arg(long)]
    v: Option<u32>,
    /// Design file to truncate instead of a generated triple system.
    #[arg(long)]
    design: Option<PathBuf>,
    /// Design point to delete.
    #[arg(long, default_value_t = 0)]
    point: u32,
    #[arg(long)]
    m1: Option<u32>,
    #[arg(long)]
    n1: Option<u32>,
    /// Polygon hosting branch-prune and gamma-f.
    #[arg(long, value_enum, default_value = "q4")]
    host: Host,
    #[arg(long, value_enum, default_value = "auto")]
    edge: Edge,
    /// Exchange the roles of the anchor edge's endpoints.
    #[arg(long)]
    dual: bool,
    #[arg(long, default_value = "graph6")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    expect_m: Option<u32>,
    #[arg(long)]
    expect_n: Option<u32>,
    #[arg(long)]
    expect_girth: Option<u32>,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_violation() { EXIT_VIOLATION } else { EXIT_DOMAIN };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_DOMAIN, message: message.into() }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();
    let result = match cli.command {
        Command::Construct(args) => construct(&args),
        Command::Verify(args) => verify(&args),
        Command::Bounds { m, n, girth } => bounds(m, n, girth),
        Command::Table1 { q, json, no_measure } => print_table(&q, json, !no_measure),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn write_target(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))?;
            Ok(())
        }
    }
}

fn required(value: Option<u32>, flag: &str, family: &str) -> CliResult<u32> {
    value.ok_or_else(|| usage(format!("family {family} requires --{flag}")))
}

fn field_for(args: &ConstructArgs) -> CliResult<Field> {
    Ok(Field::of_order(required(args.q, "q", &args.family)?)?)
}

fn host_structure(host: Host, field: &Field) -> CliResult<IncidenceStructure> {
    Ok(match host {
        Host::Q4 => gq_q4(field)?,
        Host::Q5 => gq_q5(field)?,
        Host::Hexagon => hexagon_split_cayley(field)?,
    })
}

fn anchor_for(host: &BipartiteGraph, dual: bool) -> CliResult<MooreTreeAnchor> {
    let anchor = MooreTreeAnchor::lex_first(host)?;
    Ok(if dual { anchor.dual() } else { anchor })
}

fn build(args: &ConstructArgs) -> CliResult<BipartiteGraph> {
    let family = args.family.as_str();
    if let Ok(named) = family.parse::<NamedFamily>() {
        return Ok(construct_named(named, &field_for(args)?)?);
    }
    let graph = match family {
        "q4" | "q5" | "hexagon" => {
            let host = match family {
                "q4" => Host::Q4,
                "q5" => Host::Q5,
                _ => Host::Hexagon,
            };
            let mut g = BipartiteGraph::levi(&host_structure(host, &field_for(args)?)?)?;
            g.origin = format!("{family}(q={})", args.q.unwrap_or_default());
            g
        }
        "branch-prune" => {
            let field = field_for(args)?;
            let m1 = required(args.m1, "m1", family)?;
            let n1 = required(args.n1, "n1", family)?;
            let s = host_structure(args.host, &field)?;
            let free_edge = matches!(args.edge, Edge::Auto)
                && matches!(args.host, Host::Q4 | Host::Q5)
                && s.measured_order().is_some_and(|(a, b)| a >= 3 && b >= 3)
                && !args.dual;
            if free_edge {
                free_edge_branch_graph(&s, m1, n1)?
            } else {
                let host = BipartiteGraph::levi(&s)?;
                induced_branch_graph(&host, &anchor_for(&host, args.dual)?, m1, n1)?
            }
        }
        "gamma-f" => {
            let s = host_structure(args.host, &field_for(args)?)?;
            let host = BipartiteGraph::levi(&s)?;
            gamma_f_graph(&host, &anchor_for(&host, args.dual)?)?
        }
        "t2-slab" => {
            let m1 = required(args.m1, "m1", family)?;
            let n1 = required(args.n1, "n1", family)?;
            let p = args.q.unwrap_or_else(|| default_prime(m1, n1));
            t2_slab_graph(&Field::of_order(p)?, m1, n1, None)?
        }
        "ag2-girth6" => {
            let m1 = required(args.m1, "m1", family)?;
            let n1 = required(args.n1, "n1", family)?;
            ag2_girth6_graph(&field_for(args)?, m1, n1)?
        }
        "steiner-cage" => {
            let design = match (&args.design, args.v) {
                (Some(path), None) => {
                    let file = fs::File::open(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
                    design_load(BufReader::new(file))?
                }
                (None, Some(v)) => sts_generate(v)?,
                _ => return Err(usage("steiner-cage requires exactly one of --v and --design")),
            };
            let g = steiner_truncate(&design, args.point)?;
            far_partners(&g)?;
            g
        }
        other => return Err(usage(format!("unknown family '{other}'"))),
    };
    Ok(graph)
}

fn construct(args: &ConstructArgs) -> CliResult<()> {
    let format: GraphFormat = args.format.parse()?;
    let graph = build(args)?;
    log::info!("{}: {} + {} vertices", graph.origin, graph.n_a(), graph.n_b());
    let report = excess_of(&graph)?;
    let graph_text = export(&graph, format)?;
    let report_text = report.to_json();
    write_target(args.out.as_deref(), &graph_text)?;
    match (&args.report, &args.out) {
        (Some(path), _) => write_target(Some(path), &report_text)?,
        (None, Some(_)) => write_target(None, &report_text)?,
        (None, None) => eprint!("{report_text}"),
    }
    Ok(())
}

fn verify(args: &VerifyArgs) -> CliResult<()> {
    let text = fs::read_to_string(&args.input).map_err(|e| usage(format!("cannot read {}: {e}", args.input.display())))?;
    let (graph, _) = import(&text)?;
    let (deg_a, deg_b) = graph.degrees();
    let girth = graph.girth();
    let diameter = graph.diameter().ok();
    let report = match graph.biregular_degrees() {
        Some(_) if girth.is_some() => Some(excess_of(&graph)?),
        _ => None,
    };
    let biregular = graph.biregular_degrees().map(|(a, b)| (a.min(b), a.max(b)));
    let mut mismatches = Vec::new();
    let mut expect = |name: &str, want: Option<u32>, got: Option<u32>| {
        if let Some(w) = want {
            if got != Some(w) {
                mismatches.push(format!("expected {name} {w}, measured {got:?}"));
            }
        }
    };
    expect("m", args.expect_m, biregular.map(|d| d.0));
    expect("n", args.expect_n, biregular.map(|d| d.1));
    expect("girth", args.expect_girth, girth);
    let out = json!({
        "order": graph.order(),
        "class_sizes": [graph.n_a(), graph.n_b()],
        "degrees": [deg_a, deg_b],
        "edges": graph.num_edges(),
        "connected": graph.is_connected(),
        "girth": girth,
        "diameter": diameter,
        "report": report,
        "expectations_met": mismatches.is_empty(),
    });
    let mut text = serde_json::to_string_pretty(&out).expect("value serializes");
    text.push('\n');
    write_target(None, &text)?;
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure { code: EXIT_VIOLATION, message: mismatches.join("; ") })
    }
}

fn bounds(m: u32, n: u32, girth: u32) -> CliResult<()> {
    write_target(None, &improved_bound(m, n, girth)?.to_json())
}

fn print_table(qs: &[u32], as_json: bool, measure: bool) -> CliResult<()> {
    let rows = table1(qs, measure)?;
    let text = if as_json {
        let mut s = serde_json::to_string_pretty(&serde_json::to_value(&rows).expect("rows serialize"))
            .expect("value serializes");
        s.push('\n');
        s
    } else {
        let mut s = String::from("# row\tq\tm+1\tn+1\t2r\t|F|/(m+n+1)\tB/(m+n+1)\texcess\tpublished excess\tmeasured\tflags\n");
        for r in &rows {
            let published = match r.excess_published {
                PublishedExcess::Exact(e) => e.to_string(),
                PublishedExcess::Leading { coefficient, exponent } => format!("~{coefficient}q^{exponent}"),
            };
            let measured = match (r.measured_order, r.measured_matches()) {
                (Some(o), Some(true)) => format!("{o} ok"),
                (Some(o), _) => format!("{o} MISMATCH"),
                _ => "-".into(),
            };
            let flags = if r.flags.is_empty() { "-".to_string() } else { r.flags.join("; ") };
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                r.row,
                r.q,
                r.m + 1,
                r.n + 1,
                r.girth,
                r.f_over,
                r.moore_over,
                r.excess,
                published,
                measured,
                flags
            ));
        }
        s
    };
    write_target(None, &text)
}
