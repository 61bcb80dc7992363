//! Command-line surface: color graphs, verify colorings, generate
//! instances, query the exact oracle, and benchmark the engine.
//!
//! Exit codes: 0 success; 1 failed verification or a generation or
//! oracle failure; 2 unreadable or malformed input; 3 coloring engine
//! failure. Machine output (assignments, graphs, JSON, CSV) goes to
//! standard output, everything else to standard error.

use std::io::Read;
use std::process::ExitCode;
use std::time::Instant;

use brooks::coloring::ColoringCheck;
use brooks::io::{
    parse_coloring, parse_dimacs, parse_edge_list, write_coloring_lines, write_dimacs,
    write_edge_list,
};
use brooks::testkit::cases::generate_case_instance;
use brooks::testkit::gen::{gnp, named, random_regular};
use brooks::testkit::oracle::chromatic_number_budgeted;
use brooks::{color_graph, validate_coloring, AlgoChoice, ColorOptions, Graph};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "brooks", version, about = "Delta-coloring of graphs via Brooks' theorem")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Color a graph; prints `s <vertex> <color>` lines or JSON.
    Color {
        /// Input path, or '-' for standard input.
        input: String,
        /// Input format; inferred from the extension when omitted.
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
        algorithm: AlgoArg,
        /// Record per-step events; they land on standard error, or under
        /// "trace" with --json.
        #[arg(long)]
        trace: bool,
        /// Print the full result as one JSON object.
        #[arg(long)]
        json: bool,
        /// Accepted for scripting uniformity; the pipeline is
        /// deterministic and ignores it.
        #[arg(long, env = "BROOKS_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Check a coloring file against a graph; exit 1 on a violation.
    Verify {
        graph: String,
        /// Coloring as `s <vertex> <color>` lines or `{"k",..,"colors":[..]}` JSON.
        coloring: String,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Generate a graph and print it.
    Gen {
        #[command(subcommand)]
        kind: GenCmd,
    },
    /// Exact chromatic number by oracle search (exponential; small graphs).
    Chromatic {
        input: String,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Search-node budget; unlimited when omitted.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Time the engine on random regular graphs; CSV on standard output.
    Bench {
        #[arg(long)]
        delta: usize,
        /// Comma-separated ascending vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = AlgoArg::Auto)]
        algorithm: AlgoArg,
        #[arg(long, env = "BROOKS_SEED", default_value_t = 0)]
        seed: u64,
        /// Runs per size; the per-size summary row is their median.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// Random d-regular graph from the pairing model.
    Regular {
        n: usize,
        d: usize,
        #[arg(long, env = "BROOKS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Dimacs)]
        format: FormatArg,
    },
    /// Gnp random graph: independent edge coin flips.
    Gnp {
        n: usize,
        p: f64,
        #[arg(long, env = "BROOKS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Dimacs)]
        format: FormatArg,
    },
    /// A graph from the named library (petersen, prism, bowtie, k33,
    /// complete(c), cycle(c)).
    Named {
        name: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Dimacs)]
        format: FormatArg,
    },
    /// An instance that drives the engine down a documented branch.
    Case {
        case: String,
        #[arg(long, env = "BROOKS_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = FormatArg::Dimacs)]
        format: FormatArg,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Dimacs,
    Edgelist,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    A,
    B,
    Greedy,
    Auto,
}

impl From<AlgoArg> for AlgoChoice {
    fn from(a: AlgoArg) -> AlgoChoice {
        match a {
            AlgoArg::A => AlgoChoice::A,
            AlgoArg::B => AlgoChoice::B,
            AlgoArg::Greedy => AlgoChoice::Greedy,
            AlgoArg::Auto => AlgoChoice::Auto,
        }
    }
}

/// (exit code, message for standard error)
type Failure = (u8, String);

fn fail(code: u8, msg: impl Into<String>) -> Failure {
    (code, msg.into())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.cmd {
        Cmd::Color {
            input,
            format,
            algorithm,
            trace,
            json,
            seed: _,
        } => cmd_color(&input, format, algorithm, trace, json),
        Cmd::Verify {
            graph,
            coloring,
            format,
        } => cmd_verify(&graph, &coloring, format),
        Cmd::Gen { kind } => cmd_gen(kind),
        Cmd::Chromatic {
            input,
            format,
            budget,
        } => cmd_chromatic(&input, format, budget),
        Cmd::Bench {
            delta,
            sizes,
            algorithm,
            seed,
            repeats,
        } => cmd_bench(delta, &sizes, algorithm, seed, repeats),
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| fail(2, format!("reading standard input: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| fail(2, format!("reading {path}: {e}")))
    }
}

fn infer_format(path: &str, flag: Option<FormatArg>) -> Result<FormatArg, Failure> {
    if let Some(f) = flag {
        return Ok(f);
    }
    let ext = std::path::Path::new(path)
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("");
    match ext {
        "col" | "dimacs" => Ok(FormatArg::Dimacs),
        "edges" | "edgelist" | "txt" => Ok(FormatArg::Edgelist),
        _ => Err(fail(
            2,
            format!("cannot infer format of {path:?}; pass --format"),
        )),
    }
}

fn load_graph(path: &str, flag: Option<FormatArg>) -> Result<Graph, Failure> {
    let format = infer_format(path, flag)?;
    let text = read_input(path)?;
    let parsed = match format {
        FormatArg::Dimacs => parse_dimacs(&text),
        FormatArg::Edgelist => parse_edge_list(&text),
    };
    parsed.map_err(|e| fail(2, format!("parsing {path}: {e}")))
}

fn write_graph(g: &Graph, format: FormatArg) -> String {
    match format {
        FormatArg::Dimacs => write_dimacs(g),
        FormatArg::Edgelist => write_edge_list(g),
    }
}

fn cmd_color(
    input: &str,
    format: Option<FormatArg>,
    algorithm: AlgoArg,
    trace: bool,
    json: bool,
) -> Result<u8, Failure> {
    let g = load_graph(input, format)?;
    let result = color_graph(&g, algorithm.into(), &ColorOptions { trace })
        .map_err(|e| fail(3, e.to_string()))?;
    if json {
        let line = serde_json::to_string(&result).expect("result serializes");
        println!("{line}");
        return Ok(0);
    }
    if trace {
        for ev in result.trace.as_deref().unwrap_or(&[]) {
            eprintln!("{} {:?} {}", ev.step, ev.vertices, ev.note);
        }
    }
    print!("{}", write_coloring_lines(&result.coloring));
    let classes: Vec<String> = result
        .components
        .iter()
        .map(|c| format!("{:?} via {}", c.class, c.algorithm))
        .collect();
    eprintln!(
        "palette {}; {} component{}: {}; fallbacks {}",
        result.palette,
        result.components.len(),
        if result.components.len() == 1 { "" } else { "s" },
        classes.join(", "),
        result.fallbacks
    );
    Ok(0)
}

fn cmd_verify(
    graph_path: &str,
    coloring_path: &str,
    format: Option<FormatArg>,
) -> Result<u8, Failure> {
    let g = load_graph(graph_path, format)?;
    let text = read_input(coloring_path)?;
    let c = parse_coloring(&text, g.n())
        .map_err(|e| fail(2, format!("parsing {coloring_path}: {e}")))?;
    match validate_coloring(&g, &c, true) {
        ColoringCheck::Ok => Ok(0),
        ColoringCheck::Violation(u, v) => {
            println!("violation: edge ({u}, {v}) has color {} at both ends", c.get(u));
            Ok(1)
        }
        ColoringCheck::Uncolored(v) => {
            println!("violation: vertex {v} is uncolored");
            Ok(1)
        }
    }
}

fn cmd_gen(kind: GenCmd) -> Result<u8, Failure> {
    let (graph, format) = match kind {
        GenCmd::Regular { n, d, seed, format } => (
            random_regular(n, d, seed).map_err(|e| fail(1, e.to_string()))?,
            format,
        ),
        GenCmd::Gnp { n, p, seed, format } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(fail(2, format!("p = {p} is not a probability")));
            }
            (gnp(n, p, seed), format)
        }
        GenCmd::Named { name, format } => {
            (named(&name).map_err(|e| fail(1, e.to_string()))?, format)
        }
        GenCmd::Case { case, seed, format } => (
            generate_case_instance(&case, seed).map_err(|e| fail(1, e.to_string()))?,
            format,
        ),
    };
    print!("{}", write_graph(&graph, format));
    Ok(0)
}

fn cmd_chromatic(
    input: &str,
    format: Option<FormatArg>,
    budget: Option<u64>,
) -> Result<u8, Failure> {
    let g = load_graph(input, format)?;
    let chi = chromatic_number_budgeted(&g, budget).map_err(|e| fail(1, e.to_string()))?;
    println!("{chi}");
    Ok(0)
}

fn cmd_bench(
    delta: usize,
    sizes: &[usize],
    algorithm: AlgoArg,
    seed: u64,
    repeats: usize,
) -> Result<u8, Failure> {
    if sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail(2, "sizes must be strictly ascending"));
    }
    if repeats == 0 {
        return Err(fail(2, "repeats must be positive"));
    }
    println!("n,m,delta,algorithm,wall_time_ns,edges_examined,path_edge_examinations,valid");
    for &n in sizes {
        let mut rows: Vec<(usize, u64, u64, u64, &'static str)> = Vec::new();
        for rep in 0..repeats {
            let run_seed = seed
                ^ (n as u64).wrapping_mul(0x9e3779b97f4a7c15)
                ^ (rep as u64).wrapping_mul(0xd1b54a32d192ed03);
            let g = match random_regular(n, delta, run_seed) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("generation failed for n={n} seed={run_seed}: {e}");
                    continue;
                }
            };
            let start = Instant::now();
            let result = color_graph(&g, algorithm.into(), &ColorOptions { trace: false })
                .map_err(|e| fail(3, e.to_string()))?;
            let wall = start.elapsed().as_nanos() as u64;
            let valid = validate_coloring(&g, &result.coloring, true).is_ok();
            if !valid {
                return Err(fail(3, format!("invalid coloring at n={n} seed={run_seed}")));
            }
            let tag = result
                .components
                .first()
                .map(|c| c.algorithm)
                .unwrap_or("direct");
            let instr = &result.instrumentation;
            println!(
                "{n},{},{delta},{tag},{wall},{},{},true",
                g.m(),
                instr.edges_examined,
                instr.path_edge_examinations
            );
            rows.push((
                g.m(),
                wall,
                instr.edges_examined,
                instr.path_edge_examinations,
                tag,
            ));
        }
        if !rows.is_empty() {
            let med = |mut xs: Vec<u64>| {
                xs.sort_unstable();
                xs[(xs.len() - 1) / 2]
            };
            let m_med = med(rows.iter().map(|r| r.0 as u64).collect());
            let wall_med = med(rows.iter().map(|r| r.1).collect());
            let ee_med = med(rows.iter().map(|r| r.2).collect());
            let pee_med = med(rows.iter().map(|r| r.3).collect());
            println!("{n},{m_med},{delta},median,{wall_med},{ee_med},{pee_med},true");
        }
    }
    Ok(0)
}
