//! Command-line surface. Exit codes: 0 success, 1 verification failure
//! (a graph that is not k-critical, a failed selftest, or a conjecture
//! counterexample), 2 usage or operational error. Output is deterministic:
//! identical invocations produce byte-identical bytes unless --timing is
//! given.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::construct::{
    construct_conjecture, construct_g1, construct_g2, construct_g2_step,
    construct_g2_step_unchecked, construct_negative,
};
use crate::error::Error;
use crate::graph::BipartiteGraph;
use crate::params::{
    derive_params, enumerate_from_a, enumerate_from_b, enumerate_from_cd, enumerate_from_m,
    enumerate_from_n, enumerate_from_xy, ParamSet,
};
use crate::search::{
    conjecture_scan, solve_biregular, solve_exhaustive, Certificate, Objective,
    DEFAULT_SEARCH_BUDGET,
};
use crate::selftest;
use crate::verify::{
    is_k_critical_deficiency, is_k_critical_deletion, is_k_critical_tilde, Method, Verdict,
    DEFAULT_DELETION_BUDGET,
};

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("kcbg: {err}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::Params { cmd: ParamsCmd::Enum(args) } => cmd_params_enum(args),
        Cmd::Construct(args) => cmd_construct(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Conjecture(args) => cmd_conjecture(args),
        Cmd::Selftest => {
            let failures = selftest::run_battery(&mut io::stdout());
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

#[derive(Parser)]
#[command(
    name = "kcbg",
    version,
    about = "k-critical bipartite graphs: enumerate parameters, build \
             constructions, verify, and solve the edge-minimization problem"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Work with the admissible parameter family.
    Params {
        #[command(subcommand)]
        cmd: ParamsCmd,
    },
    /// Build a named construction and emit it.
    Construct(ConstructArgs),
    /// Verify k-criticality of a graph read from an edge-list file.
    Verify(VerifyArgs),
    /// Minimize (e, max U-degree, max V-degree) for an order (n, m).
    Solve(SolveArgs),
    /// Check the rounded-up construction on every non-integral case.
    Conjecture(ConjectureArgs),
    /// Run the cross-module invariant battery.
    Selftest,
}

#[derive(Subcommand)]
enum ParamsCmd {
    /// Enumerate every admissible parameter set sharing one key.
    Enum(EnumArgs),
}

#[derive(Args)]
struct EnumArgs {
    /// Which parameters the key values fix.
    #[arg(long, value_enum)]
    from: FromKey,
    /// Key values: x y for --from xy, c d for --from cd, one value otherwise.
    #[arg(required = true)]
    values: Vec<i64>,
    /// Largest family index for the infinite xy and cd families.
    #[arg(long, default_value_t = 5)]
    l_max: i64,
}

#[derive(Debug, Copy, Clone, ValueEnum)]
enum FromKey {
    Xy,
    Cd,
    M,
    A,
    B,
    N,
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    n: i64,
    #[arg(long)]
    m: i64,
    /// Step multiplier, used by --kind g2-step only (must divide x).
    #[arg(long, default_value_t = 1)]
    s: i64,
    /// Accept a g2-step step that does not divide x; criticality is then
    /// not guaranteed (a warning goes to stderr).
    #[arg(long)]
    allow_any_step: bool,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Edges)]
    format: Format,
}

#[derive(Debug, Copy, Clone, ValueEnum)]
enum Kind {
    G1,
    G2,
    G2Step,
    Negative,
    Conjecture,
}

#[derive(Debug, Copy, Clone, ValueEnum)]
enum Format {
    Edges,
    Dot,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Edge-list input file, or - for stdin.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::All)]
    method: MethodArg,
    /// Deletion-oracle budget: the largest C(n, k) it will attempt.
    #[arg(long, default_value_t = DEFAULT_DELETION_BUDGET)]
    budget: u64,
    /// Include wall-clock milliseconds in the report (off by default so
    /// identical runs stay byte-identical).
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Deficiency,
    Deletion,
    Tilde,
    All,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    n: i64,
    #[arg(long)]
    m: i64,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Work-unit budget for exhaustive mode.
    #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
    budget: u64,
    /// Include wall-clock milliseconds in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Copy, Clone, ValueEnum)]
enum Mode {
    Biregular,
    Exhaustive,
}

#[derive(Args)]
struct ConjectureArgs {
    #[arg(long)]
    n_max: i64,
    /// Deletion-oracle budget per case; cases over budget keep the
    /// deficiency verdict only.
    #[arg(long, default_value_t = DEFAULT_DELETION_BUDGET)]
    budget: u64,
}

fn cmd_params_enum(args: EnumArgs) -> Result<i32, Error> {
    let sets = match (args.from, args.values.as_slice()) {
        (FromKey::Xy, &[x, y]) => enumerate_from_xy(x, y, args.l_max)?,
        (FromKey::Cd, &[c, d]) => enumerate_from_cd(c, d, args.l_max)?,
        (FromKey::M, &[m]) => enumerate_from_m(m)?,
        (FromKey::A, &[a]) => enumerate_from_a(a)?,
        (FromKey::B, &[b]) => enumerate_from_b(b)?,
        (FromKey::N, &[n]) => enumerate_from_n(n)?,
        (FromKey::Xy | FromKey::Cd, v) => {
            return Err(Error::InvalidParams(format!(
                "--from {} takes exactly two values, got {}",
                args.from.to_possible_value().unwrap().get_name(),
                v.len()
            )))
        }
        (_, v) => {
            return Err(Error::InvalidParams(format!(
                "--from {} takes exactly one value, got {}",
                args.from.to_possible_value().unwrap().get_name(),
                v.len()
            )))
        }
    };
    print!("{}", params_table(&sets));
    Ok(0)
}

fn params_table(sets: &[ParamSet]) -> String {
    let mut out = format!(
        "{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}\n",
        "n", "m", "k", "a", "b", "c", "d", "x", "y", "p"
    );
    for p in sets {
        out.push_str(&format!(
            "{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}{:>6}\n",
            p.n, p.m, p.k, p.a, p.b, p.c, p.d, p.x, p.y, p.p
        ));
    }
    out.push_str(&format!("({} parameter sets)\n", sets.len()));
    out
}

fn cmd_construct(args: ConstructArgs) -> Result<i32, Error> {
    let (graph, params) = match args.kind {
        Kind::Conjecture => (construct_conjecture(args.n, args.m)?, None),
        kind => {
            let p = derive_params(args.n, args.m)?;
            let g = match kind {
                Kind::G1 => construct_g1(&p),
                Kind::G2 => construct_g2(&p),
                Kind::G2Step => {
                    if args.allow_any_step {
                        if args.s < 1 {
                            return Err(Error::InvalidStep { s: args.s, x: p.x });
                        }
                        if p.x % args.s != 0 {
                            eprintln!(
                                "kcbg: warning: step {} does not divide x = {}; \
                                 criticality is not guaranteed",
                                args.s, p.x
                            );
                        }
                        construct_g2_step_unchecked(&p, args.s)
                    } else {
                        construct_g2_step(&p, args.s)?
                    }
                }
                Kind::Negative => construct_negative(&p)?,
                Kind::Conjecture => unreachable!(),
            };
            (g, Some(p))
        }
    };
    let kind_name = match args.kind {
        Kind::G1 => "g1",
        Kind::G2 => "g2",
        Kind::G2Step => "g2-step",
        Kind::Negative => "negative",
        Kind::Conjecture => "conjecture",
    };
    let text = match args.format {
        Format::Edges => format_edges(&graph),
        Format::Dot => format_dot(&graph),
        Format::Json => {
            let report = GraphReport {
                kind: kind_name,
                n: graph.n(),
                m: graph.m(),
                parameters: params.as_ref(),
                edge_count: graph.edge_count(),
                edges: graph.edges(),
            };
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct GraphReport<'a> {
    kind: &'a str,
    n: usize,
    m: usize,
    parameters: Option<&'a ParamSet>,
    edge_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    m: usize,
    k: usize,
    objective: Objective,
    method: Method,
    is_k_critical: bool,
    witness: Option<Vec<usize>>,
    neighborhood_size: Option<usize>,
    timing_ms: Option<u128>,
}

fn verify_report(g: &BipartiteGraph, verdict: Verdict, timing_ms: Option<u128>) -> VerifyReport {
    let prof = g.degree_profile();
    let (witness, neighborhood_size) = match verdict.witness {
        Some(w) => (Some(w.b), Some(w.neighborhood_size)),
        None => (None, None),
    };
    VerifyReport {
        n: g.n(),
        m: g.m(),
        k: g.n() - g.m(),
        objective: Objective {
            e: g.edge_count(),
            delta_u: prof.max_u,
            delta_v: prof.max_v,
        },
        method: verdict.method,
        is_k_critical: verdict.is_k_critical,
        witness,
        neighborhood_size,
        timing_ms,
    }
}

fn cmd_verify(args: VerifyArgs) -> Result<i32, Error> {
    let g = read_graph(&args.input)?;
    let methods = match args.method {
        MethodArg::All => vec![MethodArg::Deficiency, MethodArg::Deletion, MethodArg::Tilde],
        one => vec![one],
    };
    let mut reports = Vec::new();
    for m in methods {
        let start = Instant::now();
        let verdict = match m {
            MethodArg::Deficiency => is_k_critical_deficiency(&g)?,
            MethodArg::Deletion => is_k_critical_deletion(&g, args.budget)?,
            MethodArg::Tilde => is_k_critical_tilde(&g)?,
            MethodArg::All => unreachable!(),
        };
        let timing_ms = args.timing.then(|| start.elapsed().as_millis());
        reports.push(verify_report(&g, verdict, timing_ms));
    }
    let text = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    }
    .expect("report serializes");
    println!("{text}");
    if !reports
        .windows(2)
        .all(|w| w[0].is_k_critical == w[1].is_k_critical)
    {
        eprintln!("kcbg: verification methods disagree");
        return Ok(1);
    }
    Ok(if reports[0].is_k_critical { 0 } else { 1 })
}

#[derive(Serialize)]
struct SolveReport {
    n: i64,
    m: i64,
    mode: &'static str,
    objective: Objective,
    certificate: Certificate,
    optimal_count: usize,
    edges: Vec<(usize, usize)>,
    timing_ms: Option<u128>,
}

fn cmd_solve(args: SolveArgs) -> Result<i32, Error> {
    let start = Instant::now();
    let (mode, result) = match args.mode {
        Mode::Biregular => ("biregular", solve_biregular(args.n, args.m)?),
        Mode::Exhaustive => ("exhaustive", solve_exhaustive(args.n, args.m, args.budget)?),
    };
    let report = SolveReport {
        n: args.n,
        m: args.m,
        mode,
        objective: result.objective,
        certificate: result.certificate,
        optimal_count: result.optimal_count,
        edges: result.graph.edges(),
        timing_ms: args.timing.then(|| start.elapsed().as_millis()),
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    print!("{text}");
    Ok(0)
}

fn cmd_conjecture(args: ConjectureArgs) -> Result<i32, Error> {
    if args.n_max < 3 {
        return Err(Error::InvalidParams("--n-max must be at least 3".into()));
    }
    let report = conjecture_scan(args.n_max, args.budget);
    print!("{}", report.summary());
    Ok(if report.all_pass() { 0 } else { 1 })
}

/// Edge-list format: first line `n m`, then one `i j` pair per line,
/// ascending by i then j, newline-terminated, no comments.
pub fn format_edges(g: &BipartiteGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (i, j) in g.edges() {
        out.push_str(&format!("{i} {j}\n"));
    }
    out
}

pub fn format_dot(g: &BipartiteGraph) -> String {
    let mut out = String::from("graph {\n");
    for i in 0..g.n() {
        out.push_str(&format!("  u{i};\n"));
    }
    for j in 0..g.m() {
        out.push_str(&format!("  v{j};\n"));
    }
    for (i, j) in g.edges() {
        out.push_str(&format!("  u{i} -- v{j};\n"));
    }
    out.push_str("}\n");
    out
}

pub fn parse_edge_list(text: &str) -> Result<BipartiteGraph, Error> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let (n, m) = parse_pair(header, 1)?;
    let mut edges = Vec::new();
    for (idx, line) in lines.enumerate() {
        edges.push(parse_pair(line, idx + 2)?);
    }
    BipartiteGraph::build(n, m, &edges)
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), Error> {
    let mut it = line.split_whitespace();
    let mut next = |what| {
        it.next()
            .ok_or_else(|| Error::Parse(format!("line {lineno}: missing {what}")))?
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("line {lineno}: bad {what} in {line:?}")))
    };
    let a = next("first index")?;
    let b = next("second index")?;
    if it.next().is_some() {
        return Err(Error::Parse(format!(
            "line {lineno}: expected two integers, got {line:?}"
        )));
    }
    Ok((a, b))
}

fn read_graph(path: &Path) -> Result<BipartiteGraph, Error> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Io(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?
    };
    parse_edge_list(&text)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
