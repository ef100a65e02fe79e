//! Command-line front end: argument parsing, generator specs, and the
//! dispatch from subcommands to the solver.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use wdd_core::{
    build_linext_graph, count_incomparable, diagonal_drawing, dimension_report, emit_drawing,
    enumerate_extensions, gen_antichain, gen_chain, gen_crown, gen_grid, gen_random_dag,
    led_report, make_drawing, minfip_heuristic, minfip_exact, parse_edge_list, solve_exact,
    transitive_closure, verify_bounds, BoundCheck, Dag, DrawingFormat, Error, SolveReport, DEFAULT_CAP,
    DEFAULT_MAX_DIM,
};

/// Node count and edge count the crown C3 extension graph is usually quoted with.
pub const REFERENCE_CROWN3_GRAPH: (usize, usize) = (61, 114);

#[derive(Debug, Parser)]
#[command(name = "wdd", version, about = "Weak dominance drawings and linear extension diameter")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph in edge-list format
    Gen(Options),
    /// Print vertex, edge, closure and incomparable-pair counts
    Analyze(Options),
    /// Draw the graph (diagonal by default, or --exact / --heuristic optimum)
    Draw(Options),
    /// Linear extension diameter
    Led(Options),
    /// Minimum number of falsely implied paths
    Minfip(Options),
    /// Poset dimension
    Dim(Options),
    /// Check the upper bounds on the minimum fip count
    Verify(Options),
    /// Export the linear extension graph
    Extgraph(Options),
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Generator: crown:K, chain:N, antichain:N, grid:R,C or random:N,P,SEED
    #[arg(long, value_name = "SPEC", conflicts_with = "input", required_unless_present = "input")]
    pub gen: Option<String>,
    /// Edge-list file
    #[arg(long, value_name = "FILE")]
    pub input: Option<PathBuf>,
    #[arg(long, conflicts_with = "heuristic")]
    pub exact: bool,
    #[arg(long)]
    pub heuristic: bool,
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    pub restarts: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Cap on enumerated linear extensions
    #[arg(long, env = "WDD_CAP", default_value_t = DEFAULT_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub cap: u64,
    /// Largest dimension the exact search tries
    #[arg(long, default_value_t = DEFAULT_MAX_DIM as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    pub max_dim: u64,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// coords|svg (draw), json (analyze, solvers), edgelist (gen, extgraph)
    #[arg(long)]
    pub format: Option<String>,
    /// Include per-phase timings in JSON reports
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Usage = 1,
    Input = 2,
    Cap = 3,
    BoundViolation = 4,
}

#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ExtensionCapExceeded { .. }
            | Error::StateCapExceeded { .. }
            | Error::DimExceedsMax { .. }
            | Error::TruncatedInput => ExitCode::Cap,
            Error::UnknownFormat(_) => ExitCode::Usage,
            _ => ExitCode::Input,
        };
        CliError { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> CliError {
    CliError { code: ExitCode::Usage, message: message.into() }
}

fn io_error(path: &Path, e: std::io::Error) -> CliError {
    CliError { code: ExitCode::Input, message: format!("{}: {e}", path.display()) }
}

/// Parses `crown:K`, `chain:N`, `antichain:N`, `grid:R,C` or `random:N,P,SEED`.
pub fn parse_generator_spec(text: &str) -> Result<Dag, Error> {
    let bad = || Error::BadSpec(text.to_string());
    let (kind, args) = text.split_once(':').ok_or_else(bad)?;
    let args: Vec<&str> = args.split(',').map(str::trim).collect();
    let int = |s: &str| s.parse::<usize>().map_err(|_| bad());
    match (kind, args.as_slice()) {
        ("crown", [k]) => match int(k)? {
            0 => Err(bad()),
            k => Ok(gen_crown(k)),
        },
        ("chain", [n]) => Ok(gen_chain(int(n)?)),
        ("antichain", [n]) => Ok(gen_antichain(int(n)?)),
        ("grid", [r, c]) => Ok(gen_grid(int(r)?, int(c)?)),
        ("random", [n, p, seed]) => {
            let p: f64 = p.parse().map_err(|_| bad())?;
            if !(0.0..=1.0).contains(&p) {
                return Err(bad());
            }
            let seed: u64 = seed.parse().map_err(|_| bad())?;
            Ok(gen_random_dag(int(n)?, p, seed))
        }
        _ => Err(bad()),
    }
}

fn load(opts: &Options) -> Result<Dag, CliError> {
    match (&opts.gen, &opts.input) {
        (Some(spec), None) => Ok(parse_generator_spec(spec)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
            Ok(parse_edge_list(&text)?)
        }
        _ => Err(usage("exactly one of --gen or --input is required")),
    }
}

/// Checks `--format` against the formats a subcommand supports; the first is
/// the default.
fn format<'a>(opts: &'a Options, allowed: &[&'a str]) -> Result<&'a str, CliError> {
    match opts.format.as_deref() {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Error::UnknownFormat(f.to_string()).into()),
    }
}

/// Documents produced by one run. The first goes to `--out` (or stdout);
/// extra documents carry their own path.
#[derive(Debug, Default)]
pub struct Outcome {
    pub primary: String,
    pub sidecars: Vec<(PathBuf, String)>,
    pub notes: Vec<String>,
    pub code: Option<ExitCode>,
}

impl Outcome {
    fn doc(primary: String) -> Self {
        Outcome { primary, ..Default::default() }
    }
}

fn report_json(report: &SolveReport, opts: &Options) -> String {
    report.to_json(opts.timings)
}

/// Output of `verify` for a computed check; exit code 4 when a bound fails.
pub fn verify_outcome(check: &BoundCheck) -> Outcome {
    let mut out = Outcome::doc(check.to_json());
    if !check.all_satisfied() {
        out.notes.push("bound violated".into());
        out.code = Some(ExitCode::BoundViolation);
    }
    out
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Gen(o) => {
            format(o, &["edgelist"])?;
            Ok(Outcome::doc(load(o)?.to_edge_list()))
        }
        Command::Analyze(o) => {
            let fmt = format(o, &["text", "json"])?;
            let g = load(o)?;
            let r = transitive_closure(&g);
            let (n, e, c, inc) = (g.n(), g.edge_count(), r.closure_edge_count(), count_incomparable(&r));
            let doc = if fmt == "json" {
                format!(
                    "{{\n  \"n\": {n},\n  \"edges\": {e},\n  \"closure_edges\": {c},\n  \"inc\": {inc}\n}}\n"
                )
            } else {
                format!("n {n}\nedges {e}\nclosure_edges {c}\ninc {inc}\n")
            };
            Ok(Outcome::doc(doc))
        }
        Command::Draw(o) => {
            let fmt: DrawingFormat = format(o, &["coords", "svg"])?.parse()?;
            let g = load(o)?;
            let drawing = if o.exact || o.heuristic {
                let report = if o.exact {
                    minfip_exact(&g, o.cap as usize)?
                } else {
                    minfip_heuristic(&g, o.restarts as usize, o.seed)
                };
                let (x, y) = report.optimal_pair.expect("solver returns a pair");
                make_drawing(&g, x, y)?
            } else {
                diagonal_drawing(&g)
            };
            let mut out = Outcome::doc(emit_drawing(&drawing, fmt));
            out.notes.push(format!("fips {}", drawing.fip_count()));
            Ok(out)
        }
        Command::Led(o) => {
            format(o, &["json"])?;
            let g = load(o)?;
            let report = if o.heuristic {
                minfip_heuristic(&g, o.restarts as usize, o.seed)
            } else {
                led_report(&g, o.cap as usize)?
            };
            Ok(Outcome::doc(report_json(&report, o)))
        }
        Command::Minfip(o) => {
            format(o, &["json"])?;
            let g = load(o)?;
            let report = if o.heuristic {
                minfip_heuristic(&g, o.restarts as usize, o.seed)
            } else {
                solve_exact(&g, o.cap as usize, o.max_dim as usize)?
            };
            Ok(Outcome::doc(report_json(&report, o)))
        }
        Command::Dim(o) => {
            format(o, &["json"])?;
            let g = load(o)?;
            let report = dimension_report(&g, o.cap as usize, o.max_dim as usize)?;
            Ok(Outcome::doc(report_json(&report, o)))
        }
        Command::Verify(o) => {
            format(o, &["json"])?;
            let g = load(o)?;
            let report = solve_exact(&g, o.cap as usize, o.max_dim as usize)?;
            let check = verify_bounds(&report).map_err(|_| {
                CliError::from(Error::DimExceedsMax {
                    max_dim: o.max_dim as usize,
                    lower_bound: o.max_dim as usize + 1,
                })
            })?;
            Ok(verify_outcome(&check))
        }
        Command::Extgraph(o) => {
            format(o, &["edgelist"])?;
            let g = load(o)?;
            let r = transitive_closure(&g);
            let cap = o.cap as usize;
            let e = enumerate_extensions(&r, cap);
            if e.is_truncated() {
                return Err(Error::ExtensionCapExceeded { cap }.into());
            }
            let lg = build_linext_graph(&e)?;
            let edges = lg.to_edge_list();
            let nodes = lg.to_node_table(g.labels());
            let mut out = match &o.out {
                Some(path) => {
                    let mut sidecar = path.clone().into_os_string();
                    sidecar.push(".nodes");
                    Outcome {
                        primary: edges,
                        sidecars: vec![(sidecar.into(), nodes)],
                        ..Default::default()
                    }
                }
                None => Outcome::doc(format!("# nodes\n{nodes}# edges\n{edges}")),
            };
            out.notes.push(format!("G(P): {} nodes, {} edges", lg.node_count(), lg.edge_count()));
            Ok(out)
        }
    }
}

fn options(cli: &Cli) -> &Options {
    match &cli.command {
        Command::Gen(o)
        | Command::Analyze(o)
        | Command::Draw(o)
        | Command::Led(o)
        | Command::Minfip(o)
        | Command::Dim(o)
        | Command::Verify(o)
        | Command::Extgraph(o) => o,
    }
}

/// Runs the command, writes its documents, and returns the process exit code.
pub fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = match run(cli) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return e.code as i32;
        }
    };
    let written = match &options(cli).out {
        Some(path) => fs::write(path, &outcome.primary).map_err(|e| io_error(path, e)),
        None => stdout.write_all(outcome.primary.as_bytes()).map_err(|e| io_error(Path::new("<stdout>"), e)),
    }
    .and_then(|_| {
        outcome
            .sidecars
            .iter()
            .try_for_each(|(p, doc)| fs::write(p, doc).map_err(|e| io_error(p, e)))
    });
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return e.code as i32;
    }
    for note in &outcome.notes {
        let _ = writeln!(stderr, "{note}");
    }
    outcome.code.unwrap_or(ExitCode::Ok) as i32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_specs() {
        let c = parse_generator_spec("crown:3").unwrap();
        assert_eq!((c.n(), c.edge_count()), (6, 6));
        assert_eq!(parse_generator_spec("chain:1").unwrap().n(), 1);
        assert_eq!(parse_generator_spec("antichain:4").unwrap().edge_count(), 0);
        assert_eq!(parse_generator_spec("grid:2,3").unwrap().n(), 6);
        let a = parse_generator_spec("random:6,0.4,7").unwrap();
        let b = parse_generator_spec("random:6,0.4,7").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n(), 6);
    }

    #[test]
    fn bad_generator_specs() {
        for spec in ["crown", "crown:0", "crown:x", "ring:4", "random:6,1.5,7", "random:6,0.4", "grid:2"] {
            assert_eq!(parse_generator_spec(spec), Err(Error::BadSpec(spec.into())), "{spec}");
        }
    }

    fn exec(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("wdd").chain(args.iter().copied())).unwrap();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = execute(&cli, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn analyze_crown() {
        let (code, out, _) = exec(&["analyze", "--gen", "crown:3"]);
        assert_eq!(code, 0);
        assert_eq!(out, "n 6\nedges 6\nclosure_edges 6\ninc 9\n");
    }

    #[test]
    fn format_checks() {
        let (code, _, err) = exec(&["draw", "--gen", "chain:2", "--format", "png"]);
        assert_eq!(code, ExitCode::Usage as i32);
        assert!(err.contains("png"));
        let (code, out, _) = exec(&["draw", "--gen", "chain:2"]);
        assert_eq!((code, out.as_str()), (0, "0 1 1\n1 2 2\n"));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exec(&["minfip", "--gen", "crown:0"]).0, 2);
        assert_eq!(exec(&["minfip", "--gen", "antichain:6", "--cap", "100"]).0, 3);
        assert_eq!(exec(&["dim", "--gen", "crown:3", "--max-dim", "2"]).0, 3);
        assert_eq!(exec(&["verify", "--gen", "crown:3"]).0, 0);
    }
}
