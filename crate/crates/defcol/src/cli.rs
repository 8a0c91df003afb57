//! The `defcol` command line.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use defcol_core::bounds::{bound_report, BoundReport, WeightedCompatibleMatrix};
use defcol_core::colouring::check_clustered;
use defcol_core::families::complete;
use defcol_core::graph::strong_product;
use defcol_core::hoffman::{check_construction_lemma, diagnose_hoffman, HoffmanDiagnosis};
use defcol_core::solver::{chromatic, chromatic_bfold, fractional_chromatic, Limits, Outcome, DEFAULT_CAP};
use defcol_core::spectra::{spectrum, MatrixKind};
use defcol_core::transfer::{descend, TransferTrace};
use defcol_core::{Colouring, Graph, Mode};
use serde::Serialize;

use crate::error::{CliError, ExitCode};
use crate::input;
use crate::report::{render, GraphInfo};
use crate::sweep::{self, Family, SweepResult, SweepSpec};
use crate::weights;

#[derive(Debug, Parser)]
#[command(name = "defcol", version, about = "Improper and clustered colourings: spectra, bounds, exact values, diagnostics")]
pub struct Cli {
    /// Wall-clock limit per solve, in seconds.
    #[arg(long, global = true, value_name = "SECS")]
    pub timeout: Option<f64>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, value_name = "N")]
    pub jobs: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GraphArgs {
    /// Graph as a graph6 string.
    #[arg(long, value_name = "STR")]
    pub graph6: Option<String>,
    /// Edge-list file ("n m" header, then "u v" lines).
    #[arg(long, value_name = "PATH")]
    pub edgelist: Option<PathBuf>,
    /// Named family, e.g. `petersen`, `cycle,7`, `complete_bipartite,2,3`.
    #[arg(long, value_name = "NAME[,PARAMS]")]
    pub named: Option<String>,
}

impl GraphArgs {
    pub fn load(&self) -> Result<Graph, CliError> {
        match (&self.graph6, &self.edgelist, &self.named) {
            (Some(s), _, _) => input::from_graph6(s),
            (_, Some(p), _) => input::from_edgelist(p),
            (_, _, Some(n)) => input::named(n),
            _ => Err(CliError::usage("one of --graph6, --edgelist or --named is required")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Proper,
    Improper,
    Clustered,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Adjacency, Laplacian and signless Laplacian spectra.
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Every lower and upper bound on the d-improper chromatic number.
    Bounds {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(short, default_value_t = 0)]
        d: usize,
        /// Largest m for the eigenvalue-sum bounds.
        #[arg(short, default_value_t = 3)]
        m: usize,
        /// Extra weighted matrix for the inertia bound.
        #[arg(long, value_name = "PATH")]
        weights: Option<PathBuf>,
    },
    /// Exact chromatic numbers with a witness.
    Exact {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Proper)]
        mode: ModeArg,
        #[arg(short, default_value_t = 0)]
        d: usize,
        #[arg(short, default_value_t = 1)]
        t: usize,
        /// Colours per vertex (b-fold colouring).
        #[arg(short = 'b', long = "fold", value_name = "B")]
        b: Option<usize>,
        /// Fractional chromatic number instead of an integral one.
        #[arg(long, conflicts_with = "b")]
        fractional: bool,
    },
    /// Whether a d-improper colouring attains the Hoffman bound, and the
    /// structure equality forces.
    Diagnose {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(short, default_value_t = 0)]
        d: usize,
        /// Colours as a comma-separated list; an optimal colouring is computed when absent.
        #[arg(long, value_name = "LIST")]
        colouring: Option<String>,
        /// Treat the colouring as a proper Hoffman colouring and test its lift to G ⊠ K_{d+1}.
        #[arg(long)]
        lift: bool,
    },
    /// ℓ-clustered colouring of G from an ℓt-clustered colouring of G ⊠ K_t.
    Transfer {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(short, default_value_t = 2)]
        t: usize,
        #[arg(short, default_value_t = 1)]
        l: usize,
        /// Colouring of the product; an optimal one is computed when absent.
        #[arg(long, value_name = "LIST")]
        colouring: Option<String>,
    },
    /// Sweep χ(G) = χ^d(G ⊠ K_{d+1}) over a family of graphs.
    Conjecture {
        /// Named graphs (repeatable).
        #[arg(long, value_name = "NAME[,PARAMS]")]
        named: Vec<String>,
        /// graph6 strings (repeatable).
        #[arg(long, value_name = "STR")]
        graph6: Vec<String>,
        /// File with one graph6 string per line; `-` reads stdin.
        #[arg(long, value_name = "PATH", conflicts_with = "all_connected")]
        graph6_file: Option<PathBuf>,
        /// All connected graphs on at most N vertices.
        #[arg(long, value_name = "N")]
        all_connected: Option<usize>,
        /// Values of d: `1`, `1-2` or `0,2`.
        #[arg(short, default_value = "1", value_name = "RANGE")]
        d: String,
        /// Extra cluster sizes t to test `χ^t̲(G ⊠ K_t) = χ(G)`.
        #[arg(short, value_name = "RANGE")]
        t: Option<String>,
    },
}

/// What a run printed and how it ended.
#[derive(Debug)]
pub struct Execution {
    pub code: ExitCode,
    pub stdout: String,
    pub stderr: String,
}

struct Deadline(Option<Instant>);

impl Deadline {
    fn new(secs: Option<f64>) -> Result<Self, CliError> {
        match secs {
            None => Ok(Deadline(None)),
            Some(s) if s.is_finite() && s > 0.0 => Ok(Deadline(Some(Instant::now() + Duration::from_secs_f64(s)))),
            Some(s) => Err(CliError::usage(format!("timeout must be a positive number of seconds, got {s}"))),
        }
    }

    fn expired(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}

fn parse_colouring(text: &str) -> Result<Colouring, CliError> {
    let colours = text
        .split(',')
        .map(|s| s.trim().parse::<u32>().map_err(|_| CliError::usage(format!("`{s}` is not a colour"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Colouring::new(colours)?)
}

fn mode_of(mode: ModeArg, d: usize, t: usize) -> Mode {
    match mode {
        ModeArg::Proper => Mode::Proper,
        ModeArg::Improper => Mode::Improper(d),
        ModeArg::Clustered => Mode::Clustered(t),
    }
}

#[derive(Serialize)]
struct SpectrumBody {
    graph: GraphInfo,
    spectra: Vec<SpectrumEntry>,
}

#[derive(Serialize)]
struct SpectrumEntry {
    matrix: &'static str,
    values: Vec<f64>,
    /// distinct eigenvalues with multiplicities
    groups: Vec<(f64, usize)>,
}

#[derive(Serialize)]
struct BoundsBody {
    graph: GraphInfo,
    #[serde(flatten)]
    report: BoundReport,
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum ExactBody<W: Serialize> {
    Solved { graph: GraphInfo, mode: Mode, #[serde(skip_serializing_if = "Option::is_none")] b: Option<usize>, value: usize, witness: W, nodes_explored: u64 },
    Timeout { graph: GraphInfo, mode: Mode, #[serde(skip_serializing_if = "Option::is_none")] b: Option<usize>, lower: usize, upper: usize, best: W, nodes_explored: u64 },
}

#[derive(Serialize)]
struct FractionalBody {
    graph: GraphInfo,
    mode: Mode,
    status: &'static str,
    value: f64,
    rational: Option<(i64, u64)>,
    witness: Vec<(Vec<usize>, f64)>,
    maximal_sets: usize,
}

#[derive(Serialize)]
struct DiagnoseBody {
    graph: GraphInfo,
    colouring: Colouring,
    #[serde(flatten)]
    diagnosis: HoffmanDiagnosis,
    all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    lift_attains_bound: Option<bool>,
}

#[derive(Serialize)]
struct TransferBody {
    graph: GraphInfo,
    t: usize,
    l: usize,
    product_colouring: Colouring,
    product_colours: usize,
    colouring: Colouring,
    colours: usize,
    valid: bool,
    trace: TransferTrace,
}

#[derive(Serialize)]
struct TimeoutBody {
    graph: GraphInfo,
    status: &'static str,
}

struct Rendered {
    json: String,
    timed_out: bool,
}

fn done<T: Serialize>(command: &str, body: T, timed_out: bool) -> Result<Rendered, CliError> {
    Ok(Rendered { json: render(command, body)?, timed_out })
}

fn exact_body<W: Serialize>(graph: GraphInfo, mode: Mode, b: Option<usize>, out: Outcome<W>) -> (ExactBody<W>, bool) {
    match out {
        Outcome::Solved(r) => (
            ExactBody::Solved { graph, mode, b, value: r.value, witness: r.witness, nodes_explored: r.nodes_explored },
            false,
        ),
        Outcome::Timeout(p) => (
            ExactBody::Timeout { graph, mode, b, lower: p.lower, upper: p.upper, best: p.best, nodes_explored: p.nodes_explored },
            true,
        ),
    }
}

fn execute(cli: &Cli) -> Result<Rendered, CliError> {
    let deadline = Deadline::new(cli.timeout)?;
    let stop = || deadline.expired();
    let limits = Limits { cap: DEFAULT_CAP, node_limit: None, stop: Some(&stop) };
    match &cli.command {
        Command::Spectrum { graph } => {
            let g = graph.load()?;
            let spectra = [
                ("adjacency", MatrixKind::Adjacency),
                ("laplacian", MatrixKind::Laplacian),
                ("signless_laplacian", MatrixKind::SignlessLaplacian),
            ]
            .into_iter()
            .map(|(matrix, kind)| {
                let s = spectrum(&g, kind)?;
                Ok(SpectrumEntry { matrix, groups: s.groups(), values: s.values })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
            done("spectrum", SpectrumBody { graph: GraphInfo::of(&g), spectra }, false)
        }
        Command::Bounds { graph, d, m, weights: path } => {
            let g = graph.load()?;
            let mut extra: Vec<(String, WeightedCompatibleMatrix)> = Vec::new();
            if let Some(p) = path {
                extra.push(("weights".into(), weights::parse(&input::read_file(p)?, &g)?));
            }
            let report = bound_report(&g, *d, *m, &extra, &limits)?;
            done("bounds", BoundsBody { graph: GraphInfo::of(&g), report }, deadline.expired())
        }
        Command::Exact { graph, mode, d, t, b, fractional } => {
            let g = graph.load()?;
            let mode = mode_of(*mode, *d, *t);
            let info = GraphInfo::of(&g);
            if *fractional {
                let r = fractional_chromatic(&g, mode)?;
                let witness = r.witness.iter().map(|(s, w)| (s.to_vec(), *w)).collect();
                let body = FractionalBody {
                    graph: info,
                    mode,
                    status: "solved",
                    value: r.value,
                    rational: r.rational,
                    witness,
                    maximal_sets: r.maximal_sets,
                };
                return done("exact", body, false);
            }
            match b {
                Some(b) => {
                    let (body, timed_out) = exact_body(info, mode, Some(*b), chromatic_bfold(&g, *b, mode, &limits)?);
                    done("exact", body, timed_out)
                }
                None => {
                    let (body, timed_out) = exact_body(info, mode, None, chromatic(&g, mode, &limits)?);
                    done("exact", body, timed_out)
                }
            }
        }
        Command::Diagnose { graph, d, colouring, lift } => {
            let g = graph.load()?;
            let c = match colouring {
                Some(text) => parse_colouring(text)?,
                None => match chromatic(&g, Mode::Improper(*d), &limits)? {
                    Outcome::Solved(r) => r.witness,
                    Outcome::Timeout(_) => {
                        return done("diagnose", TimeoutBody { graph: GraphInfo::of(&g), status: "timeout" }, true)
                    }
                },
            };
            let diagnosis = diagnose_hoffman(&g, *d, &c)?;
            let lift_attains_bound = if *lift { Some(check_construction_lemma(&g, *d, &c)?) } else { None };
            let body = DiagnoseBody { graph: GraphInfo::of(&g), colouring: c, all_pass: diagnosis.all_pass(), diagnosis, lift_attains_bound };
            done("diagnose", body, false)
        }
        Command::Transfer { graph, t, l, colouring } => {
            let g = graph.load()?;
            if *t == 0 || *l == 0 {
                return Err(CliError::usage("t and l must be at least 1"));
            }
            let host = strong_product(&g, &complete(*t));
            let product_colouring = match colouring {
                Some(text) => parse_colouring(text)?,
                None => match chromatic(&host, Mode::Clustered(l * t), &limits)? {
                    Outcome::Solved(r) => r.witness,
                    Outcome::Timeout(_) => {
                        return done("transfer", TimeoutBody { graph: GraphInfo::of(&g), status: "timeout" }, true)
                    }
                },
            };
            let (out, trace) = descend(&g, &product_colouring, *t, *l)?;
            let valid = check_clustered(&g, &out, *l)?.is_valid();
            let body = TransferBody {
                graph: GraphInfo::of(&g),
                t: *t,
                l: *l,
                product_colours: product_colouring.num_colours(),
                product_colouring,
                colours: out.num_colours(),
                colouring: out,
                valid,
                trace,
            };
            done("transfer", body, false)
        }
        Command::Conjecture { named, graph6, graph6_file, all_connected, d, t } => {
            let family = match (graph6_file, all_connected) {
                (Some(p), None) if named.is_empty() && graph6.is_empty() => Family::Graph6File(p.clone()),
                (None, Some(n)) if named.is_empty() && graph6.is_empty() => Family::AllConnected { max_n: *n },
                (None, None) if !(named.is_empty() && graph6.is_empty()) => {
                    let mut gs = named.iter().map(|s| input::named(s)).collect::<Result<Vec<_>, _>>()?;
                    for s in graph6 {
                        gs.push(input::from_graph6(s)?);
                    }
                    Family::List(gs)
                }
                _ => {
                    return Err(CliError::usage(
                        "give either --named/--graph6 graphs, a --graph6-file, or --all-connected N",
                    ))
                }
            };
            let mut spec = SweepSpec::new(family, input::int_range(d)?);
            if let Some(t) = t {
                spec.ts = input::int_range(t)?;
            }
            if let Some(secs) = cli.timeout {
                if !(secs.is_finite() && secs > 0.0) {
                    return Err(CliError::usage(format!("timeout must be a positive number of seconds, got {secs}")));
                }
                spec.timeout = Duration::from_secs_f64(secs);
            }
            spec.jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            spec.out = cli.out.clone();
            let result: SweepResult = sweep::run(&spec)?;
            let timed_out = result.summary.timeouts > 0;
            done("conjecture", result, timed_out)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Execution { code: ExitCode::Success, stdout: text, stderr: String::new() }
                }
                _ => Execution { code: ExitCode::InputError, stdout: String::new(), stderr: text },
            };
        }
    };
    let fail = |e: CliError| Execution { code: ExitCode::InputError, stdout: String::new(), stderr: format!("error: {e}\n") };
    let rendered = match execute(&cli) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let code = if rendered.timed_out { ExitCode::Timeout } else { ExitCode::Success };
    match &cli.out {
        Some(path) => match std::fs::write(path, &rendered.json) {
            Ok(()) => Execution { code, stdout: String::new(), stderr: String::new() },
            Err(e) => fail(CliError::io(path.display().to_string(), e)),
        },
        None => Execution { code, stdout: rendered.json, stderr: String::new() },
    }
}
