//! `critindep`: analysis, decomposition certificates, oracle cross-checks and
//! the preprocessing benchmark.
//!
//! Machine-readable output (JSON, CSV, graph text) goes to stdout; human
//! summaries go to stderr. Exit codes: 0 success, 1 failed self-check or
//! violations found, 2 unreadable or unparsable input, 3 search budget
//! exceeded (the partial result is still printed).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use critindep::audit::{all_graphs, audit_graph, AuditSummary, Tamper, INVARIANTS};
use critindep::bench::{corpus_seed, run_bench, write_csv, BenchConfig};
use critindep::generate::{self, Family};
use critindep::oracle::DEFAULT_NODE_BUDGET;
use critindep::report::{dump_graph, verify_report};
use critindep::{analyze, parse_graph, saturating_matching, serialize_graph, Format, Graph};

const EXIT_VIOLATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "critindep",
    version,
    about = "Critical independent sets and the independence decomposition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Graph file
    path: PathBuf,
    /// Input format; detected from the first line when omitted
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Command {
    /// Full analysis report as JSON
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Node budget for the exact search on the irreducible residual
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        exact_budget: u64,
        /// Compact single-line JSON instead of pretty-printed
        #[arg(long)]
        json: bool,
    },
    /// X, X^c, I_c and the matching of N(I_c) into I_c
    Decompose {
        #[command(flatten)]
        input: Input,
        /// Also write x.txt, x_complement.txt, critical_set.txt and matching.txt here
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Maximum independent set through the decomposition
    Mis {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        exact_budget: u64,
    },
    /// König–Egerváry recognition
    Ke {
        #[command(flatten)]
        input: Input,
    },
    /// Generate a graph
    Gen {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "edgelist")]
        format: Format,
    },
    /// Check every solver contract against the exhaustive oracle
    OracleCheck {
        #[arg(long)]
        n: usize,
        /// Number of random graphs, or `all-graphs` for every labelled graph on n vertices
        #[arg(long, default_value = "100")]
        count: String,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Corrupt the solver output to exercise the harness
        #[arg(long, hide = true)]
        plant_bug: bool,
    },
    /// MIS with and without decomposition preprocessing, as CSV
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.1)]
        p: f64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Random bipartite instances instead of G(n, p)
        #[arg(long)]
        bipartite: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Path,
    Cycle,
    Complete,
    Star,
    Er,
    Bipartite,
}

enum Failure {
    Parse(anyhow::Error),
    Other(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Other(e)
    }
}

fn load(input: &Input) -> Result<Graph, Failure> {
    let text = fs::read_to_string(&input.path)
        .with_context(|| format!("reading {}", input.path.display()))
        .map_err(Failure::Parse)?;
    let format = input.format.unwrap_or_else(|| Format::detect(&text));
    parse_graph(&text, format)
        .with_context(|| format!("parsing {}", input.path.display()))
        .map_err(Failure::Parse)
}

fn names(graph: &Graph, ids: &[usize]) -> Vec<String> {
    ids.iter().map(|&v| graph.vertex_name(v)).collect()
}

fn print(text: &str) -> anyhow::Result<()> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn analyze_cmd(input: &Input, budget: u64, compact: bool) -> Result<u8, Failure> {
    let graph = load(input)?;
    let analysis = analyze(&graph, budget);
    let report = &analysis.report;
    let violations = verify_report(&graph, report).map_err(anyhow::Error::from)?;
    print(&if compact {
        report.to_json()
    } else {
        report.to_json_pretty()
    })?;
    eprintln!(
        "n={} m={} d={} alpha'={} alpha={} class={} ke={}",
        report.n,
        report.m,
        report.d,
        report.alpha_prime,
        report.alpha.map_or("null".into(), |a| a.to_string()),
        report.classification,
        report.is_ke
    );
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("self-check failed: {v}");
        }
        return Ok(EXIT_VIOLATION);
    }
    if analysis.budget_exceeded() {
        eprintln!(
            "residual search exceeded budget; alpha >= {}",
            analysis.alpha_lower_bound.unwrap_or(report.alpha_prime)
        );
        return Ok(EXIT_BUDGET);
    }
    Ok(0)
}

fn write_list(dir: &Path, file: &str, lines: impl IntoIterator<Item = String>) -> anyhow::Result<()> {
    let mut text = String::new();
    for line in lines {
        text.push_str(&line);
        text.push('\n');
    }
    fs::write(dir.join(file), text).with_context(|| format!("writing {}", dir.join(file).display()))
}

fn decompose_cmd(input: &Input, out_dir: Option<&Path>) -> Result<u8, Failure> {
    let graph = load(input)?;
    let d = &critindep::decompose(&graph);
    let n_ic = critindep::neighborhood(&graph, d.critical_set());
    let matching: Vec<_> = saturating_matching(&graph, &n_ic, d.critical_set())
        .map_err(anyhow::Error::from)?
        .context("no matching of N(I_c) into I_c")?
        .pairs()
        .to_vec();
    let body = json!({
        "X": d.x().as_slice(),
        "X_complement": d.x_complement().as_slice(),
        "I_c": d.critical_set().as_slice(),
        "matching": matching,
        "X_names": names(&graph, d.x().as_slice()),
        "X_complement_names": names(&graph, d.x_complement().as_slice()),
        "I_c_names": names(&graph, d.critical_set().as_slice()),
        "matching_names": matching
            .iter()
            .map(|&(u, v)| [graph.vertex_name(u), graph.vertex_name(v)])
            .collect::<Vec<_>>(),
    });
    print(&serde_json::to_string_pretty(&body).map_err(anyhow::Error::from)?)?;
    eprintln!(
        "X = {{{}}}  X^c = {{{}}}",
        names(&graph, d.x().as_slice()).join(","),
        names(&graph, d.x_complement().as_slice()).join(",")
    );
    if let Some(dir) = out_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let ids = |s: &[usize]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>();
        write_list(dir, "x.txt", ids(d.x().as_slice()))?;
        write_list(dir, "x_complement.txt", ids(d.x_complement().as_slice()))?;
        write_list(dir, "critical_set.txt", ids(d.critical_set().as_slice()))?;
        write_list(dir, "matching.txt", matching.iter().map(|(u, v)| format!("{u} {v}")))?;
    }
    Ok(0)
}

fn mis_cmd(input: &Input, budget: u64) -> Result<u8, Failure> {
    let graph = load(input)?;
    match critindep::independence_number(&graph, budget) {
        Ok(solution) => {
            print(
                &json!({
                    "alpha": solution.alpha,
                    "set": solution.set.as_slice(),
                    "x_size": solution.decomposition.x().len(),
                    "residual_size": solution.decomposition.x_complement().len(),
                })
                .to_string(),
            )?;
            Ok(0)
        }
        Err(exceeded) => {
            print(
                &json!({
                    "alpha": null,
                    "lower_bound": exceeded.lower_bound,
                    "set": exceeded.best.as_slice(),
                    "x_size": exceeded.decomposition.x().len(),
                    "residual_size": exceeded.decomposition.x_complement().len(),
                })
                .to_string(),
            )?;
            eprintln!("{exceeded}");
            Ok(EXIT_BUDGET)
        }
    }
}

fn ke_cmd(input: &Input) -> Result<u8, Failure> {
    let graph = load(input)?;
    let d = critindep::decompose(&graph);
    print(
        &json!({
            "is_ke": d.is_konig_egervary(),
            "alpha_prime": d.critical_set().len(),
            "classification": d.classification(),
        })
        .to_string(),
    )?;
    Ok(0)
}

fn gen_cmd(kind: Kind, n: usize, p: f64, seed: u64, format: Format) -> Result<u8, Failure> {
    let family = match kind {
        Kind::Path => Family::Path,
        Kind::Cycle => Family::Cycle,
        Kind::Complete => Family::Complete,
        Kind::Star => Family::Star,
        Kind::Er => Family::ErRandom { p, seed },
        Kind::Bipartite => Family::BipartiteRandom { p, seed },
    };
    let graph = generate::generate(family, n).map_err(anyhow::Error::from)?;
    print!("{}", serialize_graph(&graph, format));
    Ok(0)
}

fn oracle_check_cmd(n: usize, count: &str, p: f64, seed: u64, plant_bug: bool) -> Result<u8, Failure> {
    let tamper = if plant_bug {
        Tamper::InflateAlphaPrime
    } else {
        Tamper::None
    };
    let graphs: Box<dyn Iterator<Item = Graph>> = if count == "all-graphs" {
        if n > 7 {
            return Err(anyhow::anyhow!("all-graphs enumeration supports n <= 7").into());
        }
        Box::new(all_graphs(n))
    } else {
        let count: usize = count.parse().context("--count must be a number or `all-graphs`")?;
        let graphs = (0..count).map(move |i| generate::er_random(n, p, corpus_seed(seed, i)));
        Box::new(
            graphs
                .collect::<Result<Vec<_>, _>>()
                .map_err(anyhow::Error::from)?
                .into_iter(),
        )
    };
    let mut summary = AuditSummary::default();
    for graph in graphs {
        let audit = audit_graph(&graph, tamper).map_err(anyhow::Error::from)?;
        if !audit.violations.is_empty() {
            eprintln!("violation on graph #{}:", summary.graphs);
            for v in &audit.violations {
                eprintln!("  {}: {}", v.invariant, v.detail);
            }
            eprint!("{}", dump_graph(&graph));
        }
        summary.record(&audit.checked, &audit.violations);
    }
    let mut rows = Vec::new();
    for name in INVARIANTS {
        let checks = summary.checks.get(name).copied().unwrap_or(0);
        let violations = summary.violations.get(name).copied().unwrap_or(0);
        eprintln!("{name:<30} checks {checks:>8}  violations {violations}");
        rows.push(json!({"invariant": name, "checks": checks, "violations": violations}));
    }
    let total = summary.total_violations();
    print(&json!({"graphs": summary.graphs, "violations": total, "invariants": rows}).to_string())?;
    eprintln!("{} graphs, {total} violations", summary.graphs);
    Ok(if total == 0 { 0 } else { EXIT_VIOLATION })
}

fn bench_cmd(config: BenchConfig) -> Result<u8, Failure> {
    let records = run_bench(&config).map_err(anyhow::Error::from)?;
    write_csv(&records, std::io::stdout().lock()).map_err(anyhow::Error::from)?;
    let disagreements = records.iter().filter(|r| r.agreement == Some(false)).count();
    if disagreements > 0 {
        eprintln!("{disagreements} rows disagree");
        return Ok(EXIT_VIOLATION);
    }
    if records.iter().any(|r| r.agreement.is_none()) {
        eprintln!("some rows exceeded the node budget");
        return Ok(EXIT_BUDGET);
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Analyze {
            input,
            exact_budget,
            json,
        } => analyze_cmd(&input, exact_budget, json),
        Command::Decompose { input, out_dir } => decompose_cmd(&input, out_dir.as_deref()),
        Command::Mis { input, exact_budget } => mis_cmd(&input, exact_budget),
        Command::Ke { input } => ke_cmd(&input),
        Command::Gen {
            kind,
            n,
            p,
            seed,
            format,
        } => gen_cmd(kind, n, p, seed, format),
        Command::OracleCheck {
            n,
            count,
            p,
            seed,
            plant_bug,
        } => oracle_check_cmd(n, &count, p, seed, plant_bug),
        Command::Bench {
            n,
            p,
            count,
            seed,
            budget,
            bipartite,
        } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(anyhow::anyhow!("--p must lie in [0, 1]").into());
            }
            bench_cmd(BenchConfig {
                n,
                p,
                count,
                seed,
                node_budget: budget,
                bipartite,
            })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Parse(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_PARSE)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_VIOLATION)
        }
    }
}
