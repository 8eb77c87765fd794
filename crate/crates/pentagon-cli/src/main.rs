//! Command-line front door: the dichotomy, the full pipeline, the graph
//! generators and the experiment grids.
//!
//! Exit codes are a stable contract: 0 for a pair or ordinary success, 2 for
//! a violated precondition, 3 when an induced C5 certificate is produced,
//! 1 for I/O and parse failures.

use clap::{Parser, Subcommand};
use pentagon::density::DensityConfig;
use pentagon::dichotomy::{find_c5_or_sparse_pair_with, DichotomyConfig, DichotomyError};
use pentagon::extract::{ceil_sqrt, pipeline_with, ExtractConfig, ExtractError};
use pentagon::frac::Frac;
use pentagon::gen::{generate, Family, GenSpec};
use pentagon::graph::Graph;
use pentagon::io::{parse_graph, write_graph, GraphFormat};
use pentagon::oracle;
use pentagon::schedule::ScheduleParams;
use pentagon_cli::experiment::{self, ExperimentName, ExperimentOpts};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_FAIL: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_C5: u8 = 3;

#[derive(Parser)]
#[command(
    name = "pentagon",
    about = "Certificates for C5-free graphs: sparse dichotomy, density pairs, cograph extraction",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the sparse-graph dichotomy on a graph file.
    Dichotomy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "dimacs")]
        format: GraphFormat,
        /// Density threshold as NUM/DEN, 0 < c <= 1/2.
        #[arg(long)]
        c: Frac,
        /// Emit the construction trace alongside the outcome.
        #[arg(long)]
        trace: bool,
        /// Use a seeded random N0 instead of the first floor(n/2) indices.
        #[arg(long)]
        n0_seed: Option<u64>,
    },
    /// Extract a cograph and an explicit clique or stable set.
    Pipeline {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "dimacs")]
        format: GraphFormat,
        #[arg(long, default_value_t = 5.0)]
        sigma: f64,
        /// NUM/DEN in (0, 1].
        #[arg(long, default_value = "1/16")]
        epsilon: Frac,
        /// Override the derived kappa (reporting only).
        #[arg(long)]
        kappa: Option<f64>,
        /// Peel target d as NUM/DEN.
        #[arg(long, default_value = "1/20")]
        d: Frac,
        #[arg(long, default_value = "cheap")]
        verify_level: VerifyLevel,
        /// Refuse the single-vertex fallback; prove or refute an induced C5
        /// first.
        #[arg(long)]
        no_trivial_branch: bool,
        /// Recompute c at every recursion node instead of fixing it at the
        /// top level.
        #[arg(long)]
        adaptive_c: bool,
        /// Stream recursion nodes as JSON-lines before the report.
        #[arg(long)]
        trace: bool,
    },
    /// Generate a graph from a seeded family.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Edge probability NUM/DEN where the family uses one.
        #[arg(long)]
        p: Option<Frac>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        degree_cap: Option<usize>,
        #[arg(long, default_value = "dimacs")]
        format: GraphFormat,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named experiment grid and write a CSV.
    Experiment {
        /// soundness | extraction-vs-oracle | growth | delta
        name: ExperimentName,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial count (soundness, extraction-vs-oracle) or seeds per cell
        /// (growth, delta).
        #[arg(long)]
        trials: Option<usize>,
        /// Largest n of the growth grid.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Re-derive every row from its stored inputs after writing.
        #[arg(long)]
        recheck: bool,
        /// Fill runtime_ms with wall-clock milliseconds. Breaks byte-level
        /// reproducibility of the CSV.
        #[arg(long)]
        timings: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum VerifyLevel {
    None,
    Cheap,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Dichotomy {
            input,
            format,
            c,
            trace,
            n0_seed,
        } => cmd_dichotomy(&input, format, c, trace, n0_seed),
        Cmd::Pipeline {
            input,
            format,
            sigma,
            epsilon,
            kappa,
            d,
            verify_level,
            no_trivial_branch,
            adaptive_c,
            trace,
        } => cmd_pipeline(
            &input,
            format,
            sigma,
            epsilon,
            kappa,
            d,
            verify_level,
            no_trivial_branch,
            adaptive_c,
            trace,
        ),
        Cmd::Gen {
            family,
            n,
            p,
            seed,
            degree_cap,
            format,
            out,
        } => cmd_gen(family, n, p, seed, degree_cap, format, out.as_deref()),
        Cmd::Experiment {
            name,
            seed,
            trials,
            max_n,
            out,
            recheck,
            timings,
        } => cmd_experiment(name, seed, trials, max_n, &out, recheck, timings),
    };
    ExitCode::from(code)
}

fn load_graph(path: &std::path::Path, format: GraphFormat) -> Result<Graph, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
    parse_graph(&text, format).map_err(|e| format!("parsing {}: {e}", path.display()))
}

fn cmd_dichotomy(
    input: &std::path::Path,
    format: GraphFormat,
    c: Frac,
    trace: bool,
    n0_seed: Option<u64>,
) -> u8 {
    let g = match load_graph(input, format) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    let cfg = DichotomyConfig { n0_seed };
    match find_c5_or_sparse_pair_with(&g, c, &cfg) {
        Ok((outcome, tr)) => {
            if trace {
                println!(
                    "{}",
                    serde_json::json!({
                        "outcome": outcome,
                        "trace": tr,
                    })
                );
            } else {
                println!("{}", serde_json::to_string(&outcome).unwrap());
            }
            match outcome {
                pentagon::dichotomy::DichotomyOutcome::Pair(_) => EXIT_OK,
                pentagon::dichotomy::DichotomyOutcome::C5(_) => EXIT_C5,
            }
        }
        Err(e @ DichotomyError::Internal(_)) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
        Err(e) => {
            eprintln!("precondition: {e}");
            EXIT_PRECONDITION
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_pipeline(
    input: &std::path::Path,
    format: GraphFormat,
    sigma: f64,
    epsilon: Frac,
    kappa: Option<f64>,
    d: Frac,
    verify_level: VerifyLevel,
    no_trivial_branch: bool,
    adaptive_c: bool,
    trace: bool,
) -> u8 {
    let g = match load_graph(input, format) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    let mut params = match ScheduleParams::derive(sigma, epsilon) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("precondition: {e}");
            return EXIT_PRECONDITION;
        }
    };
    if let Some(k) = kappa {
        params.kappa = k;
    }
    let cfg = ExtractConfig {
        density: DensityConfig {
            d,
            no_trivial_branch,
            dichotomy: DichotomyConfig::default(),
        },
        adaptive_mu: adaptive_c.then_some(params.mu),
        ..Default::default()
    };
    match pipeline_with(&g, &params, &cfg) {
        Ok(out) => {
            if trace {
                for node in &out.report.trace.nodes {
                    println!("{}", serde_json::to_string(node).unwrap());
                }
            }
            let verified = match verify_level {
                VerifyLevel::None => None,
                VerifyLevel::Cheap => Some(verify_cheap(&g, &out)),
                VerifyLevel::Full => Some(verify_cheap(&g, &out) && verify_full(&g, &out)),
            };
            let mut report = serde_json::to_value(&out.report).unwrap();
            report["stable"] = serde_json::to_value(&out.stable).unwrap();
            report["clique"] = serde_json::to_value(&out.clique).unwrap();
            report["s"] = serde_json::to_value(&out.s).unwrap();
            if let Some(v) = verified {
                report["verified"] = serde_json::Value::Bool(v);
            }
            if !trace {
                report.as_object_mut().unwrap().remove("trace");
            }
            println!("{report}");
            EXIT_OK
        }
        Err(ExtractError::InputContainsC5 { cycle }) => {
            println!("{}", serde_json::json!({ "kind": "c5", "cycle": cycle }));
            EXIT_C5
        }
        Err(ExtractError::Precondition(m)) => {
            eprintln!("precondition: {m}");
            EXIT_PRECONDITION
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_FAIL
        }
    }
}

/// Witness-level checks: the stable set and clique are real in G, the
/// perfectness product holds, and best dominates ceil(sqrt(|S|)).
fn verify_cheap(g: &Graph, out: &pentagon::extract::PipelineOutput) -> bool {
    let stable_ok = out
        .stable
        .iter()
        .all(|u| out.stable.iter().all(|v| u == v || !g.has_edge(u, v)));
    let clique_ok = out
        .clique
        .iter()
        .all(|u| out.clique.iter().all(|v| u == v || g.has_edge(u, v)));
    let product_ok = out.stable.len() * out.clique.len() >= out.s.len();
    let sqrt_ok = out.report.best >= ceil_sqrt(out.s.len());
    stable_ok && clique_ok && product_ok && sqrt_ok
}

/// Adds the independent P4-free scan of S and, for small inputs, a full
/// induced-C5 scan of the input graph.
fn verify_full(g: &Graph, out: &pentagon::extract::PipelineOutput) -> bool {
    let (gs, _) = match g.induced_subgraph(&out.s) {
        Ok(x) => x,
        Err(_) => return false,
    };
    if oracle::find_induced_p4(&gs).is_some() {
        return false;
    }
    if g.n() <= 400 {
        match oracle::count_induced_c5(g) {
            Ok(0) => {}
            _ => return false,
        }
    }
    true
}

fn cmd_gen(
    family: Family,
    n: usize,
    p: Option<Frac>,
    seed: u64,
    degree_cap: Option<usize>,
    format: GraphFormat,
    out: Option<&std::path::Path>,
) -> u8 {
    let spec = GenSpec {
        family,
        n,
        p,
        seed,
        degree_cap,
    };
    let g = match generate(&spec) {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_FAIL;
        }
    };
    let text = write_graph(&g, format);
    match out {
        None => {
            print!("{text}");
            EXIT_OK
        }
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: writing {}: {e}", path.display());
                EXIT_FAIL
            }
        },
    }
}

fn cmd_experiment(
    name: ExperimentName,
    seed: u64,
    trials: Option<usize>,
    max_n: Option<usize>,
    out: &std::path::Path,
    recheck: bool,
    timings: bool,
) -> u8 {
    let opts = ExperimentOpts {
        name,
        seed,
        trials,
        max_n,
        timings,
    };
    // stream batches to disk so an interrupted run keeps its finished prefix
    let mut rows = Vec::new();
    let written = std::fs::File::create(out).and_then(|file| {
        let mut w = csv::Writer::from_writer(file);
        w.write_record(experiment::CSV_HEADER)?;
        experiment::run_streaming(&opts, |batch| {
            for row in batch {
                w.write_record(row.record())?;
            }
            w.flush()?;
            rows.extend_from_slice(batch);
            Ok(())
        })?;
        w.flush()
    });
    if let Err(e) = written {
        eprintln!("error: writing {}: {e}", out.display());
        return EXIT_FAIL;
    }
    let failed = rows.iter().filter(|r| !r.verified).count();
    eprintln!(
        "{name}: {} rows, {} verified, {} not verified -> {}",
        rows.len(),
        rows.len() - failed,
        failed,
        out.display()
    );
    if recheck {
        let reread = std::fs::read(out)
            .map_err(|e| e.to_string())
            .and_then(|bytes| experiment::from_csv(&bytes))
            .and_then(|rows| experiment::recheck(&rows));
        match reread {
            Ok(k) => eprintln!("recheck: {k} rows re-derived identically"),
            Err(e) => {
                eprintln!("recheck failed: {e}");
                return EXIT_FAIL;
            }
        }
    }
    if failed > 0 {
        EXIT_FAIL
    } else {
        EXIT_OK
    }
}
