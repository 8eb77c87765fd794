//! Experiment runner: seeded trial grids over the dichotomy, the pipeline,
//! the oracles and the sparsifier, persisted as CSV.
//!
//! Reproducibility contract: every trial derives all of its inputs (sizes,
//! families, probabilities, thresholds) from `base_seed + trial_index`, so a
//! stored row can be re-derived from its own columns alone and an identical
//! command line yields a byte-identical file. Wall-clock timing breaks that,
//! so `runtime_ms` stays empty unless timings are explicitly requested.

use pentagon::density::peel_to_sparse;
use pentagon::dichotomy::{find_c5_or_sparse_pair, verify_outcome, DichotomyOutcome};
use pentagon::extract::{ceil_sqrt, pipeline};
use pentagon::frac::Frac;
use pentagon::gen::{generate, Family, GenSpec};
use pentagon::oracle;
use pentagon::schedule::ScheduleParams;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::str::FromStr;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentName {
    Soundness,
    ExtractionVsOracle,
    Growth,
    Delta,
}

impl FromStr for ExperimentName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "soundness" => Ok(ExperimentName::Soundness),
            "extraction-vs-oracle" => Ok(ExperimentName::ExtractionVsOracle),
            "growth" => Ok(ExperimentName::Growth),
            "delta" => Ok(ExperimentName::Delta),
            other => Err(format!(
                "unknown experiment {other:?}; expected soundness, extraction-vs-oracle, growth or delta"
            )),
        }
    }
}

impl std::fmt::Display for ExperimentName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ExperimentName::Soundness => "soundness",
            ExperimentName::ExtractionVsOracle => "extraction-vs-oracle",
            ExperimentName::Growth => "growth",
            ExperimentName::Delta => "delta",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOpts {
    pub name: ExperimentName,
    pub seed: u64,
    /// soundness / extraction-vs-oracle: trial count; growth / delta: seeds
    /// per grid cell.
    pub trials: Option<usize>,
    /// growth: cap on the largest n of the 2^8..2^14 grid.
    pub max_n: Option<usize>,
    pub timings: bool,
}

/// One CSV row. Optional numeric columns are empty strings when a field does
/// not apply to the experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub experiment: String,
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub c: String,
    pub outcome: String,
    pub branch: String,
    pub a_size: String,
    pub b_size: String,
    pub density: String,
    pub s_size: String,
    pub alpha: String,
    pub omega: String,
    pub best: String,
    pub guarantee_cograph: String,
    pub guarantee_best: String,
    pub delta_hat: String,
    pub runtime_ms: String,
    pub verified: bool,
}

pub const CSV_HEADER: [&str; 19] = [
    "experiment",
    "family",
    "n",
    "seed",
    "c",
    "outcome",
    "branch",
    "a_size",
    "b_size",
    "density",
    "s_size",
    "alpha",
    "omega",
    "best",
    "guarantee_cograph",
    "guarantee_best",
    "delta_hat",
    "runtime_ms",
    "verified",
];

impl Row {
    /// Column values in header order.
    pub fn record(&self) -> [String; 19] {
        [
            self.experiment.clone(),
            self.family.clone(),
            self.n.to_string(),
            self.seed.to_string(),
            self.c.clone(),
            self.outcome.clone(),
            self.branch.clone(),
            self.a_size.clone(),
            self.b_size.clone(),
            self.density.clone(),
            self.s_size.clone(),
            self.alpha.clone(),
            self.omega.clone(),
            self.best.clone(),
            self.guarantee_cograph.clone(),
            self.guarantee_best.clone(),
            self.delta_hat.clone(),
            self.runtime_ms.clone(),
            self.verified.to_string(),
        ]
    }

    fn from_record(rec: &csv::StringRecord) -> Result<Row, String> {
        if rec.len() != 19 {
            return Err(format!("expected 19 columns, got {}", rec.len()));
        }
        let get = |i: usize| rec.get(i).unwrap().to_string();
        Ok(Row {
            experiment: get(0),
            family: get(1),
            n: get(2).parse().map_err(|e| format!("n: {e}"))?,
            seed: get(3).parse().map_err(|e| format!("seed: {e}"))?,
            c: get(4),
            outcome: get(5),
            branch: get(6),
            a_size: get(7),
            b_size: get(8),
            density: get(9),
            s_size: get(10),
            alpha: get(11),
            omega: get(12),
            best: get(13),
            guarantee_cograph: get(14),
            guarantee_best: get(15),
            delta_hat: get(16),
            runtime_ms: get(17),
            verified: get(18).parse().map_err(|e| format!("verified: {e}"))?,
        })
    }
}

fn empty_row(experiment: &str) -> Row {
    Row {
        experiment: experiment.into(),
        family: String::new(),
        n: 0,
        seed: 0,
        c: String::new(),
        outcome: String::new(),
        branch: String::new(),
        a_size: String::new(),
        b_size: String::new(),
        density: String::new(),
        s_size: String::new(),
        alpha: String::new(),
        omega: String::new(),
        best: String::new(),
        guarantee_cograph: String::new(),
        guarantee_best: String::new(),
        delta_hat: String::new(),
        runtime_ms: String::new(),
        verified: false,
    }
}

/// Thread pool bounded by PENTAGON_THREADS (default: rayon's choice).
fn pool() -> rayon::ThreadPool {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = std::env::var("PENTAGON_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        builder = builder.num_threads(k.max(1));
    }
    builder.build().expect("thread pool")
}

pub fn run(opts: &ExperimentOpts) -> Vec<Row> {
    let mut rows = Vec::new();
    run_streaming(opts, |batch| {
        rows.extend_from_slice(batch);
        Ok(())
    })
    .expect("in-memory sink cannot fail");
    rows
}

/// Trials run in parallel batches in trial order; each completed batch is
/// handed to the sink before the next starts, so an interrupted run keeps
/// its finished prefix.
pub fn run_streaming<F>(opts: &ExperimentOpts, mut sink: F) -> std::io::Result<()>
where
    F: FnMut(&[Row]) -> std::io::Result<()>,
{
    const BATCH: usize = 64;
    let jobs: Vec<Job> = plan(opts);
    let timings = opts.timings;
    let pool = pool();
    for chunk in jobs.chunks(BATCH) {
        let rows: Vec<Row> = pool.install(|| {
            use rayon::prelude::*;
            chunk.par_iter().map(|job| run_job(job, timings)).collect()
        });
        sink(&rows)?;
    }
    Ok(())
}

/// A fully determined unit of work; everything a row needs to be re-derived.
#[derive(Debug, Clone)]
enum Job {
    Soundness {
        seed: u64,
    },
    ExtractionVsOracle {
        seed: u64,
    },
    Growth {
        family: Family,
        n: usize,
        seed: u64,
    },
    Delta {
        family_label: String,
        n: usize,
        d: Frac,
        seed: u64,
    },
}

fn plan(opts: &ExperimentOpts) -> Vec<Job> {
    match opts.name {
        ExperimentName::Soundness => {
            let trials = opts.trials.unwrap_or(1000);
            (0..trials)
                .map(|i| Job::Soundness {
                    seed: opts.seed.wrapping_add(i as u64),
                })
                .collect()
        }
        ExperimentName::ExtractionVsOracle => {
            let trials = opts.trials.unwrap_or(100);
            (0..trials)
                .map(|i| Job::ExtractionVsOracle {
                    seed: opts.seed.wrapping_add(i as u64),
                })
                .collect()
        }
        ExperimentName::Growth => {
            let seeds = opts.trials.unwrap_or(5);
            let max_n = opts.max_n.unwrap_or(1 << 14);
            let mut jobs = Vec::new();
            let mut n = 1usize << 8;
            while n <= max_n {
                for family in [Family::Chordal, Family::Bipartite, Family::Split] {
                    for s in 0..seeds {
                        jobs.push(Job::Growth {
                            family,
                            n,
                            seed: opts.seed.wrapping_add(s as u64),
                        });
                    }
                }
                n <<= 1;
            }
            jobs
        }
        ExperimentName::Delta => {
            let seeds = opts.trials.unwrap_or(3);
            let mut jobs = Vec::new();
            for &den in &[5u64, 10, 20, 40, 80] {
                for label in ["gnp-1/2", "gnp-1/8", "chordal", "split"] {
                    for &n in &[256usize, 1024] {
                        for s in 0..seeds {
                            jobs.push(Job::Delta {
                                family_label: label.to_string(),
                                n,
                                d: Frac::new(1, den),
                                seed: opts.seed.wrapping_add(s as u64),
                            });
                        }
                    }
                }
            }
            jobs
        }
    }
}

fn run_job(job: &Job, timings: bool) -> Row {
    let start = Instant::now();
    let mut row = match job {
        Job::Soundness { seed } => soundness_trial(*seed),
        Job::ExtractionVsOracle { seed } => extraction_trial(*seed),
        Job::Growth { family, n, seed } => growth_trial(*family, *n, *seed),
        Job::Delta {
            family_label,
            n,
            d,
            seed,
        } => delta_trial(family_label, *n, *d, *seed),
    };
    if timings {
        row.runtime_ms = start.elapsed().as_millis().to_string();
    }
    row
}

const C_GRID: [(u64, u64); 6] = [(1, 64), (1, 32), (1, 16), (1, 8), (1, 4), (1, 2)];

/// Criterion-1 style trial: a random degree-capped graph meeting the closed
/// degree precondition, a grid c, the dichotomy, and a from-scratch recheck.
fn soundness_trial(seed: u64) -> Row {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5001d);
    let exp = rng.random_range(4..12u32);
    let n = rng
        .random_range((1usize << exp)..(1usize << (exp + 1)))
        .clamp(16, 4096);
    let cap = (n / 16).saturating_sub(1);
    let (cn, cd) = C_GRID[rng.random_range(0..C_GRID.len())];
    let c = Frac::new(cn, cd);
    let family = match rng.random_range(0..4u32) {
        0 => Family::Gnp,
        1 => Family::Chordal,
        2 => Family::Bipartite,
        _ => Family::Split,
    };
    let p = match family {
        Family::Chordal => None,
        _ => Some(Frac::new(1, [8u64, 32, 128][rng.random_range(0..3usize)])),
    };
    let spec = GenSpec {
        family,
        n,
        p,
        seed,
        degree_cap: Some(cap),
    };
    let mut row = empty_row("soundness");
    row.family = family.to_string();
    row.n = n;
    row.seed = seed;
    row.c = c.to_string();
    let g = match generate(&spec) {
        Ok(g) => g,
        Err(e) => {
            row.outcome = format!("gen-error: {e}");
            return row;
        }
    };
    match find_c5_or_sparse_pair(&g, c) {
        Ok((outcome, trace)) => {
            let ok = verify_outcome(&g, c, &outcome).is_ok() && trace.check(&g, c).is_ok();
            match &outcome {
                DichotomyOutcome::C5(w) => {
                    row.outcome = "c5".into();
                    row.verified = ok && oracle::verify_induced_c5(&g, &w.cycle);
                }
                DichotomyOutcome::Pair(p) => {
                    row.outcome = "pair".into();
                    row.branch = p.branch.label().into();
                    row.a_size = p.a.len().to_string();
                    row.b_size = p.b.len().to_string();
                    row.density = p.density.to_string();
                    row.verified = ok;
                }
            }
        }
        Err(e) => {
            row.outcome = format!("error: {e}");
            row.verified = false;
        }
    }
    row
}

/// Small-n pipeline against the exhaustive maximum-cograph oracle.
fn extraction_trial(seed: u64) -> Row {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xec0);
    let n = rng.random_range(4..=18usize);
    let family = match rng.random_range(0..4u32) {
        0 => Family::Chordal,
        1 => Family::Bipartite,
        2 => Family::Split,
        _ => Family::Cograph,
    };
    let p = match family {
        Family::Chordal | Family::Cograph => None,
        _ => Some(Frac::new(1, 3)),
    };
    let spec = GenSpec {
        family,
        n,
        p,
        seed,
        degree_cap: None,
    };
    let mut row = empty_row("extraction-vs-oracle");
    row.family = family.to_string();
    row.n = n;
    row.seed = seed;
    let g = match generate(&spec) {
        Ok(g) => g,
        Err(e) => {
            row.outcome = format!("gen-error: {e}");
            return row;
        }
    };
    let params = ScheduleParams::default();
    match pipeline(&g, &params) {
        Ok(out) => {
            row.c = out.report.c.to_string();
            row.outcome = "report".into();
            row.s_size = out.s.len().to_string();
            row.alpha = out.report.alpha.to_string();
            row.omega = out.report.omega.to_string();
            row.best = out.report.best.to_string();
            row.guarantee_cograph = format!("{}", out.report.guarantee_cograph);
            row.guarantee_best = format!("{}", out.report.guarantee_best);
            if let Some(dh) = out.report.delta_hat {
                row.delta_hat = format!("{dh}");
            }
            let phi = oracle::max_cograph(&g).map(|s| s.len()).unwrap_or(0);
            let (gs, _) = g.induced_subgraph(&out.s).unwrap();
            row.verified = out.s.len() <= phi
                && out.s.len() >= 2.min(n)
                && oracle::find_induced_p4(&gs).is_none()
                && out.report.best >= ceil_sqrt(out.s.len());
        }
        Err(e) => {
            row.outcome = format!("error: {e}");
        }
    }
    row
}

/// Pipeline across sizes with the guarantee columns filled in.
fn growth_trial(family: Family, n: usize, seed: u64) -> Row {
    let p = match family {
        Family::Chordal => None,
        _ => Some(Frac::new(1, 16)),
    };
    let spec = GenSpec {
        family,
        n,
        p,
        seed,
        degree_cap: Some(16),
    };
    let mut row = empty_row("growth");
    row.family = family.to_string();
    row.n = n;
    row.seed = seed;
    let g = match generate(&spec) {
        Ok(g) => g,
        Err(e) => {
            row.outcome = format!("gen-error: {e}");
            return row;
        }
    };
    let params = ScheduleParams::default();
    match pipeline(&g, &params) {
        Ok(out) => {
            row.c = out.report.c.to_string();
            row.outcome = "report".into();
            row.s_size = out.s.len().to_string();
            row.alpha = out.report.alpha.to_string();
            row.omega = out.report.omega.to_string();
            row.best = out.report.best.to_string();
            row.guarantee_cograph = format!("{}", out.report.guarantee_cograph);
            row.guarantee_best = format!("{}", out.report.guarantee_best);
            if let Some(dh) = out.report.delta_hat {
                row.delta_hat = format!("{dh}");
            }
            let (gs, _) = g.induced_subgraph(&out.s).unwrap();
            row.verified =
                oracle::find_induced_p4(&gs).is_none() && out.report.best >= ceil_sqrt(out.s.len());
        }
        Err(e) => {
            row.outcome = format!("error: {e}");
        }
    }
    row
}

/// Sparsifier delta-hat tables: peel at target d, record |X|/n, recheck the
/// degree condition by full scan.
fn delta_trial(family_label: &str, n: usize, d: Frac, seed: u64) -> Row {
    let mut row = empty_row("delta");
    row.family = family_label.into();
    row.n = n;
    row.seed = seed;
    row.c = d.to_string();
    let spec = match family_label {
        "gnp-1/2" => GenSpec {
            family: Family::Gnp,
            n,
            p: Some(Frac::new(1, 2)),
            seed,
            degree_cap: None,
        },
        "gnp-1/8" => GenSpec {
            family: Family::Gnp,
            n,
            p: Some(Frac::new(1, 8)),
            seed,
            degree_cap: None,
        },
        "chordal" => GenSpec {
            family: Family::Chordal,
            n,
            p: None,
            seed,
            degree_cap: Some(16),
        },
        "split" => GenSpec {
            family: Family::Split,
            n,
            p: Some(Frac::new(1, 8)),
            seed,
            degree_cap: None,
        },
        other => {
            row.outcome = format!("error: unknown delta family {other:?}");
            return row;
        }
    };
    let g = match generate(&spec) {
        Ok(g) => g,
        Err(e) => {
            row.outcome = format!("gen-error: {e}");
            return row;
        }
    };
    let report = peel_to_sparse(&g, d);
    row.outcome = "sparsified".into();
    row.branch = format!("{:?}", report.side).to_lowercase();
    row.a_size = report.x.len().to_string();
    row.delta_hat = format!("{}", report.delta_hat);
    let side = match report.side {
        pentagon::density::Side::Graph => g.clone(),
        pentagon::density::Side::Complement => g.complement(),
    };
    let x = report.x.len() as u64;
    row.verified = report.x.iter().all(|v| {
        let deg = side.row(v).intersection_count(report.x.bits()) as u64;
        d.ge_ratio(deg, x)
    }) && report.delta_hat > 0.0
        && report.delta_hat <= 1.0;
    row
}

/// Serializes rows with the fixed header; byte-deterministic.
pub fn to_csv(rows: &[Row]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).unwrap();
    for row in rows {
        w.write_record(row.record()).unwrap();
    }
    w.into_inner().unwrap()
}

pub fn from_csv(bytes: &[u8]) -> Result<Vec<Row>, String> {
    let mut r = csv::Reader::from_reader(bytes);
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        rows.push(Row::from_record(&rec)?);
    }
    Ok(rows)
}

/// Re-derives each row from its stored inputs and compares everything except
/// the timing column. Returns the number of rows checked.
pub fn recheck(rows: &[Row]) -> Result<usize, String> {
    for (i, row) in rows.iter().enumerate() {
        let redo = match row.experiment.as_str() {
            "soundness" => soundness_trial(row.seed),
            "extraction-vs-oracle" => extraction_trial(row.seed),
            "growth" => {
                let family: Family = row.family.parse().map_err(|e| format!("row {i}: {e}"))?;
                growth_trial(family, row.n, row.seed)
            }
            "delta" => {
                let d: Frac = row.c.parse().map_err(|e| format!("row {i}: {e}"))?;
                delta_trial(&row.family, row.n, d, row.seed)
            }
            other => return Err(format!("row {i}: unknown experiment {other:?}")),
        };
        let mut expect = row.clone();
        expect.runtime_ms = String::new();
        if redo != expect {
            return Err(format!(
                "row {i} does not re-derive:\n  stored  {expect:?}\n  rederived {redo:?}"
            ));
        }
    }
    Ok(rows.len())
}
