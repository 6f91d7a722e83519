//! Benchmark sweeps: solve, baseline and (optionally) the exact oracle on
//! generated instances, with per-phase wall times.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;

use crate::approximation::solve;
use crate::baseline::build_n_empty;
use crate::generate::{generate_random, generate_staircase_family};
use crate::geometry::{Grid, TerminalSet};
use crate::oracle::{exact_optimum, DEFAULT_BUDGET};

/// Sweep description, usually read from TOML:
///
/// ```toml
/// workers = 4
/// budget = 1000000
///
/// [[random]]
/// sizes = [3, 4, 5, 6]
/// seeds = 25
/// oracle = true
///
/// [staircase]
/// ks = [2, 3, 4, 5, 6, 7, 8]
/// oracle_max_k = 3
/// ```
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    /// Worker threads; 0 means rayon's default.
    #[serde(default)]
    pub workers: usize,
    /// Node budget for the exact oracle.
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub random: Vec<RandomSweep>,
    pub staircase: Option<StaircaseSweep>,
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RandomSweep {
    pub sizes: Vec<usize>,
    /// Seeds `0..seeds` for every size.
    pub seeds: u64,
    #[serde(default)]
    pub oracle: bool,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct StaircaseSweep {
    pub ks: Vec<usize>,
    #[serde(default)]
    pub oracle_max_k: usize,
}

impl BenchConfig {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Random,
    Staircase,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkRecord {
    pub instance_id: usize,
    pub family: Family,
    pub n: usize,
    /// Seed for random instances, `k` for the staircase family.
    pub seed: u64,
    pub len_solve: i64,
    pub len_baseline: i64,
    pub len_exact: Option<i64>,
    /// Oracle outcome when it was asked for: "optimal", "budget" or "too-large".
    pub oracle_status: Option<&'static str>,
    pub t_solve_ms: f64,
    pub t_baseline_ms: f64,
    pub t_exact_ms: Option<f64>,
}

impl BenchmarkRecord {
    pub fn ratio(&self) -> Option<f64> {
        self.len_exact.map(|e| self.len_solve as f64 / e as f64)
    }
}

struct Job {
    family: Family,
    seed: u64,
    terminals: TerminalSet,
    oracle: bool,
}

fn jobs(cfg: &BenchConfig) -> Vec<Job> {
    let mut out = Vec::new();
    for sweep in &cfg.random {
        for &n in &sweep.sizes {
            for seed in 0..sweep.seeds {
                out.push(Job { family: Family::Random, seed, terminals: generate_random(n, seed), oracle: sweep.oracle });
            }
        }
    }
    if let Some(st) = &cfg.staircase {
        for &k in &st.ks {
            out.push(Job {
                family: Family::Staircase,
                seed: k as u64,
                terminals: generate_staircase_family(k),
                oracle: k <= st.oracle_max_k,
            });
        }
    }
    out
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn run_job(id: usize, job: &Job, budget: u64) -> crate::Result<BenchmarkRecord> {
    let t = &job.terminals;
    let grid = Grid::new(t);
    let start = Instant::now();
    let len_solve = solve(t)?.length(&grid);
    let t_solve_ms = millis(start);
    let start = Instant::now();
    let len_baseline = build_n_empty(t)?.net.length(&grid);
    let t_baseline_ms = millis(start);
    let (mut len_exact, mut oracle_status, mut t_exact_ms) = (None, None, None);
    if job.oracle {
        let start = Instant::now();
        match exact_optimum(t, budget) {
            Ok(r) => {
                len_exact = Some(r.length);
                oracle_status = Some("optimal");
            }
            Err(crate::Error::BudgetExceeded { .. }) => oracle_status = Some("budget"),
            Err(crate::Error::OracleTooLarge { .. }) => oracle_status = Some("too-large"),
            Err(e) => return Err(e),
        }
        t_exact_ms = Some(millis(start));
    }
    Ok(BenchmarkRecord {
        instance_id: id,
        family: job.family,
        n: t.len(),
        seed: job.seed,
        len_solve,
        len_baseline,
        len_exact,
        oracle_status,
        t_solve_ms,
        t_baseline_ms,
        t_exact_ms,
    })
}

/// Runs every instance of the sweep; records come back in instance order.
pub fn run_benchmark(cfg: &BenchConfig) -> crate::Result<Vec<BenchmarkRecord>> {
    let jobs = jobs(cfg);
    let run = || jobs.par_iter().enumerate().map(|(id, job)| run_job(id, job, cfg.budget)).collect();
    if cfg.workers == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .expect("thread pool")
            .install(run)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkSummary {
    pub instances: usize,
    pub max_ratio: Option<f64>,
    /// Instances where the oracle gave a length and `exact ≤ solve ≤ 2·exact` failed.
    pub ratio_violations: usize,
    pub min_baseline_gap: Option<i64>,
    pub max_baseline_gap: Option<i64>,
    pub mean_baseline_gap: Option<f64>,
    /// Least-squares slope of ln(median solve time) against ln(n), over random instances.
    pub time_slope: Option<f64>,
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn median(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

pub fn summarize(records: &[BenchmarkRecord]) -> BenchmarkSummary {
    let ratios: Vec<f64> = records.iter().filter_map(|r| r.ratio()).collect();
    let ratio_violations = records
        .iter()
        .filter(|r| r.len_exact.is_some_and(|e| !(e <= r.len_solve && r.len_solve <= 2 * e)))
        .count();
    let gaps: Vec<i64> = records.iter().map(|r| r.len_baseline - r.len_solve).collect();
    let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
    for r in records.iter().filter(|r| r.family == Family::Random) {
        by_n.entry(r.n).or_default().push(r.t_solve_ms.max(1e-6));
    }
    let pts: Vec<(f64, f64)> =
        by_n.into_iter().map(|(n, mut ts)| ((n as f64).ln(), median(&mut ts).ln())).collect();
    BenchmarkSummary {
        instances: records.len(),
        max_ratio: ratios.iter().copied().reduce(f64::max),
        ratio_violations,
        min_baseline_gap: gaps.iter().copied().min(),
        max_baseline_gap: gaps.iter().copied().max(),
        mean_baseline_gap: (!gaps.is_empty()).then(|| gaps.iter().sum::<i64>() as f64 / gaps.len() as f64),
        time_slope: fit_slope(&pts),
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

/// Tab-separated records with a header row.
pub fn format_records(records: &[BenchmarkRecord]) -> String {
    let mut s = String::from(
        "instance\tfamily\tn\tseed\tlen_solve\tlen_baseline\tlen_exact\tratio\toracle\tt_solve_ms\tt_baseline_ms\tt_exact_ms\n",
    );
    for r in records {
        let family = match r.family {
            Family::Random => "random",
            Family::Staircase => "staircase",
        };
        writeln!(
            s,
            "{}\t{family}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{:.3}\t{:.3}\t{}",
            r.instance_id,
            r.n,
            r.seed,
            r.len_solve,
            r.len_baseline,
            opt(r.len_exact),
            opt(r.ratio().map(|x| format!("{x:.4}"))),
            opt(r.oracle_status),
            r.t_solve_ms,
            r.t_baseline_ms,
            opt(r.t_exact_ms.map(|x| format!("{x:.3}"))),
        )
        .unwrap();
    }
    s
}

pub fn format_summary(s: &BenchmarkSummary) -> String {
    format!(
        "# instances={} max_ratio={} ratio_violations={} baseline_gap[min/mean/max]={}/{}/{} time_slope={}\n",
        s.instances,
        opt(s.max_ratio.map(|x| format!("{x:.4}"))),
        s.ratio_violations,
        opt(s.min_baseline_gap),
        opt(s.mean_baseline_gap.map(|x| format!("{x:.2}"))),
        opt(s.max_baseline_gap),
        opt(s.time_slope.map(|x| format!("{x:.3}"))),
    )
}
