use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use bdmmn::baseline::build_n_empty;
use bdmmn::decomposition::Decomposition;
use bdmmn::generate::{generate_random, generate_staircase_family};
use bdmmn::harness::{format_records, format_summary, run_benchmark, summarize, BenchConfig};
use bdmmn::io::{emit_instance, emit_network, parse_instance, parse_network};
use bdmmn::oracle::{approximation_ratio, exact_optimum, DEFAULT_BUDGET};
use bdmmn::svg::{render_svg, solution_options};
use bdmmn::verify::verify_bidirected;
use bdmmn::{solve, Grid, TerminalSet};
use clap::{Args, Parser, Subcommand};

/// Bidirected Manhattan networks: approximate, verify, compare.
#[derive(Parser)]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the factor-2 network and print its arcs.
    Solve {
        file: PathBuf,
        /// Also draw the network as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print the empty-rectangle network.
    Baseline { file: PathBuf },
    /// Find a minimum network by exhaustive search (small instances only).
    Exact {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check that a network joins every ordered terminal pair.
    Verify { netfile: PathBuf, file: PathBuf },
    /// Print solve length / optimal length.
    Ratio {
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Generate an instance.
    Gen(GenArgs),
    /// Run a benchmark sweep described by a TOML file.
    Bench {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct GenArgs {
    #[arg(long, requires = "seed", conflicts_with = "staircase")]
    n: Option<usize>,
    #[arg(long, requires = "n")]
    seed: Option<u64>,
    /// Staircase family member with K interior terminals.
    #[arg(long, value_name = "K")]
    staircase: Option<usize>,
}

/// Failure paired with the exit status it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        Failure { code: 1, err }
    }
}

impl From<bdmmn::Error> for Failure {
    fn from(e: bdmmn::Error) -> Self {
        let code = if e.is_invariant_violation() { 2 } else { 1 };
        Failure { code, err: e.into() }
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path) -> Result<TerminalSet, Failure> {
    let text = read(path)?;
    parse_instance(&text).map_err(|e| Failure::from(anyhow::Error::from(e).context(path.display().to_string())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Command::Solve { file, svg } => {
            let t = load(&file)?;
            let grid = Grid::new(&t);
            let sol = solve(&t)?;
            if let Some(out) = svg {
                let dec = Decomposition::new(&t);
                let doc = render_svg(&sol.network, &t, &solution_options(&t, &dec, &sol));
                fs::write(&out, doc).with_context(|| format!("writing {}", out.display()))?;
            }
            println!("# length {}", sol.length(&grid));
            print!("{}", emit_network(&sol.network, &grid));
        }
        Command::Baseline { file } => {
            let t = load(&file)?;
            let grid = Grid::new(&t);
            let base = build_n_empty(&t)?;
            println!("# length {}", base.net.length(&grid));
            print!("{}", emit_network(&base.net, &grid));
        }
        Command::Exact { file, budget } => {
            let t = load(&file)?;
            let grid = Grid::new(&t);
            let r = exact_optimum(&t, budget)?;
            println!("# length {} ({} search nodes)", r.length, r.nodes_explored);
            print!("{}", emit_network(&r.network, &grid));
        }
        Command::Verify { netfile, file } => {
            let t = load(&file)?;
            let net = parse_network(&read(&netfile)?, &t)
                .map_err(|e| Failure::from(anyhow::Error::from(e).context(netfile.display().to_string())))?;
            let report = verify_bidirected(&net, &t);
            if !report.feasible {
                for (a, b) in &report.failures {
                    eprintln!("no directed Manhattan path from t{a} to t{b}");
                }
                return Err(anyhow::anyhow!(
                    "infeasible: {} of {} ordered pairs unconnected",
                    report.failures.len(),
                    report.checked_pairs
                )
                .into());
            }
            println!("feasible: all {} ordered pairs connected", report.checked_pairs);
        }
        Command::Ratio { file, budget } => {
            let t = load(&file)?;
            let (num, den) = approximation_ratio(&t, budget)?;
            println!("{num}/{den} = {:.6}", num as f64 / den as f64);
        }
        Command::Gen(GenArgs { n, seed, staircase }) => {
            let t = match (n, seed, staircase) {
                (_, _, Some(k)) if k >= 1 => generate_staircase_family(k),
                (Some(n), Some(s), None) if n >= 1 => generate_random(n, s),
                _ => return Err(anyhow::anyhow!("need --n N --seed S with N ≥ 1, or --staircase K with K ≥ 1").into()),
            };
            print!("{}", emit_instance(&t));
        }
        Command::Bench { config } => {
            let cfg = BenchConfig::from_toml(&read(&config)?).with_context(|| format!("parsing {}", config.display()))?;
            let records = run_benchmark(&cfg)?;
            print!("{}", format_records(&records));
            print!("{}", format_summary(&summarize(&records)));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
