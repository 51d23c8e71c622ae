//! `mls`: generate instances, run schedulers, verify schedules and sweep
//! competitive-ratio experiments.
//!
//! Exit codes: 0 success, 1 a bound check or verification failed, 2 usage
//! or input error.

mod config;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use mls_core::harness::{evaluate, sweep, SweepConfig};
use mls_core::metrics::verify_schedule;
use mls_core::oracle::{Oracle, DEFAULT_NODE_LIMIT, DEFAULT_SIZE_CAP};
use mls_core::trace_io::{parse_instance, parse_schedule, serialize_instance, serialize_report, serialize_schedule};
use mls_core::workloads::{generate, Family, GenSpec};
use mls_core::{Algorithm, ArrivalOrder, Flatten, Instance, Time};

#[derive(Debug, Parser)]
#[command(name = "mls", version, about = "Multi-list online makespan scheduling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Run one algorithm on an instance.
    Run(RunArgs),
    /// Check a schedule CSV against an instance.
    Verify(VerifyArgs),
    /// Evaluate all algorithms against the exact optimum.
    Ratio(RatioArgs),
    /// Evaluate generated instances in bulk.
    Sweep(SweepArgs),
}

#[derive(Debug, clap::Args)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long = "m", default_value_t = 2)]
    m: usize,
    #[arg(long = "k")]
    k: Option<usize>,
    /// Comma-separated list lengths.
    #[arg(long, value_delimiter = ',')]
    lens: Option<Vec<usize>>,
    #[arg(long = "n")]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long, default_value_t = 1)]
    lo: Time,
    #[arg(long, default_value_t = 10)]
    hi: Time,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AlgArg {
    Ljllm,
    Ls,
    Lpt,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FlattenArg {
    Concatenate,
    RoundRobin,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    Batched,
    Free,
}

#[derive(Debug, clap::Args)]
struct RunArgs {
    #[arg(long)]
    alg: AlgArg,
    /// Flattening order for `--alg ls`.
    #[arg(long, value_enum, default_value = "concatenate")]
    flatten: FlattenArg,
    #[arg(long = "in")]
    input: PathBuf,
    /// Write the schedule CSV here instead of standard output.
    #[arg(long)]
    schedule_out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct VerifyArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    schedule: PathBuf,
    /// `batched` also requires decisions to follow batch order.
    #[arg(long, value_enum, default_value = "batched")]
    order: OrderArg,
}

#[derive(Debug, clap::Args)]
struct RatioArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    oracle_cap: usize,
    #[arg(long, default_value_t = DEFAULT_NODE_LIMIT)]
    node_limit: u64,
}

#[derive(Debug, clap::Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    /// Directory for summary.json, summary.txt and reports.jsonl.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Ratio(args) => cmd_ratio(args),
        Command::Sweep(args) => cmd_sweep(args),
    }
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn cmd_gen(args: GenArgs) -> Result<ExitCode> {
    let spec = GenSpec {
        family: args.family,
        m: args.m,
        k: args.k,
        lens: args.lens,
        n: args.n,
        n_min: args.n_min,
        n_max: args.n_max,
        lo: args.lo,
        hi: args.hi,
        seed: args.seed,
    };
    let text = serialize_instance(&generate(&spec)?);
    match args.out {
        Some(path) => write_file(&path, &text)?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_run(args: RunArgs) -> Result<ExitCode> {
    let instance = read_instance(&args.input)?;
    let alg = match args.alg {
        AlgArg::Ljllm => Algorithm::Ljllm,
        AlgArg::Lpt => Algorithm::Lpt,
        AlgArg::Ls => Algorithm::Ls(match args.flatten {
            FlattenArg::Concatenate => Flatten::Concatenate,
            FlattenArg::RoundRobin => Flatten::RoundRobin,
        }),
    };
    let schedule = alg.run(&instance);
    let csv = serialize_schedule(&schedule);
    match args.schedule_out {
        Some(path) => write_file(&path, &csv)?,
        None => print!("{csv}"),
    }
    println!("makespan {}", schedule.makespan);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let instance = read_instance(&args.input)?;
    let path = &args.schedule;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let order = match args.order {
        OrderArg::Batched => ArrivalOrder::Batched,
        OrderArg::Free => ArrivalOrder::Free,
    };
    let schedule = parse_schedule(&text, instance.m(), order)
        .with_context(|| format!("parsing {}", path.display()))?;
    match verify_schedule(&instance, &schedule) {
        Ok(()) => {
            println!("ok makespan {}", schedule.makespan);
            Ok(ExitCode::SUCCESS)
        }
        Err(violation) => {
            println!("invalid: {violation}");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_ratio(args: RatioArgs) -> Result<ExitCode> {
    let instance = read_instance(&args.input)?;
    let oracle = Oracle {
        size_cap: args.oracle_cap,
        node_limit: args.node_limit,
    };
    let report = evaluate(&instance, Some(&oracle));
    print!("{}", serialize_report(&report));
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_sweep(args: SweepArgs) -> Result<ExitCode> {
    let path = &args.config;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: config::SweepFile =
        toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    if file.spec.is_empty() {
        bail!("{}: no [[spec]] entries", path.display());
    }
    let outcome = sweep(&SweepConfig {
        oracle: file.oracle(),
        specs: file.spec,
        seeds_per_spec: file.seeds,
        jobs: args.jobs,
    })?;
    let text = outcome.summary.render_text();
    print!("{text}");
    if let Some(dir) = args.out {
        fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
        write_file(&dir.join("summary.txt"), &text)?;
        write_file(&dir.join("summary.json"), &outcome.summary_json())?;
        write_file(&dir.join("reports.jsonl"), &outcome.reports_jsonl())?;
    }
    Ok(if outcome.summary.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
