// SPDX-License-Identifier: MIT OR Apache-2.0

//! `chest`: generate piecewise-stationary data, estimate changepoints,
//! compare samples and run experiment sweeps.

mod format;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chest_core::experiment::{run_sweep, ExperimentConfig};
use chest_core::generators::{gen_piecewise, PiecewiseSpec};
use chest_core::{
    empirical_distance, find_changepoints, list_estimator, ChestError, DistanceParams,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use format::{parse_values, significant};

#[derive(Parser)]
#[command(
    name = "chest",
    version,
    about = "Changepoint estimation for piecewise-stationary time series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a sample from a piecewise spec and write it with its ground truth.
    Generate(GenerateArgs),
    /// Estimate changepoints in a data file.
    Detect(DetectArgs),
    /// Empirical distributional distance between two data files.
    Distance(DistanceArgs),
    /// Run an experiment sweep and write per-run CSV plus aggregate JSON.
    Benchmark(BenchmarkArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Piecewise spec (JSON).
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Data file, one value per line.
    #[arg(long)]
    out: PathBuf,
    /// Ground-truth JSON; defaults to the data path with extension `truth.json`.
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Args)]
struct DetectArgs {
    /// Data file, one value per line.
    data: PathBuf,
    /// Lower bound on the normalized distance between changepoints, in (0, 1).
    #[arg(long)]
    min_distance: f64,
    /// Number of distinct processes generating the data.
    #[arg(
        long,
        required_unless_present = "list_only",
        conflicts_with = "list_only"
    )]
    process_count: Option<usize>,
    /// Report the scored candidate list instead of changepoints.
    #[arg(long)]
    list_only: bool,
    #[command(flatten)]
    distance: DistanceFlags,
    #[command(flatten)]
    threads: ThreadFlag,
}

#[derive(Args)]
struct DistanceArgs {
    first: PathBuf,
    second: PathBuf,
    #[command(flatten)]
    distance: DistanceFlags,
    #[command(flatten)]
    threads: ThreadFlag,
}

#[derive(Args)]
struct BenchmarkArgs {
    /// Experiment config (JSON).
    config: PathBuf,
    /// Directory receiving `<name>.csv` (appended) and `<name>.json`.
    #[arg(long, default_value = "results")]
    out_dir: PathBuf,
    /// Overrides the config's seed base.
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the config's iteration count.
    #[arg(long)]
    iterations: Option<usize>,
    /// Overrides the config's sample lengths; repeatable.
    #[arg(long = "n")]
    n_values: Vec<usize>,
    #[command(flatten)]
    threads: ThreadFlag,
}

#[derive(Args)]
struct DistanceFlags {
    /// Data interpretation; inferred from the values when omitted.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    /// Largest word length; defaults to floor(log2 n).
    #[arg(long)]
    m_max: Option<usize>,
    /// Largest quantization depth in real mode; defaults to floor(log2 n).
    #[arg(long)]
    l_max: Option<usize>,
}

#[derive(Args)]
struct ThreadFlag {
    /// Worker threads; results do not depend on it.
    #[arg(long, env = "CHEST_THREADS")]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Discrete,
    Real,
}

/// Failure split by exit code.
enum Failure {
    /// Bad flags, malformed input or invalid parameters: exit 2.
    Usage(String),
    /// Everything else, mostly I/O: exit 1.
    Runtime(String),
}

impl From<ChestError> for Failure {
    fn from(e: ChestError) -> Self {
        match e {
            ChestError::Io(_) => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Generate(args) => generate(args),
        Command::Detect(args) => {
            let threads = args.threads.threads;
            with_threads(threads, || detect(args))
        }
        Command::Distance(args) => {
            let threads = args.threads.threads;
            with_threads(threads, || distance(args))
        }
        Command::Benchmark(args) => {
            let threads = args.threads.threads;
            with_threads(threads, || benchmark(args))
        }
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn with_threads(
    threads: Option<usize>,
    run: impl FnOnce() -> CliResult<()> + Send,
) -> CliResult<()> {
    let Some(threads) = threads else {
        return run();
    };
    if threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Runtime(format!("cannot start worker threads: {e}")))?;
    pool.install(run)
}

fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))
}

fn read_data(path: &Path) -> CliResult<Vec<f64>> {
    parse_values(&read_text(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn generate(args: GenerateArgs) -> CliResult<()> {
    let spec = PiecewiseSpec::from_json(&read_text(&args.spec)?)?;
    let (series, taus) = gen_piecewise(&spec, args.seed)?;
    let mut text = String::with_capacity(series.len() * 4);
    for v in series.iter() {
        text.push_str(&v.to_string());
        text.push('\n');
    }
    write_text(&args.out, &text)?;
    let truth = json!({
        "taus": taus,
        "m": spec.process_count(),
        "lambda": spec.lambda(),
    });
    let truth_path = args
        .truth
        .unwrap_or_else(|| args.out.with_extension("truth.json"));
    write_text(&truth_path, &format!("{truth}\n"))
}

fn detect(args: DetectArgs) -> CliResult<()> {
    let x = read_data(&args.data)?;
    let params = distance_params(&args.distance, &x)?;
    let output = if args.list_only {
        let list = list_estimator(&x, args.min_distance, &params)?;
        json!({ "candidates": list.candidates })
    } else {
        // clap guarantees the flag when --list-only is absent.
        let process_count = args.process_count.unwrap_or_default();
        let changepoints = find_changepoints(&x, args.min_distance, process_count, &params)?;
        json!({ "changepoints": changepoints })
    };
    println!("{output}");
    Ok(())
}

fn distance(args: DistanceArgs) -> CliResult<()> {
    let x = read_data(&args.first)?;
    let y = read_data(&args.second)?;
    let combined: Vec<f64> = x.iter().chain(&y).copied().collect();
    let params = distance_params(&args.distance, &combined)?;
    let d = empirical_distance(&x, &y, &params)?;
    println!("{}", significant(d, 12));
    Ok(())
}

fn benchmark(args: BenchmarkArgs) -> CliResult<()> {
    let mut config = ExperimentConfig::from_json(&read_text(&args.config)?)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(iterations) = args.iterations {
        config.iterations = iterations;
    }
    if !args.n_values.is_empty() {
        config.n_values = args.n_values;
    }
    let result = run_sweep(&config)?;
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::Runtime(format!("{}: {e}", args.out_dir.display())))?;
    let csv_path = args.out_dir.join(format!("{}.csv", config.name));
    let json_path = args.out_dir.join(format!("{}.json", config.name));
    result.append_csv(&csv_path)?;
    result.write_json(&json_path)?;
    print!("{}", result.table());
    eprintln!("wrote {} and {}", csv_path.display(), json_path.display());
    Ok(())
}

fn distance_params(flags: &DistanceFlags, values: &[f64]) -> CliResult<DistanceParams> {
    let mut params = match flags.mode {
        None => DistanceParams::for_series(values),
        Some(ModeArg::Real) => DistanceParams::real(),
        Some(ModeArg::Discrete) => DistanceParams::discrete(alphabet_size(values)?),
    };
    if let Some(m) = flags.m_max {
        params = params.with_max_word_len(m);
    }
    if let Some(l) = flags.l_max {
        params = params.with_max_quant_depth(l);
    }
    params.validate()?;
    Ok(params)
}

/// Alphabet implied by nonnegative integer data: `max + 1`, at least 2.
fn alphabet_size(values: &[f64]) -> CliResult<u32> {
    let mut max = 0.0f64;
    for &v in values {
        if v < 0.0 || v.fract() != 0.0 || v > f64::from(u32::MAX - 1) {
            return Err(Failure::Usage(format!(
                "--mode discrete needs nonnegative integer symbols, found {v}"
            )));
        }
        max = max.max(v);
    }
    Ok((max as u32 + 1).max(2))
}
