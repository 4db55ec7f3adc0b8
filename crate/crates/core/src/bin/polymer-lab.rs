use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use polymer_lab::experiments::{find_experiment, parse_sizes, ExperimentConfig, ExperimentReport, EXPERIMENTS};
use polymer_lab::{Error, Result};

#[derive(Parser)]
#[command(name = "polymer-lab", version, about = "Monte Carlo experiments for the inverse-gamma directed polymer")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(clap::Args)]
struct Opts {
    /// Flat `key = value` config file, applied over the defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    replicas: Option<usize>,
    /// Comma-separated sizes, e.g. `64,128,256`.
    #[arg(long, global = true)]
    sizes: Option<String>,
    /// Output file; a directory for `all`. Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Transversal fluctuation exponent and segment-miss decay.
    KpzWandering,
    /// Exit-point tails of the stationary polymer.
    ExitTail,
    /// Largest edge-crossing probability across a square.
    CrossingDecay,
    /// Distributional tests of the stationary ratio structure.
    Burke,
    /// Segment resampling against the exact path measure.
    Gibbs,
    /// Small-ball probability of a log-gamma walk maximum.
    WalkMax,
    /// Identity checks for partition functions and ratio maps.
    Identities,
    /// Comparison inequalities and the conditional sandwiches.
    Inequalities,
    /// Monotone tree couplings.
    Couplings,
    /// Log-moment and stationary mean checks.
    Moments,
    /// Every Monte Carlo experiment in turn.
    All,
}

impl Command {
    fn name(&self) -> Option<&'static str> {
        Some(match self {
            Command::KpzWandering => "kpz-wandering",
            Command::ExitTail => "exit-tail",
            Command::CrossingDecay => "crossing-decay",
            Command::Burke => "burke",
            Command::Gibbs => "gibbs",
            Command::WalkMax => "walk-max",
            Command::Identities => "identities",
            Command::Inequalities => "inequalities",
            Command::Couplings => "couplings",
            Command::Moments => "moments",
            Command::All => return None,
        })
    }
}

fn build_config(name: &str, opts: &Opts) -> Result<ExperimentConfig> {
    let mut cfg = (find_experiment(name)?.default_config)();
    if let Some(path) = &opts.config {
        cfg.apply_file(path)?;
        if cfg.name != name {
            return Err(Error::Config(format!("config file is for '{}', not '{name}'", cfg.name)));
        }
    }
    if let Some(s) = opts.seed {
        cfg.seed = s;
    }
    if let Some(r) = opts.replicas {
        cfg.replicas = r;
    }
    if let Some(s) = &opts.sizes {
        cfg.sizes = parse_sizes(s)?;
    }
    if let Some(t) = opts.threads {
        cfg.threads = Some(t);
    }
    if let Some(o) = &opts.out {
        cfg.output_path = Some(o.clone());
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(report: &ExperimentReport, format: Format, out: Option<&Path>) -> Result<()> {
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Json => writeln!(sink, "{}", report.to_json()?)?,
        Format::Csv => report.write_csv(&mut sink)?,
    }
    sink.flush()?;
    Ok(())
}

fn summarize(report: &ExperimentReport, secs: f64) {
    eprintln!("{} ({secs:.1} s)", report.experiment);
    for v in &report.verdicts {
        eprintln!("  [{}] {}: {}", if v.passed { "pass" } else { "FAIL" }, v.name, v.detail);
    }
    for w in &report.warnings {
        eprintln!("  warning: {w}");
    }
}

fn run_one(cfg: &ExperimentConfig, format: Format, out: Option<&Path>) -> Result<bool> {
    let start = Instant::now();
    let report = (find_experiment(&cfg.name)?.run)(cfg)?;
    summarize(&report, start.elapsed().as_secs_f64());
    emit(&report, format, out)?;
    Ok(report.passed())
}

fn run(cli: &Cli) -> Result<bool> {
    match cli.command.name() {
        Some(name) => {
            let cfg = build_config(name, &cli.opts)?;
            run_one(&cfg, cli.opts.format, cfg.output_path.as_deref())
        }
        None => {
            if cli.opts.config.is_some() {
                return Err(Error::Config("--config applies to a single experiment, not `all`".into()));
            }
            let dir = cli.opts.out.clone();
            if let Some(d) = &dir {
                fs::create_dir_all(d)?;
            }
            let ext = if cli.opts.format == Format::Json { "json" } else { "csv" };
            let cfgs = EXPERIMENTS.iter().map(|e| build_config(e.name, &cli.opts)).collect::<Result<Vec<_>>>()?;
            let mut all = true;
            for cfg in &cfgs {
                let path = dir.as_ref().map(|d| d.join(format!("{}.{ext}", cfg.name)));
                all &= run_one(cfg, cli.opts.format, path.as_deref())?;
            }
            Ok(all)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
