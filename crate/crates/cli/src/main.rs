//! Command-line front end: every analysis the library offers, as a verb that
//! emits aligned tables by default and plot-ready CSV or JSON on request.

mod commands;
mod format;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "perfwall",
    version,
    about = "Performance-wall modeling for parallelized sequential computing",
    long_about = "Computes effective parallelization and gain from measurements, composes the \
                  serial fraction of a modeled machine from its time contributions, sweeps \
                  payload against nominal performance to locate the performance wall, and \
                  analyzes TOP500-style benchmark datasets.\n\nPerformance values are Gflop/s; \
                  an explicit suffix converts other units (e.g. 1.1eflops = 1.1e9 Gflop/s)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct OutputArgs {
    /// Emit machine-readable CSV on stdout (full precision).
    #[arg(long, global = true)]
    csv: bool,
    /// Emit JSON on stdout (full precision).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Csv,
    Json,
}

impl OutputArgs {
    fn mode(self) -> OutputMode {
        if self.csv {
            OutputMode::Csv
        } else if self.json {
            OutputMode::Json
        } else {
            OutputMode::Text
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Effective parallelization and gain from a measured speedup or efficiency.
    Estimate {
        /// Measured speedup S (requires --k).
        #[arg(long, conflicts_with = "efficiency")]
        speedup: Option<f64>,
        /// Measured efficiency E = R_Max/R_Peak (requires --k).
        #[arg(long)]
        efficiency: Option<f64>,
        /// Processor count the measurement was taken at.
        #[arg(long)]
        k: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep payload vs nominal performance for a machine config and report the wall.
    Model {
        /// Machine description in key/value format.
        #[arg(long)]
        config: PathBuf,
        /// Sweep range MIN,MAX,N (performance values; suffixes allowed).
        #[arg(long)]
        sweep: String,
        /// Space the sweep logarithmically.
        #[arg(long)]
        log: bool,
        /// Write the sweep curve CSV to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the fork/join timeline and compare against the closed form.
    Simulate {
        /// Parallelizable fraction alpha of the workload.
        #[arg(long, conflicts_with = "one_minus_alpha")]
        alpha: Option<f64>,
        /// Serial complement 1-alpha (preferred near alpha = 1).
        #[arg(long)]
        one_minus_alpha: Option<f64>,
        /// Worker count.
        #[arg(long)]
        k: Option<u64>,
        /// Sequential addressing latency per worker, in time units (default 0).
        #[arg(long)]
        latency: Option<f64>,
        /// Comma-separated per-worker chunk skew factors.
        #[arg(long)]
        skew: Option<String>,
        /// Total single-processor time of the workload (default 1).
        #[arg(long)]
        t1: Option<f64>,
        /// Scenario file in key/value format (alternative to the flags).
        #[arg(long, conflicts_with_all = ["alpha", "one_minus_alpha", "k", "latency", "skew", "t1"])]
        scenario: Option<PathBuf>,
        /// Relative tolerance for the closed-form comparison.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Derived metrics and ranking regressions for a measurement CSV.
    Analyze {
        /// Input CSV: name,year,rank,cores,rpeak_gflops,rmax_gflops,benchmark,accelerator.
        file: PathBuf,
        /// Size of the leading-rank subset fitted separately.
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fit the per-year best serial complement against the year.
    Trend {
        file: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Frozen-alpha payload prediction from one record of a measurement CSV.
    Predict {
        file: PathBuf,
        /// Name of the base record.
        #[arg(long)]
        row: String,
        /// Nominal performance range MIN,MAX,N (suffixes allowed).
        #[arg(long)]
        rpeak: String,
        /// Space the range logarithmically.
        #[arg(long)]
        log: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Per-benchmark-class gain rooflines from a measurement CSV.
    Roofline {
        file: PathBuf,
        /// Gain constant for the brain-simulation roof.
        #[arg(long, default_value_t = 1e3)]
        brain_gain: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Efficiency over a (1-alpha) x k grid, as plot data.
    Surface {
        /// Serial-complement range LO,HI (log-spaced).
        #[arg(long)]
        alpha_range: String,
        /// Processor-count range LO,HI (log-spaced).
        #[arg(long)]
        k_range: String,
        /// Grid size N1xN2.
        #[arg(long)]
        grid: String,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    ExitCode::SUCCESS
                }
                _ => {
                    eprint!("{e}");
                    ExitCode::from(1)
                }
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            let internal = e
                .downcast_ref::<perfwall::Error>()
                .is_some_and(|pe| matches!(pe, perfwall::Error::Internal(_)));
            ExitCode::from(if internal { 2 } else { 1 })
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Estimate {
            speedup,
            efficiency,
            k,
            output,
        } => commands::estimate(speedup, efficiency, k, output.mode()),
        Command::Model {
            config,
            sweep,
            log,
            out,
            output,
        } => commands::model(&config, &sweep, log, out.as_deref(), output.mode()),
        Command::Simulate {
            alpha,
            one_minus_alpha,
            k,
            latency,
            skew,
            t1,
            scenario,
            tolerance,
            output,
        } => commands::simulate(commands::SimulateArgs {
            alpha,
            one_minus_alpha,
            k,
            latency,
            skew,
            t1,
            scenario,
            tolerance,
            mode: output.mode(),
        }),
        Command::Analyze { file, top, output } => commands::analyze(&file, top, output.mode()),
        Command::Trend { file, output } => commands::trend(&file, output.mode()),
        Command::Predict {
            file,
            row,
            rpeak,
            log,
            output,
        } => commands::predict(&file, &row, &rpeak, log, output.mode()),
        Command::Roofline {
            file,
            brain_gain,
            output,
        } => commands::roofline(&file, brain_gain, output.mode()),
        Command::Surface {
            alpha_range,
            k_range,
            grid,
            output,
        } => commands::surface(&alpha_range, &k_range, &grid, output.mode()),
    }
}
