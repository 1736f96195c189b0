use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use incflow::bench;
use incflow::{parse_stream, run, MuChoice, RunOptions, StatsDoc, Strategy, Workload};

#[derive(Parser)]
#[command(
    name = "incflow",
    version,
    about = "Incremental max-flow stream replay"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a stream and print one line per query.
    Run {
        /// Stream file, or `-` for stdin.
        #[arg(long)]
        stream: PathBuf,
        #[arg(long, value_enum, default_value_t = StrategyArg::Approx)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        /// `auto` or a non-negative integer.
        #[arg(long, default_value = "auto")]
        mu: MuArg,
        /// Check every query against an exact oracle.
        #[arg(long)]
        verify: bool,
        /// Print run statistics to stderr.
        #[arg(long, value_enum)]
        stats: Option<StatsFormat>,
    },
    /// Generate a stream file.
    Gen {
        #[command(subcommand)]
        model: Model,
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        /// Emit a query after every k inserts; 0 keeps only the final query.
        #[arg(long, global = true, default_value_t = 1)]
        query_every: usize,
        /// Output file; stdout when absent.
        #[arg(long, short, global = true)]
        output: Option<PathBuf>,
    },
    /// Time the approximate structure at growing sizes.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = [10_000usize, 40_000, 160_000])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0.5)]
        epsilon: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = BenchModel::Layered)]
        workload: BenchModel,
        #[arg(long, value_enum, default_value_t = StatsFormat::Text)]
        stats: StatsFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchModel {
    Layered,
    ParallelPaths,
}

#[derive(Subcommand)]
enum Model {
    Gnm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    Layered {
        #[arg(long)]
        width: usize,
        #[arg(long)]
        depth: usize,
        /// Total edge count, at least width * (depth + 1).
        #[arg(long)]
        edges: Option<usize>,
    },
    ParallelPaths {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        len: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Approx,
    ExactBmf,
    NaiveStatic,
}

#[derive(Clone, Copy, ValueEnum)]
enum StatsFormat {
    Json,
    Text,
}

#[derive(Clone, Copy)]
struct MuArg(MuChoice);

impl FromStr for MuArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(MuArg(MuChoice::Auto));
        }
        s.parse()
            .map(|mu| MuArg(MuChoice::Fixed(mu)))
            .map_err(|_| format!("expected `auto` or a non-negative integer, got `{s}`"))
    }
}

fn main() -> anyhow::Result<()> {
    match Cli::parse().command {
        Command::Run {
            stream,
            strategy,
            epsilon,
            mu,
            verify,
            stats,
        } => {
            let live = stream.as_os_str() == "-";
            let text = if live {
                let mut buf = String::new();
                io::stdin().read_to_string(&mut buf)?;
                buf
            } else {
                fs::read_to_string(&stream)
                    .with_context(|| format!("reading {}", stream.display()))?
            };
            let parsed = parse_stream(&text).context("parsing stream")?;
            let strategy = match strategy {
                StrategyArg::Approx => Strategy::Approx {
                    eps: epsilon,
                    mu: mu.0,
                },
                StrategyArg::ExactBmf => Strategy::ExactBmf { mu: mu.0 },
                StrategyArg::NaiveStatic => Strategy::NaiveStatic,
            };
            let report = run(&parsed, strategy, RunOptions { verify, live })?;
            io::stdout().write_all(report.query_lines().as_bytes())?;
            if let Some(format) = stats {
                let doc = StatsDoc::from_report(&report);
                let body = match format {
                    StatsFormat::Json => doc.to_json() + "\n",
                    StatsFormat::Text => doc.to_text(),
                };
                io::stderr().write_all(body.as_bytes())?;
            }
        }
        Command::Gen {
            model,
            seed,
            query_every,
            output,
        } => {
            let workload = match model {
                Model::Gnm { n, m } => Workload::Gnm { n, m },
                Model::Layered {
                    width,
                    depth,
                    edges,
                } => Workload::Layered {
                    width,
                    depth,
                    edges,
                },
                Model::ParallelPaths { k, len } => Workload::ParallelPaths { k, len },
            };
            let text = workload.render(seed, query_every)?;
            match output {
                Some(path) => {
                    fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?
                }
                None => io::stdout().write_all(text.as_bytes())?,
            }
        }
        Command::Bench {
            sizes,
            epsilon,
            seed,
            workload,
            stats,
        } => {
            if sizes.is_empty() {
                bail!("--sizes needs at least one value");
            }
            let workload = match workload {
                BenchModel::Layered => bench::BenchWorkload::Layered,
                BenchModel::ParallelPaths => bench::BenchWorkload::ParallelPaths,
            };
            let rows = bench::scaling(workload, &sizes, epsilon, seed)?;
            let body = match stats {
                StatsFormat::Json => serde_json::to_string_pretty(&rows)? + "\n",
                StatsFormat::Text => bench::render_text(&rows),
            };
            io::stdout().write_all(body.as_bytes())?;
        }
    }
    Ok(())
}
