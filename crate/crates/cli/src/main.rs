use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lcpkit::Algo;

mod commands;

#[derive(Parser)]
#[command(name = "lcpkit", version, about = "Build, verify and benchmark LCP arrays")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the LCP array of a file (SA and BWT are cached next to it).
    Build(BuildArgs),
    /// Check an LCP file against a reference construction.
    Verify {
        input: PathBuf,
        lcp: PathBuf,
    },
    /// Report BWT runs, irreducible entries and LCP value statistics.
    Stats {
        input: PathBuf,
        /// Thresholds for the share of LCP values above m (comma separated).
        #[arg(long = "m", value_delimiter = ',', default_value = "254")]
        m: Vec<u32>,
        /// Also write the report as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Time the constructions and write one CSV row per algorithm.
    Bench(BenchArgs),
}

#[derive(Args, Clone)]
pub struct Tuning {
    /// Threshold of the hybrid algorithm's first phase (1..=254).
    #[arg(long = "m", default_value_t = lcpkit::DEFAULT_M, value_parser = clap::value_parser!(u8).range(1..=254))]
    pub m: u8,
    /// Memory per character queue of go2, in bytes.
    #[arg(long = "queue-buf", default_value_t = lcpkit::go::DEFAULT_QUEUE_BUF)]
    pub queue_buf: usize,
    /// Directory for temporary files.
    #[arg(long)]
    pub tmp: Option<PathBuf>,
}

#[derive(Args)]
pub struct BuildArgs {
    pub input: PathBuf,
    #[arg(long, default_value = "hybrid")]
    pub algo: Algo,
    #[command(flatten)]
    pub tuning: Tuning,
    /// Output LCP file (default: <input>.lcp).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct BenchArgs {
    pub input: PathBuf,
    /// Algorithms to run (comma separated; default all).
    #[arg(long, value_delimiter = ',')]
    pub algo: Vec<Algo>,
    #[arg(long, default_value_t = 3)]
    pub repeat: usize,
    #[command(flatten)]
    pub tuning: Tuning,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Run the algorithms concurrently, each with a private temp directory.
    #[arg(long)]
    pub parallel: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Command::Build(a) => commands::build(&a),
        Command::Verify { input, lcp } => commands::verify(&input, &lcp),
        Command::Stats { input, m, csv } => commands::stats(&input, &m, csv.as_deref()),
        Command::Bench(a) => commands::bench(&a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("lcpkit: {e}");
            ExitCode::from(2)
        }
    }
}
