mod commands;
mod input;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use report::Outcome;

#[derive(Parser, Debug)]
#[command(name = "hofflat", version, about = "Exact spectral and lattice checks for graphs with smallest eigenvalue at least -3")]
struct Cli {
    /// Worker threads for sharded searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Include wall-clock timing in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Float spectrum and a certified bracket for the smallest eigenvalue.
    Eigen { input: String },
    /// Exact PSD test of M + tI for a matrix, or A + tI for a graph.
    Psd {
        input: String,
        /// Shift, an integer or a fraction p/q.
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
    },
    /// Special matrix of a Hoffman graph.
    Sp { input: String },
    /// Associated Hoffman graph g(G,m,n).
    Assoc {
        input: String,
        #[arg(short = 'm')]
        m: usize,
        #[arg(short = 'n')]
        n: usize,
        /// Allow n below (m+1)^2.
        #[arg(long)]
        relaxed: bool,
    },
    /// Decide s-integrability of A + tI, t = -floor(lambda_min).
    Certify {
        input: String,
        #[arg(long = "s", default_value_t = 1)]
        s: u64,
        #[arg(short = 'm', default_value_t = 12)]
        m: usize,
    },
    /// Decide s-integrability of a Gram matrix.
    Decompose {
        input: String,
        #[arg(long = "s", default_value_t = 1)]
        s: u64,
    },
    /// Enumerate candidate matrices and realize them as Hoffman graphs.
    EnumForbidden {
        #[arg(long, default_value_t = 5)]
        max_order: usize,
        /// Stop when a level holds more classes than this.
        #[arg(long, default_value_t = 2_000_000)]
        max_classes: usize,
    },
    /// Check a candidate matrix and realize it as a fat Hoffman graph.
    Realize { input: String },
    /// Spectra of the limit matrices for n = 1..nmax.
    Limit {
        input: String,
        /// Comma-separated indices of I2.
        #[arg(long, value_delimiter = ',')]
        i2: Vec<usize>,
        #[arg(long, default_value_t = 30)]
        nmax: usize,
    },
    /// Print a graph from a family in graph file format.
    Gen {
        family: String,
        params: Vec<String>,
        /// Base graph file for cone families.
        #[arg(long)]
        base: Option<String>,
    },
    /// Parse a graph file and optionally check strong regularity.
    Ingest {
        input: String,
        /// n,k,lambda,mu
        #[arg(long, value_delimiter = ',')]
        expect_srg: Option<Vec<usize>>,
    },
    /// Re-verify a certificate (or a report embedding one) against an input.
    Verify { input: String, certificate: String },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build_global() {
        eprintln!("error: thread pool: {e}");
        return ExitCode::from(3);
    }
    let start = Instant::now();
    let outcome = commands::run(&cli.command, cli.seed);
    match outcome {
        Ok(Outcome::Report(r)) => finish(r, &argv, cli.timing.then(|| start.elapsed().as_millis() as u64)),
        Ok(Outcome::Lines(lines, r)) => {
            for l in lines {
                println!("{l}");
            }
            finish(r, &argv, cli.timing.then(|| start.elapsed().as_millis() as u64))
        }
        Ok(Outcome::Text(text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn finish(mut r: report::RunReport, argv: &[String], timing_ms: Option<u64>) -> ExitCode {
    r.command = argv[1..].to_vec();
    r.timing_ms = timing_ms;
    println!("{}", r.to_json());
    ExitCode::from(r.exit_code)
}
