use std::io;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use robin_core::arith::default_workers;
use robin_core::rigor::{MAX_PRECISION, MIN_PRECISION};
use robin_core::verify::SpecId;

mod commands;
mod output;

use output::{Config, Format};

const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "robin", version)]
#[command(about = "Rigorous checks of Robin-type divisor-sum inequalities")]
struct Cli {
    /// Working precision in bits for enclosures
    #[arg(long, global = true, env = "ROBIN_PRECISION", default_value_t = 128,
          value_parser = clap::value_parser!(u32).range(i64::from(MIN_PRECISION)..=i64::from(MAX_PRECISION)))]
    precision: u32,

    /// Integers per sieve segment
    #[arg(long, global = true, env = "ROBIN_SEGMENT_SIZE", default_value_t = 1 << 22,
          value_parser = clap::value_parser!(u64).range(1 << 10..))]
    segment_size: u64,

    /// Worker threads (default: logical cores)
    #[arg(long, global = true, env = "ROBIN_WORKERS",
          value_parser = clap::value_parser!(u64).range(1..=1024))]
    workers: Option<u64>,

    #[arg(
        long,
        global = true,
        env = "ROBIN_FORMAT",
        value_enum,
        default_value = "json"
    )]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// sigma(n), its factorization and Robin's inequality at n
    Sigma { n: u64 },
    /// Prime factorization of n
    Factor { n: u64 },
    /// Check an inequality on every integer in [from, to)
    Scan {
        #[arg(long, value_parser = parse_spec)]
        ineq: SpecId,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// All n <= limit where an inequality fails or is inapplicable
    Exceptions {
        #[arg(long, value_parser = parse_spec)]
        ineq: SpecId,
        #[arg(long)]
        limit: u64,
    },
    /// Primorial table: theta(p_k) and R_t(N_k) for k <= k-max
    Primorials {
        #[arg(long, default_value_t = 100)]
        k_max: u64,
        #[arg(long, default_value_t = 2)]
        t: u32,
    },
    /// Re-verify a certificate chain
    Certificate {
        #[arg(value_enum)]
        which: commands::Certificate,
    },
    /// Colossally abundant numbers up to log n <= max-log-n, checked against Robin
    CaScan {
        #[arg(long, default_value_t = 10_000.0)]
        max_log_n: f64,
    },
    /// Champions of Psi_t(n)/n and exhaustive primorial-maximality checks
    Champions {
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
        #[arg(long, default_value_t = 2)]
        t: u32,
        /// Primorial indices for the exhaustive R_t check
        #[arg(long, value_delimiter = ',')]
        lemma_k: Vec<u64>,
    },
}

fn parse_spec(s: &str) -> Result<SpecId, String> {
    s.parse().map_err(|e: robin_core::Error| e.to_string())
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Sigma { .. } => "sigma",
            Command::Factor { .. } => "factor",
            Command::Scan { .. } => "scan",
            Command::Exceptions { .. } => "exceptions",
            Command::Primorials { .. } => "primorials",
            Command::Certificate { .. } => "certificate",
            Command::CaScan { .. } => "ca-scan",
            Command::Champions { .. } => "champions",
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let config = Config {
        precision: cli.precision,
        segment_size: cli.segment_size,
        workers: cli.workers.map_or_else(default_workers, |w| w as usize),
        format: cli.format,
    };
    let start = Instant::now();
    let outcome = match commands::run(&cli.command, &config) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("robin {}: {e}", cli.command.name());
            return ExitCode::from(commands::error_exit(&e));
        }
    };
    let wall = start.elapsed().as_secs_f64();
    let mut stdout = io::stdout().lock();
    if let Err(e) = output::render(&mut stdout, cli.command.name(), &config, &outcome, wall) {
        eprintln!("robin: writing report: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.exit as u8)
}
