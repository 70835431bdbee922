//! `noma-sim`: figure tables, sweeps, closed-form validation and
//! comparison-count tables for the MIMO-NOMA antenna selection simulator.
//!
//! Exit codes: 0 success, 1 configuration error, 2 validation failure,
//! 3 I/O error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use noma_core::harness::{self, parse_values, report_table, workers_from_env, Axis, Scenario, ValidationGrid};
use noma_core::selection;
use noma_core::{ChannelRealization, Error, PowerSplit};

#[derive(Parser)]
#[command(name = "noma-sim", version, about = "Antenna selection simulator for two-user MIMO-NOMA downlinks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the CSV table of one figure.
    Figure {
        /// Figure number, 1 to 8.
        #[arg(long)]
        id: u8,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep one scenario parameter and print a CSV table.
    Sweep {
        /// Scenario file of `key = value` lines.
        #[arg(long)]
        scenario: PathBuf,
        /// One of ps_dbm, n_bs, d1, d2, b, r_th.
        #[arg(long)]
        axis: String,
        /// Comma-separated axis values.
        #[arg(long, allow_hyphen_values = true)]
        values: String,
        /// Write the table here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare closed forms against simulation over a grid file.
    Validate {
        #[arg(long)]
        grid: PathBuf,
    },
    /// Print comparison counts of every policy next to its bound.
    Bench {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
}

enum Failure {
    Core(Error),
    Validation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn io_error(path: &str, source: std::io::Error) -> Failure {
    Failure::Core(Error::Io { path: path.to_string(), source })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Figure { id, trials, seed, out } => {
            let workers = workers_from_env()?;
            let table = harness::reproduce_figure(id, trials, seed, workers)?;
            table.write_csv(&out)?;
        }
        Command::Sweep { scenario, axis, values, out } => {
            let workers = workers_from_env()?;
            let base = Scenario::load(&scenario)?;
            let axis: Axis = axis.parse()?;
            let values = parse_values(&values)?;
            let rows = harness::sweep(&base, axis, &values, workers)?;
            let table = report_table(axis, &rows);
            match out {
                Some(path) => table.write_csv(&path)?,
                None => std::io::stdout().write_all(table.to_csv().as_bytes()).map_err(|e| io_error("<stdout>", e))?,
            }
        }
        Command::Validate { grid } => {
            let workers = workers_from_env()?;
            let grid = ValidationGrid::load(&grid)?;
            let report = harness::validate_asymptotics(&grid, workers)?;
            print!("{report}");
            if !report.passed() {
                return Err(Failure::Validation);
            }
        }
        Command::Bench { max_n, m, k } => bench(max_n, m, k)?,
    }
    Ok(())
}

fn bench(max_n: usize, m: usize, k: usize) -> Result<(), Failure> {
    if max_n == 0 || m == 0 || k == 0 {
        return Err(Error::Config("antenna counts must be at least 1".into()).into());
    }
    let split = PowerSplit::fnoma(0.4)?;
    let (rho, r_th) = (1e13, 5.0);
    println!("{:<10} {:>3} {:>3} {:>3} {:>10} {:>10}", "policy", "N", "M", "K", "evals", "bound");
    for n in 1..=max_n {
        // Counts depend only on the shape, so any gains will do.
        let h = (0..n * m).map(|i| 1.0 + i as f64).collect();
        let g = (0..n * k).map(|i| 0.5 + i as f64).collect();
        let ch = ChannelRealization::from_gains(n, m, k, h, g)?;
        let rows = [
            ("es_fnoma", selection::es_fnoma(&ch, split, rho).eval_count, n * m * k),
            ("es_crnoma", selection::es_crnoma(&ch, rho, r_th).eval_count, n * m * k),
            ("a3", selection::a3_as(&ch, split).eval_count, n * (m + k + 3)),
            ("aia", selection::aia_as(&ch, split).eval_count, n * (m + k + 3)),
            ("mcg", selection::mcg_as(&ch, rho, r_th).eval_count, n * (m + k) + 2),
            ("pu", selection::pu_as(&ch, rho, r_th).eval_count, n * k + m),
            ("su", selection::su_as(&ch, rho, r_th).eval_count, n * m + k),
        ];
        for (name, evals, bound) in rows {
            println!("{name:<10} {n:>3} {m:>3} {k:>3} {evals:>10} {bound:>10}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation) => {
            eprintln!("validation failed: at least one point exceeds its tolerance");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io { .. } => 3,
                _ => 1,
            })
        }
    }
}
