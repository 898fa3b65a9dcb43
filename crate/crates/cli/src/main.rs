use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod check;
mod commands;
mod config;
mod error;
mod plot;

use commands::JobArgs;
use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "pinchwork", version, about = "Certified compressions and pinchings of matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample the numerical range boundary; optionally certify a disc.
    Numrange(JobArgs),
    /// Estimate the essential numerical range from corner compressions.
    Essrange(JobArgs),
    /// Unitary and normal dilations of each target.
    Dilate(JobArgs),
    /// Realize each target as a single compression of the host.
    Compress(JobArgs),
    /// Realize all targets on mutually orthogonal frames.
    Pinch(JobArgs),
    /// Run a built-in property suite: walsh, parker, dilation, numrange, pinch or all.
    Check {
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also write the JSON summary to this file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn run_check(suite: &str, seed: u64, out: &Option<PathBuf>) -> CliResult<String> {
    let summary = check::run(suite, seed, |r| {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("{tag} {}/{} ({:.2}s): {}", r.suite, r.name, r.seconds, r.detail);
    })
    .ok_or_else(|| CliError::Usage(format!("unknown suite {suite:?}; expected one of {:?} or all", check::SUITES)))?;
    let json = serde_json::to_string(&summary).expect("serializable summary");
    if let Some(path) = out {
        config::write_file(path, &format!("{json}\n"))?;
    }
    if summary.failed > 0 {
        println!("{json}");
        return Err(CliError::Certification(format!("{} of {} checks failed", summary.failed, summary.results.len())));
    }
    Ok(json)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Numrange(a) => commands::numrange(a),
        Command::Essrange(a) => commands::essrange(a),
        Command::Dilate(a) => commands::dilate(a),
        Command::Compress(a) => commands::compress_cmd(a),
        Command::Pinch(a) => commands::pinch(a),
        Command::Check { suite, seed, out } => run_check(suite, *seed, out),
    };
    match result {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
