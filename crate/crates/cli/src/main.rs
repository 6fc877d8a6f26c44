//! Command line front end: Monte-Carlo sweeps, threshold fits, and the
//! path-count / belief-trace / layout inspectors.

mod fitcmd;
mod inspect;
mod sweep;

use clap::{Parser, Subcommand};
use std::process::ExitCode;

/// Stable exit codes: 0 success, 2 usage error, 3 runtime failure.
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_RUNTIME: u8 = 3;

/// Default master seed, fixed so published transcripts reproduce exactly.
pub const DEFAULT_SEED: u64 = 271828;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> CliError {
        CliError::Usage(msg.into())
    }

    fn runtime(msg: impl Into<String>) -> CliError {
        CliError::Runtime(msg.into())
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => write!(f, "{m}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "multipath",
    version,
    about = "Surface-code decoding laboratory: sweeps, threshold fits and inspectors",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte-Carlo sweep and emit one CSV row per (distance, p) point.
    Run(sweep::RunArgs),
    /// Fit threshold crossings from a sweep CSV and emit a JSON report.
    Fit(fitcmd::FitArgs),
    /// Count and weigh minimum-length paths for a pair of tile coordinates.
    Paths(inspect::PathsArgs),
    /// Trace per-round belief-propagation marginals for one qubit as CSV.
    BpTrace(inspect::BpTraceArgs),
    /// Dump a layout (qubits, stabilizers, logicals) as JSON.
    LayoutDump(inspect::LayoutDumpArgs),
}

fn main() -> ExitCode {
    // Dying quietly on a closed pipe is friendlier than a panic when output
    // is piped into `head` and friends.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let first_line = e.to_string().lines().next().unwrap_or("bad usage").to_string();
            eprintln!("error: {first_line}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let result = match cli.command {
        Command::Run(args) => sweep::run(args),
        Command::Fit(args) => fitcmd::run(args),
        Command::Paths(args) => inspect::paths(args),
        Command::BpTrace(args) => inspect::bp_trace(args),
        Command::LayoutDump(args) => inspect::layout_dump(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_RUNTIME)
        }
    }
}

/// Shared flag-value parsers.
pub mod parse {
    use super::CliError;
    use multipath_core::{BoundaryKind, NoiseKind, PauliKind, StrategyKind};

    pub fn boundary(s: &str) -> Result<BoundaryKind, CliError> {
        match s {
            "rotated" => Ok(BoundaryKind::Rotated),
            "planar" => Ok(BoundaryKind::SmoothRough),
            _ => Err(CliError::usage(format!(
                "unknown boundary '{s}' (expected rotated|planar)"
            ))),
        }
    }

    pub fn noise(s: &str) -> Result<NoiseKind, CliError> {
        match s {
            "iidxz" => Ok(NoiseKind::IidXz),
            "depolarizing" => Ok(NoiseKind::Depolarizing),
            _ => Err(CliError::usage(format!(
                "unknown noise '{s}' (expected iidxz|depolarizing)"
            ))),
        }
    }

    pub fn decoder(s: &str) -> Result<StrategyKind, CliError> {
        match s {
            "manhattan" => Ok(StrategyKind::Manhattan),
            "uniform" => Ok(StrategyKind::Uniform),
            "pathcount" => Ok(StrategyKind::PathCount),
            "bp-multipath" => Ok(StrategyKind::BpMultipath),
            _ => Err(CliError::usage(format!(
                "unknown decoder '{s}' (expected manhattan|uniform|pathcount|bp-multipath)"
            ))),
        }
    }

    pub fn pauli_type(s: &str) -> Result<PauliKind, CliError> {
        match s {
            "x" | "X" => Ok(PauliKind::X),
            "z" | "Z" => Ok(PauliKind::Z),
            _ => Err(CliError::usage(format!("unknown pauli type '{s}' (expected x|z)"))),
        }
    }

    pub fn distances(s: &str) -> Result<Vec<u32>, CliError> {
        s.split(',')
            .map(|part| {
                part.trim()
                    .parse::<u32>()
                    .map_err(|_| CliError::usage(format!("bad distance '{part}'")))
            })
            .collect()
    }

    /// Either a comma list or an inclusive start:stop:step range.
    pub fn p_values(s: &str) -> Result<Vec<f64>, CliError> {
        let bad = |part: &str| CliError::usage(format!("bad error rate '{part}'"));
        if s.contains(':') {
            let parts: Vec<&str> = s.split(':').collect();
            if parts.len() != 3 {
                return Err(CliError::usage(format!(
                    "bad range '{s}' (expected start:stop:step)"
                )));
            }
            let start: f64 = parts[0].trim().parse().map_err(|_| bad(parts[0]))?;
            let stop: f64 = parts[1].trim().parse().map_err(|_| bad(parts[1]))?;
            let step: f64 = parts[2].trim().parse().map_err(|_| bad(parts[2]))?;
            if step <= 0.0 || stop < start {
                return Err(CliError::usage(format!("empty range '{s}'")));
            }
            let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| start + step * i as f64).collect())
        } else {
            s.split(',')
                .map(|part| part.trim().parse::<f64>().map_err(|_| bad(part)))
                .collect()
        }
    }

    pub fn coordinate(s: &str) -> Result<(i32, i32), CliError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 2 {
            return Err(CliError::usage(format!("bad coordinate '{s}' (expected x,y)")));
        }
        let x = parts[0].trim().parse().map_err(|_| CliError::usage(format!("bad coordinate '{s}'")))?;
        let y = parts[1].trim().parse().map_err(|_| CliError::usage(format!("bad coordinate '{s}'")))?;
        Ok((x, y))
    }
}
