//! The `run` subcommand: sweep execution with streaming CSV output.

use crate::{parse, CliError, DEFAULT_SEED};
use clap::Args;
use multipath_core::{boundary_label, noise_label, run_sweep_with, SweepConfig, SweepRecord};
use std::collections::HashMap;
use std::io::Write;

pub const CSV_HEADER: &str = "boundary,noise,decoder,d,p,trials,failures,rate,ci_low,ci_high,seed";

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Lattice boundary: rotated|planar
    #[arg(long)]
    boundary: Option<String>,
    /// Noise model: iidxz|depolarizing
    #[arg(long)]
    noise: Option<String>,
    /// Edge-weight strategy: manhattan|uniform|pathcount|bp-multipath
    #[arg(long)]
    decoder: Option<String>,
    /// Comma list of code distances, e.g. 5,9,13
    #[arg(long)]
    dist: Option<String>,
    /// Error rates: comma list or start:stop:step range
    #[arg(long)]
    p: Option<String>,
    /// Monte-Carlo trials per (distance, p) point
    #[arg(long)]
    trials: Option<String>,
    /// Master seed for the per-trial random streams
    #[arg(long)]
    seed: Option<String>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
    /// Worker threads (0 = one per CPU)
    #[arg(long)]
    workers: Option<String>,
    /// Config file with `key = value` lines; flags take precedence
    #[arg(long)]
    config: Option<String>,
}

fn read_config(path: &str) -> Result<HashMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read config {path}: {e}")))?;
    let mut map = HashMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::usage(format!(
                "{path}:{}: expected `key = value`",
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// CSV row with round-trip float formatting so reruns are byte-identical.
pub fn csv_row(
    boundary: &str,
    noise: &str,
    decoder: &str,
    record: &SweepRecord,
    seed: u64,
) -> String {
    format!(
        "{boundary},{noise},{decoder},{},{},{},{},{},{},{},{seed}",
        record.d, record.p, record.trials, record.failures, record.rate, record.ci_low,
        record.ci_high
    )
}

pub fn run(args: RunArgs) -> Result<(), CliError> {
    let file_config = match &args.config {
        Some(path) => read_config(path)?,
        None => HashMap::new(),
    };
    let pick = |flag: &Option<String>, key: &str| -> Option<String> {
        flag.clone().or_else(|| file_config.get(key).cloned())
    };
    let require = |flag: &Option<String>, key: &str| -> Result<String, CliError> {
        pick(flag, key).ok_or_else(|| CliError::usage(format!("missing required option --{key}")))
    };

    let boundary = parse::boundary(&require(&args.boundary, "boundary")?)?;
    let noise = parse::noise(&require(&args.noise, "noise")?)?;
    let strategy = parse::decoder(&require(&args.decoder, "decoder")?)?;
    let distances = parse::distances(&require(&args.dist, "dist")?)?;
    let ps = parse::p_values(&require(&args.p, "p")?)?;
    let trials: u64 = require(&args.trials, "trials")?
        .parse()
        .map_err(|_| CliError::usage("bad --trials value"))?;
    let seed: u64 = match pick(&args.seed, "seed") {
        Some(s) => s.parse().map_err(|_| CliError::usage("bad --seed value"))?,
        None => DEFAULT_SEED,
    };
    let workers: usize = match pick(&args.workers, "workers") {
        Some(s) => s.parse().map_err(|_| CliError::usage("bad --workers value"))?,
        None => 0,
    };
    let out = pick(&args.out, "out");

    let config = SweepConfig {
        boundary,
        noise,
        strategy,
        distances,
        ps,
        trials,
        seed,
    };

    let mut writer: Box<dyn Write + Send> = match &out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| CliError::runtime(format!("cannot create {path}: {e}")))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    writeln!(writer, "{CSV_HEADER}").map_err(|e| CliError::runtime(e.to_string()))?;
    writer.flush().ok();

    let boundary_name = boundary_label(boundary);
    let noise_name = noise_label(noise);
    let decoder_name = strategy.label();
    let mut io_error: Option<String> = None;
    let emit = |record: &SweepRecord| {
        let row = csv_row(boundary_name, noise_name, decoder_name, record, seed);
        if let Err(e) = writeln!(writer, "{row}").and_then(|_| writer.flush()) {
            io_error.get_or_insert(e.to_string());
        }
    };

    let sweep = || run_sweep_with(&config, emit);
    let result = if workers == 0 {
        sweep()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| CliError::runtime(e.to_string()))?
            .install(sweep)
    };
    result.map_err(|e| CliError::usage(e.to_string()))?;
    if let Some(e) = io_error {
        return Err(CliError::runtime(format!("write failed: {e}")));
    }
    Ok(())
}
