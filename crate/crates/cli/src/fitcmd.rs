//! The `fit` subcommand: parse a sweep CSV, group rows, fit each group.

use crate::sweep::CSV_HEADER;
use crate::CliError;
use clap::Args;
use multipath_core::{fit_threshold, SweepRecord};
use std::collections::BTreeMap;

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Input CSV in the `run` schema
    #[arg(long = "in")]
    input: String,
    /// Output JSON path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

type GroupKey = (String, String, String);

fn parse_csv(text: &str, path: &str) -> Result<BTreeMap<GroupKey, Vec<SweepRecord>>, CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::runtime(format!("{path}: empty file")))?;
    if header.trim() != CSV_HEADER {
        return Err(CliError::runtime(format!(
            "{path}: schema mismatch, expected header '{CSV_HEADER}'"
        )));
    }
    let mut groups: BTreeMap<GroupKey, Vec<SweepRecord>> = BTreeMap::new();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(CliError::runtime(format!(
                "{path}:{}: expected 11 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let bad = |what: &str| {
            CliError::runtime(format!("{path}:{}: bad {what} field", lineno + 2))
        };
        let record = SweepRecord {
            d: fields[3].parse().map_err(|_| bad("d"))?,
            p: fields[4].parse().map_err(|_| bad("p"))?,
            trials: fields[5].parse().map_err(|_| bad("trials"))?,
            failures: fields[6].parse().map_err(|_| bad("failures"))?,
            rate: fields[7].parse().map_err(|_| bad("rate"))?,
            ci_low: fields[8].parse().map_err(|_| bad("ci_low"))?,
            ci_high: fields[9].parse().map_err(|_| bad("ci_high"))?,
        };
        let key = (
            fields[0].to_string(),
            fields[1].to_string(),
            fields[2].to_string(),
        );
        groups.entry(key).or_default().push(record);
    }
    if groups.is_empty() {
        return Err(CliError::runtime(format!("{path}: no data rows")));
    }
    Ok(groups)
}

pub fn run(args: FitArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::runtime(format!("cannot read {}: {e}", args.input)))?;
    let groups = parse_csv(&text, &args.input)?;

    let mut reports = Vec::new();
    for ((boundary, noise, decoder), records) in &groups {
        let fit = fit_threshold(records).map_err(|e| {
            CliError::runtime(format!("{boundary}/{noise}/{decoder}: {e}"))
        })?;
        reports.push(serde_json::json!({
            "boundary": boundary,
            "noise": noise,
            "decoder": decoder,
            "p_th": fit.p_th,
            "nu": fit.nu,
            "coeffs": fit.coeffs,
            "ci": fit.p_th_std,
            "n_points": fit.n_points,
        }));
    }
    let report = serde_json::json!({ "fits": reports });
    let pretty =
        serde_json::to_string_pretty(&report).map_err(|e| CliError::runtime(e.to_string()))?;
    match &args.out {
        Some(path) => std::fs::write(path, pretty + "\n")
            .map_err(|e| CliError::runtime(format!("cannot write {path}: {e}")))?,
        None => println!("{pretty}"),
    }
    Ok(())
}
