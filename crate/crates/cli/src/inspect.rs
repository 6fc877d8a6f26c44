//! Debug inspectors: path counting, belief traces, layout dumps.

use crate::{parse, CliError};
use clap::Args;
use multipath_core::{
    build_boundary_dag, build_layout, build_pair_dag, build_traversal_dag, extract_syndrome,
    tanner_graph, BoundingBoxDag, BpOptions, NoiseKind, NoiseModel, Pauli, PauliError,
    QubitOdds,
};
use std::io::Write;

#[derive(Debug, Args)]
pub struct PathsArgs {
    /// Lattice boundary: rotated|planar
    #[arg(long, default_value = "rotated")]
    boundary: String,
    /// Code distance
    #[arg(long)]
    dist: u32,
    /// Source check tile coordinate, e.g. 4,10
    #[arg(long)]
    from: Option<String>,
    /// Target check tile coordinate
    #[arg(long, conflicts_with_all = ["to_boundary", "traversal"])]
    to: Option<String>,
    /// Count paths from --from to its nearest boundary
    #[arg(long, conflicts_with = "traversal")]
    to_boundary: bool,
    /// Count minimum-length logical chains across the whole lattice
    #[arg(long)]
    traversal: bool,
    /// Error component for --traversal: x|z
    #[arg(long = "type", default_value = "x")]
    pauli_type: String,
    /// JSON file mapping qubit index to odds (default 1.0 everywhere)
    #[arg(long)]
    odds_file: Option<String>,
}

fn check_at(
    layout: &multipath_core::CodeLayout,
    coord: (i32, i32),
) -> Result<u32, CliError> {
    layout
        .stabilizers
        .iter()
        .position(|s| s.tile == coord)
        .map(|i| i as u32)
        .ok_or_else(|| {
            CliError::runtime(format!(
                "coordinate {},{} is not a check tile of this lattice",
                coord.0, coord.1
            ))
        })
}

fn load_odds(path: &Option<String>, n_qubits: u32) -> Result<QubitOdds, CliError> {
    let mut odds = QubitOdds::uniform(n_qubits, 1.0);
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read odds file {path}: {e}")))?;
        let map: std::collections::BTreeMap<String, f64> = serde_json::from_str(&text)
            .map_err(|e| CliError::usage(format!("bad odds file {path}: {e}")))?;
        for (key, value) in map {
            let q: u32 = key
                .parse()
                .map_err(|_| CliError::usage(format!("bad qubit index '{key}' in {path}")))?;
            if q >= n_qubits || !(value > 0.0) {
                return Err(CliError::usage(format!(
                    "odds for qubit {q} out of range in {path}"
                )));
            }
            odds.values[q as usize] = value;
        }
    }
    Ok(odds)
}

fn report_dag(dag: &BoundingBoxDag, odds: &QubitOdds) -> Result<(), CliError> {
    let sum = dag
        .path_sum(&odds.for_dag(dag))
        .map_err(|e| CliError::runtime(e.to_string()))?;
    println!("num_paths = {}", dag.num_paths());
    println!("min_length = {}", dag.min_length());
    println!("path_sum = {sum}");
    Ok(())
}

pub fn paths(args: PathsArgs) -> Result<(), CliError> {
    let boundary = parse::boundary(&args.boundary)?;
    let layout =
        build_layout(args.dist, boundary).map_err(|e| CliError::usage(e.to_string()))?;
    let odds = load_odds(&args.odds_file, layout.n_qubits())?;

    if args.traversal {
        let component = parse::pauli_type(&args.pauli_type)?;
        let dag = build_traversal_dag(&layout, component);
        return report_dag(&dag, &odds);
    }

    let from = parse::coordinate(
        args.from
            .as_deref()
            .ok_or_else(|| CliError::usage("--from is required"))?,
    )?;
    let source = check_at(&layout, from)?;
    let dag = if args.to_boundary {
        build_boundary_dag(&layout, source).map_err(|e| CliError::runtime(e.to_string()))?
    } else {
        let to = parse::coordinate(
            args.to
                .as_deref()
                .ok_or_else(|| CliError::usage("one of --to, --to-boundary, --traversal is required"))?,
        )?;
        let target = check_at(&layout, to)?;
        build_pair_dag(&layout, source, target).map_err(|e| CliError::runtime(e.to_string()))?
    };
    report_dag(&dag, &odds)
}

#[derive(Debug, Args)]
pub struct BpTraceArgs {
    /// Code distance
    #[arg(long)]
    dist: u32,
    /// Lattice boundary: rotated|planar
    #[arg(long, default_value = "rotated")]
    boundary: String,
    /// Depolarizing strength of the prior channel
    #[arg(long)]
    noise_p: f64,
    /// Error to decode, e.g. "6:X;11:Z" (semicolon-separated qubit:P)
    #[arg(long)]
    error: String,
    /// Belief-propagation rounds
    #[arg(long)]
    rounds: u32,
    /// Qubit whose marginals are traced
    #[arg(long)]
    qubit: u32,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

fn parse_error_spec(spec: &str, n_qubits: u32) -> Result<PauliError, CliError> {
    let mut error = PauliError::identity(n_qubits);
    for part in spec.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Some((q, p)) = part.split_once(':') else {
            return Err(CliError::usage(format!(
                "bad error spec '{part}' (expected qubit:P with P in X,Y,Z)"
            )));
        };
        let q: u32 = q
            .trim()
            .parse()
            .map_err(|_| CliError::usage(format!("bad qubit index '{q}'")))?;
        if q >= n_qubits {
            return Err(CliError::usage(format!(
                "qubit {q} out of range (layout has {n_qubits})"
            )));
        }
        let pauli = match p.trim() {
            "X" | "x" => Pauli::X,
            "Y" | "y" => Pauli::Y,
            "Z" | "z" => Pauli::Z,
            other => {
                return Err(CliError::usage(format!(
                    "bad pauli '{other}' in error spec (expected X, Y or Z)"
                )))
            }
        };
        error.set_pauli(q, pauli);
    }
    Ok(error)
}

pub fn bp_trace(args: BpTraceArgs) -> Result<(), CliError> {
    let boundary = parse::boundary(&args.boundary)?;
    let layout =
        build_layout(args.dist, boundary).map_err(|e| CliError::usage(e.to_string()))?;
    if args.qubit >= layout.n_qubits() {
        return Err(CliError::usage(format!(
            "qubit {} out of range (layout has {})",
            args.qubit,
            layout.n_qubits()
        )));
    }
    let model = NoiseModel::new(NoiseKind::Depolarizing, args.noise_p)
        .map_err(|e| CliError::usage(e.to_string()))?;
    let error = parse_error_spec(&args.error, layout.n_qubits())?;
    let tanner = tanner_graph(&layout);
    let syndrome =
        extract_syndrome(&layout, &error).map_err(|e| CliError::runtime(e.to_string()))?;
    let prior = vec![model.channel(); layout.n_qubits() as usize];

    let mut writer: Box<dyn Write> = match &args.out {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| CliError::runtime(format!("cannot create {path}: {e}")))?,
        ),
        None => Box::new(std::io::stdout()),
    };
    writeln!(writer, "round,p_I,p_X,p_Y,p_Z,p_IZ,p_XY")
        .map_err(|e| CliError::runtime(e.to_string()))?;
    let mut rows = Vec::new();
    multipath_core::bp::run_bp_observed(
        &tanner,
        &prior,
        &syndrome,
        BpOptions::fixed(args.rounds),
        |round, beliefs| {
            let b = beliefs[args.qubit as usize];
            rows.push(format!(
                "{round},{},{},{},{},{},{}",
                b[0],
                b[1],
                b[2],
                b[3],
                b[0] + b[3],
                b[1] + b[2]
            ));
        },
    )
    .map_err(|e| CliError::runtime(e.to_string()))?;
    for row in rows {
        writeln!(writer, "{row}").map_err(|e| CliError::runtime(e.to_string()))?;
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct LayoutDumpArgs {
    /// Lattice boundary: rotated|planar
    #[arg(long, default_value = "rotated")]
    boundary: String,
    /// Code distance
    #[arg(long)]
    dist: u32,
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

pub fn layout_dump(args: LayoutDumpArgs) -> Result<(), CliError> {
    let boundary = parse::boundary(&args.boundary)?;
    let layout =
        build_layout(args.dist, boundary).map_err(|e| CliError::usage(e.to_string()))?;
    let json = serde_json::to_string_pretty(&layout)
        .map_err(|e| CliError::runtime(e.to_string()))?;
    match &args.out {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| CliError::runtime(format!("cannot write {path}: {e}")))?,
        None => println!("{json}"),
    }
    Ok(())
}
