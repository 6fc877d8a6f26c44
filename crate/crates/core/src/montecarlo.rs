//! Monte-Carlo sweeps over (distance, error rate) grids with Wilson score
//! confidence intervals. Trials fan out across a rayon pool; per-trial
//! random streams are derived from the configuration, so results do not
//! depend on the worker count.

use crate::decoder::{run_trial, strategy_for, DecoderContext};
use crate::lattice::{build_layout, BoundaryKind, LatticeError};
use crate::noise::{trial_rng, NoiseError, NoiseModel};
pub use crate::noise::NoiseKind;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::ContinuousCDF;
use thiserror::Error;

/// Decoder selector for sweeps; concrete weight parameters are instantiated
/// per grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StrategyKind {
    Manhattan,
    Uniform,
    PathCount,
    BpMultipath,
}

impl StrategyKind {
    pub fn label(&self) -> &'static str {
        match self {
            StrategyKind::Manhattan => "manhattan",
            StrategyKind::Uniform => "uniform",
            StrategyKind::PathCount => "pathcount",
            StrategyKind::BpMultipath => "bp-multipath",
        }
    }
}

pub fn boundary_label(boundary: BoundaryKind) -> &'static str {
    match boundary {
        BoundaryKind::Rotated => "rotated",
        BoundaryKind::SmoothRough => "planar",
    }
}

pub fn noise_label(kind: NoiseKind) -> &'static str {
    match kind {
        NoiseKind::IidXz => "iidxz",
        NoiseKind::Depolarizing => "depolarizing",
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep configuration: {0}")]
    BadConfig(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
    #[error("confidence interval needs at least one trial")]
    ZeroTrials,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepConfig {
    pub boundary: BoundaryKind,
    pub noise: NoiseKind,
    pub strategy: StrategyKind,
    pub distances: Vec<u32>,
    pub ps: Vec<f64>,
    pub trials: u64,
    pub seed: u64,
}

impl SweepConfig {
    fn validate(&self) -> Result<(), SweepError> {
        if self.trials < 1 {
            return Err(SweepError::BadConfig("trials must be at least 1".into()));
        }
        if self.distances.is_empty() || self.ps.is_empty() {
            return Err(SweepError::BadConfig(
                "need at least one distance and one error rate".into(),
            ));
        }
        for &d in &self.distances {
            if d < 3 || d % 2 == 0 {
                return Err(SweepError::BadConfig(format!(
                    "distance {d} is not an odd integer >= 3"
                )));
            }
        }
        let p_max = match self.noise {
            NoiseKind::IidXz => 0.5,
            NoiseKind::Depolarizing => 1.0,
        };
        for &p in &self.ps {
            if !(0.0..p_max).contains(&p) {
                return Err(SweepError::BadConfig(format!(
                    "error rate {p} outside [0, {p_max}) for {}",
                    noise_label(self.noise)
                )));
            }
        }
        Ok(())
    }
}

/// One grid point's accumulated statistics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub d: u32,
    pub p: f64,
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

/// Wilson score interval for a binomial proportion at the given confidence
/// level.
pub fn wilson_interval(failures: u64, trials: u64, level: f64) -> Result<(f64, f64), SweepError> {
    if trials == 0 {
        return Err(SweepError::ZeroTrials);
    }
    if failures > trials {
        return Err(SweepError::BadConfig(format!(
            "failures {failures} exceed trials {trials}"
        )));
    }
    let normal = statrs::distribution::Normal::new(0.0, 1.0).expect("unit normal");
    let z = normal.inverse_cdf(0.5 + level / 2.0);
    let n = trials as f64;
    let phat = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = phat + z2 / (2.0 * n);
    let spread = z * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    Ok((
        ((centre - spread) / denom).clamp(0.0, 1.0),
        ((centre + spread) / denom).clamp(0.0, 1.0),
    ))
}

/// Run the sweep, handing each finished record to `sink` as it completes so
/// partial results survive interruption.
pub fn run_sweep_with(
    config: &SweepConfig,
    mut sink: impl FnMut(&SweepRecord),
) -> Result<Vec<SweepRecord>, SweepError> {
    config.validate()?;
    let mut records = Vec::with_capacity(config.distances.len() * config.ps.len());
    let mut distances = config.distances.clone();
    distances.sort_unstable();
    distances.dedup();
    let mut ps = config.ps.clone();
    ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ps.dedup();

    for &d in &distances {
        let ctx = DecoderContext::new(build_layout(d, config.boundary)?);
        for (p_index, &p) in ps.iter().enumerate() {
            let model = NoiseModel::new(config.noise, p)?;
            let strategy = strategy_for(config.strategy, &model);
            let failures = (0..config.trials)
                .into_par_iter()
                .filter(|&trial| {
                    let mut rng = trial_rng(config.seed, d, p_index as u32, trial);
                    !run_trial(&ctx, &model, strategy, &mut rng)
                })
                .count() as u64;
            let rate = failures as f64 / config.trials as f64;
            let (ci_low, ci_high) = wilson_interval(failures, config.trials, 0.99)?;
            let record = SweepRecord {
                d,
                p,
                trials: config.trials,
                failures,
                rate,
                ci_low,
                ci_high,
            };
            sink(&record);
            records.push(record);
        }
    }
    Ok(records)
}

/// Run the sweep and collect every record.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, SweepError> {
    run_sweep_with(config, |_| {})
}
