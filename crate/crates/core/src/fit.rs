//! Threshold estimation by finite-size scaling: failure counts are fitted
//! with a binomial likelihood whose rate is quadratic in the scaling
//! variable x = (p - p_th) d^(1/ν).

use crate::montecarlo::SweepRecord;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FitError {
    #[error("threshold fit needs records at two or more distances")]
    SingleDistance,
    #[error("no crossing in range: {0}")]
    NoCrossing(String),
}

/// Fitted crossing parameters.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdFit {
    pub p_th: f64,
    pub nu: f64,
    /// Quadratic coefficients (a0, a1, a2) of the failure rate in x.
    pub coeffs: [f64; 3],
    /// Profile-likelihood half-width of a one-sigma interval on p_th.
    pub p_th_std: f64,
    /// Residual deviance against the saturated model.
    pub deviance: f64,
    pub n_points: usize,
}

struct FitData {
    // One entry per record: (x-precursor d^(1/nu) is recomputed), p, d, k, n.
    points: Vec<(f64, f64, u64, u64)>,
}

const RATE_FLOOR: f64 = 1e-9;

fn log_likelihood(data: &FitData, params: &[f64; 5], p_lo: f64, p_hi: f64) -> f64 {
    let [p_th, ln_nu, a0, a1, a2] = *params;
    let nu = ln_nu.exp();
    let mut ll = 0.0;
    for &(p, d, k, n) in &data.points {
        let x = (p - p_th) * d.powf(1.0 / nu);
        let f = (a0 + a1 * x + a2 * x * x).clamp(RATE_FLOOR, 1.0 - RATE_FLOOR);
        ll += k as f64 * f.ln() + (n - k) as f64 * (1.0 - f).ln();
    }
    // Soft barriers keep the optimum physical: p_th inside the fitted range
    // and nu within a broad window.
    let mut penalty = 0.0;
    if p_th < p_lo {
        penalty += (p_lo - p_th) * 1e8;
    }
    if p_th > p_hi {
        penalty += (p_th - p_hi) * 1e8;
    }
    if !(-1.5..=2.0).contains(&ln_nu) {
        penalty += (ln_nu.abs() - 1.5).max(0.0) * 1e6;
    }
    ll - penalty
}

/// Nelder-Mead maximization; small, dependency-free, adequate for five
/// parameters.
fn nelder_mead(
    mut f: impl FnMut(&[f64; 5]) -> f64,
    start: [f64; 5],
    scale: [f64; 5],
    iterations: usize,
) -> ([f64; 5], f64) {
    const ALPHA: f64 = 1.0;
    const GAMMA: f64 = 2.0;
    const RHO: f64 = 0.5;
    const SIGMA: f64 = 0.5;
    let n = 5usize;
    let mut simplex: Vec<([f64; 5], f64)> = Vec::with_capacity(n + 1);
    simplex.push((start, f(&start)));
    for i in 0..n {
        let mut v = start;
        v[i] += scale[i];
        simplex.push((v, f(&v)));
    }
    for _ in 0..iterations {
        simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
        let spread = simplex[0].1 - simplex[n].1;
        if spread.abs() < 1e-12 {
            break;
        }
        let mut centroid = [0.0; 5];
        for (v, _) in &simplex[..n] {
            for i in 0..n {
                centroid[i] += v[i] / n as f64;
            }
        }
        let worst = simplex[n];
        let mut reflected = [0.0; 5];
        for i in 0..n {
            reflected[i] = centroid[i] + ALPHA * (centroid[i] - worst.0[i]);
        }
        let fr = f(&reflected);
        if fr > simplex[0].1 {
            let mut expanded = [0.0; 5];
            for i in 0..n {
                expanded[i] = centroid[i] + GAMMA * (reflected[i] - centroid[i]);
            }
            let fe = f(&expanded);
            simplex[n] = if fe > fr { (expanded, fe) } else { (reflected, fr) };
        } else if fr > simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
        } else {
            let mut contracted = [0.0; 5];
            for i in 0..n {
                contracted[i] = centroid[i] + RHO * (worst.0[i] - centroid[i]);
            }
            let fc = f(&contracted);
            if fc > worst.1 {
                simplex[n] = (contracted, fc);
            } else {
                let best = simplex[0].0;
                for entry in simplex.iter_mut().skip(1) {
                    for i in 0..n {
                        entry.0[i] = best[i] + SIGMA * (entry.0[i] - best[i]);
                    }
                    entry.1 = f(&entry.0);
                }
            }
        }
    }
    simplex.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap());
    simplex[0]
}

/// Fit the scaling ansatz to sweep records. Only error rates whose failure
/// rates stay inside [0.01, 0.6] at every distance enter the fit; a window
/// that never brackets a crossing is an error.
pub fn fit_threshold(records: &[SweepRecord]) -> Result<ThresholdFit, FitError> {
    let mut distances: Vec<u32> = records.iter().map(|r| r.d).collect();
    distances.sort_unstable();
    distances.dedup();
    if distances.len() < 2 {
        return Err(FitError::SingleDistance);
    }
    let d_min = *distances.first().unwrap();
    let d_max = *distances.last().unwrap();

    let mut ps: Vec<f64> = records.iter().map(|r| r.p).collect();
    ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ps.dedup();

    // Window: keep p values where every distance reported a rate in range.
    let mut kept_ps = Vec::new();
    for &p in &ps {
        let at_p: Vec<&SweepRecord> = records.iter().filter(|r| r.p == p).collect();
        let all_distances = distances.iter().all(|&d| at_p.iter().any(|r| r.d == d));
        if all_distances && at_p.iter().all(|r| (0.01..=0.6).contains(&r.rate)) {
            kept_ps.push(p);
        }
    }
    if kept_ps.len() < 4 {
        return Err(FitError::NoCrossing(format!(
            "only {} usable error rates after windowing",
            kept_ps.len()
        )));
    }

    // The crossing shows as a sign change of rate(d_max) - rate(d_min).
    let diff_at = |p: f64| {
        let hi = records.iter().find(|r| r.p == p && r.d == d_max).unwrap().rate;
        let lo = records.iter().find(|r| r.p == p && r.d == d_min).unwrap().rate;
        hi - lo
    };
    let diffs: Vec<f64> = kept_ps.iter().map(|&p| diff_at(p)).collect();
    let has_below = diffs.iter().any(|&d| d <= 0.0);
    let has_above = diffs.iter().any(|&d| d >= 0.0);
    if !(has_below && has_above) {
        return Err(FitError::NoCrossing(
            "failure rates of smallest and largest distance never swap order".into(),
        ));
    }

    let data = FitData {
        points: records
            .iter()
            .filter(|r| kept_ps.contains(&r.p))
            .map(|r| (r.p, r.d as f64, r.failures, r.trials))
            .collect(),
    };
    let p_lo = *kept_ps.first().unwrap();
    let p_hi = *kept_ps.last().unwrap();

    // Crossing estimate from the sign change seeds the p_th starts.
    let crossing_seed = kept_ps
        .iter()
        .zip(&diffs)
        .min_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
        .map(|(&p, _)| p)
        .unwrap();
    let mean_rate = data
        .points
        .iter()
        .map(|&(_, _, k, n)| k as f64 / n as f64)
        .sum::<f64>()
        / data.points.len() as f64;

    let mut best: Option<([f64; 5], f64)> = None;
    for &p_start in &[crossing_seed, p_lo + 0.25 * (p_hi - p_lo), p_hi - 0.25 * (p_hi - p_lo)] {
        for &nu_start in &[1.0f64, 1.5] {
            let start = [p_start, nu_start.ln(), mean_rate, 1.0, 0.0];
            let scale = [
                0.25 * (p_hi - p_lo).max(1e-4),
                0.2,
                0.05,
                0.5,
                0.5,
            ];
            let objective = |params: &[f64; 5]| log_likelihood(&data, params, p_lo, p_hi);
            let (params, ll) = nelder_mead(objective, start, scale, 4000);
            // Polish with a smaller simplex around the candidate.
            let (params, ll2) = nelder_mead(
                objective,
                params,
                [1e-3, 0.05, 0.01, 0.1, 0.1],
                2000,
            );
            let ll = ll.max(ll2);
            if best.as_ref().map_or(true, |&(_, b)| ll > b) {
                best = Some((params, ll));
            }
        }
    }
    let (params, best_ll) = best.unwrap();
    let [p_th, ln_nu, a0, a1, a2] = params;

    // Profile likelihood: scan p_th, reoptimizing the other parameters, and
    // take the half-width where the log-likelihood drops by one half.
    let mut p_th_std = f64::NAN;
    let scan_half_range = (p_hi - p_lo).max(1e-3);
    for direction in [-1.0, 1.0] {
        let mut width = f64::NAN;
        for step in 1..=40 {
            let shift = direction * scan_half_range * step as f64 / 40.0;
            let candidate = p_th + shift;
            let objective = |params: &[f64; 5]| {
                let mut q = *params;
                q[0] = candidate;
                log_likelihood(&data, &q, p_lo - 1.0, p_hi + 1.0)
            };
            let (_, ll) = nelder_mead(objective, params, [0.0, 0.05, 0.01, 0.1, 0.1], 600);
            if best_ll - ll >= 0.5 {
                width = shift.abs();
                break;
            }
        }
        if !width.is_nan() && (p_th_std.is_nan() || width > p_th_std) {
            p_th_std = width;
        }
    }
    if p_th_std.is_nan() {
        p_th_std = scan_half_range;
    }

    // Saturated-model deviance as the goodness statistic.
    let mut saturated = 0.0;
    for &(_, _, k, n) in &data.points {
        let phat = (k as f64 / n as f64).clamp(RATE_FLOOR, 1.0 - RATE_FLOOR);
        saturated += k as f64 * phat.ln() + (n - k) as f64 * (1.0 - phat).ln();
    }
    let deviance = 2.0 * (saturated - best_ll);

    Ok(ThresholdFit {
        p_th: p_th.clamp(p_lo, p_hi),
        nu: ln_nu.exp(),
        coeffs: [a0, a1, a2],
        p_th_std,
        deviance,
        n_points: data.points.len(),
    })
}
