//! Edge weights for the matching graph under the four strategies.

use crate::dagsum::{BoundingBoxDag, DagError};
use crate::lattice::PauliKind;
use serde::Serialize;
use thiserror::Error;

/// Log weights are clamped here so the matching solver's arithmetic stays
/// well-conditioned; achievable odds never reach the clamp.
pub const WEIGHT_CLAMP: f64 = 50.0;

const ODDS_FLOOR: f64 = 1e-12;
const ODDS_CEIL: f64 = 1e12;

#[derive(Debug, Error, PartialEq)]
pub enum WeightError {
    #[error("path-count weights need 0 < p < 0.5, got {0}")]
    BadProbability(f64),
    #[error(transparent)]
    Dag(#[from] DagError),
}

/// How matching-graph edges are priced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum WeightStrategy {
    /// Weight is the minimum path length between the endpoints.
    Manhattan,
    /// Alias of `Manhattan`: every unit step costs 1.
    Uniform,
    /// Length minus a degeneracy bonus, `|e| - ln Ω(e) / ln((1-p)/p)`.
    PathCount { p: f64 },
    /// Negative log of the odds-weighted sum over all minimum-length paths.
    BpMultipath,
}

impl WeightStrategy {
    /// Whether the strategy consumes per-qubit odds from belief propagation.
    pub fn uses_beliefs(&self) -> bool {
        matches!(self, WeightStrategy::BpMultipath)
    }
}

/// Per-qubit error odds `o_q = p_q / (1 - p_q)` for one matching component.
#[derive(Debug, Clone)]
pub struct QubitOdds {
    pub values: Vec<f64>,
    /// Count of entries clipped into the representable odds range.
    pub clamped: u32,
}

impl QubitOdds {
    pub fn uniform(n_qubits: u32, odds: f64) -> QubitOdds {
        QubitOdds {
            values: vec![odds.clamp(ODDS_FLOOR, ODDS_CEIL); n_qubits as usize],
            clamped: 0,
        }
    }

    /// Uniform odds for a flip probability p.
    pub fn from_flip_probability(n_qubits: u32, p: f64) -> QubitOdds {
        QubitOdds::uniform(n_qubits, p / (1.0 - p))
    }

    /// Per-edge odds aligned with `dag.edges()`; hops that cross no qubit
    /// carry odds 1.
    pub fn for_dag(&self, dag: &BoundingBoxDag) -> Vec<f64> {
        dag.edges()
            .iter()
            .map(|e| e.qubit.map_or(1.0, |q| self.values[q as usize]))
            .collect()
    }
}

/// Convert posterior beliefs into per-qubit odds for the given component:
/// for X the odds of {X, Y} against {I, Z}, for Z the odds of {Z, Y}
/// against {I, X}.
pub fn odds_from_beliefs(beliefs: &[[f64; 4]], component: PauliKind) -> QubitOdds {
    let mut clamped = 0;
    let values = beliefs
        .iter()
        .map(|b| {
            let (hit, miss) = match component {
                PauliKind::X => (b[1] + b[2], b[0] + b[3]),
                PauliKind::Z => (b[3] + b[2], b[0] + b[1]),
            };
            let raw = if miss > 0.0 { hit / miss } else { f64::INFINITY };
            let odds = raw.clamp(ODDS_FLOOR, ODDS_CEIL);
            if odds != raw {
                clamped += 1;
            }
            odds
        })
        .collect();
    QubitOdds { values, clamped }
}

/// Price one matching edge backed by `dag` under the given strategy.
pub fn edge_weight(
    strategy: WeightStrategy,
    dag: &BoundingBoxDag,
    odds: &QubitOdds,
) -> Result<f64, WeightError> {
    match strategy {
        WeightStrategy::Manhattan | WeightStrategy::Uniform => Ok(dag.min_length() as f64),
        WeightStrategy::PathCount { p } => {
            if !(0.0 < p && p < 0.5) {
                return Err(WeightError::BadProbability(p));
            }
            let omega = dag.num_paths() as f64;
            Ok(dag.min_length() as f64 - omega.ln() / ((1.0 - p) / p).ln())
        }
        WeightStrategy::BpMultipath => {
            let sum = dag.path_sum(&odds.for_dag(dag))?;
            Ok((-sum.ln()).clamp(-WEIGHT_CLAMP, WEIGHT_CLAMP))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dagsum::{build_boundary_dag, build_pair_dag};
    use crate::lattice::{build_layout, BoundaryKind, CodeLayout};

    fn rotated(d: u32) -> CodeLayout {
        build_layout(d, BoundaryKind::Rotated).unwrap()
    }

    fn check_at(layout: &CodeLayout, tile: (i32, i32)) -> u32 {
        layout.stabilizers.iter().position(|s| s.tile == tile).unwrap() as u32
    }

    #[test]
    fn odds_from_low_error_belief() {
        let odds = odds_from_beliefs(&[[0.97, 0.01, 0.01, 0.01]], PauliKind::X);
        assert!((odds.values[0] - 0.02 / 0.98).abs() < 1e-12);
        assert_eq!(odds.clamped, 0);
    }

    #[test]
    fn odds_from_uniform_belief_is_one() {
        let odds = odds_from_beliefs(&[[0.25; 4]], PauliKind::X);
        assert!((odds.values[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn split_belief_gives_near_unit_odds_and_near_two_path_sum() {
        let b = {
            let p_xy = 0.4923f64;
            [(1.0 - p_xy) * 0.99, p_xy * 0.99, p_xy * 0.01, (1.0 - p_xy) * 0.01]
        };
        let odds = odds_from_beliefs(&[b; 9], PauliKind::X);
        assert!((odds.values[0] - 0.4923 / 0.5077).abs() < 1e-12);

        let layout = rotated(3);
        let dag = build_boundary_dag(&layout, check_at(&layout, (2, 4))).unwrap();
        let sum = dag.path_sum(&odds.for_dag(&dag)).unwrap();
        assert!((sum - 2.0 * 0.4923 / 0.5077).abs() < 1e-9);
        assert!(sum > 1.9 && sum < 2.0);
    }

    #[test]
    fn degenerate_denominator_clamps_and_flags() {
        let odds = odds_from_beliefs(&[[0.0, 1.0, 0.0, 0.0]], PauliKind::X);
        assert_eq!(odds.values[0], 1e12);
        assert_eq!(odds.clamped, 1);
    }

    #[test]
    fn manhattan_weight_is_min_length() {
        let layout = rotated(9);
        let a = check_at(&layout, (8, 2));
        let b = check_at(&layout, (10, 12));
        let dag = build_pair_dag(&layout, a, b).unwrap();
        let odds = QubitOdds::uniform(layout.n_qubits(), 1.0);
        assert_eq!(edge_weight(WeightStrategy::Manhattan, &dag, &odds).unwrap(), 5.0);
        assert_eq!(edge_weight(WeightStrategy::Uniform, &dag, &odds).unwrap(), 5.0);
    }

    #[test]
    fn path_count_closed_form() {
        // |e| = 2, Ω = 2, p = 0.1: 2 - ln 2 / ln 9.
        let layout = rotated(9);
        let a = check_at(&layout, (10, 12));
        let b = check_at(&layout, (10, 8));
        let dag = build_pair_dag(&layout, a, b).unwrap();
        assert_eq!(dag.num_paths(), 2);
        let odds = QubitOdds::uniform(layout.n_qubits(), 1.0);
        let w = edge_weight(WeightStrategy::PathCount { p: 0.1 }, &dag, &odds).unwrap();
        let want = 2.0 - 2.0f64.ln() / 9.0f64.ln();
        assert!((w - want).abs() < 1e-12);
        assert!((w - 1.68454).abs() < 1e-5);
    }

    #[test]
    fn path_count_rejects_bad_probability() {
        let layout = rotated(3);
        let dag = build_boundary_dag(&layout, check_at(&layout, (2, 4))).unwrap();
        let odds = QubitOdds::uniform(9, 1.0);
        for p in [0.0, 0.5, 0.7, -0.1] {
            assert!(matches!(
                edge_weight(WeightStrategy::PathCount { p }, &dag, &odds),
                Err(WeightError::BadProbability(_))
            ));
        }
    }

    #[test]
    fn bp_multipath_negative_weight_on_split_belief_boundary() {
        let layout = rotated(3);
        let dag = build_boundary_dag(&layout, check_at(&layout, (2, 4))).unwrap();
        let odds = QubitOdds::uniform(layout.n_qubits(), 0.9697);
        let w = edge_weight(WeightStrategy::BpMultipath, &dag, &odds).unwrap();
        assert!((w - (-(1.9394f64).ln())).abs() < 1e-12);
        assert!((w - (-0.6625)).abs() < 5e-4);
    }

    #[test]
    fn bp_multipath_weight_decreases_when_any_odds_grow() {
        let layout = rotated(9);
        let a = check_at(&layout, (4, 10));
        let b = check_at(&layout, (14, 8));
        let dag = build_pair_dag(&layout, a, b).unwrap();
        let mut odds = QubitOdds::uniform(layout.n_qubits(), 0.05);
        let base = edge_weight(WeightStrategy::BpMultipath, &dag, &odds).unwrap();
        for e in dag.edges() {
            if let Some(q) = e.qubit {
                let mut bumped = odds.clone();
                bumped.values[q as usize] *= 1.5;
                let w = edge_weight(WeightStrategy::BpMultipath, &dag, &bumped).unwrap();
                assert!(w < base, "raising odds on qubit {q} must lower the weight");
            }
        }
        odds.values.iter_mut().for_each(|v| *v = 1e-12);
        let clamped = edge_weight(WeightStrategy::BpMultipath, &dag, &odds).unwrap();
        assert_eq!(clamped, WEIGHT_CLAMP);
    }

    #[test]
    fn uniform_odds_reduce_bp_weight_to_scaled_path_count() {
        // With o = p/(1-p) everywhere: -ln path_sum = |e| ln((1-p)/p) - ln Ω.
        let layout = rotated(9);
        let p = 0.13;
        let odds = QubitOdds::from_flip_probability(layout.n_qubits(), p);
        let scale = ((1.0 - p) / p).ln();
        for (ta, tb) in [((4, 10), (14, 8)), ((8, 2), (10, 12)), ((2, 8), (12, 2))] {
            let a = check_at(&layout, ta);
            let b = check_at(&layout, tb);
            let dag = build_pair_dag(&layout, a, b).unwrap();
            let bp = edge_weight(WeightStrategy::BpMultipath, &dag, &odds).unwrap();
            let pc = edge_weight(WeightStrategy::PathCount { p }, &dag, &odds).unwrap();
            assert!((bp - pc * scale).abs() < 1e-9, "{ta:?}->{tb:?}");
        }
    }

    #[test]
    fn path_count_discount_is_strict_when_degenerate() {
        let layout = rotated(9);
        let a = check_at(&layout, (4, 10));
        let b = check_at(&layout, (14, 8));
        let dag = build_pair_dag(&layout, a, b).unwrap();
        let odds = QubitOdds::uniform(layout.n_qubits(), 1.0);
        let manhattan = edge_weight(WeightStrategy::Manhattan, &dag, &odds).unwrap();
        for p in [0.05, 0.1, 0.3, 0.49] {
            let pc = edge_weight(WeightStrategy::PathCount { p }, &dag, &odds).unwrap();
            assert!(pc < manhattan);
        }
    }
}
