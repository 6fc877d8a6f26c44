//! Syndrome graphs with virtual boundary partners and exact minimum-weight
//! perfect matching over them.

pub mod blossom;

use crate::dagsum::{build_boundary_dag, build_pair_dag, BoundingBoxDag, DagError};
use crate::lattice::{CodeLayout, PauliError, PauliKind, Syndrome};
use crate::weights::{edge_weight, QubitOdds, WeightError, WeightStrategy};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatchError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Dag(#[from] DagError),
    #[error("matched pair ({0}, {1}) has no backing edge")]
    PathReconstruction(u32, u32),
}

/// Precomputed pair and boundary DAGs for one error component of a layout.
/// Built once, shared read-only across decodes.
#[derive(Debug)]
pub struct MatchGeometry {
    pub component: PauliKind,
    /// Detecting checks, i.e. checks of kind `component.detector()`.
    pub checks: Vec<u32>,
    check_slot: Vec<u32>,
    pairs: Vec<BoundingBoxDag>,
    boundary: Vec<BoundingBoxDag>,
}

impl MatchGeometry {
    pub fn new(layout: &CodeLayout, component: PauliKind) -> MatchGeometry {
        let checks = layout.checks_of_kind(component.detector()).to_vec();
        let mut check_slot = vec![u32::MAX; layout.n_checks() as usize];
        for (slot, &c) in checks.iter().enumerate() {
            check_slot[c as usize] = slot as u32;
        }
        let m = checks.len();
        let mut pairs = Vec::with_capacity(m * (m - 1) / 2);
        for j in 1..m {
            for i in 0..j {
                let dag = build_pair_dag(layout, checks[i], checks[j])
                    .expect("distinct same-kind checks always span a box");
                debug_assert!(dag.num_paths() >= 1);
                pairs.push(dag);
            }
        }
        let boundary = checks
            .iter()
            .map(|&c| {
                let dag = build_boundary_dag(layout, c).expect("check ids are valid");
                debug_assert!(dag.num_paths() >= 1);
                dag
            })
            .collect();
        MatchGeometry {
            component,
            checks,
            check_slot,
            pairs,
            boundary,
        }
    }

    #[inline]
    fn tri(i: u32, j: u32) -> usize {
        debug_assert!(i < j);
        (j as usize * (j as usize - 1)) / 2 + i as usize
    }

    /// Bounding-box DAG between two detecting checks (by check id).
    pub fn pair_dag(&self, check_a: u32, check_b: u32) -> &BoundingBoxDag {
        let a = self.check_slot[check_a as usize];
        let b = self.check_slot[check_b as usize];
        &self.pairs[Self::tri(a.min(b), a.max(b))]
    }

    /// Nearest-boundary DAG of a detecting check (by check id).
    pub fn boundary_dag(&self, check: u32) -> &BoundingBoxDag {
        &self.boundary[self.check_slot[check as usize] as usize]
    }
}

/// How a syndrome-graph edge is realised on the lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynEdgeKind {
    /// Connects two lit checks through their bounding box.
    Pair,
    /// Connects a lit check to its nearest boundary.
    Boundary,
    /// Connects two virtual partners; costs nothing, realises nothing.
    Virtual,
}

#[derive(Debug, Clone)]
pub struct SynEdge {
    pub u: u32,
    pub v: u32,
    pub weight: f64,
    pub kind: SynEdgeKind,
}

/// Matching graph for one component of one syndrome: every lit check is a
/// real vertex `0..m`, its virtual partner is `m + i`.
#[derive(Debug)]
pub struct SyndromeGraph<'a> {
    pub component: PauliKind,
    /// Lit detecting checks, defining the real vertices.
    pub lit: Vec<u32>,
    pub edges: Vec<SynEdge>,
    geometry: &'a MatchGeometry,
}

impl<'a> SyndromeGraph<'a> {
    pub fn n_vertices(&self) -> u32 {
        2 * self.lit.len() as u32
    }

    /// The DAG backing an edge; virtual-virtual edges have none.
    pub fn edge_dag(&self, edge: &SynEdge) -> Option<&'a BoundingBoxDag> {
        let m = self.lit.len() as u32;
        match edge.kind {
            SynEdgeKind::Pair => {
                Some(self.geometry.pair_dag(self.lit[edge.u as usize], self.lit[edge.v as usize]))
            }
            SynEdgeKind::Boundary => {
                let real = edge.u.min(edge.v);
                debug_assert_eq!(edge.u.max(edge.v), real + m);
                Some(self.geometry.boundary_dag(self.lit[real as usize]))
            }
            SynEdgeKind::Virtual => None,
        }
    }
}

/// Build the weighted matching graph for one error component. Real-real
/// edges are complete; each real vertex gets one boundary edge to its own
/// virtual partner; virtual partners form a zero-weight complete graph.
pub fn build_syndrome_graph<'a>(
    geometry: &'a MatchGeometry,
    syndrome: &Syndrome,
    strategy: WeightStrategy,
    odds: &QubitOdds,
) -> Result<SyndromeGraph<'a>, MatchError> {
    let lit: Vec<u32> = geometry
        .checks
        .iter()
        .copied()
        .filter(|&c| syndrome.get(c))
        .collect();
    let m = lit.len() as u32;
    let mut edges = Vec::with_capacity((m * m) as usize);
    for j in 1..m {
        for i in 0..j {
            let dag = geometry.pair_dag(lit[i as usize], lit[j as usize]);
            edges.push(SynEdge {
                u: i,
                v: j,
                weight: edge_weight(strategy, dag, odds)?,
                kind: SynEdgeKind::Pair,
            });
        }
    }
    for i in 0..m {
        let dag = geometry.boundary_dag(lit[i as usize]);
        edges.push(SynEdge {
            u: i,
            v: m + i,
            weight: edge_weight(strategy, dag, odds)?,
            kind: SynEdgeKind::Boundary,
        });
    }
    for j in 1..m {
        for i in 0..j {
            edges.push(SynEdge {
                u: m + i,
                v: m + j,
                weight: 0.0,
                kind: SynEdgeKind::Virtual,
            });
        }
    }
    Ok(SyndromeGraph {
        component: geometry.component,
        lit,
        edges,
        geometry,
    })
}

/// A perfect matching: vertex pairs covering every vertex once.
#[derive(Debug, Clone, PartialEq)]
pub struct Matching {
    pub pairs: Vec<(u32, u32)>,
    pub total_weight: f64,
}

/// Exact minimum-weight perfect matching over the syndrome graph. Weights
/// may be negative; the solver sees integer-scaled negated weights and runs
/// in maximum-cardinality mode, which is equivalent because every perfect
/// matching has the same number of edges.
pub fn mwpm(graph: &SyndromeGraph) -> Matching {
    let n = graph.n_vertices() as usize;
    if n == 0 {
        return Matching {
            pairs: Vec::new(),
            total_weight: 0.0,
        };
    }
    let max_abs = graph
        .edges
        .iter()
        .map(|e| e.weight.abs())
        .fold(1.0f64, f64::max);
    let scale = (1u64 << 40) as f64 / max_abs;
    let scaled: Vec<(usize, usize, i64)> = graph
        .edges
        .iter()
        .map(|e| (e.u as usize, e.v as usize, -(e.weight * scale).round() as i64))
        .collect();
    let mate = blossom::max_weight_matching(n, &scaled, true);
    debug_assert!(mate.iter().all(|&m| m != blossom::NONE));

    let mut pairs = Vec::with_capacity(n / 2);
    for (v, &m) in mate.iter().enumerate() {
        if m != blossom::NONE && v < m {
            pairs.push((v as u32, m as u32));
        }
    }
    let total_weight = graph
        .edges
        .iter()
        .filter(|e| pairs.binary_search(&(e.u, e.v)).is_ok())
        .map(|e| e.weight)
        .sum();
    Matching {
        pairs,
        total_weight,
    }
}

/// One component's matching outcome, ready to be realised as bit flips.
pub struct CorrectionPart<'a, 'g> {
    pub graph: &'a SyndromeGraph<'g>,
    pub matching: &'a Matching,
    pub odds: &'a QubitOdds,
}

/// Flip, for every matched pair, the qubits of the maximum-odds path in the
/// pair's backing DAG, on the bit plane of the graph's component.
pub fn realise_correction(
    layout: &CodeLayout,
    parts: &[CorrectionPart],
) -> Result<PauliError, MatchError> {
    let mut correction = PauliError::identity(layout.n_qubits());
    for part in parts {
        let plane = correction.plane_mut(part.graph.component);
        for &(u, v) in &part.matching.pairs {
            let edge = part
                .graph
                .edges
                .iter()
                .find(|e| (e.u, e.v) == (u, v) || (e.u, e.v) == (v, u))
                .ok_or(MatchError::PathReconstruction(u, v))?;
            if let Some(dag) = part.graph.edge_dag(edge) {
                for q in dag.max_odds_path(&part.odds.for_dag(dag))? {
                    plane.flip(q);
                }
            }
        }
    }
    Ok(correction)
}
