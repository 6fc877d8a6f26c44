//! Bounding-box DAGs between detection events and the path algebra over
//! them: exact path counts, odds-weighted path sums and maximum-odds path
//! extraction.
//!
//! A DAG is built once per vertex pair (or vertex/boundary pair) and holds
//! every minimum-length step sequence that stays on the lattice. Evaluation
//! runs in one pass over a topological order, so each edge costs a constant
//! number of operations.

use crate::lattice::{BoundaryKind, CodeLayout, PauliKind};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DagError {
    #[error("graph contains a directed cycle")]
    Cycle,
    #[error("pair DAG endpoints must be distinct checks")]
    IdenticalEndpoints,
    #[error("pair DAG endpoints must share a stabilizer kind")]
    KindMismatch,
    #[error("check index {0} out of range")]
    BadCheck(u32),
    #[error("edge odds must be positive and finite")]
    NonpositiveOdds,
    #[error("expected {want} edge odds, got {got}")]
    OddsLength { want: usize, got: usize },
    #[error("DAG has no source-to-final path")]
    NoPath,
}

/// Directed step between two tile positions. `qubit` names the data qubit
/// the step crosses; entry/exit hops of traversal graphs cross none.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DagEdge {
    pub from: u32,
    pub to: u32,
    pub qubit: Option<u32>,
}

/// Minimum-length path graph between an initial vertex and a set of final
/// vertices. Vertices are stored in topological order; every retained edge
/// lies on at least one source-to-final path.
#[derive(Debug, Clone)]
pub struct BoundingBoxDag {
    vertices: Vec<(i32, i32)>,
    edges: Vec<DagEdge>,
    source: u32,
    finals: Vec<u32>,
    out_edges: Vec<Vec<u32>>,
    min_len: u32,
}

impl BoundingBoxDag {
    /// Assemble a DAG from raw parts, topologically sorting and pruning every
    /// vertex and edge that no source-to-final path uses. Fails on cycles.
    pub fn from_parts(
        vertices: Vec<(i32, i32)>,
        edges: Vec<DagEdge>,
        source: u32,
        finals: Vec<u32>,
    ) -> Result<BoundingBoxDag, DagError> {
        let n = vertices.len();
        let mut in_deg = vec![0usize; n];
        let mut out_adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (e, edge) in edges.iter().enumerate() {
            in_deg[edge.to as usize] += 1;
            out_adj[edge.from as usize].push(e as u32);
        }

        // Kahn's algorithm; pop the smallest index so the order is canonical.
        let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = in_deg
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == 0)
            .map(|(v, _)| std::cmp::Reverse(v))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(std::cmp::Reverse(v)) = ready.pop() {
            order.push(v);
            for &e in &out_adj[v] {
                let w = edges[e as usize].to as usize;
                in_deg[w] -= 1;
                if in_deg[w] == 0 {
                    ready.push(std::cmp::Reverse(w));
                }
            }
        }
        if order.len() != n {
            return Err(DagError::Cycle);
        }

        // Reachability from the source and co-reachability to a final vertex.
        let mut fwd = vec![false; n];
        fwd[source as usize] = true;
        for &v in &order {
            if fwd[v] {
                for &e in &out_adj[v] {
                    fwd[edges[e as usize].to as usize] = true;
                }
            }
        }
        let mut bwd = vec![false; n];
        for &f in &finals {
            bwd[f as usize] = true;
        }
        for &v in order.iter().rev() {
            if !bwd[v] {
                bwd[v] = out_adj[v]
                    .iter()
                    .any(|&e| bwd[edges[e as usize].to as usize]);
            }
        }

        let keep = |v: usize| (fwd[v] && bwd[v]) || v == source as usize;
        let mut remap = vec![u32::MAX; n];
        let mut new_vertices = Vec::new();
        for &v in &order {
            if keep(v) {
                remap[v] = new_vertices.len() as u32;
                new_vertices.push(vertices[v]);
            }
        }
        let mut new_edges: Vec<DagEdge> = edges
            .iter()
            .filter(|e| {
                fwd[e.from as usize] && bwd[e.from as usize] && fwd[e.to as usize] && bwd[e.to as usize]
            })
            .map(|e| DagEdge {
                from: remap[e.from as usize],
                to: remap[e.to as usize],
                qubit: e.qubit,
            })
            .collect();
        new_edges.sort_by_key(|e| (e.from, e.to, e.qubit));

        let m = new_vertices.len();
        let mut out_edges: Vec<Vec<u32>> = vec![Vec::new(); m];
        for (i, e) in new_edges.iter().enumerate() {
            out_edges[e.from as usize].push(i as u32);
        }
        let new_finals: Vec<u32> = finals
            .iter()
            .filter(|&&f| remap[f as usize] != u32::MAX)
            .map(|&f| remap[f as usize])
            .collect();

        let mut dag = BoundingBoxDag {
            vertices: new_vertices,
            edges: new_edges,
            source: remap[source as usize],
            finals: new_finals,
            out_edges,
            min_len: 0,
        };
        dag.min_len = dag.compute_min_len();
        Ok(dag)
    }

    fn compute_min_len(&self) -> u32 {
        const UNREACHED: u32 = u32::MAX;
        let mut best = vec![UNREACHED; self.vertices.len()];
        best[self.source as usize] = 0;
        for e in &self.edges {
            let b = best[e.from as usize];
            if b == UNREACHED {
                continue;
            }
            let cost = b + u32::from(e.qubit.is_some());
            if cost < best[e.to as usize] {
                best[e.to as usize] = cost;
            }
        }
        self.finals
            .iter()
            .map(|&f| best[f as usize])
            .min()
            .unwrap_or(UNREACHED)
    }

    pub fn vertices(&self) -> &[(i32, i32)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[DagEdge] {
        &self.edges
    }

    pub fn source(&self) -> u32 {
        self.source
    }

    pub fn finals(&self) -> &[u32] {
        &self.finals
    }

    /// Number of qubit crossings on a shortest source-to-final path.
    pub fn min_length(&self) -> u32 {
        self.min_len
    }

    /// Exact count of directed source-to-final paths.
    pub fn num_paths(&self) -> u64 {
        let mut count = vec![0u64; self.vertices.len()];
        count[self.source as usize] = 1;
        for e in &self.edges {
            count[e.to as usize] = count[e.to as usize]
                .checked_add(count[e.from as usize])
                .expect("path count overflow");
        }
        self.finals.iter().map(|&f| count[f as usize]).sum()
    }

    /// Sum over paths of the product of per-edge odds.
    pub fn path_sum(&self, edge_odds: &[f64]) -> Result<f64, DagError> {
        self.check_odds(edge_odds)?;
        let mut acc = vec![0.0f64; self.vertices.len()];
        acc[self.source as usize] = 1.0;
        for (i, e) in self.edges.iter().enumerate() {
            acc[e.to as usize] += acc[e.from as usize] * edge_odds[i];
        }
        Ok(self.finals.iter().map(|&f| acc[f as usize]).sum())
    }

    /// Qubits along the path maximizing the product of edge odds. Ties prefer
    /// the lexicographically smallest successor tile at each step.
    pub fn max_odds_path(&self, edge_odds: &[f64]) -> Result<Vec<u32>, DagError> {
        self.check_odds(edge_odds)?;
        let n = self.vertices.len();
        // score[v]: best product achievable from v to any final vertex.
        let mut score = vec![f64::NEG_INFINITY; n];
        for &f in &self.finals {
            score[f as usize] = 1.0;
        }
        for v in (0..n).rev() {
            for &e in &self.out_edges[v] {
                let cand = edge_odds[e as usize] * score[self.edges[e as usize].to as usize];
                if cand > score[v] {
                    score[v] = cand;
                }
            }
        }
        if score[self.source as usize] == f64::NEG_INFINITY {
            return Err(DagError::NoPath);
        }

        let mut qubits = Vec::with_capacity(self.min_len as usize);
        let mut v = self.source as usize;
        while score[v] != 1.0 || !self.finals.contains(&(v as u32)) {
            let mut best: Option<(u32, f64)> = None;
            for &e in &self.out_edges[v] {
                let to = self.edges[e as usize].to;
                let cand = edge_odds[e as usize] * score[to as usize];
                let better = match best {
                    None => true,
                    Some((be, bs)) => {
                        cand > bs
                            || (cand == bs
                                && self.vertices[to as usize]
                                    < self.vertices[self.edges[be as usize].to as usize])
                    }
                };
                if better {
                    best = Some((e, cand));
                }
            }
            let (e, _) = best.expect("source is co-reachable, walk cannot dead-end");
            if let Some(q) = self.edges[e as usize].qubit {
                qubits.push(q);
            }
            v = self.edges[e as usize].to as usize;
        }
        Ok(qubits)
    }

    fn check_odds(&self, edge_odds: &[f64]) -> Result<(), DagError> {
        if edge_odds.len() != self.edges.len() {
            return Err(DagError::OddsLength {
                want: self.edges.len(),
                got: edge_odds.len(),
            });
        }
        if edge_odds.iter().any(|&o| !(o > 0.0) || !o.is_finite()) {
            return Err(DagError::NonpositiveOdds);
        }
        Ok(())
    }
}

/// Exact count of directed source-to-final paths in one topological pass.
pub fn num_paths(dag: &BoundingBoxDag) -> u64 {
    dag.num_paths()
}

/// Odds-weighted path sum, same recurrence as `num_paths` with weighted edges.
pub fn path_sum(dag: &BoundingBoxDag, edge_odds: &[f64]) -> Result<f64, DagError> {
    dag.path_sum(edge_odds)
}

/// Representative maximum-odds path through the DAG, as crossed qubits.
pub fn max_odds_path(dag: &BoundingBoxDag, edge_odds: &[f64]) -> Result<Vec<u32>, DagError> {
    dag.max_odds_path(edge_odds)
}

struct RawDag {
    vertices: Vec<(i32, i32)>,
    edges: Vec<DagEdge>,
    index: std::collections::HashMap<(i32, i32), u32>,
}

impl RawDag {
    fn new() -> RawDag {
        RawDag {
            vertices: Vec::new(),
            edges: Vec::new(),
            index: std::collections::HashMap::new(),
        }
    }

    fn vertex(&mut self, coord: (i32, i32)) -> u32 {
        if let Some(&v) = self.index.get(&coord) {
            return v;
        }
        let v = self.vertices.len() as u32;
        self.vertices.push(coord);
        self.index.insert(coord, v);
        v
    }

    fn edge(&mut self, from: u32, to: u32, qubit: Option<u32>) {
        self.edges.push(DagEdge { from, to, qubit });
    }
}

fn tile_of(layout: &CodeLayout, check: u32) -> Result<(i32, i32), DagError> {
    layout
        .stabilizers
        .get(check as usize)
        .map(|s| s.tile)
        .ok_or(DagError::BadCheck(check))
}

/// The two step directions spanning a minimum-length box from `from` to `to`,
/// with their multiplicities.
fn box_steps(
    boundary: BoundaryKind,
    from: (i32, i32),
    to: (i32, i32),
) -> [((i32, i32), i32); 2] {
    let dx = to.0 - from.0;
    let dy = to.1 - from.1;
    match boundary {
        BoundaryKind::Rotated => {
            // Diagonal steps: one direction advances x+y, the other x-y.
            let du = dx + dy;
            let dv = dx - dy;
            let su = if du >= 0 { 1 } else { -1 };
            let sv = if dv >= 0 { 1 } else { -1 };
            [
                ((2 * su, 2 * su), du.abs() / 4),
                ((2 * sv, -2 * sv), dv.abs() / 4),
            ]
        }
        BoundaryKind::SmoothRough => {
            let sx = if dx >= 0 { 1 } else { -1 };
            let sy = if dy >= 0 { 1 } else { -1 };
            [((2 * sx, 0), dx.abs() / 2), ((0, 2 * sy), dy.abs() / 2)]
        }
    }
}

fn crossing_qubit(layout: &CodeLayout, a: (i32, i32), b: (i32, i32)) -> Option<u32> {
    layout.qubit_index(((a.0 + b.0) / 2, (a.1 + b.1) / 2))
}

/// All minimum-length step sequences between two same-kind checks. Boxes that
/// jut past the lattice lose the edges whose crossed qubit does not exist.
pub fn build_pair_dag(
    layout: &CodeLayout,
    check_a: u32,
    check_b: u32,
) -> Result<BoundingBoxDag, DagError> {
    let ta = tile_of(layout, check_a)?;
    let tb = tile_of(layout, check_b)?;
    if check_a == check_b {
        return Err(DagError::IdenticalEndpoints);
    }
    if layout.check(check_a).kind != layout.check(check_b).kind {
        return Err(DagError::KindMismatch);
    }
    let [(s1, n1), (s2, n2)] = box_steps(layout.boundary, ta, tb);

    let mut raw = RawDag::new();
    for i in 0..=n1 {
        for j in 0..=n2 {
            raw.vertex((ta.0 + i * s1.0 + j * s2.0, ta.1 + i * s1.1 + j * s2.1));
        }
    }
    let cell = |i: i32, j: i32| (i * (n2 + 1) + j) as u32;
    for i in 0..=n1 {
        for j in 0..=n2 {
            let here = raw.vertices[cell(i, j) as usize];
            if i < n1 {
                let next = (here.0 + s1.0, here.1 + s1.1);
                if let Some(q) = crossing_qubit(layout, here, next) {
                    raw.edge(cell(i, j), cell(i + 1, j), Some(q));
                }
            }
            if j < n2 {
                let next = (here.0 + s2.0, here.1 + s2.1);
                if let Some(q) = crossing_qubit(layout, here, next) {
                    raw.edge(cell(i, j), cell(i, j + 1), Some(q));
                }
            }
        }
    }
    BoundingBoxDag::from_parts(raw.vertices, raw.edges, 0, vec![cell(n1, n2)])
}

/// Exit axis and signed distance to the nearest admissible boundary for a
/// check of the given id. Returns (step directions, depth).
fn boundary_geometry(layout: &CodeLayout, check: u32) -> (Vec<(i32, i32)>, i32) {
    let s = layout.check(check);
    let d = layout.distance as i32;
    let (x, y) = s.tile;
    // The component this check detects leaves through the boundary pair that
    // its chains terminate on: x-axis for kind X, y-axis for kind Z on the
    // rotated layout, and likewise on the planar grid.
    match (layout.boundary, s.kind) {
        (BoundaryKind::Rotated, PauliKind::Z) => {
            // Chains of X component move between Z-kind tiles; exits above or
            // below through the top/bottom qubit rows.
            let down = y / 2;
            let up = d - y / 2;
            let sy = if down <= up { -1 } else { 1 };
            (vec![(-2, 2 * sy), (2, 2 * sy)], down.min(up))
        }
        (BoundaryKind::Rotated, PauliKind::X) => {
            let left = x / 2;
            let right = d - x / 2;
            let sx = if left <= right { -1 } else { 1 };
            (vec![(2 * sx, -2), (2 * sx, 2)], left.min(right))
        }
        (BoundaryKind::SmoothRough, PauliKind::Z) => {
            let up = (y + 1) / 2;
            let down = (2 * d - 1 - y) / 2;
            let sy = if up <= down { -1 } else { 1 };
            (vec![(0, 2 * sy)], up.min(down))
        }
        (BoundaryKind::SmoothRough, PauliKind::X) => {
            let left = (x + 1) / 2;
            let right = (2 * d - 1 - x) / 2;
            let sx = if left <= right { -1 } else { 1 };
            (vec![(2 * sx, 0)], left.min(right))
        }
    }
}

/// All minimum-length step sequences from a check to its nearest boundary.
/// The final set holds every exit position at minimum distance.
pub fn build_boundary_dag(layout: &CodeLayout, check: u32) -> Result<BoundingBoxDag, DagError> {
    let tile = tile_of(layout, check)?;
    let (steps, depth) = boundary_geometry(layout, check);

    let mut raw = RawDag::new();
    raw.vertex(tile);
    let mut frontier = vec![tile];
    for _ in 0..depth {
        let mut next_frontier = Vec::new();
        for &pos in &frontier {
            let from = raw.vertex(pos);
            for &s in &steps {
                let next = (pos.0 + s.0, pos.1 + s.1);
                if let Some(q) = crossing_qubit(layout, pos, next) {
                    let known = raw.index.contains_key(&next);
                    let to = raw.vertex(next);
                    raw.edge(from, to, Some(q));
                    if !known {
                        next_frontier.push(next);
                    }
                }
            }
        }
        frontier = next_frontier;
    }
    let finals: Vec<u32> = frontier.iter().map(|&c| raw.index[&c]).collect();
    BoundingBoxDag::from_parts(raw.vertices, raw.edges, 0, finals)
}

/// The graph whose source-to-final paths are the minimum-length logical
/// chains of the given error component across the whole lattice. Entry and
/// exit hops on the rotated layout cross no qubit and carry odds 1.
pub fn build_traversal_dag(layout: &CodeLayout, component: PauliKind) -> BoundingBoxDag {
    let d = layout.distance as i32;
    // Chains of component X run along y, component Z along x.
    let vertical = component == PauliKind::X;
    let coord = |along: i32, across: i32| {
        if vertical {
            (across, along)
        } else {
            (along, across)
        }
    };
    let mut raw = RawDag::new();
    let src = raw.vertex(coord(-4, -4));
    let snk = raw.vertex(coord(-6, -6));
    match layout.boundary {
        BoundaryKind::Rotated => {
            // Positions of the detecting kind sit on alternating tile
            // diagonals; entering and leaving the lattice is free.
            let want_parity = if vertical { 1 } else { 0 };
            for layer in 0..=d {
                for across in 0..=d {
                    if (layer + across) % 2 != want_parity {
                        continue;
                    }
                    let here_coord = coord(2 * layer, 2 * across);
                    let here = raw.vertex(here_coord);
                    if layer == 0 {
                        raw.edge(src, here, None);
                    }
                    if layer == d {
                        raw.edge(here, snk, None);
                        continue;
                    }
                    for da in [-1, 1] {
                        let next_coord = coord(2 * (layer + 1), 2 * (across + da));
                        if let Some(q) = crossing_qubit(layout, here_coord, next_coord) {
                            let to = raw.vertex(next_coord);
                            raw.edge(here, to, Some(q));
                        }
                    }
                }
            }
        }
        BoundaryKind::SmoothRough => {
            // One straight chain per row (or column) of checks; every hop
            // crosses a qubit, including the dangling entry and exit.
            let side = 2 * d - 2;
            for across in (0..=side).step_by(2) {
                let mut prev = src;
                for along in (1..side).step_by(2) {
                    let here = raw.vertex(coord(along, across));
                    let q = layout.qubit_index(coord(along - 1, across));
                    debug_assert!(q.is_some());
                    raw.edge(prev, here, q);
                    prev = here;
                }
                let q = layout.qubit_index(coord(side, across));
                debug_assert!(q.is_some());
                raw.edge(prev, snk, q);
            }
        }
    }
    BoundingBoxDag::from_parts(raw.vertices, raw.edges, src, vec![snk])
        .expect("traversal graph is acyclic by construction")
}
