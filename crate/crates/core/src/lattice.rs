//! Surface-code geometry: qubit layouts, stabilizers, logical operators,
//! Tanner graphs and syndrome extraction.
//!
//! Two boundary conventions are supported. The rotated layout places data
//! qubits on a d-by-d grid at odd coordinates `(2i+1, 2j+1)` with stabilizer
//! tiles centred on even coordinates; boundary tiles are weight-2. The
//! smooth/rough (planar) layout places qubits on the points of a
//! `(2d-1)`-square checkerboard (`x + y` even) with checks on the odd-parity
//! points; boundary checks are weight-3. All coordinates are integers so the
//! geometry stays exact.

use serde::Serialize;
use thiserror::Error;

/// Stabilizer flavor. `X`-kind checks are products of Pauli X and detect the
/// Z component of an error; `Z`-kind checks detect the X component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PauliKind {
    X,
    Z,
}

impl PauliKind {
    /// The check kind that detects this error component.
    pub fn detector(self) -> PauliKind {
        match self {
            PauliKind::X => PauliKind::Z,
            PauliKind::Z => PauliKind::X,
        }
    }

    pub fn index(self) -> usize {
        match self {
            PauliKind::X => 0,
            PauliKind::Z => 1,
        }
    }
}

/// Single-qubit Pauli, indexed I=0, X=1, Y=2, Z=3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        match self {
            Pauli::I => 0,
            Pauli::X => 1,
            Pauli::Y => 2,
            Pauli::Z => 3,
        }
    }

    pub fn from_index(i: usize) -> Pauli {
        Pauli::ALL[i]
    }

    /// Whether this Pauli anticommutes with a single-qubit restriction of a
    /// stabilizer of the given kind.
    pub fn anticommutes_with(self, kind: PauliKind) -> bool {
        match kind {
            PauliKind::X => matches!(self, Pauli::Z | Pauli::Y),
            PauliKind::Z => matches!(self, Pauli::X | Pauli::Y),
        }
    }
}

/// Boundary convention of the layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundaryKind {
    Rotated,
    SmoothRough,
}

#[derive(Debug, Error, PartialEq)]
pub enum LatticeError {
    #[error("distance must be an odd integer >= 3, got {0}")]
    BadDistance(u32),
    #[error("operator is sized for {got} qubits, layout has {want}")]
    SizeMismatch { got: u32, want: u32 },
    #[error("residual has nonzero syndrome; logical class is undefined")]
    NonzeroSyndrome,
}

/// Dense bit string used for error planes and syndromes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BitString {
    len: u32,
    words: Vec<u64>,
}

impl BitString {
    pub fn zeros(len: u32) -> Self {
        BitString {
            len,
            words: vec![0; (len as usize + 63) / 64],
        }
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: u32) -> bool {
        (self.words[(i / 64) as usize] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: u32, value: bool) {
        let w = &mut self.words[(i / 64) as usize];
        if value {
            *w |= 1 << (i % 64);
        } else {
            *w &= !(1 << (i % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: u32) {
        self.words[(i / 64) as usize] ^= 1 << (i % 64);
    }

    pub fn xor_with(&mut self, other: &BitString) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn clear(&mut self) {
        for w in &mut self.words {
            *w = 0;
        }
    }

    /// Parity of the bits selected by `support`.
    #[inline]
    pub fn parity_over(&self, support: &[u32]) -> bool {
        let mut parity = false;
        for &i in support {
            parity ^= self.get(i);
        }
        parity
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Symplectic record of a Pauli error: one X bit and one Z bit per qubit.
/// A qubit with both bits set carries Y. Composition is bitwise XOR.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PauliError {
    pub x_bits: BitString,
    pub z_bits: BitString,
}

impl PauliError {
    pub fn identity(n_qubits: u32) -> Self {
        PauliError {
            x_bits: BitString::zeros(n_qubits),
            z_bits: BitString::zeros(n_qubits),
        }
    }

    pub fn n_qubits(&self) -> u32 {
        self.x_bits.len()
    }

    pub fn pauli_at(&self, q: u32) -> Pauli {
        match (self.x_bits.get(q), self.z_bits.get(q)) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn set_pauli(&mut self, q: u32, p: Pauli) {
        self.x_bits.set(q, matches!(p, Pauli::X | Pauli::Y));
        self.z_bits.set(q, matches!(p, Pauli::Z | Pauli::Y));
    }

    /// Number of qubits carrying a non-identity Pauli.
    pub fn weight(&self) -> u32 {
        self.x_bits
            .words
            .iter()
            .zip(&self.z_bits.words)
            .map(|(a, b)| (a | b).count_ones())
            .sum()
    }

    pub fn compose_with(&mut self, other: &PauliError) {
        self.x_bits.xor_with(&other.x_bits);
        self.z_bits.xor_with(&other.z_bits);
    }

    pub fn is_identity(&self) -> bool {
        self.x_bits.is_zero() && self.z_bits.is_zero()
    }

    /// The plane recording the given error component.
    pub fn plane(&self, component: PauliKind) -> &BitString {
        match component {
            PauliKind::X => &self.x_bits,
            PauliKind::Z => &self.z_bits,
        }
    }

    pub fn plane_mut(&mut self, component: PauliKind) -> &mut BitString {
        match component {
            PauliKind::X => &mut self.x_bits,
            PauliKind::Z => &mut self.z_bits,
        }
    }
}

/// One stabilizer check: its flavor, supported qubits and tile coordinate.
#[derive(Debug, Clone, Serialize)]
pub struct Stabilizer {
    pub kind: PauliKind,
    pub support: Vec<u32>,
    pub tile: (i32, i32),
}

/// Stabilizer measurement record: one bit per check, 1 where the error
/// anticommutes with the check.
pub type Syndrome = BitString;

/// Homology class of a syndrome-free residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LogicalClass {
    I,
    X,
    Z,
    Y,
}

/// Geometry of a distance-d surface code. Immutable after construction and
/// safe to share across trial workers.
#[derive(Debug, Clone, Serialize)]
pub struct CodeLayout {
    pub distance: u32,
    pub boundary: BoundaryKind,
    /// Qubit coordinates, indexed by qubit id.
    pub qubits: Vec<(i32, i32)>,
    pub stabilizers: Vec<Stabilizer>,
    /// Qubit indices of the fixed logical-X representative (right column).
    pub logical_x: Vec<u32>,
    /// Qubit indices of the fixed logical-Z representative (bottom row).
    pub logical_z: Vec<u32>,
    /// For each error component `[X, Z]`, the qubits through which a chain of
    /// that component may leave the lattice undetected.
    pub boundary_exits: [Vec<u32>; 2],
    #[serde(skip)]
    check_ids: [Vec<u32>; 2],
    #[serde(skip)]
    qubit_lookup: std::collections::HashMap<(i32, i32), u32>,
}

impl CodeLayout {
    pub fn n_qubits(&self) -> u32 {
        self.qubits.len() as u32
    }

    pub fn n_checks(&self) -> u32 {
        self.stabilizers.len() as u32
    }

    pub fn qubit_index(&self, coord: (i32, i32)) -> Option<u32> {
        self.qubit_lookup.get(&coord).copied()
    }

    /// Check ids of the given kind, in construction order.
    pub fn checks_of_kind(&self, kind: PauliKind) -> &[u32] {
        &self.check_ids[kind.index()]
    }

    pub fn check(&self, id: u32) -> &Stabilizer {
        &self.stabilizers[id as usize]
    }
}

/// Build a surface-code layout. `distance` must be odd and at least 3.
pub fn build_layout(distance: u32, boundary: BoundaryKind) -> Result<CodeLayout, LatticeError> {
    if distance < 3 || distance % 2 == 0 {
        return Err(LatticeError::BadDistance(distance));
    }
    let layout = match boundary {
        BoundaryKind::Rotated => build_rotated(distance),
        BoundaryKind::SmoothRough => build_smooth_rough(distance),
    };
    debug_assert!(layout_commutes(&layout));
    Ok(layout)
}

fn finish_layout(
    distance: u32,
    boundary: BoundaryKind,
    qubits: Vec<(i32, i32)>,
    mut stabilizers: Vec<Stabilizer>,
    logical_x: Vec<u32>,
    logical_z: Vec<u32>,
) -> CodeLayout {
    // Deterministic check order: X-kind first, then by tile row/column.
    stabilizers.sort_by_key(|s| (s.kind.index(), s.tile.1, s.tile.0));
    for s in &mut stabilizers {
        s.support.sort_unstable();
    }
    let mut check_ids = [Vec::new(), Vec::new()];
    for (i, s) in stabilizers.iter().enumerate() {
        check_ids[s.kind.index()].push(i as u32);
    }
    let qubit_lookup = qubits
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as u32))
        .collect();

    let mut layout = CodeLayout {
        distance,
        boundary,
        qubits,
        stabilizers,
        logical_x,
        logical_z,
        boundary_exits: [Vec::new(), Vec::new()],
        check_ids,
        qubit_lookup,
    };

    // A component-T chain may leave through any qubit adjacent to exactly one
    // detecting check.
    for component in [PauliKind::X, PauliKind::Z] {
        let detector = component.detector();
        let mut degree = vec![0u32; layout.qubits.len()];
        for s in &layout.stabilizers {
            if s.kind == detector {
                for &q in &s.support {
                    degree[q as usize] += 1;
                }
            }
        }
        layout.boundary_exits[component.index()] = degree
            .iter()
            .enumerate()
            .filter(|&(_, &d)| d == 1)
            .map(|(q, _)| q as u32)
            .collect();
    }
    layout
}

fn build_rotated(d: u32) -> CodeLayout {
    let di = d as i32;
    let mut qubits = Vec::with_capacity((d * d) as usize);
    for j in 0..di {
        for i in 0..di {
            qubits.push((2 * i + 1, 2 * j + 1));
        }
    }
    let qubit_at = |x: i32, y: i32| -> Option<u32> {
        if x < 1 || y < 1 || x > 2 * di - 1 || y > 2 * di - 1 {
            return None;
        }
        Some(((y / 2) * di + x / 2) as u32)
    };

    let mut stabilizers = Vec::new();
    let mut push_tile = |a: i32, b: i32| {
        let kind = if (a + b) % 2 == 0 {
            PauliKind::X
        } else {
            PauliKind::Z
        };
        let support: Vec<u32> = [(-1, -1), (1, -1), (-1, 1), (1, 1)]
            .iter()
            .filter_map(|&(dx, dy)| qubit_at(2 * a + dx, 2 * b + dy))
            .collect();
        debug_assert!(support.len() == 2 || support.len() == 4);
        stabilizers.push(Stabilizer {
            kind,
            support,
            tile: (2 * a, 2 * b),
        });
    };

    for a in 1..di {
        for b in 1..di {
            push_tile(a, b);
        }
    }
    // Boundary half-tiles alternate: Z-kind on the left/right edges, X-kind on
    // the top/bottom, matching the drawn orientation of the code.
    for b in (1..di).step_by(2) {
        push_tile(0, b); // left, b odd
    }
    for b in (2..di).step_by(2) {
        push_tile(di, b); // right, b even
    }
    for a in (1..di).step_by(2) {
        push_tile(a, di); // top, a odd
    }
    for a in (2..di).step_by(2) {
        push_tile(a, 0); // bottom, a even
    }

    let logical_z = (0..d).collect(); // bottom row, y = 1
    let logical_x = (0..d).map(|j| j * d + (d - 1)).collect(); // right column
    finish_layout(d, BoundaryKind::Rotated, qubits, stabilizers, logical_x, logical_z)
}

fn build_smooth_rough(d: u32) -> CodeLayout {
    let di = d as i32;
    let side = 2 * di - 2;
    let mut qubits = Vec::new();
    for y in 0..=side {
        for x in 0..=side {
            if (x + y) % 2 == 0 {
                qubits.push((x, y));
            }
        }
    }
    let index: std::collections::HashMap<(i32, i32), u32> = qubits
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i as u32))
        .collect();

    let mut stabilizers = Vec::new();
    for y in 0..=side {
        for x in 0..=side {
            if (x + y) % 2 == 0 {
                continue;
            }
            // Checks sit on odd-parity points: stars (x odd) are X-kind,
            // plaquettes (x even) are Z-kind.
            let kind = if x % 2 == 1 { PauliKind::X } else { PauliKind::Z };
            let support: Vec<u32> = [(0, -1), (0, 1), (-1, 0), (1, 0)]
                .iter()
                .filter_map(|&(dx, dy)| index.get(&(x + dx, y + dy)).copied())
                .collect();
            debug_assert!(support.len() == 3 || support.len() == 4);
            stabilizers.push(Stabilizer {
                kind,
                support,
                tile: (x, y),
            });
        }
    }

    let logical_z = (0..=side)
        .step_by(2)
        .map(|x| index[&(x, side)])
        .collect(); // bottom row of horizontal-edge qubits
    let logical_x = (0..=side)
        .step_by(2)
        .map(|y| index[&(side, y)])
        .collect(); // right column
    finish_layout(d, BoundaryKind::SmoothRough, qubits, stabilizers, logical_x, logical_z)
}

fn layout_commutes(layout: &CodeLayout) -> bool {
    let n = layout.stabilizers.len();
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (&layout.stabilizers[i], &layout.stabilizers[j]);
            if a.kind != b.kind {
                let overlap = a.support.iter().filter(|q| b.support.contains(q)).count();
                if overlap % 2 != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Measure every stabilizer against `error`: bit c is the symplectic-product
/// parity of check c with the error.
pub fn extract_syndrome(layout: &CodeLayout, error: &PauliError) -> Result<Syndrome, LatticeError> {
    if error.n_qubits() != layout.n_qubits() {
        return Err(LatticeError::SizeMismatch {
            got: error.n_qubits(),
            want: layout.n_qubits(),
        });
    }
    let mut syndrome = BitString::zeros(layout.n_checks());
    for (c, s) in layout.stabilizers.iter().enumerate() {
        let plane = match s.kind {
            PauliKind::X => &error.z_bits,
            PauliKind::Z => &error.x_bits,
        };
        if plane.parity_over(&s.support) {
            syndrome.set(c as u32, true);
        }
    }
    Ok(syndrome)
}

/// Classify a syndrome-free residual by its anticommutation with the fixed
/// logical representatives.
pub fn logical_class(
    layout: &CodeLayout,
    residual: &PauliError,
) -> Result<LogicalClass, LatticeError> {
    let syndrome = extract_syndrome(layout, residual)?;
    if !syndrome.is_zero() {
        return Err(LatticeError::NonzeroSyndrome);
    }
    Ok(classify_residual(layout, residual))
}

/// Class lookup without the syndrome check, for callers that already know the
/// residual is syndrome-free.
pub(crate) fn classify_residual(layout: &CodeLayout, residual: &PauliError) -> LogicalClass {
    // Anticommutes with logical Z iff the X plane overlaps it oddly.
    let anti_z = residual.x_bits.parity_over(&layout.logical_z);
    let anti_x = residual.z_bits.parity_over(&layout.logical_x);
    match (anti_z, anti_x) {
        (false, false) => LogicalClass::I,
        (true, false) => LogicalClass::X,
        (false, true) => LogicalClass::Z,
        (true, true) => LogicalClass::Y,
    }
}

/// Bipartite adjacency between qubit vertices and check vertices.
#[derive(Debug, Clone)]
pub struct TannerGraph {
    pub n_qubits: u32,
    /// Per check: flavor and supported qubits.
    pub checks: Vec<(PauliKind, Vec<u32>)>,
    /// Per qubit: (check id, edge id) pairs.
    pub qubit_edges: Vec<Vec<(u32, u32)>>,
    /// Per check: edge ids aligned with its support list.
    pub check_edges: Vec<Vec<u32>>,
    pub n_edges: u32,
}

impl TannerGraph {
    pub fn new(n_qubits: u32, checks: Vec<(PauliKind, Vec<u32>)>) -> TannerGraph {
        let mut qubit_edges = vec![Vec::new(); n_qubits as usize];
        let mut check_edges = Vec::with_capacity(checks.len());
        let mut next_edge = 0u32;
        for (c, (_, support)) in checks.iter().enumerate() {
            let mut ids = Vec::with_capacity(support.len());
            for &q in support {
                qubit_edges[q as usize].push((c as u32, next_edge));
                ids.push(next_edge);
                next_edge += 1;
            }
            check_edges.push(ids);
        }
        TannerGraph {
            n_qubits,
            checks,
            qubit_edges,
            check_edges,
            n_edges: next_edge,
        }
    }

    pub fn n_checks(&self) -> u32 {
        self.checks.len() as u32
    }

    pub fn check_degree(&self, c: u32) -> usize {
        self.checks[c as usize].1.len()
    }

    pub fn qubit_degree(&self, q: u32) -> usize {
        self.qubit_edges[q as usize].len()
    }
}

/// Tanner graph of a layout: edge (q, c) iff q is in the support of c.
pub fn tanner_graph(layout: &CodeLayout) -> TannerGraph {
    TannerGraph::new(
        layout.n_qubits(),
        layout
            .stabilizers
            .iter()
            .map(|s| (s.kind, s.support.clone()))
            .collect(),
    )
}
