//! Decoding laboratory for 2D surface codes.
//!
//! The crate builds rotated and smooth/rough surface-code layouts, samples
//! Pauli noise, and decodes syndromes with exact minimum-weight perfect
//! matching under four edge-weight strategies: plain Manhattan lengths, a
//! uniform alias of the same, path-counting degeneracy bonuses, and
//! belief-propagation-driven multi-path odds summation. A Monte-Carlo
//! harness sweeps (distance, error-rate) grids with reproducible per-trial
//! random streams and fits threshold crossings with a finite-size-scaling
//! ansatz.

pub mod bp;
pub mod dagsum;
pub mod decoder;
pub mod fit;
pub mod lattice;
pub mod matching;
pub mod montecarlo;
pub mod noise;
pub mod weights;

pub use bp::{check_message, qubit_message, run_bp, BeliefState, BpOptions};
pub use dagsum::{
    build_boundary_dag, build_pair_dag, build_traversal_dag, BoundingBoxDag, DagEdge, DagError,
};
pub use decoder::{decode, run_trial, DecodeOutcome, DecoderContext};
pub use fit::{fit_threshold, FitError, ThresholdFit};
pub use lattice::{
    build_layout, extract_syndrome, logical_class, tanner_graph, BitString, BoundaryKind,
    CodeLayout, LatticeError, LogicalClass, Pauli, PauliError, PauliKind, Stabilizer, Syndrome,
    TannerGraph,
};
pub use decoder::{plane_flip_probability, strategy_for, DecodeError};
pub use matching::{
    build_syndrome_graph, mwpm, realise_correction, CorrectionPart, MatchError, MatchGeometry,
    Matching, SynEdge, SynEdgeKind, SyndromeGraph,
};
pub use montecarlo::{
    boundary_label, noise_label, run_sweep, run_sweep_with, wilson_interval, NoiseKind,
    StrategyKind, SweepConfig, SweepError, SweepRecord,
};
pub use noise::{trial_rng, NoiseModel};
pub use weights::{edge_weight, odds_from_beliefs, QubitOdds, WeightError, WeightStrategy};
