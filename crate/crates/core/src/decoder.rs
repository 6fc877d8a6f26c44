//! End-to-end decoding: syndrome extraction, optional belief propagation,
//! per-component matching, correction and logical verdict.

use crate::bp::{run_bp, BpError, BpOptions};
use crate::lattice::{
    classify_residual, extract_syndrome, tanner_graph, CodeLayout, LatticeError, LogicalClass,
    PauliError, PauliKind, TannerGraph,
};
use crate::matching::{
    build_syndrome_graph, mwpm, realise_correction, CorrectionPart, MatchError, MatchGeometry,
};
use crate::noise::{NoiseKind, NoiseModel};
use crate::weights::{odds_from_beliefs, QubitOdds, WeightStrategy};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DecodeError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Bp(#[from] BpError),
    #[error(transparent)]
    Match(#[from] MatchError),
}

/// Immutable per-layout state shared by every trial: the Tanner graph and
/// the pair/boundary DAG caches for both components.
#[derive(Debug)]
pub struct DecoderContext {
    pub layout: CodeLayout,
    pub tanner: TannerGraph,
    geometry: [MatchGeometry; 2],
}

impl DecoderContext {
    pub fn new(layout: CodeLayout) -> DecoderContext {
        let tanner = tanner_graph(&layout);
        let geometry = [
            MatchGeometry::new(&layout, PauliKind::X),
            MatchGeometry::new(&layout, PauliKind::Z),
        ];
        DecoderContext {
            layout,
            tanner,
            geometry,
        }
    }

    pub fn geometry(&self, component: PauliKind) -> &MatchGeometry {
        &self.geometry[component.index()]
    }
}

/// Result of decoding one error.
#[derive(Debug, Clone)]
pub struct DecodeOutcome {
    pub correction: PauliError,
    /// Homology class of error ⊕ correction. Under `IidXz` noise only the X
    /// component is decoded and judged, so the class is `I` or `X`.
    pub residual_class: LogicalClass,
    pub success: bool,
    /// Rounds of belief propagation run (0 for geometric strategies).
    pub bp_rounds: u32,
    /// Total matching weight per decoded component.
    pub matching_weights: Vec<(PauliKind, f64)>,
}

/// The error components a noise kind requires decoding.
fn components_for(kind: NoiseKind) -> &'static [PauliKind] {
    match kind {
        NoiseKind::IidXz => &[PauliKind::X],
        NoiseKind::Depolarizing => &[PauliKind::X, PauliKind::Z],
    }
}

/// The marginal flip probability of one error plane under the model.
pub fn plane_flip_probability(model: &NoiseModel) -> f64 {
    let c = model.channel();
    c[1] + c[2]
}

/// Instantiate strategy parameters for a concrete noise model: path-count
/// weights use the per-plane marginal flip probability.
pub fn strategy_for(kind: crate::montecarlo::StrategyKind, model: &NoiseModel) -> WeightStrategy {
    use crate::montecarlo::StrategyKind;
    match kind {
        StrategyKind::Manhattan => WeightStrategy::Manhattan,
        StrategyKind::Uniform => WeightStrategy::Uniform,
        StrategyKind::PathCount => WeightStrategy::PathCount {
            p: plane_flip_probability(model),
        },
        StrategyKind::BpMultipath => WeightStrategy::BpMultipath,
    }
}

/// Decode one error: extract the syndrome, derive per-qubit odds (from one
/// belief-propagation pass when the strategy asks for it), solve one exact
/// matching per component, realise the correction and classify the residual.
pub fn decode(
    ctx: &DecoderContext,
    model: &NoiseModel,
    error: &PauliError,
    strategy: WeightStrategy,
) -> Result<DecodeOutcome, DecodeError> {
    let layout = &ctx.layout;
    let syndrome = extract_syndrome(layout, error)?;
    let components = components_for(model.kind);

    let mut bp_rounds = 0;
    let component_odds: Vec<QubitOdds> = if strategy.uses_beliefs() {
        let prior = vec![model.channel(); layout.n_qubits() as usize];
        let state = run_bp(
            &ctx.tanner,
            &prior,
            &syndrome,
            BpOptions::fixed(layout.distance),
        )?;
        bp_rounds = state.rounds_run;
        components
            .iter()
            .map(|&c| odds_from_beliefs(&state.beliefs, c))
            .collect()
    } else {
        let p = plane_flip_probability(model);
        components
            .iter()
            .map(|_| QubitOdds::from_flip_probability(layout.n_qubits(), p))
            .collect()
    };

    let mut matching_weights = Vec::with_capacity(components.len());
    let mut graphs = Vec::with_capacity(components.len());
    for (&component, odds) in components.iter().zip(&component_odds) {
        let graph = build_syndrome_graph(ctx.geometry(component), &syndrome, strategy, odds)?;
        let matching = mwpm(&graph);
        matching_weights.push((component, matching.total_weight));
        graphs.push((graph, matching));
    }
    let parts: Vec<CorrectionPart> = graphs
        .iter()
        .zip(&component_odds)
        .map(|((graph, matching), odds)| CorrectionPart {
            graph,
            matching,
            odds,
        })
        .collect();
    let correction = realise_correction(layout, &parts)?;

    let mut residual = error.clone();
    residual.compose_with(&correction);
    let judged = match model.kind {
        NoiseKind::Depolarizing => residual,
        NoiseKind::IidXz => {
            // Only the X plane was decoded; judge only the matching logical.
            let mut x_only = PauliError::identity(layout.n_qubits());
            x_only.x_bits = residual.x_bits;
            x_only
        }
    };
    debug_assert!(
        extract_syndrome(layout, &judged)?.is_zero(),
        "residual syndrome must vanish"
    );
    let residual_class = classify_residual(layout, &judged);
    Ok(DecodeOutcome {
        correction,
        residual_class,
        success: residual_class == LogicalClass::I,
        bp_rounds,
        matching_weights,
    })
}

/// Sample one error, decode it, and report whether the logical state
/// survived.
pub fn run_trial(
    ctx: &DecoderContext,
    model: &NoiseModel,
    strategy: WeightStrategy,
    rng: &mut impl Rng,
) -> bool {
    let error = model.sample(&ctx.layout, rng);
    decode(ctx, model, &error, strategy)
        .expect("decoding a sampled error cannot fail")
        .success
}
