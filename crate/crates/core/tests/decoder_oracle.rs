//! Decoder-level oracles: replay against an exhaustive-matching decoder and
//! cross-strategy argmin invariance.

use multipath_core::{
    build_layout, build_syndrome_graph, extract_syndrome, logical_class, mwpm, realise_correction,
    trial_rng, BoundaryKind, CorrectionPart, DecoderContext, LogicalClass, MatchGeometry,
    Matching, NoiseKind, NoiseModel, PauliError, PauliKind, QubitOdds, SyndromeGraph,
    WeightStrategy,
};

/// Exhaustive minimum-weight perfect matching by recursion: the oracle
/// solver for small syndrome graphs.
fn brute_mwpm(graph: &SyndromeGraph) -> Matching {
    let n = graph.n_vertices() as usize;
    if n == 0 {
        return Matching {
            pairs: Vec::new(),
            total_weight: 0.0,
        };
    }
    let mut adj = vec![vec![]; n];
    for e in &graph.edges {
        adj[e.u as usize].push((e.v as usize, e.weight));
        adj[e.v as usize].push((e.u as usize, e.weight));
    }
    fn go(
        used: &mut Vec<bool>,
        adj: &[Vec<(usize, f64)>],
        pairs: &mut Vec<(u32, u32)>,
        best: &mut Option<(f64, Vec<(u32, u32)>)>,
        acc: f64,
    ) {
        let Some(u) = used.iter().position(|&x| !x) else {
            if best.as_ref().map_or(true, |(b, _)| acc < *b) {
                *best = Some((acc, pairs.clone()));
            }
            return;
        };
        used[u] = true;
        for &(v, w) in &adj[u] {
            if !used[v] {
                used[v] = true;
                pairs.push((u as u32, v as u32));
                go(used, adj, pairs, best, acc + w);
                pairs.pop();
                used[v] = false;
            }
        }
        used[u] = false;
    }
    let mut best = None;
    go(
        &mut vec![false; n],
        &adj,
        &mut Vec::new(),
        &mut best,
        0.0,
    );
    let (total_weight, mut pairs) = best.expect("syndrome graphs admit a perfect matching");
    pairs.sort_unstable();
    Matching {
        pairs,
        total_weight,
    }
}

/// Decode through the public pipeline but with a caller-supplied solver.
fn decode_with_solver(
    ctx: &DecoderContext,
    error: &PauliError,
    solver: impl Fn(&SyndromeGraph) -> Matching,
) -> LogicalClass {
    let layout = &ctx.layout;
    let syndrome = extract_syndrome(layout, error).unwrap();
    let odds = QubitOdds::from_flip_probability(layout.n_qubits(), 0.4 * 2.0 / 3.0);
    let mut parts = Vec::new();
    for component in [PauliKind::X, PauliKind::Z] {
        let graph = build_syndrome_graph(
            ctx.geometry(component),
            &syndrome,
            WeightStrategy::Manhattan,
            &odds,
        )
        .unwrap();
        let matching = solver(&graph);
        parts.push((graph, matching));
    }
    let refs: Vec<CorrectionPart> = parts
        .iter()
        .map(|(g, m)| CorrectionPart {
            graph: g,
            matching: m,
            odds: &odds,
        })
        .collect();
    let correction = realise_correction(layout, &refs).unwrap();
    let mut residual = error.clone();
    residual.compose_with(&correction);
    logical_class(&ctx.layout, &residual).unwrap()
}

#[test]
fn failure_rate_matches_exhaustive_matching_replay() {
    // Replay identical sampled errors through the production solver and an
    // exhaustive matcher; rates agree within 4 sigma (ties may differ).
    let ctx = DecoderContext::new(build_layout(3, BoundaryKind::Rotated).unwrap());
    let model = NoiseModel::new(NoiseKind::Depolarizing, 0.4).unwrap();
    let trials = 10_000u64;
    let mut fail_fast = 0u64;
    let mut fail_brute = 0u64;
    for t in 0..trials {
        let mut rng = trial_rng(4242, 3, 0, t);
        let error = model.sample(&ctx.layout, &mut rng);
        if decode_with_solver(&ctx, &error, mwpm) != LogicalClass::I {
            fail_fast += 1;
        }
        if decode_with_solver(&ctx, &error, brute_mwpm) != LogicalClass::I {
            fail_brute += 1;
        }
    }
    let n = trials as f64;
    let (ra, rb) = (fail_fast as f64 / n, fail_brute as f64 / n);
    let sigma = (ra * (1.0 - ra) / n + rb * (1.0 - rb) / n).sqrt().max(1e-4);
    assert!(
        (ra - rb).abs() <= 4.0 * sigma,
        "fast {ra} vs brute {rb} (sigma {sigma})"
    );
}

#[test]
fn uniform_odds_multipath_selects_path_count_matchings() {
    // With a flat prior, the log path-sum objective is the path-count
    // objective scaled by a positive constant: the chosen matchings must be
    // co-optimal under both weightings, for every d=3 syndrome.
    let layout = build_layout(3, BoundaryKind::Rotated).unwrap();
    let geometry = MatchGeometry::new(&layout, PauliKind::X);
    let p = 0.1;
    let odds = QubitOdds::from_flip_probability(layout.n_qubits(), p);
    let z_checks = layout.checks_of_kind(PauliKind::Z).len();
    assert_eq!(z_checks, 4);
    for mask in 0..(1u32 << z_checks) {
        let mut syndrome = multipath_core::Syndrome::zeros(layout.n_checks());
        for (i, &c) in layout.checks_of_kind(PauliKind::Z).iter().enumerate() {
            syndrome.set(c, (mask >> i) & 1 == 1);
        }
        let graph_pc = build_syndrome_graph(
            &geometry,
            &syndrome,
            WeightStrategy::PathCount { p },
            &odds,
        )
        .unwrap();
        let graph_bp =
            build_syndrome_graph(&geometry, &syndrome, WeightStrategy::BpMultipath, &odds)
                .unwrap();
        let m_pc = mwpm(&graph_pc);
        let m_bp = mwpm(&graph_bp);
        // Cross-evaluate: each chosen matching must cost the same as the
        // other one's choice under both weight functions.
        let eval = |graph: &SyndromeGraph, pairs: &[(u32, u32)]| -> f64 {
            pairs
                .iter()
                .map(|&(u, v)| {
                    graph
                        .edges
                        .iter()
                        .find(|e| (e.u, e.v) == (u, v))
                        .unwrap()
                        .weight
                })
                .sum()
        };
        assert!(
            (eval(&graph_pc, &m_pc.pairs) - eval(&graph_pc, &m_bp.pairs)).abs() < 1e-9,
            "mask {mask:04b}: path-count objective disagrees"
        );
        assert!(
            (eval(&graph_bp, &m_bp.pairs) - eval(&graph_bp, &m_pc.pairs)).abs() < 1e-9,
            "mask {mask:04b}: multipath objective disagrees"
        );
    }
}

#[test]
fn corrections_cancel_syndromes_at_scale() {
    let ctx = DecoderContext::new(build_layout(5, BoundaryKind::Rotated).unwrap());
    let model = NoiseModel::new(NoiseKind::Depolarizing, 0.12).unwrap();
    for t in 0..10_000u64 {
        let mut rng = trial_rng(515, 5, 0, t);
        let error = model.sample(&ctx.layout, &mut rng);
        let out = multipath_core::decode(&ctx, &model, &error, WeightStrategy::Manhattan).unwrap();
        let mut residual = error.clone();
        residual.compose_with(&out.correction);
        assert!(
            extract_syndrome(&ctx.layout, &residual).unwrap().is_zero(),
            "trial {t}"
        );
    }
}
