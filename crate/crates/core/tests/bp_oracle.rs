//! Enumeration oracles for belief propagation: exact conditional marginals
//! on tree-shaped Tanner graphs.

use multipath_core::{run_bp, BitString, BpOptions, Pauli, PauliKind, TannerGraph};
use rand::prelude::*;

/// Exact posterior marginals by enumerating all 4^n errors consistent with
/// the syndrome, weighted by the prior.
fn enumeration_marginals(
    tanner: &TannerGraph,
    prior: &[[f64; 4]],
    syndrome: &BitString,
) -> Vec<[f64; 4]> {
    let n = tanner.n_qubits as usize;
    let mut marginals = vec![[0.0f64; 4]; n];
    let mut total = 0.0;
    for assignment in 0..(1usize << (2 * n)) {
        let pauli_at = |q: usize| (assignment >> (2 * q)) & 3;
        let mut consistent = true;
        for (c, (kind, support)) in tanner.checks.iter().enumerate() {
            let mut parity = false;
            for &q in support {
                parity ^= Pauli::from_index(pauli_at(q as usize)).anticommutes_with(*kind);
            }
            if parity != syndrome.get(c as u32) {
                consistent = false;
                break;
            }
        }
        if !consistent {
            continue;
        }
        let weight: f64 = (0..n).map(|q| prior[q][pauli_at(q)]).product();
        total += weight;
        for q in 0..n {
            marginals[q][pauli_at(q)] += weight;
        }
    }
    assert!(total > 0.0, "syndrome must be reachable");
    for m in &mut marginals {
        for x in m.iter_mut() {
            *x /= total;
        }
    }
    marginals
}

fn converge(tanner: &TannerGraph, prior: &[[f64; 4]], syndrome: &BitString) -> Vec<[f64; 4]> {
    run_bp(
        tanner,
        prior,
        syndrome,
        BpOptions {
            rounds: 200,
            convergence_tol: Some(1e-13),
        },
    )
    .unwrap()
    .beliefs
}

#[test]
fn hand_built_five_qubit_tree_is_exact() {
    // Chain: c0{0,1} - c1{1,2,3} - c2{3,4}, mixed kinds.
    let tanner = TannerGraph::new(
        5,
        vec![
            (PauliKind::Z, vec![0, 1]),
            (PauliKind::X, vec![1, 2, 3]),
            (PauliKind::Z, vec![3, 4]),
        ],
    );
    let prior = vec![[0.91, 0.03, 0.02, 0.04]; 5];
    for syndrome_bits in 0..8u32 {
        let mut syndrome = BitString::zeros(3);
        for c in 0..3 {
            syndrome.set(c, (syndrome_bits >> c) & 1 == 1);
        }
        let beliefs = converge(&tanner, &prior, &syndrome);
        let exact = enumeration_marginals(&tanner, &prior, &syndrome);
        for q in 0..5 {
            for e in 0..4 {
                assert!(
                    (beliefs[q][e] - exact[q][e]).abs() < 1e-9,
                    "syndrome {syndrome_bits:03b}, qubit {q}, pauli {e}: {} vs {}",
                    beliefs[q][e],
                    exact[q][e]
                );
            }
        }
    }
}

/// Random bipartite tree with check degrees between 1 and 4.
fn random_tree(rng: &mut StdRng) -> TannerGraph {
    let n_qubits = rng.gen_range(2..=6u32);
    let mut checks: Vec<(PauliKind, Vec<u32>)> = Vec::new();
    let mut attached = vec![false; n_qubits as usize];
    attached[0] = true;
    // Attach every remaining qubit through a new check anchored at an
    // already-attached qubit; the bipartite graph stays acyclic.
    let mut pending: Vec<u32> = (1..n_qubits).collect();
    pending.shuffle(rng);
    while let Some(q) = pending.pop() {
        let anchors: Vec<u32> = (0..n_qubits).filter(|&i| attached[i as usize]).collect();
        let anchor = *anchors.choose(rng).unwrap();
        let mut support = vec![anchor, q];
        // Sometimes absorb one more fresh qubit into the same check.
        if rng.gen_bool(0.3) {
            if let Some(extra) = pending.pop() {
                support.push(extra);
                attached[extra as usize] = true;
            }
        }
        attached[q as usize] = true;
        let kind = if rng.gen_bool(0.5) { PauliKind::X } else { PauliKind::Z };
        checks.push((kind, support));
    }
    // A few dangling weight-1 checks keep degree diversity.
    if rng.gen_bool(0.4) {
        let q = rng.gen_range(0..n_qubits);
        checks.push((PauliKind::X, vec![q]));
    }
    TannerGraph::new(n_qubits, checks)
}

#[test]
fn random_trees_match_enumeration() {
    let mut rng = StdRng::seed_from_u64(314);
    for case in 0..200 {
        let tanner = random_tree(&mut rng);
        let n = tanner.n_qubits as usize;
        let prior: Vec<[f64; 4]> = (0..n)
            .map(|_| {
                let raw: [f64; 4] = [
                    rng.gen_range(0.3..1.0),
                    rng.gen_range(0.01..0.3),
                    rng.gen_range(0.01..0.3),
                    rng.gen_range(0.01..0.3),
                ];
                let sum: f64 = raw.iter().sum();
                [raw[0] / sum, raw[1] / sum, raw[2] / sum, raw[3] / sum]
            })
            .collect();
        // Sample an error to guarantee a consistent syndrome.
        let mut syndrome = BitString::zeros(tanner.n_checks());
        let error: Vec<usize> = (0..n).map(|_| rng.gen_range(0..4)).collect();
        for (c, (kind, support)) in tanner.checks.iter().enumerate() {
            let mut parity = false;
            for &q in support {
                parity ^= Pauli::from_index(error[q as usize]).anticommutes_with(*kind);
            }
            syndrome.set(c as u32, parity);
        }
        let beliefs = converge(&tanner, &prior, &syndrome);
        let exact = enumeration_marginals(&tanner, &prior, &syndrome);
        for q in 0..n {
            for e in 0..4 {
                assert!(
                    (beliefs[q][e] - exact[q][e]).abs() < 1e-9,
                    "case {case}, qubit {q}, pauli {e}: {} vs {}",
                    beliefs[q][e],
                    exact[q][e]
                );
            }
        }
    }
}
