//! Quaternary belief propagation on the Tanner graph.
//!
//! Messages are distributions over {I, X, Y, Z}. Check vertices enumerate
//! the assignments of their other support qubits directly (at most 4^3 = 64
//! terms) and keep those whose commutation parity with the stabilizer
//! matches the syndrome bit. The schedule is parallel flooding: all check
//! messages, then all qubit messages, once per round.

use crate::lattice::{Pauli, PauliKind, Syndrome, TannerGraph};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum BpError {
    #[error("prior for qubit {0} is not a distribution")]
    BadPrior(u32),
    #[error("syndrome has {got} bits, graph has {want} checks")]
    SyndromeLength { got: u32, want: u32 },
}

/// Schedule controls. `rounds` bounds the iteration count; when
/// `convergence_tol` is set the loop stops early once no belief component
/// moves by more than the tolerance between rounds.
#[derive(Debug, Clone, Copy)]
pub struct BpOptions {
    pub rounds: u32,
    pub convergence_tol: Option<f64>,
}

impl BpOptions {
    pub fn fixed(rounds: u32) -> BpOptions {
        BpOptions {
            rounds,
            convergence_tol: None,
        }
    }
}

/// Messages and posterior beliefs of one propagation run.
#[derive(Debug, Clone)]
pub struct BeliefState {
    pub prior: Vec<[f64; 4]>,
    /// Qubit-to-check messages, indexed by Tanner edge id.
    pub msg_qc: Vec<[f64; 4]>,
    /// Check-to-qubit messages, indexed by Tanner edge id.
    pub msg_cq: Vec<[f64; 4]>,
    pub beliefs: Vec<[f64; 4]>,
    pub rounds_run: u32,
    /// Number of all-zero messages replaced by the uniform distribution.
    pub degenerate_messages: u32,
}

#[inline]
fn anti(kind: PauliKind, pauli_index: usize) -> usize {
    usize::from(Pauli::from_index(pauli_index).anticommutes_with(kind))
}

/// Normalize in place; an all-zero vector becomes uniform and reports true.
fn normalize(v: &mut [f64; 4]) -> bool {
    let sum: f64 = v.iter().sum();
    if sum > 0.0 && sum.is_finite() {
        for x in v.iter_mut() {
            *x /= sum;
        }
        false
    } else {
        *v = [0.25; 4];
        true
    }
}

/// Message from a check to one of its qubits, given the messages from the
/// check's other support qubits. Enumerates all assignments of the others
/// and keeps those whose total commutation parity matches the syndrome bit.
pub fn check_message(kind: PauliKind, syndrome_bit: bool, others: &[[f64; 4]]) -> [f64; 4] {
    debug_assert!(others.len() <= 3);
    let mut acc = [0.0f64; 2];
    let assignments = 1usize << (2 * others.len());
    for mask in 0..assignments {
        let mut product = 1.0;
        let mut parity = 0usize;
        let mut m = mask;
        for incoming in others {
            let e = m & 3;
            m >>= 2;
            product *= incoming[e];
            parity ^= anti(kind, e);
        }
        acc[parity] += product;
    }
    let s = usize::from(syndrome_bit);
    let mut out = [0.0; 4];
    for (e, slot) in out.iter_mut().enumerate() {
        *slot = acc[s ^ anti(kind, e)];
    }
    normalize(&mut out);
    out
}

/// Message from a qubit back to one of its checks: the prior times every
/// other incoming check message.
pub fn qubit_message(prior: &[f64; 4], other_incoming: &[[f64; 4]]) -> [f64; 4] {
    let mut out = *prior;
    for m in other_incoming {
        for e in 0..4 {
            out[e] *= m[e];
        }
    }
    normalize(&mut out);
    out
}

/// Run flooding belief propagation and return the per-qubit posteriors.
pub fn run_bp(
    tanner: &TannerGraph,
    prior: &[[f64; 4]],
    syndrome: &Syndrome,
    options: BpOptions,
) -> Result<BeliefState, BpError> {
    run_bp_observed(tanner, prior, syndrome, options, |_, _| {})
}

/// As `run_bp`, invoking `observer(round, beliefs)` after every round.
/// Round 0 reports the prior.
pub fn run_bp_observed(
    tanner: &TannerGraph,
    prior: &[[f64; 4]],
    syndrome: &Syndrome,
    options: BpOptions,
    mut observer: impl FnMut(u32, &[[f64; 4]]),
) -> Result<BeliefState, BpError> {
    if prior.len() != tanner.n_qubits as usize {
        return Err(BpError::BadPrior(prior.len() as u32));
    }
    for (q, p) in prior.iter().enumerate() {
        let sum: f64 = p.iter().sum();
        if p.iter().any(|&x| x < 0.0) || !(sum > 0.0) || !sum.is_finite() {
            return Err(BpError::BadPrior(q as u32));
        }
    }
    if syndrome.len() != tanner.n_checks() {
        return Err(BpError::SyndromeLength {
            got: syndrome.len(),
            want: tanner.n_checks(),
        });
    }

    let mut state = BeliefState {
        prior: prior.to_vec(),
        msg_qc: Vec::new(),
        msg_cq: vec![[0.25; 4]; tanner.n_edges as usize],
        beliefs: prior.to_vec(),
        rounds_run: 0,
        degenerate_messages: 0,
    };
    for b in state.beliefs.iter_mut() {
        normalize(b);
    }
    observer(0, &state.beliefs);

    // First-round qubit-to-check messages are the priors.
    let mut msg_qc = vec![[0.0; 4]; tanner.n_edges as usize];
    for (q, edges) in tanner.qubit_edges.iter().enumerate() {
        for &(_, e) in edges {
            msg_qc[e as usize] = state.beliefs[q];
        }
    }

    let mut previous = state.beliefs.clone();
    for round in 1..=options.rounds {
        // Check messages.
        for c in 0..tanner.n_checks() as usize {
            let (kind, support) = &tanner.checks[c];
            let edge_ids = &tanner.check_edges[c];
            let bit = syndrome.get(c as u32);
            let mut others: [[f64; 4]; 3] = [[0.0; 4]; 3];
            for target in 0..support.len() {
                let mut k = 0;
                for (pos, &e) in edge_ids.iter().enumerate() {
                    if pos != target {
                        others[k] = msg_qc[e as usize];
                        k += 1;
                    }
                }
                let mut msg = check_message(*kind, bit, &others[..k]);
                if normalize(&mut msg) {
                    state.degenerate_messages += 1;
                }
                state.msg_cq[edge_ids[target] as usize] = msg;
            }
        }

        // Beliefs from the fresh check messages.
        for (q, edges) in tanner.qubit_edges.iter().enumerate() {
            let mut b = state.prior[q];
            for &(_, e) in edges {
                let m = &state.msg_cq[e as usize];
                for i in 0..4 {
                    b[i] *= m[i];
                }
            }
            if normalize(&mut b) {
                state.degenerate_messages += 1;
            }
            state.beliefs[q] = b;
        }
        state.rounds_run = round;
        observer(round, &state.beliefs);

        if let Some(tol) = options.convergence_tol {
            let delta = state
                .beliefs
                .iter()
                .zip(&previous)
                .flat_map(|(a, b)| a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()))
                .fold(0.0f64, f64::max);
            if delta < tol {
                break;
            }
            previous.clone_from(&state.beliefs);
        }

        // Qubit messages for the next round.
        for (q, edges) in tanner.qubit_edges.iter().enumerate() {
            for (i, &(_, e)) in edges.iter().enumerate() {
                let mut m = state.prior[q];
                for (j, &(_, e2)) in edges.iter().enumerate() {
                    if i != j {
                        let inc = &state.msg_cq[e2 as usize];
                        for k in 0..4 {
                            m[k] *= inc[k];
                        }
                    }
                }
                if normalize(&mut m) {
                    state.degenerate_messages += 1;
                }
                msg_qc[e as usize] = m;
            }
        }
    }
    state.msg_qc = msg_qc;
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{
        build_layout, extract_syndrome, tanner_graph, BoundaryKind, Pauli, PauliError,
    };

    const UNIFORM: [f64; 4] = [0.25; 4];

    #[test]
    fn weight2_check_syndrome0_uniform_neighbour_gives_uniform() {
        let m = check_message(PauliKind::Z, false, &[UNIFORM]);
        for x in m {
            assert!((x - 0.25).abs() < 1e-15);
        }
    }

    #[test]
    fn weight2_check_syndrome1_certain_identity_forces_anticommuting_mass() {
        let m = check_message(PauliKind::Z, true, &[[1.0, 0.0, 0.0, 0.0]]);
        assert_eq!(m[Pauli::I.index()], 0.0);
        assert_eq!(m[Pauli::Z.index()], 0.0);
        assert!((m[Pauli::X.index()] - 0.5).abs() < 1e-15);
        assert!((m[Pauli::Y.index()] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn qubit_message_with_no_neighbours_is_prior() {
        let prior = [0.97, 0.01, 0.01, 0.01];
        assert_eq!(qubit_message(&prior, &[]), prior);
    }

    #[test]
    fn qubit_message_with_uniform_incoming_is_prior() {
        let prior = [0.97, 0.01, 0.01, 0.01];
        let m = qubit_message(&prior, &[UNIFORM]);
        for (a, b) in m.iter().zip(prior) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn qubit_message_matches_direct_product() {
        let prior = [0.4, 0.3, 0.2, 0.1];
        let m1 = [0.1, 0.2, 0.3, 0.4];
        let m2 = [0.25, 0.25, 0.4, 0.1];
        let got = qubit_message(&prior, &[m1, m2]);
        let mut want = [0.0; 4];
        for e in 0..4 {
            want[e] = prior[e] * m1[e] * m2[e];
        }
        let sum: f64 = want.iter().sum();
        for e in 0..4 {
            assert!((got[e] - want[e] / sum).abs() < 1e-15);
        }
    }

    #[test]
    fn all_zero_syndrome_keeps_identity_most_likely() {
        let layout = build_layout(3, BoundaryKind::Rotated).unwrap();
        let tanner = tanner_graph(&layout);
        let syndrome = extract_syndrome(&layout, &PauliError::identity(9)).unwrap();
        for p in [0.55, 0.7, 0.9, 0.97] {
            let prior = vec![[p, (1.0 - p) / 3.0, (1.0 - p) / 3.0, (1.0 - p) / 3.0]; 9];
            let state = run_bp(&tanner, &prior, &syndrome, BpOptions::fixed(1)).unwrap();
            for b in &state.beliefs {
                let argmax = b
                    .iter()
                    .enumerate()
                    .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                    .unwrap()
                    .0;
                assert_eq!(argmax, 0);
            }
        }
    }

    fn corner_scenario() -> (TannerGraph, Vec<[f64; 4]>, Syndrome, u32, u32) {
        let layout = build_layout(3, BoundaryKind::Rotated).unwrap();
        let tanner = tanner_graph(&layout);
        let corner = layout.qubit_index((1, 5)).unwrap();
        let neighbour = layout.qubit_index((3, 5)).unwrap();
        let mut error = PauliError::identity(9);
        error.set_pauli(corner, Pauli::X);
        let syndrome = extract_syndrome(&layout, &error).unwrap();
        let prior = vec![[0.97, 0.01, 0.01, 0.01]; 9];
        (tanner, prior, syndrome, corner, neighbour)
    }

    #[test]
    fn corner_x_iteration_one_marginal() {
        let (tanner, prior, syndrome, corner, _) = corner_scenario();
        let state = run_bp(&tanner, &prior, &syndrome, BpOptions::fixed(1)).unwrap();
        let b = state.beliefs[corner as usize];
        let p_iz = b[0] + b[3];
        assert!((p_iz - 0.8533).abs() < 5e-4, "iteration-1 p_I + p_Z = {p_iz}");
        // Exact-arithmetic value of this update.
        assert!((p_iz - 0.8532598448298474).abs() < 1e-9);
    }

    #[test]
    fn corner_x_split_belief_after_ten_rounds() {
        let (tanner, prior, syndrome, corner, neighbour) = corner_scenario();
        let state = run_bp(&tanner, &prior, &syndrome, BpOptions::fixed(10)).unwrap();
        let b = state.beliefs[corner as usize];
        let p_xy = b[1] + b[2];
        assert!((0.47..=0.51).contains(&p_xy), "p_X + p_Y = {p_xy}");
        assert!((p_xy - 0.492277907725293).abs() < 1e-6);
        let nb = state.beliefs[neighbour as usize];
        for e in 0..4 {
            assert!((b[e] - nb[e]).abs() < 1e-3);
        }
    }

    #[test]
    fn split_belief_argmax_violates_syndrome() {
        let layout = build_layout(3, BoundaryKind::Rotated).unwrap();
        let (tanner, prior, syndrome, _, _) = corner_scenario();
        let state = run_bp(&tanner, &prior, &syndrome, BpOptions::fixed(10)).unwrap();
        let mut argmax_error = PauliError::identity(9);
        for (q, b) in state.beliefs.iter().enumerate() {
            let e = b
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
                .unwrap()
                .0;
            argmax_error.set_pauli(q as u32, Pauli::from_index(e));
        }
        let got = extract_syndrome(&layout, &argmax_error).unwrap();
        assert_ne!(got, syndrome);
    }

    #[test]
    fn messages_and_beliefs_stay_normalized() {
        let (tanner, prior, syndrome, _, _) = corner_scenario();
        let state = run_bp(&tanner, &prior, &syndrome, BpOptions::fixed(7)).unwrap();
        for v in state
            .msg_cq
            .iter()
            .chain(state.msg_qc.iter())
            .chain(state.beliefs.iter())
        {
            assert!(v.iter().all(|&x| x >= 0.0));
            assert!((v.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        }
        assert_eq!(state.degenerate_messages, 0);
    }

    #[test]
    fn deterministic_beliefs() {
        let (tanner, prior, syndrome, _, _) = corner_scenario();
        let a = run_bp(&tanner, &prior, &syndrome, BpOptions::fixed(5)).unwrap();
        let b = run_bp(&tanner, &prior, &syndrome, BpOptions::fixed(5)).unwrap();
        assert_eq!(a.beliefs, b.beliefs);
    }

    #[test]
    fn convergence_knob_stops_early() {
        let (tanner, prior, syndrome, _, _) = corner_scenario();
        let opts = BpOptions {
            rounds: 200,
            convergence_tol: Some(1e-8),
        };
        let state = run_bp(&tanner, &prior, &syndrome, opts).unwrap();
        assert!(state.rounds_run < 200);
    }

    #[test]
    fn rejects_bad_prior_and_syndrome() {
        let (tanner, prior, syndrome, _, _) = corner_scenario();
        let mut bad = prior.clone();
        bad[0] = [0.0; 4];
        assert!(run_bp(&tanner, &bad, &syndrome, BpOptions::fixed(1)).is_err());
        let short = Syndrome::zeros(3);
        assert!(run_bp(&tanner, &prior, &short, BpOptions::fixed(1)).is_err());
    }
}
