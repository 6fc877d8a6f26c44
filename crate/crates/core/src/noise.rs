//! Stochastic Pauli error models and reproducible sampling.

use crate::lattice::{CodeLayout, Pauli, PauliError};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NoiseKind {
    /// Independent X and Z flips, each with probability p. The probability of
    /// a Y error is then p^2.
    IidXz,
    /// X, Y and Z each applied with probability p/3.
    Depolarizing,
}

#[derive(Debug, Error, PartialEq)]
pub enum NoiseError {
    #[error("error probability must lie in [0, 1), got {0}")]
    BadProbability(f64),
}

/// A per-qubit Pauli channel with a single strength parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoiseModel {
    pub kind: NoiseKind,
    pub p: f64,
}

impl NoiseModel {
    pub fn new(kind: NoiseKind, p: f64) -> Result<NoiseModel, NoiseError> {
        if !(0.0..1.0).contains(&p) || !p.is_finite() {
            return Err(NoiseError::BadProbability(p));
        }
        Ok(NoiseModel { kind, p })
    }

    /// Single-qubit distribution `[p_I, p_X, p_Y, p_Z]`.
    pub fn channel(&self) -> [f64; 4] {
        let p = self.p;
        match self.kind {
            NoiseKind::IidXz => [(1.0 - p) * (1.0 - p), p * (1.0 - p), p * p, p * (1.0 - p)],
            NoiseKind::Depolarizing => [1.0 - p, p / 3.0, p / 3.0, p / 3.0],
        }
    }

    /// Draw an i.i.d. error over the layout's qubits.
    pub fn sample<R: Rng>(&self, layout: &CodeLayout, rng: &mut R) -> PauliError {
        let n = layout.n_qubits();
        let mut error = PauliError::identity(n);
        match self.kind {
            NoiseKind::IidXz => {
                for q in 0..n {
                    if rng.gen::<f64>() < self.p {
                        error.x_bits.set(q, true);
                    }
                    if rng.gen::<f64>() < self.p {
                        error.z_bits.set(q, true);
                    }
                }
            }
            NoiseKind::Depolarizing => {
                for q in 0..n {
                    let u: f64 = rng.gen();
                    if u < self.p {
                        let p = match (3.0 * u / self.p) as u32 {
                            0 => Pauli::X,
                            1 => Pauli::Y,
                            _ => Pauli::Z,
                        };
                        error.set_pauli(q, p);
                    }
                }
            }
        }
        error
    }
}

/// Counter-based stream for one Monte-Carlo trial: the generator state is a
/// pure function of (master seed, distance, p index, trial index), so sweeps
/// are reproducible for any worker count.
pub fn trial_rng(master_seed: u64, distance: u32, p_index: u32, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..12].copy_from_slice(&distance.to_le_bytes());
    key[12..16].copy_from_slice(&p_index.to_le_bytes());
    key[16..24].copy_from_slice(&trial.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_layout, BoundaryKind};

    #[test]
    fn channel_examples() {
        let dep = NoiseModel::new(NoiseKind::Depolarizing, 0.03).unwrap();
        let c = dep.channel();
        for (got, want) in c.iter().zip([0.97, 0.01, 0.01, 0.01]) {
            assert!((got - want).abs() < 1e-15);
        }

        let iid0 = NoiseModel::new(NoiseKind::IidXz, 0.0).unwrap();
        assert_eq!(iid0.channel(), [1.0, 0.0, 0.0, 0.0]);

        let iid = NoiseModel::new(NoiseKind::IidXz, 0.1).unwrap();
        let c = iid.channel();
        for (got, want) in c.iter().zip([0.81, 0.09, 0.01, 0.09]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn channel_normalized() {
        for kind in [NoiseKind::IidXz, NoiseKind::Depolarizing] {
            for p in [0.0, 0.01, 0.1, 0.3, 0.7, 0.999] {
                let c = NoiseModel::new(kind, p).unwrap().channel();
                assert!(c.iter().all(|&v| v >= 0.0));
                assert!((c.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rejects_bad_probability() {
        assert!(NoiseModel::new(NoiseKind::IidXz, 1.0).is_err());
        assert!(NoiseModel::new(NoiseKind::IidXz, -0.1).is_err());
        assert!(NoiseModel::new(NoiseKind::Depolarizing, f64::NAN).is_err());
    }

    #[test]
    fn zero_probability_samples_identity() {
        let layout = build_layout(3, BoundaryKind::Rotated).unwrap();
        let model = NoiseModel::new(NoiseKind::IidXz, 0.0).unwrap();
        let mut rng = trial_rng(1, 3, 0, 0);
        for _ in 0..100 {
            assert!(model.sample(&layout, &mut rng).is_identity());
        }
    }

    #[test]
    fn p_near_one_depolarizing_never_identity_on_any_qubit() {
        let layout = build_layout(3, BoundaryKind::Rotated).unwrap();
        let model = NoiseModel::new(NoiseKind::Depolarizing, 0.999_999_999).unwrap();
        let mut rng = trial_rng(2, 3, 0, 0);
        for _ in 0..200 {
            let err = model.sample(&layout, &mut rng);
            assert_eq!(err.weight(), layout.n_qubits());
        }
    }

    #[test]
    fn sampling_is_reproducible() {
        let layout = build_layout(5, BoundaryKind::Rotated).unwrap();
        let model = NoiseModel::new(NoiseKind::Depolarizing, 0.2).unwrap();
        let a: Vec<PauliError> = (0..20)
            .map(|t| model.sample(&layout, &mut trial_rng(99, 5, 3, t)))
            .collect();
        let b: Vec<PauliError> = (0..20)
            .map(|t| model.sample(&layout, &mut trial_rng(99, 5, 3, t)))
            .collect();
        assert_eq!(a, b);
        // Distinct trials give distinct draws almost surely.
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn empirical_frequencies_match_channel() {
        // Chi-square style check: each category within 4 standard errors.
        let layout = build_layout(5, BoundaryKind::Rotated).unwrap();
        let model = NoiseModel::new(NoiseKind::Depolarizing, 0.1).unwrap();
        let n_samples = 40_000u64;
        let mut counts = [0u64; 4];
        let mut rng = trial_rng(7, 5, 0, 0);
        for _ in 0..n_samples {
            let err = model.sample(&layout, &mut rng);
            for q in 0..layout.n_qubits() {
                counts[err.pauli_at(q).index()] += 1;
            }
        }
        let total = (n_samples * layout.n_qubits() as u64) as f64;
        let channel = model.channel();
        for (i, &c) in counts.iter().enumerate() {
            let expect = channel[i] * total;
            let sigma = (channel[i] * (1.0 - channel[i]) * total).sqrt();
            assert!(
                (c as f64 - expect).abs() < 4.0 * sigma,
                "category {i}: {c} vs {expect}"
            );
        }
    }
}
