use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};

use crate::distribution::{label, OutcomeDistribution};
use crate::{Error, Result};

/// Shot counts per outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    n_qubits: usize,
    counts: Vec<u64>,
}

impl Histogram {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts.get(index).copied().unwrap_or(0)
    }

    pub fn shots(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Non-zero bins as `(label, count)` in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = (String, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| **c > 0)
            .map(|(k, c)| (label(k, self.n_qubits), *c))
    }

    /// Relative frequencies as a distribution.
    pub fn frequencies(&self) -> OutcomeDistribution {
        let shots = self.shots() as f64;
        OutcomeDistribution::from_raw(
            self.n_qubits,
            self.counts.iter().map(|&c| c as f64 / shots).collect(),
        )
    }
}

/// Draws `shots` measurement outcomes from `dist`.
///
/// The multinomial draw is a chain of conditional binomials on a ChaCha8
/// stream seeded with `seed`, so a given `(dist, shots, seed)` always gives
/// the same histogram.
pub fn sample(dist: &OutcomeDistribution, shots: u64, seed: u64) -> Result<Histogram> {
    if shots == 0 {
        return Err(Error::ZeroShots);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = dist.probabilities();
    let mut counts = vec![0u64; p.len()];
    let mut remaining = shots;
    let mut mass_left = 1.0f64;
    for (k, &pk) in p.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        if k + 1 == p.len() {
            counts[k] = remaining;
            break;
        }
        let pk = pk.max(0.0);
        let q = if mass_left > 0.0 { (pk / mass_left).clamp(0.0, 1.0) } else { 0.0 };
        let draw = if q >= 1.0 {
            remaining
        } else if q <= 0.0 {
            0
        } else {
            Binomial::new(remaining, q)
                .map_err(|e| Error::Distribution(e.to_string()))?
                .sample(&mut rng)
        };
        counts[k] = draw;
        remaining -= draw;
        mass_left -= pk;
    }
    Ok(Histogram {
        n_qubits: dist.n_qubits(),
        counts,
    })
}
