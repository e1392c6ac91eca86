//! Outcome distributions over Z-basis measurement results.

use crate::{Error, Result, TOLERANCE};

/// Probabilities over the `2ⁿ` computational-basis outcomes.
///
/// Index `k` is read as a bit string with qubit 0 as the most significant
/// bit, so for the game `k = 0b0101` is the outcome `0101` in which Bob and
/// Doug ordered the expensive meal. Labels are printed big-endian (Alice
/// leftmost). Qiskit-style histograms print the same outcome reversed.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    n_qubits: usize,
    p: Vec<f64>,
}

impl OutcomeDistribution {
    /// Validates length, range and normalization (within [`TOLERANCE`]).
    pub fn new(n_qubits: usize, p: Vec<f64>) -> Result<Self> {
        let dim = 1usize
            .checked_shl(n_qubits as u32)
            .ok_or(Error::QubitCount(n_qubits))?;
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        if let Some((k, v)) = p
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < -TOLERANCE || **v > 1.0 + TOLERANCE)
        {
            return Err(Error::Distribution(format!(
                "p[{}] = {v} is not a probability",
                label(k, n_qubits)
            )));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > TOLERANCE {
            return Err(Error::Distribution(format!("probabilities sum to {total}")));
        }
        Ok(Self { n_qubits, p })
    }

    pub(crate) fn from_raw(n_qubits: usize, p: Vec<f64>) -> Self {
        debug_assert_eq!(p.len(), 1 << n_qubits);
        Self { n_qubits, p }
    }

    pub fn point_mass(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::BasisIndex { index, dim });
        }
        let mut p = vec![0.0; dim];
        p[index] = 1.0;
        Ok(Self { n_qubits, p })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.p
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.p.get(index).copied().unwrap_or(0.0)
    }

    /// Probability of the outcome written as a big-endian bit string.
    pub fn probability_of(&self, label: &str) -> Option<f64> {
        parse_label(label, self.n_qubits).map(|k| self.p[k])
    }

    pub fn label(&self, index: usize) -> String {
        label(index, self.n_qubits)
    }

    /// The most likely outcome; the lowest index wins ties.
    pub fn most_likely(&self) -> usize {
        let mut best = 0;
        for (k, &v) in self.p.iter().enumerate() {
            if v > self.p[best] {
                best = k;
            }
        }
        best
    }

    /// Outcomes with probability above `threshold`, in index order.
    pub fn support(&self, threshold: f64) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.p
            .iter()
            .copied()
            .enumerate()
            .filter(move |(_, v)| *v > threshold)
    }

    pub fn total_variation(&self, other: &OutcomeDistribution) -> f64 {
        0.5 * self
            .p
            .iter()
            .zip(&other.p)
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
    }

    pub fn max_abs_diff(&self, other: &OutcomeDistribution) -> f64 {
        self.p
            .iter()
            .zip(&other.p)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Big-endian bit string of `index` on `n_qubits` bits.
pub fn label(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|q| {
            if (index >> (n_qubits - 1 - q)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

/// Inverse of [`label`]. Returns `None` for the wrong length or a non-binary digit.
pub fn parse_label(label: &str, n_qubits: usize) -> Option<usize> {
    if label.len() != n_qubits {
        return None;
    }
    label.chars().try_fold(0usize, |acc, c| match c {
        '0' => Some(acc << 1),
        '1' => Some((acc << 1) | 1),
        _ => None,
    })
}
