//! Classical payoffs of the four-diner game and their expectation under an
//! outcome distribution.
//!
//! In a symmetric game a diner's utility depends only on their own order and
//! on how many of the other three ordered the expensive meal. For the
//! built-in game:
//!
//! | own order | 0 others E | 1 | 2 | 3 |
//! |-----------|-----------:|--:|--:|--:|
//! | `C`       | 6          | 4 | 3 | 0 |
//! | `E`       | 8          | 4 | 3 | 1 |
//!
//! Doug's expected payoff is then
//! `6P(0000) + 8P(0001) + 4P(0010) + … + 0P(1110) + 1P(1111)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distribution::{label, parse_label, OutcomeDistribution};
use crate::ewl::N_PLAYERS;
use crate::{Error, Player, Result, TOLERANCE};

/// Number of Z-basis outcomes of the game register.
pub const N_OUTCOMES: usize = 1 << N_PLAYERS;

/// A diner's classical order, i.e. the value of their measured qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Order {
    Cheap,
    Expensive,
}

impl Order {
    /// The order player `player` placed in outcome `outcome`.
    pub fn in_outcome(outcome: usize, player: Player) -> Order {
        if (outcome >> (N_PLAYERS - 1 - player.index())) & 1 == 1 {
            Order::Expensive
        } else {
            Order::Cheap
        }
    }

    pub fn letter(self) -> char {
        match self {
            Order::Cheap => 'C',
            Order::Expensive => 'E',
        }
    }
}

/// Utility as a function of own order and the number of other diners who
/// ordered expensive food.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymmetricPayoff {
    #[serde(rename = "C")]
    pub cheap: [f64; N_PLAYERS],
    #[serde(rename = "E")]
    pub expensive: [f64; N_PLAYERS],
}

impl SymmetricPayoff {
    pub const BUILTIN: SymmetricPayoff = SymmetricPayoff {
        cheap: [6.0, 4.0, 3.0, 0.0],
        expensive: [8.0, 4.0, 3.0, 1.0],
    };

    pub fn value(&self, own: Order, others_expensive: usize) -> Result<f64> {
        let row = match own {
            Order::Cheap => &self.cheap,
            Order::Expensive => &self.expensive,
        };
        row.get(others_expensive)
            .copied()
            .ok_or(Error::OpponentCount(others_expensive))
    }
}

/// The built-in utility `f(own, others_expensive)`.
pub fn symmetric_payoff(own: Order, others_expensive: usize) -> Result<f64> {
    SymmetricPayoff::BUILTIN.value(own, others_expensive)
}

/// Expected (or deterministic) utilities in player order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PayoffVector(pub [f64; N_PLAYERS]);

impl PayoffVector {
    pub fn get(&self, player: Player) -> f64 {
        self.0[player.index()]
    }

    pub fn values(&self) -> &[f64; N_PLAYERS] {
        &self.0
    }

    pub fn max_abs_diff(&self, other: &PayoffVector) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for PayoffVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = &self.0;
        write!(f, "({:.4}, {:.4}, {:.4}, {:.4})", v[0], v[1], v[2], v[3])
    }
}

/// Utilities of every player for each of the 16 outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffTable {
    rows: [[f64; N_PLAYERS]; N_OUTCOMES],
}

impl PayoffTable {
    /// The Diner's Dilemma table, expanded from [`SymmetricPayoff::BUILTIN`].
    pub fn builtin() -> Self {
        Self::from_symmetric(&SymmetricPayoff::BUILTIN)
    }

    pub fn from_symmetric(f: &SymmetricPayoff) -> Self {
        let mut rows = [[0.0; N_PLAYERS]; N_OUTCOMES];
        for (outcome, row) in rows.iter_mut().enumerate() {
            let expensive = outcome.count_ones() as usize;
            for player in Player::ALL {
                let own = Order::in_outcome(outcome, player);
                let others = expensive - usize::from(own == Order::Expensive);
                row[player.index()] = f.value(own, others).expect("others ≤ 3");
            }
        }
        Self { rows }
    }

    pub fn from_rows(rows: [[f64; N_PLAYERS]; N_OUTCOMES]) -> Result<Self> {
        for (k, row) in rows.iter().enumerate() {
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::PayoffTable(format!("non-finite utility in outcome {}", label(k, N_PLAYERS))));
            }
        }
        Ok(Self { rows })
    }

    pub fn row(&self, outcome: usize) -> &[f64; N_PLAYERS] {
        &self.rows[outcome]
    }

    pub fn utility(&self, outcome: usize, player: Player) -> f64 {
        self.rows[outcome][player.index()]
    }

    pub fn rows(&self) -> &[[f64; N_PLAYERS]; N_OUTCOMES] {
        &self.rows
    }

    /// Smallest and largest utility in the table.
    pub fn range(&self) -> (f64, f64) {
        self.rows.iter().flatten().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        })
    }

    /// Recovers `f(own, count)` if every player's utility is a function of
    /// own order and opponent count alone; otherwise names the first outcome
    /// that breaks it.
    pub fn symmetric_form(&self) -> Result<SymmetricPayoff> {
        let mut seen: [[Option<f64>; N_PLAYERS]; 2] = [[None; N_PLAYERS]; 2];
        for (outcome, row) in self.rows.iter().enumerate() {
            let expensive = outcome.count_ones() as usize;
            for player in Player::ALL {
                let own = Order::in_outcome(outcome, player);
                let others = expensive - usize::from(own == Order::Expensive);
                let slot = &mut seen[own as usize][others];
                let v = row[player.index()];
                match *slot {
                    None => *slot = Some(v),
                    Some(prev) if (prev - v).abs() <= TOLERANCE => {}
                    Some(prev) => {
                        return Err(Error::PayoffTable(format!(
                            "outcome {} breaks symmetry: {player} has {v}, expected {prev}",
                            label(outcome, N_PLAYERS)
                        )))
                    }
                }
            }
        }
        let pick = |own: usize| seen[own].map(|v| v.expect("every (order, count) cell occurs"));
        Ok(SymmetricPayoff {
            cheap: pick(0),
            expensive: pick(1),
        })
    }

    /// JSON in the explicit `"outcomes"` form.
    pub fn to_json(&self) -> String {
        let outcomes: BTreeMap<String, [f64; N_PLAYERS]> = self
            .rows
            .iter()
            .enumerate()
            .map(|(k, row)| (label(k, N_PLAYERS), *row))
            .collect();
        serde_json::to_string_pretty(&PayoffConfig {
            outcomes: Some(outcomes),
            symmetric: None,
            require_symmetric: false,
        })
        .expect("plain data serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PayoffConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outcomes: Option<BTreeMap<String, [f64; N_PLAYERS]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    symmetric: Option<SymmetricPayoff>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    require_symmetric: bool,
}

/// Parses a payoff configuration document.
///
/// Two forms are accepted:
///
/// ```json
/// { "outcomes": { "0000": [6, 6, 6, 6], "0001": [4, 4, 4, 8], ... } }
/// { "symmetric": { "C": [6, 4, 3, 0], "E": [8, 4, 3, 1] } }
/// ```
///
/// The explicit form needs all 16 outcome keys. With
/// `"require_symmetric": true` it is also checked for symmetry.
pub fn load_table(text: &str) -> Result<PayoffTable> {
    let config: PayoffConfig =
        serde_json::from_str(text).map_err(|e| Error::PayoffTable(e.to_string()))?;
    match (config.outcomes, config.symmetric) {
        (Some(_), Some(_)) => Err(Error::PayoffTable(
            "give either \"outcomes\" or \"symmetric\", not both".into(),
        )),
        (None, None) => Err(Error::PayoffTable(
            "missing key \"outcomes\" or \"symmetric\"".into(),
        )),
        (None, Some(f)) => {
            if f.cheap.iter().chain(&f.expensive).any(|v| !v.is_finite()) {
                return Err(Error::PayoffTable("non-finite utility in \"symmetric\"".into()));
            }
            Ok(PayoffTable::from_symmetric(&f))
        }
        (Some(outcomes), None) => {
            let mut rows = [[f64::NAN; N_PLAYERS]; N_OUTCOMES];
            for (key, row) in &outcomes {
                let k = parse_label(key, N_PLAYERS)
                    .ok_or_else(|| Error::PayoffTable(format!("unknown outcome key \"{key}\"")))?;
                rows[k] = *row;
            }
            if let Some(k) = rows.iter().position(|r| r[0].is_nan()) {
                return Err(Error::PayoffTable(format!(
                    "missing outcome \"{}\"",
                    label(k, N_PLAYERS)
                )));
            }
            let table = PayoffTable::from_rows(rows)?;
            if config.require_symmetric {
                table.symmetric_form()?;
            }
            Ok(table)
        }
    }
}

/// `Pf_i = Σ_s p(s)·u_i(s)` for each player.
pub fn expected_payoffs(dist: &OutcomeDistribution, table: &PayoffTable) -> Result<PayoffVector> {
    if dist.n_qubits() != N_PLAYERS {
        return Err(Error::Distribution(format!(
            "expected a {N_PLAYERS}-qubit distribution, got {} qubits",
            dist.n_qubits()
        )));
    }
    let p = dist.probabilities();
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > TOLERANCE || p.iter().any(|v| !v.is_finite() || *v < -TOLERANCE) {
        return Err(Error::Distribution(format!("probabilities sum to {total}")));
    }
    let mut out = [0.0; N_PLAYERS];
    for (prob, row) in p.iter().zip(&table.rows) {
        for (acc, u) in out.iter_mut().zip(row) {
            *acc += prob * u;
        }
    }
    Ok(PayoffVector(out))
}

/// Utilities of a deterministic outcome.
pub fn outcome_payoffs(outcome: usize, table: &PayoffTable) -> PayoffVector {
    PayoffVector(*table.row(outcome))
}
