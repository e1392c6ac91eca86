use std::collections::BTreeMap;
use std::fmt::Write as _;

use qdd::circuit::sample;
use qdd::equilibrium::Model;
use qdd::ewl::{outcome_distribution, Move, Strategy, StrategyProfile};
use qdd::payoff::{expected_payoffs, PayoffTable};
use qdd::{OutcomeDistribution, Player};
use serde::Serialize;

use crate::output::{fixed, to_csv, to_json, ByPlayer, Render};
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct SimulateReport {
    model: Model,
    profile: String,
    /// All 16 outcomes, keyed by bit string with Alice's bit first.
    probabilities: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampling: Option<Sampling>,
    payoffs: ByPlayer,
}

#[derive(Debug, Serialize)]
struct Sampling {
    shots: u64,
    seed: u64,
    counts: BTreeMap<String, u64>,
}

/// Outcome of a classical profile: each diner's order is read off directly.
fn classical_distribution(profile: &StrategyProfile) -> Result<OutcomeDistribution, CliError> {
    let mut outcome = 0;
    for s in profile.strategies() {
        outcome <<= 1;
        match s {
            Strategy::Named(Move::C) => {}
            Strategy::Named(Move::E) => outcome |= 1,
            other => {
                return Err(CliError::Usage(format!(
                    "the classical model only allows C and E, found `{other}`"
                )))
            }
        }
    }
    Ok(OutcomeDistribution::point_mass(qdd::ewl::N_PLAYERS, outcome)?)
}

pub fn run(
    profile: &StrategyProfile,
    model: Model,
    table: &PayoffTable,
    shots: Option<(u64, u64)>,
) -> Result<SimulateReport, CliError> {
    let dist = match model {
        Model::Classical => classical_distribution(profile)?,
        Model::Quantum => outcome_distribution(profile)?,
    };
    let payoffs = expected_payoffs(&dist, table)?;
    let sampling = match shots {
        None => None,
        Some((0, _)) => return Err(CliError::Usage("--shots must be at least 1".into())),
        Some((shots, seed)) => {
            let h = sample(&dist, shots, seed)?;
            Some(Sampling {
                shots,
                seed,
                counts: (0..h.counts().len()).map(|k| (dist.label(k), h.count(k))).collect(),
            })
        }
    };
    Ok(SimulateReport {
        model,
        profile: profile.to_string(),
        probabilities: dist
            .probabilities()
            .iter()
            .enumerate()
            .map(|(k, &p)| (dist.label(k), p))
            .collect(),
        sampling,
        payoffs: ByPlayer::from(&payoffs),
    })
}

/// Probabilities this small are printed as absent in text output.
const DISPLAY_CUTOFF: f64 = 1e-12;

#[derive(Serialize)]
struct CsvRow<'a> {
    quantity: &'a str,
    key: &'a str,
    value: f64,
}

impl Render for SimulateReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let model = match self.model {
            Model::Classical => "classical",
            Model::Quantum => "quantum",
        };
        writeln!(s, "profile  {}  ({model})", self.profile).unwrap();
        match &self.sampling {
            None => {
                writeln!(s, "outcome  probability").unwrap();
                for (label, p) in self.probabilities.iter().filter(|(_, p)| **p > DISPLAY_CUTOFF) {
                    writeln!(s, "{label}     {}", fixed(*p)).unwrap();
                }
            }
            Some(smp) => {
                writeln!(s, "shots    {} (seed {})", smp.shots, smp.seed).unwrap();
                writeln!(s, "outcome  count").unwrap();
                for (label, c) in smp.counts.iter().filter(|(_, c)| **c > 0) {
                    writeln!(s, "{label}     {c}").unwrap();
                }
            }
        }
        writeln!(s, "expected payoffs").unwrap();
        for (p, v) in Player::ALL.iter().zip(self.payoffs.values()) {
            writeln!(s, "  {:<6} {}", p.to_string(), fixed(v)).unwrap();
        }
        s
    }

    fn json(&self) -> Result<String, CliError> {
        to_json(self)
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut rows: Vec<CsvRow> = self
            .probabilities
            .iter()
            .map(|(k, &v)| CsvRow {
                quantity: "probability",
                key: k,
                value: v,
            })
            .collect();
        if let Some(smp) = &self.sampling {
            rows.extend(smp.counts.iter().map(|(k, &c)| CsvRow {
                quantity: "count",
                key: k,
                value: c as f64,
            }));
        }
        let names = Player::ALL.map(|p| p.to_string());
        rows.extend(names.iter().zip(self.payoffs.values()).map(|(n, v)| CsvRow {
            quantity: "payoff",
            key: n,
            value: v,
        }));
        to_csv(&["quantity", "key", "value"], rows)
    }
}
