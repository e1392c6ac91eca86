use std::fmt::Write as _;

use qdd::equilibrium::{enumerate_table, Deviation, GameIndex, Model, MoveProfile};
use qdd::ewl::{moves_to_string, Move};
use qdd::payoff::PayoffTable;
use qdd::{Player, TOLERANCE};
use serde::Serialize;

use crate::output::{fixed, to_csv, to_json, ByPlayer, Render};
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    model: Model,
    profiles: usize,
    nash: Vec<String>,
    weak_nash: Vec<String>,
    pareto_standard: Vec<String>,
    symmetric_optima: Vec<String>,
    /// Per player, the dominant move letter or `null`.
    dominant: Vec<Option<String>>,
    deviation_check: DeviationCheck,
    eeee: EeeeStatus,
    best_responses: Vec<BestResponse>,
}

/// Every unilateral switch away from the reference profile, including the
/// trivial switch to the move already played.
#[derive(Debug, Serialize)]
struct DeviationCheck {
    profile: String,
    payoffs: ByPlayer,
    checks: Vec<Check>,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct Check {
    player: Player,
    to: String,
    profile: String,
    payoff: f64,
    baseline: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct EeeeStatus {
    nash: bool,
    /// A strictly profitable switch, when one exists.
    witness: Option<Witness>,
}

#[derive(Debug, Serialize)]
struct Witness {
    player: Player,
    to: String,
    profile: String,
    payoff: f64,
    baseline: f64,
}

#[derive(Debug, Serialize)]
struct BestResponse {
    player: Player,
    opponents: String,
    moves: Vec<String>,
    payoff: f64,
}

fn letters(profiles: &[MoveProfile]) -> Vec<String> {
    profiles.iter().map(|p| moves_to_string(p)).collect()
}

fn switched(profile: &MoveProfile, d: &Deviation) -> String {
    let mut p = *profile;
    p[d.player.index()] = d.to;
    moves_to_string(&p)
}

/// The profile whose stability is spelled out: all-`A` in the entangled
/// game, all-`E` in the classical one.
fn reference_profile(model: Model) -> MoveProfile {
    match model {
        Model::Classical => [Move::E; 4],
        Model::Quantum => [Move::A; 4],
    }
}

pub fn run(model: Model, table: &PayoffTable) -> Result<AnalyzeReport, CliError> {
    let records = enumerate_table(model, table)?;
    let index = GameIndex::new(&records, model.strategy_set())?;
    let report = index.report();

    let reference = reference_profile(model);
    let ref_record = index.record(&reference).expect("reference profile is enumerated");
    let checks: Vec<Check> = index
        .unilateral_payoffs(&reference)?
        .iter()
        .map(|d| Check {
            player: d.player,
            to: d.to.letter().to_string(),
            profile: switched(&reference, d),
            payoff: d.payoff,
            baseline: d.baseline,
            pass: d.payoff <= d.baseline + TOLERANCE,
        })
        .collect();
    let deviation_check = DeviationCheck {
        profile: moves_to_string(&reference),
        payoffs: ByPlayer::from(&ref_record.payoffs),
        pass: checks.iter().all(|c| c.pass),
        checks,
    };

    let eeee = [Move::E; 4];
    let eeee = EeeeStatus {
        nash: index.is_nash(&eeee)?,
        witness: index.profitable_deviation(&eeee)?.map(|d| Witness {
            player: d.player,
            to: d.to.letter().to_string(),
            profile: switched(&eeee, &d),
            payoff: d.payoff,
            baseline: d.baseline,
        }),
    };

    let mut best_responses = Vec::with_capacity(report.best_responses.len());
    for (player, opponents) in report.best_responses.keys() {
        let (moves, payoff) = index.best_response(*player, opponents)?;
        best_responses.push(BestResponse {
            player: *player,
            opponents: moves_to_string(opponents),
            moves: moves.iter().map(|m| m.letter().to_string()).collect(),
            payoff,
        });
    }

    Ok(AnalyzeReport {
        model,
        profiles: records.len(),
        nash: letters(&report.nash),
        weak_nash: letters(&report.weak_nash),
        pareto_standard: letters(&report.pareto_standard),
        symmetric_optima: letters(&report.symmetric_optima),
        dominant: report.dominant.iter().map(|m| m.map(|m| m.letter().to_string())).collect(),
        deviation_check,
        eeee,
        best_responses,
    })
}

fn list(s: &mut String, title: &str, items: &[String]) {
    writeln!(s, "{title} ({}):", items.len()).unwrap();
    if items.is_empty() {
        writeln!(s, "  none").unwrap();
    }
    for chunk in items.chunks(9) {
        writeln!(s, "  {}", chunk.join(" ")).unwrap();
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    section: &'a str,
    profile: &'a str,
    player: &'a str,
    value: Option<f64>,
    pass: Option<bool>,
}

impl Render for AnalyzeReport {
    fn text(&self) -> String {
        let mut s = String::new();
        let model = match self.model {
            Model::Classical => "classical",
            Model::Quantum => "quantum",
        };
        writeln!(s, "{model} game, {} profiles", self.profiles).unwrap();
        list(&mut s, "Nash equilibria", &self.nash);
        list(&mut s, "weak Nash equilibria", &self.weak_nash);
        list(&mut s, "Pareto optimal", &self.pareto_standard);
        list(&mut s, "symmetric optima", &self.symmetric_optima);
        write!(s, "dominant:").unwrap();
        for (p, m) in Player::ALL.iter().zip(&self.dominant) {
            write!(s, " {p} {}", m.as_deref().unwrap_or("-")).unwrap();
        }
        s.push('\n');

        let dc = &self.deviation_check;
        write!(s, "\npayoffs at {}:", dc.profile).unwrap();
        for (p, v) in Player::ALL.iter().zip(dc.payoffs.values()) {
            write!(s, " {p} {}", fixed(v)).unwrap();
        }
        writeln!(s, "\nunilateral deviations from {}:", dc.profile).unwrap();
        for c in &dc.checks {
            writeln!(
                s,
                "  {:<6} -> {}  {}  {} <= {}  {}",
                c.player.to_string(),
                c.to,
                c.profile,
                fixed(c.payoff),
                fixed(c.baseline),
                if c.pass { "PASS" } else { "FAIL" }
            )
            .unwrap();
        }
        let passed = dc.checks.iter().filter(|c| c.pass).count();
        writeln!(
            s,
            "  {}: {passed}/{} deviations do not improve",
            if dc.pass { "PASS" } else { "FAIL" },
            dc.checks.len()
        )
        .unwrap();

        match (&self.eeee.witness, self.eeee.nash) {
            (_, true) => writeln!(s, "\nEEEE is a Nash equilibrium").unwrap(),
            (Some(w), false) => writeln!(
                s,
                "\nEEEE is not a Nash equilibrium: {} switching to {} ({}) gets {} instead of {}",
                w.player,
                w.to,
                w.profile,
                fixed(w.payoff),
                fixed(w.baseline)
            )
            .unwrap(),
            (None, false) => {
                writeln!(s, "\nEEEE is not a strict Nash equilibrium: some switch ties its payoff").unwrap()
            }
        }

        writeln!(s, "\nbest replies of Doug:").unwrap();
        for b in self.best_responses.iter().filter(|b| b.player == Player::Doug) {
            writeln!(s, "  vs {}: {} ({})", b.opponents, b.moves.join(","), fixed(b.payoff)).unwrap();
        }
        s
    }

    fn json(&self) -> Result<String, CliError> {
        to_json(self)
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut rows = Vec::new();
        let sets = [
            ("nash", &self.nash),
            ("weak_nash", &self.weak_nash),
            ("pareto_standard", &self.pareto_standard),
            ("symmetric_optima", &self.symmetric_optima),
        ];
        for (section, items) in sets {
            rows.extend(items.iter().map(|p| CsvRow {
                section,
                profile: p,
                player: "",
                value: None,
                pass: None,
            }));
        }
        let names = Player::ALL.map(|p| p.to_string());
        for (name, m) in names.iter().zip(&self.dominant) {
            rows.push(CsvRow {
                section: "dominant",
                profile: m.as_deref().unwrap_or(""),
                player: name,
                value: None,
                pass: None,
            });
        }
        let dc = &self.deviation_check;
        for (name, v) in names.iter().zip(dc.payoffs.values()) {
            rows.push(CsvRow {
                section: "reference_payoff",
                profile: &dc.profile,
                player: name,
                value: Some(v),
                pass: None,
            });
        }
        for c in &dc.checks {
            rows.push(CsvRow {
                section: "deviation",
                profile: &c.profile,
                player: &names[c.player.index()],
                value: Some(c.payoff),
                pass: Some(c.pass),
            });
        }
        if let Some(w) = &self.eeee.witness {
            rows.push(CsvRow {
                section: "eeee_witness",
                profile: &w.profile,
                player: &names[w.player.index()],
                value: Some(w.payoff),
                pass: None,
            });
        }
        let keys: Vec<String> = self
            .best_responses
            .iter()
            .map(|b| format!("{}:{}", b.opponents, b.moves.join("")))
            .collect();
        for (b, key) in self.best_responses.iter().zip(&keys) {
            rows.push(CsvRow {
                section: "best_response",
                profile: key,
                player: &names[b.player.index()],
                value: Some(b.payoff),
                pass: None,
            });
        }
        to_csv(&["section", "profile", "player", "value", "pass"], rows)
    }
}
