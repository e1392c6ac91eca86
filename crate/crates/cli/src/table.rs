use std::fmt::Write as _;

use qdd::equilibrium::{enumerate_table, Model, ProfileRecord};
use qdd::ewl::moves_to_string;
use qdd::payoff::PayoffTable;
use qdd::Player;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::output::{fixed, to_csv, to_json, ByPlayer, Render};
use crate::CliError;

/// One row per pure profile, in enumeration order.
pub struct TableReport {
    rows: Vec<ProfileRecord>,
}

pub fn run(model: Model, table: &PayoffTable) -> Result<TableReport, CliError> {
    Ok(TableReport {
        rows: enumerate_table(model, table)?,
    })
}

#[derive(Serialize)]
struct JsonRow<'a> {
    profile: String,
    probabilities: &'a [f64],
    payoffs: ByPlayer,
}

impl Serialize for TableReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows.len()))?;
        for r in &self.rows {
            seq.serialize_element(&JsonRow {
                profile: moves_to_string(&r.profile),
                probabilities: r.distribution.probabilities(),
                payoffs: ByPlayer::from(&r.payoffs),
            })?;
        }
        seq.end()
    }
}

impl Render for TableReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "profile  outcomes                         Alice     Bob   Colin    Doug").unwrap();
        for r in &self.rows {
            let support: Vec<String> = r
                .distribution
                .support(1e-12)
                .map(|(k, p)| format!("{}:{}", r.distribution.label(k), fixed(p)))
                .collect();
            write!(s, "{:<8} {:<30}", moves_to_string(&r.profile), support.join(" ")).unwrap();
            for v in r.payoffs.values() {
                write!(s, " {:>7}", fixed(*v)).unwrap();
            }
            s.push('\n');
        }
        s
    }

    fn json(&self) -> Result<String, CliError> {
        to_json(self)
    }

    fn csv(&self) -> Result<String, CliError> {
        let labels: Vec<String> = (0..16).map(|k| format!("p{}", qdd::distribution::label(k, 4))).collect();
        let names = Player::ALL.map(|p| p.to_string());
        let mut header: Vec<&str> = vec!["profile"];
        header.extend(labels.iter().map(String::as_str));
        header.extend(names.iter().map(String::as_str));
        let rows = self.rows.iter().map(|r| {
            let mut values = r.distribution.probabilities().to_vec();
            values.extend_from_slice(r.payoffs.values());
            (moves_to_string(&r.profile), values)
        });
        to_csv(&header, rows)
    }
}
