use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use qdd::ewl::{outcome_distribution, Move, Strategy, StrategyProfile, N_PLAYERS};
use qdd::payoff::{expected_payoffs, PayoffTable};
use qdd::Player;
use serde::Serialize;

use crate::output::{fixed, to_csv, to_json, Render};
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct SweepReport {
    player: Player,
    others: String,
    theta_steps: usize,
    phi_steps: usize,
    /// Row-major: theta varies slowest.
    points: Vec<Point>,
}

#[derive(Debug, Serialize)]
struct Point {
    theta: f64,
    phi: f64,
    payoff: f64,
}

/// `k`-th of `n` evenly spaced points on `[0, max]`; both ends are exact.
fn grid(max: f64, k: usize, n: usize) -> f64 {
    max * (k as f64 / (n - 1) as f64)
}

pub fn run(
    player: Player,
    others: [Move; N_PLAYERS - 1],
    theta_steps: usize,
    phi_steps: usize,
    table: &PayoffTable,
) -> Result<SweepReport, CliError> {
    if theta_steps < 2 || phi_steps < 2 {
        return Err(CliError::Usage(format!(
            "sweep needs at least 2 grid points per axis, got {theta_steps} x {phi_steps}"
        )));
    }
    let mut points = Vec::with_capacity(theta_steps * phi_steps);
    for i in 0..theta_steps {
        let theta = grid(PI, i, theta_steps);
        for j in 0..phi_steps {
            let phi = grid(FRAC_PI_2, j, phi_steps);
            let mut opp = others.iter();
            let strategies = Player::ALL.map(|p| {
                if p == player {
                    Strategy::Parametric { theta, phi }
                } else {
                    Strategy::Named(*opp.next().expect("three opponents"))
                }
            });
            let dist = outcome_distribution(&StrategyProfile::new(strategies)?)?;
            let payoff = expected_payoffs(&dist, table)?.get(player);
            points.push(Point { theta, phi, payoff });
        }
    }
    Ok(SweepReport {
        player,
        others: qdd::ewl::moves_to_string(&others),
        theta_steps,
        phi_steps,
        points,
    })
}

impl Render for SweepReport {
    fn text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}'s payoff against {} (rows theta, columns phi)", self.player, self.others).unwrap();
        write!(s, "{:>8}", "").unwrap();
        for p in &self.points[..self.phi_steps] {
            write!(s, " {:>7}", fixed(p.phi)).unwrap();
        }
        s.push('\n');
        for row in self.points.chunks(self.phi_steps) {
            write!(s, "{:>8}", fixed(row[0].theta)).unwrap();
            for p in row {
                write!(s, " {:>7}", fixed(p.payoff)).unwrap();
            }
            s.push('\n');
        }
        s
    }

    fn json(&self) -> Result<String, CliError> {
        to_json(self)
    }

    fn csv(&self) -> Result<String, CliError> {
        to_csv(&["theta", "phi", "payoff"], &self.points)
    }
}
