//! Exhaustive analysis of the discrete game: the 16-profile classical game
//! over `{C, E}` and the 81-profile quantum game over `{C, E, A}`.
//!
//! Every solution concept here is a brute-force scan over the enumerated
//! table. A Nash equilibrium is a profile from which any unilateral switch
//! leaves the switching player strictly worse off; the weak variant only
//! forbids strict gains. Payoffs are compared with [`TIE_TOLERANCE`]: a deviation only
//! counts as an improvement if it gains more than the tolerance, and every
//! maximizer within the tolerance is reported.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::distribution::OutcomeDistribution;
use crate::ewl::{moves_to_string, outcome_distribution, Move, StrategyProfile, N_PLAYERS};
use crate::payoff::{expected_payoffs, Order, PayoffTable, PayoffVector, N_OUTCOMES};
use crate::{Error, Player, Result, TIE_TOLERANCE};

/// A pure profile of named moves.
pub type MoveProfile = [Move; N_PLAYERS];

/// Which game to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Moves `{C, E}` taken as deterministic outcomes.
    Classical,
    /// Moves `{C, E, A}` evaluated through the entangled pipeline.
    Quantum,
}

impl Model {
    pub fn strategy_set(self) -> &'static [Move] {
        match self {
            Model::Classical => &Move::CLASSICAL,
            Model::Quantum => &Move::ALL,
        }
    }
}

/// One row of a payoff table.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileRecord {
    pub profile: MoveProfile,
    pub distribution: OutcomeDistribution,
    pub payoffs: PayoffVector,
}

/// All profiles of `model` in lexicographic order (Alice slowest, `C < E < A`).
pub fn enumerate_table(model: Model, table: &PayoffTable) -> Result<Vec<ProfileRecord>> {
    product(model.strategy_set())
        .into_iter()
        .map(|profile| {
            let distribution = match model {
                Model::Classical => classical_outcome(&profile)
                    .and_then(|k| OutcomeDistribution::point_mass(N_PLAYERS, k))?,
                Model::Quantum => outcome_distribution(&StrategyProfile::from_moves(profile))?,
            };
            let payoffs = expected_payoffs(&distribution, table)?;
            Ok(ProfileRecord {
                profile,
                distribution,
                payoffs,
            })
        })
        .collect()
}

/// The outcome index of a classical profile: `C → 0`, `E → 1`.
fn classical_outcome(profile: &MoveProfile) -> Result<usize> {
    profile.iter().try_fold(0usize, |acc, m| match m {
        Move::C => Ok(acc << 1),
        Move::E => Ok((acc << 1) | 1),
        Move::A => Err(Error::UnknownStrategy('A')),
    })
}

/// Cartesian power `set⁴` in lexicographic order.
fn product(set: &[Move]) -> Vec<MoveProfile> {
    let mut out = Vec::with_capacity(set.len().pow(N_PLAYERS as u32));
    for &a in set {
        for &b in set {
            for &c in set {
                for &d in set {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

fn with_move(profile: &MoveProfile, player: Player, m: Move) -> MoveProfile {
    let mut p = *profile;
    p[player.index()] = m;
    p
}

fn opponents_of(profile: &MoveProfile, player: Player) -> [Move; N_PLAYERS - 1] {
    let mut out = [Move::C; N_PLAYERS - 1];
    let others = profile
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != player.index())
        .map(|(_, m)| *m);
    for (slot, m) in out.iter_mut().zip(others) {
        *slot = m;
    }
    out
}

fn insert_player(opponents: &[Move; N_PLAYERS - 1], player: Player, m: Move) -> MoveProfile {
    let mut out = [m; N_PLAYERS];
    let mut it = opponents.iter();
    for (i, slot) in out.iter_mut().enumerate() {
        if i != player.index() {
            *slot = *it.next().expect("three opponents");
        }
    }
    out
}

/// A single player's switch away from a reference profile.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Deviation {
    pub player: Player,
    #[serde(serialize_with = "serialize_move_letter")]
    pub to: Move,
    /// The deviator's payoff after switching.
    pub payoff: f64,
    /// The deviator's payoff at the reference profile.
    pub baseline: f64,
}

impl Deviation {
    pub fn is_profitable(&self) -> bool {
        self.payoff > self.baseline + TIE_TOLERANCE
    }
}

fn serialize_move_letter<S: serde::Serializer>(m: &Move, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_char(m.letter())
}

/// Lookup structure over a complete table for a given strategy set.
#[derive(Debug)]
pub struct GameIndex<'a> {
    records: &'a [ProfileRecord],
    strategy_set: Vec<Move>,
    by_profile: HashMap<MoveProfile, usize>,
}

impl<'a> GameIndex<'a> {
    /// Fails if any profile of `strategy_set⁴` has no record or a record
    /// uses a move outside the set.
    pub fn new(records: &'a [ProfileRecord], strategy_set: &[Move]) -> Result<Self> {
        let mut set = strategy_set.to_vec();
        set.sort();
        set.dedup();
        if set.is_empty() {
            return Err(Error::IncompleteTable("an empty strategy set".into()));
        }
        let mut by_profile = HashMap::with_capacity(records.len());
        for (i, r) in records.iter().enumerate() {
            if let Some(m) = r.profile.iter().find(|m| !set.contains(m)) {
                return Err(Error::UnknownStrategy(m.letter()));
            }
            by_profile.insert(r.profile, i);
        }
        if let Some(missing) = product(&set).into_iter().find(|p| !by_profile.contains_key(p)) {
            return Err(Error::IncompleteTable(moves_to_string(&missing)));
        }
        Ok(Self {
            records,
            strategy_set: set,
            by_profile,
        })
    }

    pub fn strategy_set(&self) -> &[Move] {
        &self.strategy_set
    }

    pub fn records(&self) -> &'a [ProfileRecord] {
        self.records
    }

    pub fn record(&self, profile: &MoveProfile) -> Option<&'a ProfileRecord> {
        self.by_profile.get(profile).map(|&i| &self.records[i])
    }

    fn payoff(&self, profile: &MoveProfile, player: Player) -> f64 {
        self.records[self.by_profile[profile]].payoffs.get(player)
    }

    fn check_profile(&self, profile: &MoveProfile) -> Result<()> {
        match profile.iter().find(|m| !self.strategy_set.contains(m)) {
            Some(m) => Err(Error::UnknownStrategy(m.letter())),
            None => Ok(()),
        }
    }

    /// Every unilateral switch away from `profile` (the current move excluded).
    pub fn deviations(&self, profile: &MoveProfile) -> Result<Vec<Deviation>> {
        self.check_profile(profile)?;
        let mut out = Vec::new();
        for player in Player::ALL {
            let baseline = self.payoff(profile, player);
            for &m in &self.strategy_set {
                if m == profile[player.index()] {
                    continue;
                }
                out.push(Deviation {
                    player,
                    to: m,
                    payoff: self.payoff(&with_move(profile, player, m), player),
                    baseline,
                });
            }
        }
        Ok(out)
    }

    /// Each player's payoff for every move in the set with the others held
    /// at `profile`, the current move included (so `4 × |set|` entries).
    pub fn unilateral_payoffs(&self, profile: &MoveProfile) -> Result<Vec<Deviation>> {
        self.check_profile(profile)?;
        Ok(Player::ALL
            .iter()
            .flat_map(|&player| {
                let baseline = self.payoff(profile, player);
                self.strategy_set.iter().map(move |&m| Deviation {
                    player,
                    to: m,
                    payoff: self.payoff(&with_move(profile, player, m), player),
                    baseline,
                })
            })
            .collect())
    }

    /// The most profitable unilateral deviation, if any exists.
    pub fn profitable_deviation(&self, profile: &MoveProfile) -> Result<Option<Deviation>> {
        Ok(self
            .deviations(profile)?
            .into_iter()
            .filter(Deviation::is_profitable)
            .max_by(|a, b| (a.payoff - a.baseline).total_cmp(&(b.payoff - b.baseline))))
    }

    /// Every unilateral deviation leaves the deviator strictly worse off
    /// (by more than the tie tolerance).
    pub fn is_nash(&self, profile: &MoveProfile) -> Result<bool> {
        Ok(self
            .deviations(profile)?
            .iter()
            .all(|d| d.payoff < d.baseline - TIE_TOLERANCE))
    }

    /// No unilateral deviation gains more than the tie tolerance.
    pub fn is_weak_nash(&self, profile: &MoveProfile) -> Result<bool> {
        Ok(self.profitable_deviation(profile)?.is_none())
    }

    /// Strict pure equilibria: every player's current move is their unique
    /// best reply.
    pub fn nash(&self) -> Vec<MoveProfile> {
        self.records
            .iter()
            .map(|r| r.profile)
            .filter(|p| self.is_nash(p).expect("records are within the set"))
            .collect()
    }

    /// Weak pure equilibria: nobody can strictly gain by switching alone.
    /// Ties with the current move are allowed, so this is a superset of
    /// [`GameIndex::nash`].
    pub fn weak_nash(&self) -> Vec<MoveProfile> {
        self.records
            .iter()
            .map(|r| r.profile)
            .filter(|p| self.is_weak_nash(p).expect("records are within the set"))
            .collect()
    }

    /// Profiles whose payoff vector no other profile weakly dominates with
    /// at least one strict gain.
    pub fn pareto_standard(&self) -> Vec<MoveProfile> {
        let dominates = |a: &PayoffVector, b: &PayoffVector| {
            let weakly = a.0.iter().zip(&b.0).all(|(x, y)| *x >= y - TIE_TOLERANCE);
            let strictly = a.0.iter().zip(&b.0).any(|(x, y)| *x > y + TIE_TOLERANCE);
            weakly && strictly
        };
        self.records
            .iter()
            .filter(|r| !self.records.iter().any(|o| dominates(&o.payoffs, &r.payoffs)))
            .map(|r| r.profile)
            .collect()
    }

    /// Profiles whose payoff vector is `(v, v, v, v)` with `v` the largest
    /// equal share reached anywhere in the table.
    pub fn symmetric_optima(&self) -> Vec<MoveProfile> {
        let equal_share = |r: &ProfileRecord| {
            let v = r.payoffs.0;
            let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
                (lo.min(x), hi.max(x))
            });
            (hi - lo <= TIE_TOLERANCE).then_some(v[0])
        };
        let Some(best) = self.records.iter().filter_map(equal_share).reduce(f64::max) else {
            return Vec::new();
        };
        self.records
            .iter()
            .filter(|r| equal_share(r).is_some_and(|v| v >= best - TIE_TOLERANCE))
            .map(|r| r.profile)
            .collect()
    }

    /// All of `player`'s moves that maximize their payoff against fixed
    /// opponents, with that payoff.
    pub fn best_response(&self, player: Player, opponents: &[Move; N_PLAYERS - 1]) -> Result<(Vec<Move>, f64)> {
        if let Some(m) = opponents.iter().find(|m| !self.strategy_set.contains(m)) {
            return Err(Error::UnknownStrategy(m.letter()));
        }
        let payoffs: Vec<(Move, f64)> = self
            .strategy_set
            .iter()
            .map(|&m| (m, self.payoff(&insert_player(opponents, player, m), player)))
            .collect();
        let best = payoffs.iter().map(|(_, v)| *v).fold(f64::NEG_INFINITY, f64::max);
        let moves = payoffs
            .iter()
            .filter(|(_, v)| *v >= best - TIE_TOLERANCE)
            .map(|(m, _)| *m)
            .collect();
        Ok((moves, best))
    }

    /// For each player, the move that is a best response to every opponent
    /// combination and the unique best response to at least one.
    pub fn dominant_strategies(&self) -> [Option<Move>; N_PLAYERS] {
        let combos = product(&self.strategy_set);
        let mut out = [None; N_PLAYERS];
        for player in Player::ALL {
            // one opponent tuple per profile with the player's own move fixed
            let first = self.strategy_set[0];
            let opponent_sets: Vec<_> = combos
                .iter()
                .filter(|p| p[player.index()] == first)
                .map(|p| opponents_of(p, player))
                .collect();
            let responses: Vec<Vec<Move>> = opponent_sets
                .iter()
                .map(|o| self.best_response(player, o).expect("within set").0)
                .collect();
            out[player.index()] = self.strategy_set.iter().copied().find(|m| {
                responses.iter().all(|r| r.contains(m)) && responses.iter().any(|r| r == &[*m])
            });
        }
        out
    }

    /// Best responses of every player to every opponent combination.
    pub fn all_best_responses(&self) -> BTreeMap<(Player, [Move; N_PLAYERS - 1]), Vec<Move>> {
        let mut out = BTreeMap::new();
        let first = self.strategy_set[0];
        for player in Player::ALL {
            for p in product(&self.strategy_set).iter().filter(|p| p[player.index()] == first) {
                let opponents = opponents_of(p, player);
                let (moves, _) = self.best_response(player, &opponents).expect("within set");
                out.insert((player, opponents), moves);
            }
        }
        out
    }

    pub fn report(&self) -> EquilibriumReport {
        EquilibriumReport {
            nash: self.nash(),
            weak_nash: self.weak_nash(),
            pareto_standard: self.pareto_standard(),
            symmetric_optima: self.symmetric_optima(),
            dominant: self.dominant_strategies(),
            best_responses: self.all_best_responses(),
        }
    }
}

/// Solution concepts of one table.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub nash: Vec<MoveProfile>,
    pub weak_nash: Vec<MoveProfile>,
    pub pareto_standard: Vec<MoveProfile>,
    pub symmetric_optima: Vec<MoveProfile>,
    pub dominant: [Option<Move>; N_PLAYERS],
    pub best_responses: BTreeMap<(Player, [Move; N_PLAYERS - 1]), Vec<Move>>,
}

pub fn find_nash(records: &[ProfileRecord], strategy_set: &[Move]) -> Result<Vec<MoveProfile>> {
    Ok(GameIndex::new(records, strategy_set)?.nash())
}

pub fn find_weak_nash(records: &[ProfileRecord], strategy_set: &[Move]) -> Result<Vec<MoveProfile>> {
    Ok(GameIndex::new(records, strategy_set)?.weak_nash())
}

pub fn find_pareto_standard(records: &[ProfileRecord], strategy_set: &[Move]) -> Result<Vec<MoveProfile>> {
    Ok(GameIndex::new(records, strategy_set)?.pareto_standard())
}

pub fn find_symmetric_optima(records: &[ProfileRecord], strategy_set: &[Move]) -> Result<Vec<MoveProfile>> {
    Ok(GameIndex::new(records, strategy_set)?.symmetric_optima())
}

pub fn best_response(
    records: &[ProfileRecord],
    strategy_set: &[Move],
    player: Player,
    opponents: &[Move; N_PLAYERS - 1],
) -> Result<(Vec<Move>, f64)> {
    GameIndex::new(records, strategy_set)?.best_response(player, opponents)
}

pub fn dominant_strategies(records: &[ProfileRecord], strategy_set: &[Move]) -> Result<[Option<Move>; N_PLAYERS]> {
    Ok(GameIndex::new(records, strategy_set)?.dominant_strategies())
}

/// Order letters of an outcome, e.g. `"CECE"` for `0101`.
pub fn outcome_orders(outcome: usize) -> String {
    debug_assert!(outcome < N_OUTCOMES);
    Player::ALL.iter().map(|&p| Order::in_outcome(outcome, p).letter()).collect()
}
