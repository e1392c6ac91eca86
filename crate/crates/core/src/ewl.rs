//! The EWL protocol for four players.
//!
//! Every game starts from `|ψ₀⟩ = |CCCC⟩ = |0000⟩`. The entangler
//! `J = (I⊗⁴ + i·σ_y⊗⁴)/√2` produces `(|0000⟩ + i|1111⟩)/√2`, each player
//! applies a local strategy unitary, and `J†` undoes the entanglement
//! before a Z-basis measurement:
//!
//! ```text
//! |ψ_f⟩ = J† (U_A ⊗ U_B ⊗ U_C ⊗ U_D) J |0000⟩
//! ```

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::distribution::OutcomeDistribution;
use crate::statevector::{tensor4, Complex, RegisterOperator, SingleQubitUnitary, StateVector};
use crate::{Error, Player, Result};

/// Number of players, and of qubits in the game register.
pub const N_PLAYERS: usize = 4;

/// Slack on the closed parameter intervals so that grid endpoints computed
/// in floating point (e.g. `k·π/k`) are accepted.
const DOMAIN_SLACK: f64 = 1e-12;

/// The three named quantum moves.
///
/// The declaration order `C < E < A` is the enumeration order used for
/// tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Move {
    /// Cheap meal, `U(0, 0) = I`.
    C,
    /// Expensive meal, `U(π, 0) = [[0, 1], [−1, 0]]`.
    E,
    /// The quantum move `U(0, π/2) = diag(i, −i)`.
    A,
}

impl Move {
    pub const ALL: [Move; 3] = [Move::C, Move::E, Move::A];
    pub const CLASSICAL: [Move; 2] = [Move::C, Move::E];

    pub fn letter(self) -> char {
        match self {
            Move::C => 'C',
            Move::E => 'E',
            Move::A => 'A',
        }
    }

    pub fn from_letter(c: char) -> Option<Move> {
        match c.to_ascii_uppercase() {
            'C' => Some(Move::C),
            'E' => Some(Move::E),
            'A' => Some(Move::A),
            _ => None,
        }
    }

    /// `(θ, φ)` of the move in the parametric family.
    pub fn parameters(self) -> (f64, f64) {
        match self {
            Move::C => (0.0, 0.0),
            Move::E => (PI, 0.0),
            Move::A => (0.0, FRAC_PI_2),
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Writes a move tuple as letters, e.g. `"CECE"`.
pub fn moves_to_string(moves: &[Move]) -> String {
    moves.iter().map(|m| m.letter()).collect()
}

/// Parses `"CECE"` or `"C,E,C,E"` into exactly `N` moves.
pub fn parse_moves<const N: usize>(text: &str) -> std::result::Result<[Move; N], String> {
    let tokens: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.trim().split("").filter(|t| !t.is_empty()).collect()
    };
    if tokens.len() != N {
        return Err(format!("expected {N} strategies, found {} in `{text}`", tokens.len()));
    }
    let mut out = [Move::C; N];
    for (slot, tok) in out.iter_mut().zip(&tokens) {
        let mut chars = tok.chars();
        *slot = match (chars.next(), chars.next()) {
            (Some(c), None) => Move::from_letter(c),
            _ => None,
        }
        .ok_or_else(|| tok.to_string())?;
    }
    Ok(out)
}

/// A player's strategy: a named move or a point of the continuous family
/// `U(θ, φ)` with `θ ∈ [0, π]`, `φ ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Strategy {
    Named(Move),
    Parametric { theta: f64, phi: f64 },
}

impl Strategy {
    /// Checked constructor for the parametric family.
    pub fn parametric(theta: f64, phi: f64) -> Result<Self> {
        let s = Strategy::Parametric { theta, phi };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if let Strategy::Parametric { theta, phi } = *self {
            if !(-DOMAIN_SLACK..=PI + DOMAIN_SLACK).contains(&theta) {
                return Err(Error::StrategyDomain {
                    name: "theta",
                    value: theta,
                    max: "pi",
                });
            }
            if !(-DOMAIN_SLACK..=FRAC_PI_2 + DOMAIN_SLACK).contains(&phi) {
                return Err(Error::StrategyDomain {
                    name: "phi",
                    value: phi,
                    max: "pi/2",
                });
            }
        }
        Ok(())
    }

    /// `(θ, φ)`, clamped into the closed domain.
    pub fn parameters(&self) -> (f64, f64) {
        match *self {
            Strategy::Named(m) => m.parameters(),
            Strategy::Parametric { theta, phi } => (theta.clamp(0.0, PI), phi.clamp(0.0, FRAC_PI_2)),
        }
    }
}

impl From<Move> for Strategy {
    fn from(m: Move) -> Self {
        Strategy::Named(m)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Named(m) => write!(f, "{m}"),
            Strategy::Parametric { theta, phi } => write!(f, "theta={theta}:phi={phi}"),
        }
    }
}

impl FromStr for Strategy {
    type Err = String;

    /// `C`, `E`, `A`, or `theta=<float>:phi=<float>` (either key may be
    /// omitted and defaults to 0). The error is the offending token.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let tok = s.trim();
        let mut chars = tok.chars();
        if let (Some(c), None) = (chars.next(), chars.next()) {
            return Move::from_letter(c).map(Strategy::Named).ok_or_else(|| tok.to_string());
        }
        let (mut theta, mut phi) = (0.0, 0.0);
        let mut seen = false;
        for part in tok.split(':') {
            let (key, value) = part.split_once('=').ok_or_else(|| tok.to_string())?;
            let value: f64 = value.trim().parse().map_err(|_| tok.to_string())?;
            match key.trim() {
                "theta" => theta = value,
                "phi" => phi = value,
                _ => return Err(tok.to_string()),
            }
            seen = true;
        }
        if !seen {
            return Err(tok.to_string());
        }
        let s = Strategy::Parametric { theta, phi };
        s.validate().map_err(|_| tok.to_string())?;
        Ok(s)
    }
}

/// Strategies of (Alice, Bob, Colin, Doug), in qubit order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyProfile([Strategy; N_PLAYERS]);

impl StrategyProfile {
    pub fn new(strategies: [Strategy; N_PLAYERS]) -> Result<Self> {
        for s in &strategies {
            s.validate()?;
        }
        Ok(Self(strategies))
    }

    pub fn from_moves(moves: [Move; N_PLAYERS]) -> Self {
        Self(moves.map(Strategy::Named))
    }

    pub fn strategies(&self) -> &[Strategy; N_PLAYERS] {
        &self.0
    }

    pub fn get(&self, player: Player) -> Strategy {
        self.0[player.index()]
    }

    /// The named moves, or `None` if any entry is parametric.
    pub fn as_moves(&self) -> Option<[Move; N_PLAYERS]> {
        let mut out = [Move::C; N_PLAYERS];
        for (slot, s) in out.iter_mut().zip(&self.0) {
            match s {
                Strategy::Named(m) => *slot = *m,
                Strategy::Parametric { .. } => return None,
            }
        }
        Some(out)
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for StrategyProfile {
    type Err = String;

    /// Comma-separated per-player strategies, e.g. `C,E,C,E` or
    /// `A,theta=0.3:phi=1.2,E,C`. A bare four-letter word such as `CECE` is
    /// also accepted.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let tokens: Vec<&str> = if s.contains(',') {
            s.split(',').collect()
        } else if s.trim().len() == N_PLAYERS && !s.contains('=') {
            s.trim().split("").filter(|t| !t.is_empty()).collect()
        } else {
            vec![s]
        };
        if tokens.len() != N_PLAYERS {
            return Err(format!(
                "expected {N_PLAYERS} comma-separated strategies, found {} in `{s}`",
                tokens.len()
            ));
        }
        let mut out = [Strategy::Named(Move::C); N_PLAYERS];
        for (slot, tok) in out.iter_mut().zip(tokens) {
            *slot = tok.parse()?;
        }
        Ok(Self(out))
    }
}

/// `J = (I⊗I⊗I⊗I + i·(iσ_y)⊗(iσ_y)⊗(iσ_y)⊗(iσ_y))/√2`.
pub fn entangler() -> RegisterOperator {
    let i = Complex::new(0.0, 1.0);
    let iy = SingleQubitUnitary::pauli_y().scale(i);
    let id = SingleQubitUnitary::identity();
    let identity = tensor4(&id, &id, &id, &id);
    let flip = tensor4(&iy, &iy, &iy, &iy).scale(i);
    identity
        .add(&flip)
        .expect("both operands are 4-qubit")
        .scale(Complex::new(FRAC_1_SQRT_2, 0.0))
}

/// `J†`.
pub fn disentangler() -> RegisterOperator {
    entangler().adjoint()
}

/// `U(θ, φ) = [[e^{iφ}cos(θ/2), sin(θ/2)], [−sin(θ/2), e^{−iφ}cos(θ/2)]]`.
///
/// Named moves use exact matrix entries rather than evaluating the
/// trigonometric form, so `E` is exactly `[[0, 1], [−1, 0]]`.
pub fn strategy_unitary(s: &Strategy) -> Result<SingleQubitUnitary> {
    s.validate()?;
    let zero = Complex::new(0.0, 0.0);
    let one = Complex::new(1.0, 0.0);
    let m = match *s {
        Strategy::Named(Move::C) => [[one, zero], [zero, one]],
        Strategy::Named(Move::E) => [[zero, one], [-one, zero]],
        Strategy::Named(Move::A) => [[Complex::new(0.0, 1.0), zero], [zero, Complex::new(0.0, -1.0)]],
        Strategy::Parametric { .. } => {
            let (theta, phi) = s.parameters();
            let (sin, cos) = (theta / 2.0).sin_cos();
            [
                [Complex::from_polar(cos, phi), Complex::new(sin, 0.0)],
                [Complex::new(-sin, 0.0), Complex::from_polar(cos, -phi)],
            ]
        }
    };
    Ok(SingleQubitUnitary::from_matrix_unchecked(m))
}

/// `(|0000⟩ + i|1111⟩)/√2`, the state every game starts from after `J`.
pub fn entangled_start() -> StateVector {
    StateVector::new_basis_state(N_PLAYERS, 0)
        .and_then(|psi0| psi0.apply_operator(&entangler()))
        .expect("4-qubit register")
}

/// `J† (U_A ⊗ U_B ⊗ U_C ⊗ U_D) J |0000⟩`.
///
/// The strategy layer is applied qubit by qubit; [`tensor4`] gives the same
/// result as a dense product and is used as the test oracle.
pub fn final_state(profile: &StrategyProfile) -> Result<StateVector> {
    let mut state = entangled_start();
    for player in Player::ALL {
        let u = strategy_unitary(&profile.get(player))?;
        state = state.apply_single_qubit(&u, player.index())?;
    }
    state.apply_operator(&disentangler())
}

/// Z-basis outcome probabilities of [`final_state`].
pub fn outcome_distribution(profile: &StrategyProfile) -> Result<OutcomeDistribution> {
    Ok(final_state(profile)?.probabilities())
}

/// Compares states while ignoring an overall unit-modulus factor.
pub fn equal_up_to_global_phase(a: &StateVector, b: &StateVector, tol: f64) -> bool {
    a.equal_up_to_global_phase(b, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn moves(s: &str) -> StrategyProfile {
        StrategyProfile::from_moves(parse_moves::<4>(s).unwrap())
    }

    #[test]
    fn entangler_maps_start_to_ghz() {
        let psi = entangled_start();
        let h = FRAC_1_SQRT_2;
        assert!((psi.amplitude(0) - c(h, 0.0)).norm() < 1e-12);
        assert!((psi.amplitude(15) - c(0.0, h)).norm() < 1e-12);
        let rest: f64 = (1..15).map(|k| psi.amplitude(k).norm()).sum();
        assert!(rest < 1e-12);
        assert!((entangler().entry(0, 0) - c(h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn entangler_is_unitary() {
        let j = entangler();
        assert!(j.is_unitary(1e-9));
        let jdj = disentangler().matmul(&j).unwrap();
        assert!(jdj.max_abs_diff(&RegisterOperator::identity(4).unwrap()) < 1e-9);
        assert_eq!(disentangler().adjoint(), j);
    }

    #[test]
    fn disentangler_inverts_start() {
        let back = entangled_start().apply_operator(&disentangler()).unwrap();
        assert!(back.max_abs_diff(&StateVector::new_basis_state(4, 0).unwrap()) < 1e-12);
    }

    #[test]
    fn named_matrices() {
        let cm = strategy_unitary(&Move::C.into()).unwrap();
        assert_eq!(cm, SingleQubitUnitary::identity());
        let e = strategy_unitary(&Move::E.into()).unwrap().matrix();
        assert_eq!(e, [[c(0., 0.), c(1., 0.)], [c(-1., 0.), c(0., 0.)]]);
        let a = strategy_unitary(&Move::A.into()).unwrap().matrix();
        assert_eq!(a, [[c(0., 1.), c(0., 0.)], [c(0., 0.), c(0., -1.)]]);
    }

    #[test]
    fn parametric_matches_named_corners() {
        for m in Move::ALL {
            let (theta, phi) = m.parameters();
            let p = strategy_unitary(&Strategy::parametric(theta, phi).unwrap()).unwrap();
            let n = strategy_unitary(&m.into()).unwrap();
            assert!(p.max_abs_diff(&n) < 1e-12, "{m}");
        }
    }

    #[test]
    fn parametric_is_unitary() {
        let u = strategy_unitary(&Strategy::parametric(1.1, 0.4).unwrap()).unwrap();
        assert!(u.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn out_of_domain_parameters() {
        assert!(Strategy::parametric(-0.1, 0.0).is_err());
        assert!(Strategy::parametric(PI + 0.01, 0.0).is_err());
        assert!(Strategy::parametric(0.0, 1.6).is_err());
        assert!(Strategy::parametric(PI, FRAC_PI_2).is_ok());
        let bad = Strategy::Parametric { theta: 4.0, phi: 0.0 };
        assert!(matches!(strategy_unitary(&bad), Err(Error::StrategyDomain { name: "theta", .. })));
    }

    #[test]
    fn final_states_of_reference_profiles() {
        let zero = StateVector::new_basis_state(4, 0).unwrap();
        for p in ["CCCC", "AAAA"] {
            assert!(final_state(&moves(p)).unwrap().equal_up_to_global_phase(&zero, 1e-12), "{p}");
        }
        let d = StateVector::new_basis_state(4, 0b0001).unwrap();
        assert!(final_state(&moves("EEEA")).unwrap().equal_up_to_global_phase(&d, 1e-12));
    }

    #[test]
    fn histogram_profiles() {
        for (p, outcome) in [("CECE", "0101"), ("CCEA", "1101"), ("CCCE", "0001")] {
            let d = outcome_distribution(&moves(p)).unwrap();
            assert!(d.probability_of(outcome).unwrap() > 1.0 - 1e-9, "{p}");
        }
    }

    #[test]
    fn parse_profiles() {
        let p: StrategyProfile = "C,E,C,E".parse().unwrap();
        assert_eq!(p.as_moves(), Some([Move::C, Move::E, Move::C, Move::E]));
        let p: StrategyProfile = "aaaa".parse().unwrap();
        assert_eq!(p.as_moves(), Some([Move::A; 4]));
        let p: StrategyProfile = "A,theta=0.5:phi=1,E,C".parse().unwrap();
        assert_eq!(p.get(Player::Bob), Strategy::Parametric { theta: 0.5, phi: 1.0 });
        assert_eq!(p.as_moves(), None);
        assert_eq!("C,E,Q,E".parse::<StrategyProfile>().unwrap_err(), "Q");
        assert_eq!("C,E,theta=9,E".parse::<StrategyProfile>().unwrap_err(), "theta=9");
        assert!("C,E,C".parse::<StrategyProfile>().is_err());
    }

    #[test]
    fn parse_move_tuples() {
        assert_eq!(parse_moves::<3>("EEE").unwrap(), [Move::E; 3]);
        assert_eq!(parse_moves::<3>("C, E, A").unwrap(), [Move::C, Move::E, Move::A]);
        assert_eq!(parse_moves::<3>("CEX").unwrap_err(), "X");
        assert!(parse_moves::<3>("CE").is_err());
    }
}
