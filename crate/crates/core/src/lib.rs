//! A small quantum game-theory engine for the four-player Diner's Dilemma
//! played under the Eisert–Wilkens–Lewenstein (EWL) quantization.
//!
//! The crate is organized bottom-up:
//!
//! - [`statevector`]: dense complex statevectors, single-qubit and controlled
//!   gates, full-register operators.
//! - [`ewl`]: the entangler `J`, strategy unitaries and the
//!   `J† (U_A ⊗ U_B ⊗ U_C ⊗ U_D) J |0000⟩` pipeline.
//! - [`payoff`]: the classical payoff table and expected payoffs.
//! - [`equilibrium`]: exhaustive Nash / Pareto / best-response analysis over
//!   the discrete strategy sets.
//! - [`circuit`]: a U3/CZ/CNOT circuit IR with a verified decomposition of `J`,
//!   exact simulation, seeded shot sampling and OpenQASM 2.0 text.
//!
//! ```
//! use qdd::ewl::{outcome_distribution, Move, StrategyProfile};
//! use qdd::payoff::{expected_payoffs, PayoffTable};
//!
//! let profile = StrategyProfile::from_moves([Move::A; 4]);
//! let dist = outcome_distribution(&profile).unwrap();
//! let pay = expected_payoffs(&dist, &PayoffTable::builtin()).unwrap();
//! assert!((pay.get(qdd::Player::Doug) - 6.0).abs() < 1e-9);
//! ```

pub mod circuit;
pub mod distribution;
pub mod equilibrium;
mod error;
pub mod ewl;
pub mod payoff;
mod player;
pub mod statevector;

pub use distribution::OutcomeDistribution;
pub use error::{Error, Result};
pub use player::Player;

/// Absolute tolerance for analytic identities (unitarity, normalization).
pub const TOLERANCE: f64 = 1e-9;

/// Tolerance used when comparing payoffs for ties and strict improvements.
pub const TIE_TOLERANCE: f64 = 1e-9;
