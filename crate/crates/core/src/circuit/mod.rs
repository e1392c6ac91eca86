//! Gate-level version of the game: U3, CZ and CNOT on four qubits, followed
//! by Z-basis measurement of `q[i]` into `c[i]`.
//!
//! The U3 convention is
//!
//! ```text
//! U3(θ, φ, λ) = [[cos(θ/2),          −e^{iλ}·sin(θ/2)],
//!                [e^{iφ}·sin(θ/2),   e^{i(φ+λ)}·cos(θ/2)]]
//! ```
//!
//! so that `U3(π, π, π)` is exactly `E`, `U3(0, 0, 0)` is `C`, and
//! `U3(0, −π/2, −π/2) = diag(1, −1)` is `A` up to the global phase `i`.

mod qasm;
mod sample;

use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::OnceLock;

pub use qasm::{export_qasm, import_qasm, QasmError};
pub use sample::{sample, Histogram};

use crate::distribution::OutcomeDistribution;
use crate::ewl::{entangler, Move, Strategy, StrategyProfile, N_PLAYERS};
use crate::statevector::{Complex, ControlledGate, RegisterOperator, SingleQubitUnitary, StateVector};
use crate::{Error, Player, Result, TOLERANCE};

/// Register width of every game circuit.
pub const N_QUBITS: usize = N_PLAYERS;

/// One instruction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    U3 {
        theta: f64,
        phi: f64,
        lambda: f64,
        target: usize,
    },
    Cz(usize, usize),
    Cnot {
        control: usize,
        target: usize,
    },
    Measure {
        qubit: usize,
        clbit: usize,
    },
}

impl Gate {
    pub fn u3(theta: f64, phi: f64, lambda: f64, target: usize) -> Gate {
        Gate::U3 {
            theta,
            phi,
            lambda,
            target,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Gate {
        Gate::Cnot { control, target }
    }

    pub fn is_unitary(&self) -> bool {
        !matches!(self, Gate::Measure { .. })
    }

    /// `U3(θ,φ,λ)† = U3(−θ,−λ,−φ)`; CZ and CNOT are their own inverses.
    /// Measurements have no adjoint.
    pub fn adjoint(&self) -> Option<Gate> {
        match *self {
            Gate::U3 {
                theta,
                phi,
                lambda,
                target,
            } => Some(Gate::u3(-theta, -lambda, -phi, target)),
            Gate::Cz(..) | Gate::Cnot { .. } => Some(*self),
            Gate::Measure { .. } => None,
        }
    }

    fn validate(&self) -> Result<()> {
        let check = |q: usize| {
            if q < N_QUBITS {
                Ok(())
            } else {
                Err(Error::InvalidCircuit(format!("qubit {q} out of range for q[{N_QUBITS}]")))
            }
        };
        match *self {
            Gate::U3 {
                theta,
                phi,
                lambda,
                target,
            } => {
                if ![theta, phi, lambda].iter().all(|a| a.is_finite()) {
                    return Err(Error::InvalidCircuit("non-finite U3 angle".into()));
                }
                check(target)
            }
            Gate::Cz(a, b) | Gate::Cnot { control: a, target: b } => {
                check(a)?;
                check(b)?;
                if a == b {
                    return Err(Error::InvalidCircuit(format!("two-qubit gate on q[{a}] twice")));
                }
                Ok(())
            }
            Gate::Measure { qubit, clbit } => {
                check(qubit)?;
                if clbit >= N_QUBITS {
                    return Err(Error::InvalidCircuit(format!("clbit {clbit} out of range for c[{N_QUBITS}]")));
                }
                Ok(())
            }
        }
    }
}

/// A validated instruction list on four qubits: operands in range, CZ and
/// CNOT operands distinct, measurements only after the last unitary gate.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(gates: Vec<Gate>) -> Result<Self> {
        let mut measuring = false;
        for g in &gates {
            g.validate()?;
            match g {
                Gate::Measure { .. } => measuring = true,
                _ if measuring => {
                    return Err(Error::InvalidCircuit("unitary gate after measurement".into()));
                }
                _ => {}
            }
        }
        Ok(Self { gates })
    }

    pub fn n_qubits(&self) -> usize {
        N_QUBITS
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Concatenation; fails if `self` measures and `rest` has unitaries.
    pub fn then(&self, rest: &Circuit) -> Result<Circuit> {
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&rest.gates);
        Circuit::new(gates)
    }

    /// Reversed unitary part with every gate replaced by its adjoint.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            gates: self.gates.iter().rev().filter_map(Gate::adjoint).collect(),
        }
    }

    /// Final state of the unitary part applied to `input`.
    pub fn run(&self, input: &StateVector) -> Result<StateVector> {
        let mut state = input.clone();
        for g in &self.gates {
            state = match *g {
                Gate::U3 {
                    theta,
                    phi,
                    lambda,
                    target,
                } => state.apply_single_qubit(&u3_matrix(theta, phi, lambda), target)?,
                Gate::Cz(a, b) => state.apply_controlled(ControlledGate::Cz, a, b)?,
                Gate::Cnot { control, target } => state.apply_controlled(ControlledGate::Cnot, control, target)?,
                Gate::Measure { .. } => continue,
            };
        }
        Ok(state)
    }

    /// The 16×16 matrix of the unitary part, built column by column.
    pub fn unitary(&self) -> Result<RegisterOperator> {
        let dim = 1 << N_QUBITS;
        let mut rows = vec![Complex::new(0.0, 0.0); dim * dim];
        for col in 0..dim {
            let out = self.run(&StateVector::new_basis_state(N_QUBITS, col)?)?;
            for (row, amp) in out.amplitudes().iter().enumerate() {
                rows[row * dim + col] = *amp;
            }
        }
        RegisterOperator::from_rows(N_QUBITS, rows)
    }

    fn measurements(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.gates.iter().filter_map(|g| match *g {
            Gate::Measure { qubit, clbit } => Some((qubit, clbit)),
            _ => None,
        })
    }
}

/// The U3 matrix, see the module docs for the convention.
pub fn u3_matrix(theta: f64, phi: f64, lambda: f64) -> SingleQubitUnitary {
    let (s, c) = (theta / 2.0).sin_cos();
    SingleQubitUnitary::from_matrix_unchecked([
        [Complex::new(c, 0.0), -Complex::from_polar(s, lambda)],
        [Complex::from_polar(s, phi), Complex::from_polar(c, phi + lambda)],
    ])
}

/// `U3(π/2, π/2, −π/2) = exp(iπ/4·X)`: the single-qubit rotation at the
/// heart of the entangler.
pub const ENTANGLING_U3: (f64, f64, f64) = (FRAC_PI_2, FRAC_PI_2, -FRAC_PI_2);

/// Clifford frame `W` with `W·X₀·W† = Y⊗Y⊗Y⊗Y`: a CNOT fan-out from `q[0]`
/// maps `X₀` to `X⊗X⊗X⊗X`, then `CZ(0,1)` and `CZ(2,3)` turn each `X⊗X`
/// pair into `Y⊗Y`.
fn frame() -> [Gate; 5] {
    [
        Gate::cnot(0, 1),
        Gate::cnot(0, 2),
        Gate::cnot(0, 3),
        Gate::Cz(0, 1),
        Gate::Cz(2, 3),
    ]
}

/// Gates whose product is `J = exp(iπ/4·Y⊗Y⊗Y⊗Y) = W·exp(iπ/4·X₀)·W†`.
///
/// `W†` leaves `|0000⟩` unchanged, so on the game input the first gate that
/// acts is the `U3(π/2, π/2, −π/2)` on `q[0]`, and the CNOT fan-out spreads its
/// superposition into `(|0000⟩ + i|1111⟩)/√2`. The sequence is checked
/// against [`entangler`] the first time it is requested.
pub fn entangler_circuit() -> Result<Circuit> {
    static VERIFIED: OnceLock<std::result::Result<Circuit, String>> = OnceLock::new();
    VERIFIED
        .get_or_init(|| {
            let frame = frame();
            let (t, p, l) = ENTANGLING_U3;
            let gates: Vec<Gate> = frame
                .iter()
                .rev()
                .copied()
                .chain(std::iter::once(Gate::u3(t, p, l, 0)))
                .chain(frame.iter().copied())
                .collect();
            let circuit = Circuit::new(gates).map_err(|e| e.to_string())?;
            let composed = circuit.unitary().map_err(|e| e.to_string())?;
            let deviation = composed.global_phase_deviation(&entangler());
            if deviation > TOLERANCE {
                return Err(format!("entangler decomposition is off by {deviation:.3e}"));
            }
            Ok(circuit)
        })
        .clone()
        .map_err(Error::InvalidCircuit)
}

/// The adjoint of [`entangler_circuit`].
pub fn disentangler_circuit() -> Result<Circuit> {
    Ok(entangler_circuit()?.adjoint())
}

/// The U3 gate realizing a strategy on `qubit`.
///
/// Named moves use the fixed triples `C = (0,0,0)`, `E = (π,π,π)`,
/// `A = (0,−π/2,−π/2)`. A parametric `U(θ, φ)` equals
/// `e^{iφ}·U3(θ, π−φ, π−φ)`, which is what is emitted.
pub fn strategy_gate(strategy: &Strategy, qubit: usize) -> Result<Gate> {
    strategy.validate()?;
    let (t, p, l) = match *strategy {
        Strategy::Named(Move::C) => (0.0, 0.0, 0.0),
        Strategy::Named(Move::E) => (PI, PI, PI),
        Strategy::Named(Move::A) => (0.0, -FRAC_PI_2, -FRAC_PI_2),
        Strategy::Parametric { .. } => {
            let (theta, phi) = strategy.parameters();
            (theta, PI - phi, PI - phi)
        }
    };
    Ok(Gate::u3(t, p, l, qubit))
}

/// Entangler, one strategy gate per player, disentangler, then
/// `measure q[i] -> c[i]` for all four qubits.
pub fn build_game_circuit(profile: &StrategyProfile) -> Result<Circuit> {
    let mut gates = entangler_circuit()?.gates;
    for player in Player::ALL {
        gates.push(strategy_gate(&profile.get(player), player.index())?);
    }
    gates.extend(disentangler_circuit()?.gates);
    gates.extend((0..N_QUBITS).map(|q| Gate::Measure { qubit: q, clbit: q }));
    Circuit::new(gates)
}

/// Exact Born distribution of running `c` on `|0000⟩`.
///
/// Without measurements the distribution is over the qubits. With
/// measurements it is over the classical register, where `c[j]` holds the
/// qubit measured into it (0 if none).
pub fn simulate_circuit(c: &Circuit) -> Result<OutcomeDistribution> {
    let state = c.run(&StateVector::new_basis_state(N_QUBITS, 0)?)?;
    let qubit_dist = state.probabilities();
    let map: Vec<(usize, usize)> = c.measurements().collect();
    if map.is_empty() {
        return Ok(qubit_dist);
    }
    let bit = |index: usize, q: usize| (index >> (N_QUBITS - 1 - q)) & 1;
    let mut p = vec![0.0; 1 << N_QUBITS];
    for (k, &prob) in qubit_dist.probabilities().iter().enumerate() {
        let mut clbits = [0usize; N_QUBITS];
        for &(q, cb) in &map {
            clbits[cb] = bit(k, q);
        }
        let idx = clbits.iter().fold(0, |acc, b| (acc << 1) | b);
        p[idx] += prob;
    }
    Ok(OutcomeDistribution::from_raw(N_QUBITS, p))
}
