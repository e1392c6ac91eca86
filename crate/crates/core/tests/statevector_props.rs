use proptest::prelude::*;
use qdd::statevector::{Complex, ControlledGate, SingleQubitUnitary, StateVector};

fn unitary_from_angles(alpha: f64, beta: f64, gamma: f64, delta: f64) -> SingleQubitUnitary {
    let g = Complex::from_polar(1.0, alpha);
    let (s, c) = gamma.sin_cos();
    SingleQubitUnitary::new([
        [g * Complex::from_polar(c, beta), g * Complex::from_polar(s, delta)],
        [-g * Complex::from_polar(s, -delta), g * Complex::from_polar(c, -beta)],
    ])
    .expect("parametrized family is unitary")
}

fn arb_unitary() -> impl Strategy<Value = SingleQubitUnitary> {
    let angle = -std::f64::consts::PI..std::f64::consts::PI;
    (angle.clone(), angle.clone(), angle.clone(), angle).prop_map(|(a, b, g, d)| unitary_from_angles(a, b, g, d))
}

fn arb_state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n).prop_filter_map("non-zero", |raw| {
        let norm: f64 = raw.iter().map(|(re, im)| re * re + im * im).sum::<f64>().sqrt();
        (norm > 1e-3).then(|| {
            StateVector::from_amplitudes(raw.iter().map(|(re, im)| Complex::new(re / norm, im / norm)).collect())
                .unwrap()
        })
    })
}

/// `I ⊗ … ⊗ u ⊗ … ⊗ I` written out entry by entry.
fn naive_embedded(u: &SingleQubitUnitary, qubit: usize, n: usize) -> Vec<Vec<Complex>> {
    let dim = 1 << n;
    let shift = n - 1 - qubit;
    let mut m = vec![vec![Complex::new(0.0, 0.0); dim]; dim];
    for (r, row) in m.iter_mut().enumerate() {
        for (c, entry) in row.iter_mut().enumerate() {
            let others_equal = (r & !(1 << shift)) == (c & !(1 << shift));
            if others_equal {
                *entry = u.entry((r >> shift) & 1, (c >> shift) & 1);
            }
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn qubitwise_matches_kronecker_oracle(state in arb_state(4), u in arb_unitary(), qubit in 0usize..4) {
        let fast = state.apply_single_qubit(&u, qubit).unwrap();
        let m = naive_embedded(&u, qubit, 4);
        for (r, row) in m.iter().enumerate() {
            let expected: Complex = row.iter().zip(state.amplitudes()).map(|(a, b)| a * b).sum();
            prop_assert!((fast.amplitude(r) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn unitaries_preserve_norm(state in arb_state(4), u in arb_unitary(), qubit in 0usize..4) {
        let out = state.apply_single_qubit(&u, qubit).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn adjoint_round_trip(state in arb_state(4), u in arb_unitary(), qubit in 0usize..4) {
        let back = state
            .apply_single_qubit(&u, qubit).unwrap()
            .apply_single_qubit(&u.adjoint(), qubit).unwrap();
        prop_assert!(back.max_abs_diff(&state) < 1e-9);
    }

    #[test]
    fn controlled_gates_are_involutions(state in arb_state(4), a in 0usize..4, b in 0usize..4) {
        prop_assume!(a != b);
        for kind in [ControlledGate::Cz, ControlledGate::Cnot] {
            let once = state.apply_controlled(kind, a, b).unwrap();
            prop_assert!((once.norm_sqr() - 1.0).abs() < 1e-9);
            let twice = once.apply_controlled(kind, a, b).unwrap();
            prop_assert!(twice.max_abs_diff(&state) < 1e-12);
        }
    }

    #[test]
    fn probabilities_sum_to_one(state in arb_state(3)) {
        let total: f64 = state.probabilities().probabilities().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
    }
}
