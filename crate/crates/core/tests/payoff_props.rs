use proptest::prelude::*;
use qdd::payoff::{expected_payoffs, PayoffTable};
use qdd::{OutcomeDistribution, Player};

/// Doug's expected payoff written out term by term.
fn doug_literal(p: &[f64]) -> f64 {
    6.0 * p[0b0000] + 8.0 * p[0b0001] + 4.0 * p[0b0010] + 4.0 * p[0b0011]
        + 4.0 * p[0b0100] + 4.0 * p[0b0101] + 3.0 * p[0b0110] + 3.0 * p[0b0111]
        + 4.0 * p[0b1000] + 4.0 * p[0b1001] + 3.0 * p[0b1010] + 3.0 * p[0b1011]
        + 3.0 * p[0b1100] + 3.0 * p[0b1101] + 0.0 * p[0b1110] + 1.0 * p[0b1111]
}

fn arb_distribution() -> impl Strategy<Value = OutcomeDistribution> {
    prop::collection::vec(0.0f64..1.0, 16).prop_filter_map("positive mass", |w| {
        let total: f64 = w.iter().sum();
        (total > 1e-6).then(|| OutcomeDistribution::new(4, w.iter().map(|x| x / total).collect()).unwrap())
    })
}

fn permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn table_is_symmetric_under_every_relabelling() {
    let t = PayoffTable::builtin();
    for perm in permutations() {
        for s in 0..16 {
            // player i's bit moves to position perm[i]
            let mut image = 0;
            for (i, &dest) in perm.iter().enumerate() {
                if (s >> (3 - i)) & 1 == 1 {
                    image |= 1 << (3 - dest);
                }
            }
            for i in 0..4 {
                let lhs = t.utility(s, Player::from_index(i).unwrap());
                let rhs = t.utility(image, Player::from_index(perm[i]).unwrap());
                assert_eq!(lhs, rhs, "outcome {s:04b}, perm {perm:?}, player {i}");
            }
        }
    }
}

proptest! {
    #[test]
    fn doug_matches_literal_sum(dist in arb_distribution()) {
        let pay = expected_payoffs(&dist, &PayoffTable::builtin()).unwrap();
        prop_assert!((pay.get(Player::Doug) - doug_literal(dist.probabilities())).abs() < 1e-12);
    }

    #[test]
    fn expected_payoffs_stay_in_table_range(dist in arb_distribution()) {
        let t = PayoffTable::builtin();
        let (lo, hi) = t.range();
        prop_assert_eq!((lo, hi), (0.0, 8.0));
        for v in expected_payoffs(&dist, &t).unwrap().values() {
            prop_assert!(*v >= lo - 1e-12 && *v <= hi + 1e-12);
        }
    }
}
