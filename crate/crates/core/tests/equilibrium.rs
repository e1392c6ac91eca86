mod oracle;

use qdd::equilibrium::{
    best_response, dominant_strategies, enumerate_table, find_nash, find_symmetric_optima, GameIndex, Model,
    MoveProfile,
};
use qdd::ewl::{moves_to_string, parse_moves, Move};
use qdd::payoff::{PayoffTable, PayoffVector};
use qdd::Player;

fn p(s: &str) -> MoveProfile {
    parse_moves::<4>(s).unwrap()
}

fn quantum() -> Vec<qdd::equilibrium::ProfileRecord> {
    enumerate_table(Model::Quantum, &PayoffTable::builtin()).unwrap()
}

#[test]
fn quantum_rows_match_oracle_payoffs() {
    let records = quantum();
    let letters = oracle::all_profiles();
    assert_eq!(records.len(), letters.len());
    for (r, l) in records.iter().zip(&letters) {
        assert_eq!(&moves_to_string(&r.profile), l);
        let expected = oracle::payoffs(l);
        assert!(r.payoffs.max_abs_diff(&PayoffVector(expected)) < 1e-9, "{l}");
    }
}

#[test]
fn aaaa_pays_six_and_resists_deviation() {
    let records = quantum();
    let idx = GameIndex::new(&records, &Move::ALL).unwrap();
    let aaaa = idx.record(&p("AAAA")).unwrap();
    assert!(aaaa.payoffs.0.iter().all(|v| (v - 6.0).abs() < 1e-9));
    let checks = idx.unilateral_payoffs(&p("AAAA")).unwrap();
    assert_eq!(checks.len(), 12);
    assert!(checks.iter().all(|d| d.payoff <= 6.0 + 1e-9));
    assert!(idx.is_nash(&p("AAAA")).unwrap());
}

#[test]
fn ccea_row() {
    let records = quantum();
    let idx = GameIndex::new(&records, &Move::ALL).unwrap();
    let r = idx.record(&p("CCEA")).unwrap();
    assert!(r.distribution.probability_of("1101").unwrap() > 1.0 - 1e-9);
    let expected = [3.0, 3.0, 0.0, 3.0];
    assert!(r.payoffs.0.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-9));
}

#[test]
fn quantum_nash() {
    let records = quantum();
    let nash = find_nash(&records, &Move::ALL).unwrap();
    assert_eq!(nash, vec![p("AAAA")]);
    let idx = GameIndex::new(&records, &Move::ALL).unwrap();
    let weak = idx.weak_nash();
    assert!(weak.contains(&p("AAAA")));
    assert!(!weak.contains(&p("EEEE")));
    let witness = idx.profitable_deviation(&p("EEEE")).unwrap().unwrap();
    assert_eq!(witness.to, Move::A);
    assert!((witness.payoff - 8.0).abs() < 1e-9 && (witness.baseline - 1.0).abs() < 1e-9);
}

#[test]
fn quantum_best_replies() {
    let records = quantum();
    let (moves, v) = best_response(&records, &Move::ALL, Player::Doug, &[Move::E; 3]).unwrap();
    assert_eq!(moves, vec![Move::A]);
    assert!((v - 8.0).abs() < 1e-9);
    let (moves, v) = best_response(&records, &Move::ALL, Player::Doug, &[Move::C; 3]).unwrap();
    assert_eq!(moves, vec![Move::E]);
    assert!((v - 8.0).abs() < 1e-9);
    // two cooperating players leave the other two best off matching C or A
    let idx = GameIndex::new(&records, &Move::ALL).unwrap();
    let (moves, _) = idx.best_response(Player::Doug, &[Move::C, Move::C, Move::C]).unwrap();
    assert_eq!(moves, vec![Move::E]);
    let (moves, v) = idx.best_response(Player::Doug, &[Move::C, Move::C, Move::A]).unwrap();
    assert_eq!((moves, v.round()), (vec![Move::A], 6.0));
}

#[test]
fn eight_symmetric_optima_from_oracle() {
    let records = quantum();
    let optima = find_symmetric_optima(&records, &Move::ALL).unwrap();
    let mut from_oracle: Vec<MoveProfile> = oracle::all_profiles()
        .iter()
        .filter(|l| oracle::point_mass(l) == Some(0))
        .map(|l| p(l))
        .collect();
    from_oracle.sort();
    let mut got = optima.clone();
    got.sort();
    assert_eq!(got, from_oracle);
    assert_eq!(optima.len(), 8);
    for prof in optima {
        assert!(!prof.contains(&Move::E));
        assert_eq!(prof.iter().filter(|m| **m == Move::A).count() % 2, 0);
    }
}

#[test]
fn no_quantum_dominant_strategy() {
    assert_eq!(dominant_strategies(&quantum(), &Move::ALL).unwrap(), [None; 4]);
}

#[test]
fn classical_quantum_consistency() {
    let classical = enumerate_table(Model::Classical, &PayoffTable::builtin()).unwrap();
    let records = quantum();
    let idx = GameIndex::new(&records, &Move::ALL).unwrap();
    for c in &classical {
        let q = idx.record(&c.profile).unwrap();
        assert!(q.payoffs.max_abs_diff(&c.payoffs) < 1e-9, "{}", moves_to_string(&c.profile));
    }
}

#[test]
fn payoffs_permute_with_profiles() {
    let records = quantum();
    let idx = GameIndex::new(&records, &Move::ALL).unwrap();
    let perms: Vec<[usize; 4]> = (0..256)
        .map(|k| [k >> 6 & 3, k >> 4 & 3, k >> 2 & 3, k & 3])
        .filter(|p| (0..4).all(|x| p.contains(&x)))
        .collect();
    assert_eq!(perms.len(), 24);
    for r in records.iter().step_by(4).take(20) {
        for perm in &perms {
            let mut image = r.profile;
            for (i, &dest) in perm.iter().enumerate() {
                image[dest] = r.profile[i];
            }
            let q = idx.record(&image).unwrap();
            for (i, &dest) in perm.iter().enumerate() {
                assert!((r.payoffs.0[i] - q.payoffs.0[dest]).abs() < 1e-9);
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let a = quantum();
    let b = quantum();
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.profile, y.profile);
        assert_eq!(x.distribution.probabilities(), y.distribution.probabilities());
        assert_eq!(x.payoffs.0.map(f64::to_bits), y.payoffs.0.map(f64::to_bits));
    }
}

#[test]
fn report_bundles_every_concept() {
    let records = quantum();
    let report = GameIndex::new(&records, &Move::ALL).unwrap().report();
    assert_eq!(report.nash, vec![p("AAAA")]);
    assert_eq!(report.symmetric_optima.len(), 8);
    assert!(report.pareto_standard.contains(&p("AAAA")));
    assert!(report.pareto_standard.contains(&p("CCCE")));
    assert_eq!(report.best_responses.len(), 4 * 27);
    assert!(report.best_responses.values().all(|v| !v.is_empty()));
}
