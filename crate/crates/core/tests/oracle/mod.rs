//! Branch-phase oracle for the four-player pipeline.
//!
//! `J|0000⟩` has only the two branches `|0000⟩` and `|1111⟩`, so the final
//! state can be written in closed form without any matrices:
//!
//! ```text
//! φ[k]   = (Π_q U_q[k_q][0] + i·Π_q U_q[k_q][1]) / √2
//! ψ_f[j] = (φ[j] − i·s(¬j)·φ[¬j]) / √2,   s(k) = Π_q (k_q = 0 ? i : −i)
//! ```
//!
//! where the second line is `J† = (I − i·σ_y⊗⁴)/√2` using
//! `σ_y|0⟩ = i|1⟩` and `σ_y|1⟩ = −i|0⟩`. Everything here uses plain
//! `(re, im)` pairs and the strategy formula, not the crate's engine.

#![allow(dead_code)]

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C(pub f64, pub f64);

impl C {
    pub fn mul(self, o: C) -> C {
        C(self.0 * o.0 - self.1 * o.1, self.0 * o.1 + self.1 * o.0)
    }
    pub fn add(self, o: C) -> C {
        C(self.0 + o.0, self.1 + o.1)
    }
    pub fn scale(self, s: f64) -> C {
        C(self.0 * s, self.1 * s)
    }
    pub fn norm_sqr(self) -> f64 {
        self.0 * self.0 + self.1 * self.1
    }
}

const I: C = C(0.0, 1.0);
const MINUS_I: C = C(0.0, -1.0);

/// `[[e^{iφ}cos(θ/2), sin(θ/2)], [−sin(θ/2), e^{−iφ}cos(θ/2)]]`.
pub fn strategy(theta: f64, phi: f64) -> [[C; 2]; 2] {
    let (s, c) = ((theta / 2.0).sin(), (theta / 2.0).cos());
    [
        [C(c * phi.cos(), c * phi.sin()), C(s, 0.0)],
        [C(-s, 0.0), C(c * phi.cos(), -c * phi.sin())],
    ]
}

pub fn named(letter: char) -> [[C; 2]; 2] {
    match letter {
        'C' => strategy(0.0, 0.0),
        'E' => strategy(std::f64::consts::PI, 0.0),
        'A' => strategy(0.0, std::f64::consts::FRAC_PI_2),
        other => panic!("unknown move {other}"),
    }
}

fn bit(k: usize, q: usize) -> usize {
    (k >> (3 - q)) & 1
}

/// Final amplitudes for the four strategy matrices (Alice first).
pub fn final_amplitudes(u: &[[[C; 2]; 2]; 4]) -> [C; 16] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut phi = [C(0.0, 0.0); 16];
    for (k, slot) in phi.iter_mut().enumerate() {
        let mut from_zero = C(1.0, 0.0);
        let mut from_one = C(1.0, 0.0);
        for (q, uq) in u.iter().enumerate() {
            from_zero = from_zero.mul(uq[bit(k, q)][0]);
            from_one = from_one.mul(uq[bit(k, q)][1]);
        }
        *slot = from_zero.add(I.mul(from_one)).scale(h);
    }
    let mut out = [C(0.0, 0.0); 16];
    for (j, slot) in out.iter_mut().enumerate() {
        let src = j ^ 0b1111;
        let mut s = C(1.0, 0.0);
        for q in 0..4 {
            s = s.mul(if bit(src, q) == 0 { I } else { MINUS_I });
        }
        let flipped = MINUS_I.mul(s).mul(phi[src]);
        *slot = phi[j].add(flipped).scale(h);
    }
    out
}

pub fn probabilities(u: &[[[C; 2]; 2]; 4]) -> [f64; 16] {
    final_amplitudes(u).map(C::norm_sqr)
}

/// Probabilities for a letter profile such as `"CECE"`.
pub fn named_probabilities(profile: &str) -> [f64; 16] {
    let letters: Vec<char> = profile.chars().collect();
    probabilities(&[named(letters[0]), named(letters[1]), named(letters[2]), named(letters[3])])
}

/// The outcome carrying essentially all probability, if there is one.
pub fn point_mass(profile: &str) -> Option<usize> {
    let p = named_probabilities(profile);
    p.iter().position(|v| *v > 1.0 - 1e-9)
}

/// Doug's literal 16-term payoff coefficients, plus the symmetric rule for
/// the other players: utility depends on own bit and the others' E count.
pub fn utility(outcome: usize, player: usize) -> f64 {
    const CHEAP: [f64; 4] = [6.0, 4.0, 3.0, 0.0];
    const EXPENSIVE: [f64; 4] = [8.0, 4.0, 3.0, 1.0];
    let own = bit(outcome, player);
    let others = (0..4).filter(|&q| q != player && bit(outcome, q) == 1).count();
    if own == 1 {
        EXPENSIVE[others]
    } else {
        CHEAP[others]
    }
}

pub fn payoffs(profile: &str) -> [f64; 4] {
    let p = named_probabilities(profile);
    let mut out = [0.0; 4];
    for (k, pk) in p.iter().enumerate() {
        for (i, slot) in out.iter_mut().enumerate() {
            *slot += pk * utility(k, i);
        }
    }
    out
}

/// All 81 letter profiles in `C < E < A` lexicographic order.
pub fn all_profiles() -> Vec<String> {
    let letters = ['C', 'E', 'A'];
    let mut out = Vec::new();
    for a in letters {
        for b in letters {
            for c in letters {
                for d in letters {
                    out.push([a, b, c, d].iter().collect());
                }
            }
        }
    }
    out
}
