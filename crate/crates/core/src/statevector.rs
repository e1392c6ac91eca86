//! Dense complex statevector simulation.
//!
//! Qubit 0 is the most significant bit of a basis index. For the game this
//! means Alice = `q[0]`, Bob = `q[1]`, Colin = `q[2]`, Doug = `q[3]`, and the
//! amplitude at index `0b0001` belongs to `|0001⟩` (only Doug ordered `E`).
//!
//! Single-qubit gates are applied in place on amplitude pairs; dense
//! [`RegisterOperator`]s exist for the entangler and as a test oracle.

use std::fmt;

pub use num_complex::Complex64 as Complex;

use crate::distribution::OutcomeDistribution;
use crate::{Error, Result, TOLERANCE};

/// Largest register this module will allocate.
pub const MAX_QUBITS: usize = 20;

const ZERO: Complex = Complex::new(0.0, 0.0);
const ONE: Complex = Complex::new(1.0, 0.0);
const I: Complex = Complex::new(0.0, 1.0);

fn check_qubit_count(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCount(n))
    }
}

fn all_finite(values: &[Complex]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// A 2×2 unitary. Construction through [`SingleQubitUnitary::new`] checks
/// `U·U† = I` entrywise within [`TOLERANCE`].
#[derive(Clone, Copy, PartialEq)]
pub struct SingleQubitUnitary {
    m: [[Complex; 2]; 2],
}

impl SingleQubitUnitary {
    pub fn new(m: [[Complex; 2]; 2]) -> Result<Self> {
        if !all_finite(&[m[0][0], m[0][1], m[1][0], m[1][1]]) {
            return Err(Error::NonFinite("single-qubit matrix"));
        }
        let u = Self { m };
        let deviation = u.unitarity_deviation();
        if deviation > TOLERANCE {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(u)
    }

    /// Caller guarantees unitarity (closed-form matrices in this crate).
    pub(crate) const fn from_matrix_unchecked(m: [[Complex; 2]; 2]) -> Self {
        Self { m }
    }

    pub const fn identity() -> Self {
        Self::from_matrix_unchecked([[ONE, ZERO], [ZERO, ONE]])
    }

    /// Pauli-Y, `[[0, -i], [i, 0]]`.
    pub const fn pauli_y() -> Self {
        Self::from_matrix_unchecked([[ZERO, Complex::new(0.0, -1.0)], [I, ZERO]])
    }

    pub fn matrix(&self) -> [[Complex; 2]; 2] {
        self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.m[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = self.m;
        Self {
            m: [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]],
        }
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (self.m, rhs.m);
        let mut m = [[ZERO; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, out) in row.iter_mut().enumerate() {
                *out = a[r][0] * b[0][c] + a[r][1] * b[1][c];
            }
        }
        Self { m }
    }

    pub fn scale(&self, s: Complex) -> Self {
        let mut m = self.m;
        m.iter_mut().flatten().for_each(|z| *z *= s);
        Self { m }
    }

    /// Max entrywise |U·U† − I|.
    pub fn unitarity_deviation(&self) -> f64 {
        let p = self.mul(&self.adjoint());
        let id = [[ONE, ZERO], [ZERO, ONE]];
        (0..2)
            .flat_map(|r| (0..2).map(move |c| (r, c)))
            .map(|(r, c)| (p.m[r][c] - id[r][c]).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m
            .iter()
            .flatten()
            .zip(other.m.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_operator(&self) -> RegisterOperator {
        RegisterOperator {
            n: 1,
            data: vec![self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]],
        }
    }
}

impl fmt::Debug for SingleQubitUnitary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.m.iter()).finish()
    }
}

/// Two-qubit controlled gates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlledGate {
    /// Phase −1 on `|11⟩`; symmetric in its operands.
    Cz,
    /// Flips the target when the control is 1.
    Cnot,
}

/// A dense `2ⁿ × 2ⁿ` operator, row-major.
#[derive(Clone, PartialEq)]
pub struct RegisterOperator {
    n: usize,
    data: Vec<Complex>,
}

impl RegisterOperator {
    pub fn identity(n: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1 << n;
        let mut data = vec![ZERO; dim * dim];
        for k in 0..dim {
            data[k * dim + k] = ONE;
        }
        Ok(Self { n, data })
    }

    /// Row-major entries of a `2ⁿ × 2ⁿ` matrix. No unitarity check; see
    /// [`RegisterOperator::is_unitary`].
    pub fn from_rows(n: usize, data: Vec<Complex>) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1usize << n;
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if !all_finite(&data) {
            return Err(Error::NonFinite("register operator"));
        }
        Ok(Self { n, data })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex {
        self.data[row * self.dim() + col]
    }

    /// Kronecker product `self ⊗ rhs`; `self` acts on the leading qubits.
    pub fn kron(&self, rhs: &RegisterOperator) -> RegisterOperator {
        let (da, db) = (self.dim(), rhs.dim());
        let dim = da * db;
        let mut data = vec![ZERO; dim * dim];
        for ar in 0..da {
            for ac in 0..da {
                let a = self.data[ar * da + ac];
                if a == ZERO {
                    continue;
                }
                for br in 0..db {
                    for bc in 0..db {
                        data[(ar * db + br) * dim + ac * db + bc] = a * rhs.data[br * db + bc];
                    }
                }
            }
        }
        RegisterOperator {
            n: self.n + rhs.n,
            data,
        }
    }

    /// `self · rhs`, i.e. `rhs` is applied first.
    pub fn matmul(&self, rhs: &RegisterOperator) -> Result<RegisterOperator> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for r in 0..dim {
            for k in 0..dim {
                let a = self.data[r * dim + k];
                if a == ZERO {
                    continue;
                }
                for c in 0..dim {
                    data[r * dim + c] += a * rhs.data[k * dim + c];
                }
            }
        }
        Ok(RegisterOperator { n: self.n, data })
    }

    pub fn adjoint(&self) -> RegisterOperator {
        let dim = self.dim();
        let mut data = vec![ZERO; dim * dim];
        for r in 0..dim {
            for c in 0..dim {
                data[c * dim + r] = self.data[r * dim + c].conj();
            }
        }
        RegisterOperator { n: self.n, data }
    }

    pub fn add(&self, rhs: &RegisterOperator) -> Result<RegisterOperator> {
        if self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rhs.dim(),
            });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(RegisterOperator { n: self.n, data })
    }

    pub fn scale(&self, s: Complex) -> RegisterOperator {
        RegisterOperator {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &RegisterOperator) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Max entrywise |A·A† − I|.
    pub fn unitarity_deviation(&self) -> f64 {
        let product = self
            .matmul(&self.adjoint())
            .expect("same dimension by construction");
        let dim = self.dim();
        (0..dim * dim)
            .map(|k| {
                let id = if k / dim == k % dim { ONE } else { ZERO };
                (product.data[k] - id).norm()
            })
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_deviation() <= tol
    }

    /// Finds the phase `e^{iα}` minimising `|self − e^{iα}·other|` (anchored
    /// at the largest entry of `other`) and returns the remaining max
    /// entrywise deviation.
    pub fn global_phase_deviation(&self, other: &RegisterOperator) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        let Some(phase) = relative_phase(&self.data, &other.data) else {
            return self.max_abs_diff(other);
        };
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b * phase).norm())
            .fold(0.0, f64::max)
    }

    pub fn equal_up_to_global_phase(&self, other: &RegisterOperator, tol: f64) -> bool {
        self.global_phase_deviation(other) <= tol
    }
}

impl fmt::Debug for RegisterOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.dim();
        let mut list = f.debug_list();
        for row in self.data.chunks(dim) {
            list.entry(&row);
        }
        list.finish()
    }
}

/// Unit-modulus `φ` with `a ≈ φ·b`, taken from the largest entry of `b`.
fn relative_phase(a: &[Complex], b: &[Complex]) -> Option<Complex> {
    let (k, _) = b
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm_sqr().total_cmp(&y.1.norm_sqr()))?;
    if b[k].norm() < 1e-12 || a[k].norm() < 1e-12 {
        return None;
    }
    let ratio = a[k] / b[k];
    Some(ratio / ratio.norm())
}

/// `a ⊗ b ⊗ c ⊗ d` as a 16×16 operator, Alice's gate on the leading qubit.
///
/// Inputs are unitary by construction of [`SingleQubitUnitary`].
pub fn tensor4(
    a: &SingleQubitUnitary,
    b: &SingleQubitUnitary,
    c: &SingleQubitUnitary,
    d: &SingleQubitUnitary,
) -> RegisterOperator {
    a.to_operator()
        .kron(&b.to_operator())
        .kron(&c.to_operator())
        .kron(&d.to_operator())
}

/// A normalized `n`-qubit pure state.
#[derive(Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex>,
}

impl StateVector {
    /// `|index⟩` on `n` qubits.
    pub fn new_basis_state(n: usize, index: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let dim = 1usize << n;
        if index >= dim {
            return Err(Error::BasisIndex { index, dim });
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { n, amps })
    }

    /// Wraps explicit amplitudes; the length must be a power of two and the
    /// state normalized within [`TOLERANCE`].
    pub fn from_amplitudes(amps: Vec<Complex>) -> Result<Self> {
        let len = amps.len();
        if !len.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: len.next_power_of_two(),
                found: len,
            });
        }
        let n = len.trailing_zeros() as usize;
        check_qubit_count(n)?;
        if !all_finite(&amps) {
            return Err(Error::NonFinite("amplitudes"));
        }
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > TOLERANCE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self { n, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum()
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit < self.n {
            Ok(())
        } else {
            Err(Error::QubitOutOfRange { qubit, n: self.n })
        }
    }

    /// Bit mask of `qubit` inside a basis index.
    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n - 1 - qubit)
    }

    /// `(I ⊗ … ⊗ u ⊗ … ⊗ I)·self` with `u` on `qubit`.
    pub fn apply_single_qubit(&self, u: &SingleQubitUnitary, qubit: usize) -> Result<Self> {
        self.check_qubit(qubit)?;
        let mask = self.mask(qubit);
        let m = u.matrix();
        let mut amps = self.amps.clone();
        for k0 in (0..self.dim()).filter(|k| k & mask == 0) {
            let k1 = k0 | mask;
            let (a0, a1) = (self.amps[k0], self.amps[k1]);
            amps[k0] = m[0][0] * a0 + m[0][1] * a1;
            amps[k1] = m[1][0] * a0 + m[1][1] * a1;
        }
        Ok(Self { n: self.n, amps })
    }

    pub fn apply_controlled(&self, kind: ControlledGate, control: usize, target: usize) -> Result<Self> {
        self.check_qubit(control)?;
        self.check_qubit(target)?;
        if control == target {
            return Err(Error::SameQubit(control));
        }
        let (cm, tm) = (self.mask(control), self.mask(target));
        let mut amps = self.amps.clone();
        match kind {
            ControlledGate::Cz => {
                for (k, a) in amps.iter_mut().enumerate() {
                    if k & cm != 0 && k & tm != 0 {
                        *a = -*a;
                    }
                }
            }
            ControlledGate::Cnot => {
                for k in (0..self.dim()).filter(|k| k & cm != 0 && k & tm == 0) {
                    amps.swap(k, k | tm);
                }
            }
        }
        Ok(Self { n: self.n, amps })
    }

    pub fn apply_operator(&self, op: &RegisterOperator) -> Result<Self> {
        if op.n_qubits() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: op.dim(),
            });
        }
        let dim = self.dim();
        let amps = (0..dim)
            .map(|r| {
                (0..dim)
                    .map(|c| op.entry(r, c) * self.amps[c])
                    .sum::<Complex>()
            })
            .collect();
        Ok(Self { n: self.n, amps })
    }

    /// Born-rule probabilities `|⟨k|ψ⟩|²`.
    pub fn probabilities(&self) -> OutcomeDistribution {
        OutcomeDistribution::from_raw(self.n, self.amps.iter().map(|z| z.norm_sqr()).collect())
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn equal_up_to_global_phase(&self, other: &StateVector, tol: f64) -> bool {
        if self.n != other.n {
            return false;
        }
        let Some(phase) = relative_phase(&self.amps, &other.amps) else {
            return self.max_abs_diff(other) <= tol;
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .all(|(a, b)| (a - b * phase).norm() <= tol)
    }
}

impl fmt::Debug for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut map = f.debug_map();
        for (k, a) in self.amps.iter().enumerate() {
            if a.norm() > 1e-15 {
                map.entry(&crate::distribution::label(k, self.n), a);
            }
        }
        map.finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn e_hat() -> SingleQubitUnitary {
        SingleQubitUnitary::new([[c(0., 0.), c(1., 0.)], [c(-1., 0.), c(0., 0.)]]).unwrap()
    }

    #[test]
    fn basis_states() {
        let s = StateVector::new_basis_state(4, 0).unwrap();
        assert_eq!(s.amplitude(0), ONE);
        assert_eq!(s.norm_sqr(), 1.0);
        let s = StateVector::new_basis_state(1, 1).unwrap();
        assert_eq!(s.amplitudes(), &[ZERO, ONE]);
        let s = StateVector::new_basis_state(2, 2).unwrap();
        assert_eq!(s.probabilities().probability_of("10"), Some(1.0));
    }

    #[test]
    fn basis_state_domain_errors() {
        assert!(matches!(
            StateVector::new_basis_state(2, 4),
            Err(Error::BasisIndex { index: 4, dim: 4 })
        ));
        assert!(matches!(StateVector::new_basis_state(0, 0), Err(Error::QubitCount(0))));
        assert!(matches!(StateVector::new_basis_state(21, 0), Err(Error::QubitCount(21))));
    }

    #[test]
    fn e_hat_on_alice_flips_with_sign() {
        let s = StateVector::new_basis_state(4, 0)
            .unwrap()
            .apply_single_qubit(&e_hat(), 0)
            .unwrap();
        assert_eq!(s.amplitude(0b1000), c(-1.0, 0.0));
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pauli_y_on_zero() {
        let s = StateVector::new_basis_state(1, 0)
            .unwrap()
            .apply_single_qubit(&SingleQubitUnitary::pauli_y(), 0)
            .unwrap();
        assert_eq!(s.amplitudes(), &[ZERO, I]);
    }

    #[test]
    fn identity_leaves_state_alone() {
        let s = StateVector::from_amplitudes(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let t = s.apply_single_qubit(&SingleQubitUnitary::identity(), 0).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn qubit_out_of_range() {
        let s = StateVector::new_basis_state(2, 0).unwrap();
        assert!(matches!(
            s.apply_single_qubit(&SingleQubitUnitary::identity(), 2),
            Err(Error::QubitOutOfRange { qubit: 2, n: 2 })
        ));
    }

    #[test]
    fn controlled_gates() {
        let s11 = StateVector::new_basis_state(2, 0b11).unwrap();
        let cz = s11.apply_controlled(ControlledGate::Cz, 0, 1).unwrap();
        assert_eq!(cz.amplitude(0b11), c(-1.0, 0.0));

        let s10 = StateVector::new_basis_state(2, 0b10).unwrap();
        let cx = s10.apply_controlled(ControlledGate::Cnot, 0, 1).unwrap();
        assert_eq!(cx.amplitude(0b11), ONE);
        let cz = s10.apply_controlled(ControlledGate::Cz, 0, 1).unwrap();
        assert_eq!(cz, s10);

        // the control is qubit 1 here, which is 0 in |10⟩
        let cx = s10.apply_controlled(ControlledGate::Cnot, 1, 0).unwrap();
        assert_eq!(cx, s10);
    }

    #[test]
    fn controlled_gate_errors() {
        let s = StateVector::new_basis_state(2, 0).unwrap();
        assert!(matches!(
            s.apply_controlled(ControlledGate::Cz, 1, 1),
            Err(Error::SameQubit(1))
        ));
        assert!(s.apply_controlled(ControlledGate::Cnot, 0, 5).is_err());
    }

    #[test]
    fn non_unitary_matrix_rejected() {
        let m = [[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        assert!(matches!(SingleQubitUnitary::new(m), Err(Error::NotUnitary { .. })));
        let m = [[c(f64::NAN, 0.0), ZERO], [ZERO, ONE]];
        assert!(matches!(SingleQubitUnitary::new(m), Err(Error::NonFinite(_))));
    }

    #[test]
    fn tensor4_of_identities_is_identity() {
        let id = SingleQubitUnitary::identity();
        let op = tensor4(&id, &id, &id, &id);
        assert_eq!(op, RegisterOperator::identity(4).unwrap());
    }

    #[test]
    fn tensor4_pulls_out_i_to_the_fourth() {
        let iy = SingleQubitUnitary::pauli_y().scale(I);
        let y = SingleQubitUnitary::pauli_y();
        let lhs = tensor4(&iy, &iy, &iy, &iy);
        let rhs = tensor4(&y, &y, &y, &y);
        assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        // σ_y⊗⁴ is real and anti-diagonal
        assert_eq!(rhs.entry(0, 15), ONE);
        assert_eq!(rhs.entry(1, 14), c(-1.0, 0.0));
    }

    #[test]
    fn apply_operator_dimension_mismatch() {
        let s = StateVector::new_basis_state(2, 0).unwrap();
        let op = RegisterOperator::identity(3).unwrap();
        assert!(matches!(s.apply_operator(&op), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn probabilities_of_uniform_two_qubit_state() {
        let h = 0.5;
        let s = StateVector::from_amplitudes(vec![c(h, 0.), c(0., h), c(-h, 0.), c(0., -h)]).unwrap();
        let p = s.probabilities();
        assert!(p.probabilities().iter().all(|v| (v - 0.25).abs() < 1e-15));
        let s = StateVector::new_basis_state(4, 0b0101).unwrap();
        assert_eq!(s.probabilities().probability_of("0101"), Some(1.0));
    }

    #[test]
    fn from_amplitudes_rejects_bad_input() {
        assert!(StateVector::from_amplitudes(vec![ONE, ZERO, ZERO]).is_err());
        assert!(StateVector::from_amplitudes(vec![ONE, ONE]).is_err());
    }

    #[test]
    fn global_phase_comparison() {
        let s = StateVector::from_amplitudes(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let phase = Complex::from_polar(1.0, 0.7);
        let t = StateVector::from_amplitudes(s.amplitudes().iter().map(|z| z * phase).collect()).unwrap();
        assert!(s.equal_up_to_global_phase(&t, 1e-12));
        let u = StateVector::from_amplitudes(vec![c(0.8, 0.0), c(0.0, 0.6)]).unwrap();
        assert!(!s.equal_up_to_global_phase(&u, 1e-6));
    }
}
