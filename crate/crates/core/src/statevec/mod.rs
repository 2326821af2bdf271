//! Exact statevector simulation.
//!
//! Qubit `0` is the most significant bit of a basis index, so the amplitude
//! of `|x₀x₁…x_{n−1}⟩` sits at index `Σ x_j 2^{n−1−j}`. All kernels update
//! amplitudes in place without forming `2^n × 2^n` operators.

mod gates;
mod subspace;

pub use gates::GateMatrix;
pub use subspace::{SubspaceState, WeightSubspace};

use num_complex::Complex;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::qubo::index_to_bits;
use crate::scalar::Real;

/// Largest register the simulator accepts.
pub const MAX_QUBITS: usize = 24;

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "{n} qubits is outside the supported range 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Binomial coefficient as a float (exact for the sizes simulated here).
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Draws `shots` i.i.d. indices from a discrete distribution.
pub(crate) fn sample_from_weights(weights: &[f64], shots: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = WeightedIndex::new(weights).expect("state has positive total probability");
    (0..shots).map(|_| dist.sample(&mut rng)).collect()
}

/// `2^n` complex amplitudes of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n_qubits: usize,
    amps: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// Computational basis state `|index⟩`.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        if index >= 1 << n_qubits {
            return Err(invalid(format!("basis index {index} out of range for {n_qubits} qubits")));
        }
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n_qubits];
        amps[index] = Complex::new(T::one(), T::zero());
        Ok(Self { n_qubits, amps })
    }

    /// Hadamard on every qubit of `|0…0⟩`: all amplitudes `2^{−n/2}`.
    pub fn plus_state(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        let dim = 1usize << n_qubits;
        let a = T::lit(dim as f64).sqrt().recip();
        Ok(Self {
            n_qubits,
            amps: vec![Complex::new(a, T::zero()); dim],
        })
    }

    /// Equal superposition of every basis state with Hamming weight `ones`.
    pub fn dicke(n_qubits: usize, ones: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        if ones > n_qubits {
            return Err(invalid(format!("Dicke weight {ones} exceeds {n_qubits} qubits")));
        }
        let a = T::lit(binomial(n_qubits, ones)).sqrt().recip();
        let amps = (0..1usize << n_qubits)
            .map(|m| {
                if m.count_ones() as usize == ones {
                    Complex::new(a, T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            })
            .collect();
        Ok(Self { n_qubits, amps })
    }

    /// Wraps and normalises arbitrary amplitudes (length must be `2^n`).
    pub fn from_amplitudes(amps: Vec<Complex<T>>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(invalid(format!("{len} amplitudes is not a power of two ≥ 2")));
        }
        let n_qubits = len.trailing_zeros() as usize;
        check_qubits(n_qubits)?;
        let norm: T = amps.iter().map(|c| c.norm_sqr()).sum::<T>().sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(invalid("amplitudes have zero or non-finite norm"));
        }
        let amps = amps.into_iter().map(|c| c / norm).collect();
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amps.iter().map(|c| c.norm_sqr()).collect()
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Total probability on basis states whose Hamming weight is not `weight`.
    pub fn probability_outside_weight(&self, weight: usize) -> T {
        self.amps
            .iter()
            .enumerate()
            .filter(|(m, _)| m.count_ones() as usize != weight)
            .map(|(_, c)| c.norm_sqr())
            .sum()
    }

    fn stride(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit >= self.n_qubits {
            return Err(invalid(format!(
                "qubit {qubit} out of range for a {}-qubit register",
                self.n_qubits
            )));
        }
        Ok(())
    }

    /// `(I ⊗ … ⊗ U ⊗ … ⊗ I)|ψ⟩` with `U` on `qubit`.
    pub fn apply_single_qubit_gate(&mut self, gate: &GateMatrix<T>, qubit: usize) -> Result<()> {
        if gate.dim() != 2 {
            return Err(invalid("single-qubit gate must be 2x2"));
        }
        self.check_qubit(qubit)?;
        let [u00, u01, u10, u11] = [gate.get(0, 0), gate.get(0, 1), gate.get(1, 0), gate.get(1, 1)];
        let stride = self.stride(qubit);
        for block in self.amps.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = u00 * x + u01 * y;
                *b = u10 * x + u11 * y;
            }
        }
        Ok(())
    }

    /// Applies a 4×4 gate whose row/column index is `2·bit(q1) + bit(q2)`.
    pub fn apply_two_qubit_gate(&mut self, gate: &GateMatrix<T>, q1: usize, q2: usize) -> Result<()> {
        if gate.dim() != 4 {
            return Err(invalid("two-qubit gate must be 4x4"));
        }
        self.check_qubit(q1)?;
        self.check_qubit(q2)?;
        if q1 == q2 {
            return Err(invalid(format!("two-qubit gate applied to qubit {q1} twice")));
        }
        let s1 = self.stride(q1);
        let s2 = self.stride(q2);
        let u = gate.entries();
        for i in 0..self.amps.len() {
            if i & (s1 | s2) != 0 {
                continue;
            }
            let idx = [i, i | s2, i | s1, i | s1 | s2];
            let v = idx.map(|k| self.amps[k]);
            for (r, &k) in idx.iter().enumerate() {
                let row = &u[4 * r..4 * r + 4];
                self.amps[k] = row[0] * v[0] + row[1] * v[1] + row[2] * v[2] + row[3] * v[3];
            }
        }
        Ok(())
    }

    /// `amp_m ← amp_m · e^{−iγ d_m}` for a diagonal Hamiltonian `d`.
    pub fn apply_cost_phase(&mut self, diag: &[T], gamma: T) -> Result<()> {
        if diag.len() != self.amps.len() {
            return Err(invalid(format!(
                "diagonal has {} entries but the state has {}",
                diag.len(),
                self.amps.len()
            )));
        }
        phase_kernel(&mut self.amps, diag, gamma);
        Ok(())
    }

    /// `R_x(2β)` on every qubit, i.e. `e^{−iβ Σ_j X_j}`.
    ///
    /// The gates commute, so qubits whose pairs fit inside one cache-sized
    /// block are applied block by block and the rest in full sweeps.
    pub fn apply_x_mixer_layer(&mut self, beta: T) {
        let (s, c) = beta.sin_cos();
        let block = (1usize << X_MIXER_BLOCK_QUBITS).min(self.amps.len());
        let strides: Vec<usize> = (0..self.n_qubits).map(|q| self.stride(q)).collect();
        for chunk in self.amps.chunks_exact_mut(block) {
            for &stride in strides.iter().filter(|&&st| 2 * st <= block) {
                rx_sweep(chunk, stride, c, s);
            }
        }
        for &stride in strides.iter().filter(|&&st| 2 * st > block) {
            rx_sweep(&mut self.amps, stride, c, s);
        }
    }

    /// Pairwise `R^{XY}_{km}(β)` on `(k, m)`, `k < m`, in lexicographic order.
    pub fn apply_xy_mixer_layer(&mut self, beta: T) {
        let (s, c) = (beta * T::lit(0.5)).sin_cos();
        for k in 0..self.n_qubits {
            for m in (k + 1)..self.n_qubits {
                self.xy_pair_kernel(k, m, c, s);
            }
        }
    }

    /// One `R^{XY}_{km}(β)` gate.
    pub fn apply_xy_pair(&mut self, k: usize, m: usize, beta: T) -> Result<()> {
        self.check_qubit(k)?;
        self.check_qubit(m)?;
        if k == m {
            return Err(invalid("XY gate needs two distinct qubits"));
        }
        let (s, c) = (beta * T::lit(0.5)).sin_cos();
        self.xy_pair_kernel(k, m, c, s);
        Ok(())
    }

    fn xy_pair_kernel(&mut self, k: usize, m: usize, c: T, s: T) {
        let sk = self.stride(k);
        let sm = self.stride(m);
        for i in 0..self.amps.len() {
            // i has bit k = 0 and bit m = 1; its partner swaps the two bits
            if i & sk != 0 || i & sm == 0 {
                continue;
            }
            let j = i ^ sk ^ sm;
            let (x, y) = (self.amps[i], self.amps[j]);
            self.amps[i] = xy_rotate(x, y, c, s);
            self.amps[j] = xy_rotate(y, x, c, s);
        }
    }

    /// `Σ_m |amp_m|² d_m`.
    pub fn expectation_of_diagonal(&self, diag: &[T]) -> Result<T> {
        if diag.len() != self.amps.len() {
            return Err(invalid(format!(
                "diagonal has {} entries but the state has {}",
                diag.len(),
                self.amps.len()
            )));
        }
        Ok(self.amps.iter().zip(diag).map(|(c, &d)| c.norm_sqr() * d).sum())
    }

    /// Basis indices of `shots` independent measurements. The state is not
    /// collapsed; the same seed reproduces the same draws.
    pub fn sample_indices(&self, shots: usize, seed: u64) -> Vec<usize> {
        let weights: Vec<f64> = self.amps.iter().map(|c| c.norm_sqr().as_f64()).collect();
        sample_from_weights(&weights, shots, seed)
    }

    /// Measured bitstrings, first qubit first.
    pub fn sample_bitstrings(&self, shots: usize, seed: u64) -> Vec<Vec<u8>> {
        self.sample_indices(shots, seed)
            .into_iter()
            .map(|m| index_to_bits(m, self.n_qubits))
            .collect()
    }
}

#[inline]
pub(crate) fn xy_rotate<T: Real>(x: Complex<T>, y: Complex<T>, c: T, s: T) -> Complex<T> {
    // c·x + i·s·y
    Complex::new(c * x.re - s * y.im, c * x.im + s * y.re)
}

/// Amplitudes per cache block in [`StateVector::apply_x_mixer_layer`].
const X_MIXER_BLOCK_QUBITS: usize = 12;

fn rx_sweep<T: Real>(amps: &mut [Complex<T>], stride: usize, c: T, s: T) {
    for block in amps.chunks_exact_mut(2 * stride) {
        let (lo, hi) = block.split_at_mut(stride);
        for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
            let (x, y) = (*a, *b);
            // −i s y = (s·y.im, −s·y.re)
            *a = Complex::new(c * x.re + s * y.im, c * x.im - s * y.re);
            *b = Complex::new(c * y.re + s * x.im, c * y.im - s * x.re);
        }
    }
}

pub(crate) fn phase_kernel<T: Real>(amps: &mut [Complex<T>], diag: &[T], gamma: T) {
    if gamma == T::zero() {
        return;
    }
    for (a, &d) in amps.iter_mut().zip(diag) {
        let (s, c) = (gamma * d).sin_cos();
        *a = Complex::new(a.re * c + a.im * s, a.im * c - a.re * s);
    }
}
