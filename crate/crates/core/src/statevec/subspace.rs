//! Simulation restricted to a fixed Hamming-weight subspace.
//!
//! A Dicke initial state evolved by diagonal phases and XY partial swaps
//! never leaves its weight sector, so the `C(n, k)` amplitudes of that
//! sector carry the whole state. Results are identical to the full-register
//! kernels; only the storage differs.

use std::sync::Arc;

use num_complex::Complex;

use super::{binomial, check_qubits, phase_kernel, sample_from_weights, xy_rotate, StateVector};
use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Basis states of weight `k` and the partner tables of every XY pair.
#[derive(Debug)]
pub struct WeightSubspace {
    n_qubits: usize,
    weight: usize,
    /// Full-register basis indices, ascending.
    states: Vec<usize>,
    /// For each pair `(k, m)` in lexicographic order: positions `(i, j)` with
    /// `states[i]` holding `|01⟩` on `(k, m)` and `states[j]` holding `|10⟩`.
    pair_partners: Vec<Vec<(u32, u32)>>,
}

impl WeightSubspace {
    pub fn new(n_qubits: usize, weight: usize) -> Result<Arc<Self>> {
        check_qubits(n_qubits)?;
        if weight > n_qubits {
            return Err(invalid(format!("weight {weight} exceeds {n_qubits} qubits")));
        }
        let states: Vec<usize> = (0..1usize << n_qubits)
            .filter(|m| m.count_ones() as usize == weight)
            .collect();
        debug_assert_eq!(states.len() as f64, binomial(n_qubits, weight));
        let stride = |q: usize| 1usize << (n_qubits - 1 - q);
        let mut pair_partners = Vec::with_capacity(n_qubits * n_qubits.saturating_sub(1) / 2);
        for k in 0..n_qubits {
            for m in (k + 1)..n_qubits {
                let (sk, sm) = (stride(k), stride(m));
                let partners = states
                    .iter()
                    .enumerate()
                    .filter(|(_, &s)| s & sk == 0 && s & sm != 0)
                    .map(|(i, &s)| {
                        let j = states
                            .binary_search(&(s ^ sk ^ sm))
                            .expect("swapping two bits preserves weight");
                        (i as u32, j as u32)
                    })
                    .collect();
                pair_partners.push(partners);
            }
        }
        Ok(Arc::new(Self {
            n_qubits,
            weight,
            states,
            pair_partners,
        }))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// Full-register basis indices of the sector, ascending.
    pub fn states(&self) -> &[usize] {
        &self.states
    }

    /// Restricts a full-register diagonal to this sector.
    pub fn restrict<T: Copy>(&self, full: &[T]) -> Vec<T> {
        self.states.iter().map(|&s| full[s]).collect()
    }
}

/// Amplitudes over a [`WeightSubspace`].
#[derive(Debug, Clone)]
pub struct SubspaceState<T> {
    space: Arc<WeightSubspace>,
    amps: Vec<Complex<T>>,
}

impl<T: Real> SubspaceState<T> {
    /// Uniform superposition over the sector (the Dicke state).
    pub fn dicke(space: Arc<WeightSubspace>) -> Self {
        let a = T::lit(space.dim() as f64).sqrt().recip();
        let amps = vec![Complex::new(a, T::zero()); space.dim()];
        Self { space, amps }
    }

    pub fn space(&self) -> &Arc<WeightSubspace> {
        &self.space
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

    /// Phase by a diagonal already restricted to the sector.
    pub fn apply_cost_phase(&mut self, diag: &[T], gamma: T) -> Result<()> {
        if diag.len() != self.amps.len() {
            return Err(invalid(format!(
                "sector diagonal has {} entries, expected {}",
                diag.len(),
                self.amps.len()
            )));
        }
        phase_kernel(&mut self.amps, diag, gamma);
        Ok(())
    }

    /// Same gate sequence as [`StateVector::apply_xy_mixer_layer`].
    pub fn apply_xy_mixer_layer(&mut self, beta: T) {
        let (s, c) = (beta * T::lit(0.5)).sin_cos();
        for partners in &self.space.pair_partners {
            for &(i, j) in partners {
                let (i, j) = (i as usize, j as usize);
                let (x, y) = (self.amps[i], self.amps[j]);
                self.amps[i] = xy_rotate(x, y, c, s);
                self.amps[j] = xy_rotate(y, x, c, s);
            }
        }
    }

    /// Embeds the sector amplitudes into a full register.
    pub fn to_statevector(&self) -> StateVector<T> {
        let mut full = vec![Complex::new(T::zero(), T::zero()); 1 << self.space.n_qubits];
        for (&s, &a) in self.space.states.iter().zip(&self.amps) {
            full[s] = a;
        }
        StateVector::from_amplitudes(full).expect("sector state is normalised")
    }

    /// Measurement draws as full-register basis indices.
    pub fn sample_indices(&self, shots: usize, seed: u64) -> Vec<usize> {
        let weights: Vec<f64> = self.amps.iter().map(|c| c.norm_sqr().as_f64()).collect();
        sample_from_weights(&weights, shots, seed)
            .into_iter()
            .map(|i| self.space.states[i])
            .collect()
    }
}
