//! Explicit `2^n × 2^n` operators for checking the in-place kernels.
//!
//! Gates are padded with identities through Kronecker products (or embedded
//! on arbitrary qubits) and consolidated by left multiplication, so a circuit
//! `U_1 … U_M` becomes the single matrix `U_M ⋯ U_1`. Only small registers
//! are accepted.

use num_complex::Complex;

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;
use crate::statevec::{GateMatrix, StateVector};

/// Largest register [`consolidate`] will materialise.
pub const ORACLE_MAX_QUBITS: usize = 6;

/// Square dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> DenseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_row_major(dim: usize, data: Vec<Complex<T>>) -> Self {
        assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn from_diagonal(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * diag.len() + i] = Complex::new(d, T::zero());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.dim + c]
    }

    pub fn scale(&self, factor: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.dim, other.dim);
        let d = a * b;
        let mut out = Self::zeros(d);
        for i in 0..a {
            for j in 0..a {
                let x = self.data[i * a + j];
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * d + j * b + l] = x * other.data[k * b + l];
                    }
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .fold(Complex::new(T::zero(), T::zero()), |acc, (&a, &b)| acc + a * b)
            })
            .collect()
    }

    pub fn apply(&self, state: &StateVector<T>) -> Vec<Complex<T>> {
        self.mul_vec(state.amplitudes())
    }

    /// Largest entrywise distance to `other`.
    pub fn max_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).norm()))
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.adjoint().matmul(self).max_diff(&Self::identity(self.dim)) <= tol
    }

    fn one_norm(&self) -> T {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self.get(i, j).norm()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// Matrix exponential by scaling and squaring of a Taylor series.
    pub fn expm(&self) -> Self {
        let norm = self.one_norm();
        let mut squarings = 0u32;
        let mut scaled_norm = norm;
        while scaled_norm > T::lit(0.25) {
            scaled_norm *= T::lit(0.5);
            squarings += 1;
        }
        let a = self.scale(Complex::new(T::lit(0.5).powi(squarings as i32), T::zero()));
        let mut result = Self::identity(self.dim);
        let mut term = Self::identity(self.dim);
        for k in 1..=30 {
            term = term.matmul(&a).scale(Complex::new(T::lit(k as f64).recip(), T::zero()));
            result = result.add(&term);
            if term.one_norm() < T::epsilon() * T::lit(1e-3) {
                break;
            }
        }
        for _ in 0..squarings {
            result = result.matmul(&result);
        }
        result
    }
}

impl<T: Real> From<&GateMatrix<T>> for DenseMatrix<T> {
    fn from(g: &GateMatrix<T>) -> Self {
        Self::from_row_major(g.dim(), g.entries().to_vec())
    }
}

/// Toffoli (CCX) with the first two qubits as controls.
pub fn toffoli<T: Real>() -> DenseMatrix<T> {
    let mut m = DenseMatrix::identity(8);
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    m.data[6 * 8 + 6] = zero;
    m.data[7 * 8 + 7] = zero;
    m.data[6 * 8 + 7] = one;
    m.data[7 * 8 + 6] = one;
    m
}

/// A gate placed on specific qubits; the first listed qubit is the most
/// significant index bit of `matrix`.
#[derive(Debug, Clone)]
pub struct PlacedGate<T> {
    pub matrix: DenseMatrix<T>,
    pub qubits: Vec<usize>,
}

impl<T: Real> PlacedGate<T> {
    pub fn single(gate: &GateMatrix<T>, qubit: usize) -> Self {
        Self {
            matrix: gate.into(),
            qubits: vec![qubit],
        }
    }

    pub fn two(gate: &GateMatrix<T>, q1: usize, q2: usize) -> Self {
        Self {
            matrix: gate.into(),
            qubits: vec![q1, q2],
        }
    }
}

/// Lifts a `2^k` gate on `qubits` to the full `2^n` register.
pub fn embed<T: Real>(gate: &DenseMatrix<T>, qubits: &[usize], n: usize) -> Result<DenseMatrix<T>> {
    let k = qubits.len();
    if gate.dim() != 1 << k {
        return Err(invalid(format!("{}x{} gate placed on {k} qubits", gate.dim(), gate.dim())));
    }
    if qubits.iter().any(|&q| q >= n) {
        return Err(invalid("gate placed outside the register"));
    }
    for (i, q) in qubits.iter().enumerate() {
        if qubits[i + 1..].contains(q) {
            return Err(invalid(format!("gate placed on qubit {q} twice")));
        }
    }
    let dim = 1usize << n;
    let mask: usize = qubits.iter().map(|&q| 1 << (n - 1 - q)).sum();
    let sub = |m: usize| {
        qubits
            .iter()
            .fold(0usize, |acc, &q| (acc << 1) | ((m >> (n - 1 - q)) & 1))
    };
    let mut out = DenseMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            if r & !mask == c & !mask {
                out.data[r * dim + c] = gate.get(sub(r), sub(c));
            }
        }
    }
    Ok(out)
}

/// `I ⊗ … ⊗ P ⊗ … ⊗ I` with `P` on `qubit`.
pub fn padded<T: Real>(op: &GateMatrix<T>, qubit: usize, n: usize) -> DenseMatrix<T> {
    (0..n).fold(DenseMatrix::identity(1), |acc, q| {
        let factor = if q == qubit {
            DenseMatrix::from(op)
        } else {
            DenseMatrix::identity(2)
        };
        acc.kron(&factor)
    })
}

/// Product `U_M ⋯ U_1` of a gate list applied first to last.
pub fn consolidate<T: Real>(n: usize, gates: &[PlacedGate<T>]) -> Result<DenseMatrix<T>> {
    if n == 0 || n > ORACLE_MAX_QUBITS {
        return Err(Error::ResourceLimit(format!(
            "dense oracle supports 1..={ORACLE_MAX_QUBITS} qubits, got {n}"
        )));
    }
    gates.iter().try_fold(DenseMatrix::identity(1 << n), |acc, g| {
        Ok(embed(&g.matrix, &g.qubits, n)?.matmul(&acc))
    })
}
