use num_complex::Complex;

use crate::scalar::Real;

/// Row-major 2×2 or 4×4 complex gate matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

impl<T: Real> GateMatrix<T> {
    /// Panics unless `entries` is a 2×2 or 4×4 row-major matrix.
    pub fn new(dim: usize, entries: Vec<Complex<T>>) -> Self {
        assert!(dim == 2 || dim == 4, "gates act on one or two qubits");
        assert_eq!(entries.len(), dim * dim);
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    pub fn identity() -> Self {
        Self::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
    }

    pub fn pauli_x() -> Self {
        Self::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
    }

    pub fn pauli_y() -> Self {
        Self::new(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
    }

    pub fn pauli_z() -> Self {
        Self::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)])
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::new(2, vec![c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)])
    }

    pub fn rx(theta: T) -> Self {
        let (s, co) = (theta * T::lit(0.5)).sin_cos();
        let z = T::zero();
        Self::new(
            2,
            vec![Complex::new(co, z), Complex::new(z, -s), Complex::new(z, -s), Complex::new(co, z)],
        )
    }

    pub fn ry(theta: T) -> Self {
        let (s, co) = (theta * T::lit(0.5)).sin_cos();
        let z = T::zero();
        Self::new(
            2,
            vec![Complex::new(co, z), Complex::new(-s, z), Complex::new(s, z), Complex::new(co, z)],
        )
    }

    pub fn rz(theta: T) -> Self {
        let half = theta * T::lit(0.5);
        let z = Complex::new(T::zero(), T::zero());
        Self::new(
            2,
            vec![Complex::from_polar(T::one(), -half), z, z, Complex::from_polar(T::one(), half)],
        )
    }

    /// Controlled-NOT with the first qubit as control.
    pub fn cx() -> Self {
        let mut e = vec![c(0.0, 0.0); 16];
        e[0] = c(1.0, 0.0);
        e[5] = c(1.0, 0.0);
        e[11] = c(1.0, 0.0);
        e[14] = c(1.0, 0.0);
        Self::new(4, e)
    }

    /// Partial swap on `{|01⟩, |10⟩}` with `cos(β/2)` and `i·sin(β/2)`.
    pub fn xy_pair(beta: T) -> Self {
        let (s, co) = (beta * T::lit(0.5)).sin_cos();
        let mut e = vec![Complex::new(T::zero(), T::zero()); 16];
        e[0] = Complex::new(T::one(), T::zero());
        e[5] = Complex::new(co, T::zero());
        e[6] = Complex::new(T::zero(), s);
        e[9] = Complex::new(T::zero(), s);
        e[10] = Complex::new(co, T::zero());
        e[15] = Complex::new(T::one(), T::zero());
        Self::new(4, e)
    }

    /// Whether `U†U = I` entrywise within `tol`.
    pub fn is_unitary(&self, tol: T) -> bool {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..d {
                    acc += self.get(k, i).conj() * self.get(k, j);
                }
                let target = if i == j { T::one() } else { T::zero() };
                if (acc - Complex::new(target, T::zero())).norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}
