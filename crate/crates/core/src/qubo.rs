//! QUBO objectives, the modal-strain-energy encoding and the Pauli-Z
//! (Ising) decomposition of a diagonal cost Hamiltonian.
//!
//! Bitstrings map to basis indices with the first variable as the most
//! significant bit, so variable `j` of an `n`-variable problem is bit
//! `n - 1 - j` of the index.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::modal::{ModalBasis, StructuralModel};
use crate::scalar::Real;

/// Largest variable count accepted by [`ising_diagonal_oracle`].
pub const ORACLE_MAX_VARS: usize = 20;
/// Largest variable count for which a full cost diagonal is materialised.
pub const DIAGONAL_MAX_VARS: usize = 24;

/// Whether `var` is set in basis index `index` of an `n`-variable register.
#[inline]
pub fn var_is_set(index: usize, var: usize, n: usize) -> bool {
    (index >> (n - 1 - var)) & 1 == 1
}

/// Basis index of a bitstring (first entry most significant).
pub fn bits_to_index(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b & 1))
}

/// Bitstring of a basis index (first entry most significant).
pub fn index_to_bits(index: usize, n: usize) -> Vec<u8> {
    (0..n).map(|v| u8::from(var_is_set(index, v, n))).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Maximize,
    Minimize,
}

/// `offset + Σ linear_p x_p + Σ_{p<q} quadratic{p,q} x_p x_q` over `x ∈ {0,1}^n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuboProblem<T> {
    n_vars: usize,
    linear: Vec<T>,
    /// Keys are `(p, q)` with `p < q`.
    quadratic: BTreeMap<(usize, usize), T>,
    offset: T,
    sense: Sense,
}

impl<T: Real> QuboProblem<T> {
    pub fn new(n_vars: usize, sense: Sense) -> Self {
        Self {
            n_vars,
            linear: vec![T::zero(); n_vars],
            quadratic: BTreeMap::new(),
            offset: T::zero(),
            sense,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn offset(&self) -> T {
        self.offset
    }

    pub fn linear(&self) -> &[T] {
        &self.linear
    }

    pub fn quadratic(&self) -> &BTreeMap<(usize, usize), T> {
        &self.quadratic
    }

    pub fn quadratic_coefficient(&self, p: usize, q: usize) -> T {
        let key = if p < q { (p, q) } else { (q, p) };
        self.quadratic.get(&key).copied().unwrap_or_else(T::zero)
    }

    pub fn add_offset(&mut self, value: T) {
        self.offset += value;
    }

    pub fn add_linear(&mut self, p: usize, value: T) {
        self.linear[p] += value;
    }

    /// Adds `value · x_p x_q`; `p == q` folds into the linear term.
    pub fn add_quadratic(&mut self, p: usize, q: usize, value: T) {
        assert!(p < self.n_vars && q < self.n_vars, "variable index out of range");
        if p == q {
            self.linear[p] += value;
            return;
        }
        let key = if p < q { (p, q) } else { (q, p) };
        *self.quadratic.entry(key).or_insert_with(T::zero) += value;
    }

    /// Objective value at a bitstring.
    pub fn evaluate(&self, x: &[u8]) -> Result<T> {
        if x.len() != self.n_vars {
            return Err(invalid(format!(
                "bitstring has length {} but the problem has {} variables",
                x.len(),
                self.n_vars
            )));
        }
        if let Some(b) = x.iter().find(|&&b| b > 1) {
            return Err(invalid(format!("bit value {b} is not 0 or 1")));
        }
        Ok(self.evaluate_index(bits_to_index(x)))
    }

    /// Objective value at basis index `index` (no validation).
    pub fn evaluate_index(&self, index: usize) -> T {
        let n = self.n_vars;
        let mut value = self.offset;
        for (p, &h) in self.linear.iter().enumerate() {
            if var_is_set(index, p, n) {
                value += h;
            }
        }
        for (&(p, q), &g) in &self.quadratic {
            if var_is_set(index, p, n) && var_is_set(index, q, n) {
                value += g;
            }
        }
        value
    }

    /// Objective value on the set of selected variables (0-based).
    pub fn evaluate_subset(&self, selected: &[usize]) -> T {
        let mut value = self.offset;
        for (i, &p) in selected.iter().enumerate() {
            value += self.linear[p];
            for &q in &selected[i + 1..] {
                value += self.quadratic_coefficient(p, q);
            }
        }
        value
    }

    /// The same objective with every coefficient negated and the sense flipped.
    pub fn negated(&self) -> Self {
        Self {
            n_vars: self.n_vars,
            linear: self.linear.iter().map(|&h| -h).collect(),
            quadratic: self.quadratic.iter().map(|(&k, &g)| (k, -g)).collect(),
            offset: -self.offset,
            sense: match self.sense {
                Sense::Maximize => Sense::Minimize,
                Sense::Minimize => Sense::Maximize,
            },
        }
    }

    /// Largest absolute linear or quadratic coefficient.
    pub fn max_abs_coefficient(&self) -> T {
        self.linear
            .iter()
            .chain(self.quadratic.values())
            .fold(T::zero(), |m, &c| m.max(c.abs()))
    }

    /// Number of non-zero quadratic couplings.
    pub fn nonzero_pairs(&self) -> usize {
        self.quadratic.values().filter(|&&g| g != T::zero()).count()
    }
}

/// Modal strain energy as a maximisation QUBO.
///
/// With `s_p = Σ_i |φ_pi|` the pair weight is `w_pq = |k_pq| s_p s_q`;
/// diagonal weights become linear terms and each unordered off-diagonal pair
/// stores `w_pq + w_qp`. Pairs with `k_pq = 0` are omitted.
pub fn build_mse_qubo<T: Real>(modal: &ModalBasis<T>, model: &StructuralModel<T>) -> Result<QuboProblem<T>> {
    let n = model.n_dof();
    if modal.mode_shapes.rows() != n || modal.n_modes() != modal.mode_shapes.cols() {
        return Err(invalid(format!(
            "modal basis is {}x{} but the model has {n} degrees of freedom",
            modal.mode_shapes.rows(),
            modal.mode_shapes.cols()
        )));
    }
    let shapes = &modal.mode_shapes;
    let participation: Vec<T> = (0..n)
        .map(|p| (0..shapes.cols()).map(|i| shapes[(p, i)].abs()).sum())
        .collect();
    let k = model.stiffness();
    let mut qubo = QuboProblem::new(n, Sense::Maximize);
    for p in 0..n {
        qubo.linear[p] = k[(p, p)].abs() * participation[p] * participation[p];
        for q in (p + 1)..n {
            let kpq = k[(p, q)];
            let kqp = k[(q, p)];
            if kpq == T::zero() && kqp == T::zero() {
                continue;
            }
            let w = (kpq.abs() + kqp.abs()) * participation[p] * participation[q];
            qubo.quadratic.insert((p, q), w);
        }
    }
    Ok(qubo)
}

/// Penalty weight used when none is supplied: `2 · max|coefficient| · n_s`.
pub fn default_penalty_weight<T: Real>(qubo: &QuboProblem<T>, n_sensors: usize) -> T {
    T::lit(2.0) * qubo.max_abs_coefficient() * T::lit(n_sensors as f64)
}

/// Minimisation QUBO `−f + α(Σ x_p − n_s)²` for a maximisation objective `f`.
///
/// A minimisation input is penalised without negation.
pub fn add_cardinality_penalty<T: Real>(qubo: &QuboProblem<T>, n_sensors: usize, alpha: T) -> Result<QuboProblem<T>> {
    if n_sensors > qubo.n_vars() {
        return Err(invalid(format!(
            "cannot place {n_sensors} sensors on {} locations",
            qubo.n_vars()
        )));
    }
    if !(alpha > T::zero()) {
        return Err(invalid("penalty weight must be positive"));
    }
    let mut out = match qubo.sense() {
        Sense::Maximize => qubo.negated(),
        Sense::Minimize => qubo.clone(),
    };
    let ns = T::lit(n_sensors as f64);
    let two = T::lit(2.0);
    out.offset += alpha * ns * ns;
    for p in 0..out.n_vars {
        out.linear[p] += alpha * (T::one() - two * ns);
        for q in (p + 1)..out.n_vars {
            out.add_quadratic(p, q, two * alpha);
        }
    }
    Ok(out)
}

/// `a·I + Σ_j b_j Z_j + Σ_{j<k} c{j,k} Z_j Z_k`.
///
/// `c{j,k}` is the full coefficient of `Z_j Z_k` (stored once per unordered
/// pair), so a coupling `g·x_j x_k` contributes `g/4`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsingCoefficients<T> {
    pub n_vars: usize,
    pub a: T,
    pub b: Vec<T>,
    pub c: BTreeMap<(usize, usize), T>,
}

impl<T: Real> IsingCoefficients<T> {
    /// Energy of basis state `index`, optionally without the constant `a`.
    pub fn energy(&self, index: usize, include_constant: bool) -> T {
        let n = self.n_vars;
        let z = |j: usize| if var_is_set(index, j, n) { -T::one() } else { T::one() };
        let mut e = if include_constant { self.a } else { T::zero() };
        for (j, &bj) in self.b.iter().enumerate() {
            e += bj * z(j);
        }
        for (&(j, k), &cjk) in &self.c {
            e += cjk * z(j) * z(k);
        }
        e
    }

    /// Diagonal of the operator over all `2^n` basis states.
    pub fn diagonal(&self, include_constant: bool) -> Result<Vec<T>> {
        if self.n_vars > DIAGONAL_MAX_VARS {
            return Err(Error::ResourceLimit(format!(
                "{} variables exceed the {DIAGONAL_MAX_VARS}-qubit diagonal limit",
                self.n_vars
            )));
        }
        Ok((0..1usize << self.n_vars)
            .map(|m| self.energy(m, include_constant))
            .collect())
    }

    /// Every coefficient multiplied by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            n_vars: self.n_vars,
            a: self.a * factor,
            b: self.b.iter().map(|&x| x * factor).collect(),
            c: self.c.iter().map(|(&k, &v)| (k, v * factor)).collect(),
        }
    }

    pub fn nonzero_linear(&self) -> usize {
        self.b.iter().filter(|&&x| x != T::zero()).count()
    }

    pub fn nonzero_pairs(&self) -> usize {
        self.c.values().filter(|&&x| x != T::zero()).count()
    }
}

/// Boolean-to-Pauli translation: `x_p → (I − Z_p)/2`,
/// `x_p x_q → (I − Z_p − Z_q + Z_p Z_q)/4`.
pub fn qubo_to_ising<T: Real>(qubo: &QuboProblem<T>) -> Result<IsingCoefficients<T>> {
    if qubo.sense() != Sense::Minimize {
        return Err(Error::ContractViolation(
            "Ising encoding expects a minimisation QUBO; negate maximisation objectives first".into(),
        ));
    }
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let mut a = qubo.offset();
    let mut b = vec![T::zero(); qubo.n_vars()];
    let mut c = BTreeMap::new();
    for (p, &h) in qubo.linear().iter().enumerate() {
        a += h * half;
        b[p] -= h * half;
    }
    for (&(p, q), &g) in qubo.quadratic() {
        a += g * quarter;
        b[p] -= g * quarter;
        b[q] -= g * quarter;
        *c.entry((p, q)).or_insert_with(T::zero) += g * quarter;
    }
    Ok(IsingCoefficients {
        n_vars: qubo.n_vars(),
        a,
        b,
        c,
    })
}

/// Brute-force diagonal of the Ising operator, constant included.
///
/// Entry `m` equals the source QUBO evaluated at the bitstring of `m`.
pub fn ising_diagonal_oracle<T: Real>(ising: &IsingCoefficients<T>) -> Result<Vec<T>> {
    if ising.n_vars > ORACLE_MAX_VARS {
        return Err(Error::ResourceLimit(format!(
            "{} variables exceed the {ORACLE_MAX_VARS}-variable oracle limit",
            ising.n_vars
        )));
    }
    ising.diagonal(true)
}
