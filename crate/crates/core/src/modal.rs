//! Structural models and their undamped modal analysis.
//!
//! A [`StructuralModel`] carries a symmetric stiffness matrix and a lumped
//! (diagonal) mass matrix in SI units. [`solve_modal`] returns mass-normalised
//! mode shapes of `K φ = ω² M φ`.

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::linalg::{symmetric_eigen, Matrix};
use crate::scalar::Real;

/// Stiffness/mass description of a discretised structure.
#[derive(Debug, Clone, Serialize)]
pub struct StructuralModel<T> {
    n_dof: usize,
    stiffness: Matrix<T>,
    mass_diagonal: Vec<T>,
    dof_labels: Vec<String>,
}

impl<T: Real> StructuralModel<T> {
    /// Validates symmetry (relative 1e-9) and strictly positive masses.
    ///
    /// Positive definiteness is only checked by [`solve_modal`].
    pub fn new(stiffness: Matrix<T>, mass_diagonal: Vec<T>, dof_labels: Vec<String>) -> Result<Self> {
        let n = mass_diagonal.len();
        if n == 0 {
            return Err(invalid("model needs at least one degree of freedom"));
        }
        if stiffness.rows() != n || stiffness.cols() != n {
            return Err(invalid(format!(
                "stiffness is {}x{} but there are {n} masses",
                stiffness.rows(),
                stiffness.cols()
            )));
        }
        if dof_labels.len() != n {
            return Err(invalid(format!("{} labels for {n} degrees of freedom", dof_labels.len())));
        }
        if let Some(i) = mass_diagonal.iter().position(|&m| !(m > T::zero()) || !m.is_finite()) {
            return Err(invalid(format!("mass entry {i} is not strictly positive")));
        }
        let asym = stiffness.asymmetry();
        let tol = T::lit(1e-9) * stiffness.max_abs();
        if !(asym <= tol) {
            return Err(invalid(format!("stiffness is not symmetric (max |Kij - Kji| = {asym})")));
        }
        Ok(Self {
            n_dof: n,
            stiffness,
            mass_diagonal,
            dof_labels,
        })
    }

    pub fn n_dof(&self) -> usize {
        self.n_dof
    }

    pub fn stiffness(&self) -> &Matrix<T> {
        &self.stiffness
    }

    pub fn mass_diagonal(&self) -> &[T] {
        &self.mass_diagonal
    }

    pub fn dof_labels(&self) -> &[String] {
        &self.dof_labels
    }

    /// Same model with every stiffness entry multiplied by `factor`.
    pub fn with_scaled_stiffness(&self, factor: T) -> Self {
        Self {
            stiffness: self.stiffness.scaled(factor),
            ..self.clone()
        }
    }

    /// Same model with every mass multiplied by `factor`.
    pub fn with_scaled_mass(&self, factor: T) -> Self {
        Self {
            mass_diagonal: self.mass_diagonal.iter().map(|&m| m * factor).collect(),
            ..self.clone()
        }
    }
}

/// Natural frequencies and mass-normalised mode shapes.
#[derive(Debug, Clone, Serialize)]
pub struct ModalBasis<T> {
    /// Squared circular frequencies in rad²/s², ascending.
    pub frequencies_sq: Vec<T>,
    /// Column `i` is the mode shape paired with `frequencies_sq[i]`.
    pub mode_shapes: Matrix<T>,
}

impl<T: Real> ModalBasis<T> {
    pub fn n_modes(&self) -> usize {
        self.frequencies_sq.len()
    }

    pub fn mode(&self, i: usize) -> Vec<T> {
        self.mode_shapes.column(i)
    }

    /// `‖Kφ − ω²Mφ‖ / ‖Kφ‖` for mode `i`.
    pub fn residual(&self, model: &StructuralModel<T>, i: usize) -> T {
        let phi = self.mode(i);
        let k_phi = model.stiffness().mul_vec(&phi);
        let w2 = self.frequencies_sq[i];
        let mut num = T::zero();
        let mut den = T::zero();
        for (p, &kp) in k_phi.iter().enumerate() {
            let r = kp - w2 * model.mass_diagonal()[p] * phi[p];
            num += r * r;
            den += kp * kp;
        }
        num.sqrt() / den.sqrt().max(T::min_positive_value())
    }

    /// `φ_iᵀ M φ_j`.
    pub fn mass_product(&self, model: &StructuralModel<T>, i: usize, j: usize) -> T {
        let a = self.mode(i);
        let b = self.mode(j);
        a.iter()
            .zip(&b)
            .zip(model.mass_diagonal())
            .map(|((&x, &y), &m)| x * m * y)
            .sum()
    }
}

/// Shear building with `n_stories` identical stories (direct stiffness method).
///
/// Story `i` couples to the story below through `story_stiffness`; the top
/// story has a single spring below it.
pub fn build_shear_building<T: Real>(n_stories: usize, story_stiffness: T, story_mass: T) -> Result<StructuralModel<T>> {
    if n_stories == 0 {
        return Err(invalid("shear building needs at least one story"));
    }
    if !(story_stiffness > T::zero()) || !(story_mass > T::zero()) {
        return Err(invalid("story stiffness and mass must be positive"));
    }
    let n = n_stories;
    let k = story_stiffness;
    let mut stiffness = Matrix::zeros(n, n);
    for i in 0..n {
        stiffness[(i, i)] = if i + 1 < n { k + k } else { k };
        if i > 0 {
            stiffness[(i, i - 1)] = -k;
            stiffness[(i - 1, i)] = -k;
        }
    }
    let labels = (1..=n).map(|i| format!("story {i}")).collect();
    StructuralModel::new(stiffness, vec![story_mass; n], labels)
}

/// Pin-jointed plane truss with lumped masses.
#[derive(Debug, Clone)]
pub struct PlaneTruss<T> {
    /// Node coordinates (x, y) in metres.
    pub nodes: Vec<(T, T)>,
    /// Member end node indices.
    pub members: Vec<(usize, usize)>,
    pub youngs_modulus: T,
    pub area: T,
    pub density: T,
    /// Restrained global DOF indices (`2·node` horizontal, `2·node + 1` vertical).
    pub restrained: Vec<usize>,
}

impl<T: Real> PlaneTruss<T> {
    pub fn member_length(&self, member: usize) -> T {
        let (a, b) = self.members[member];
        let (xa, ya) = self.nodes[a];
        let (xb, yb) = self.nodes[b];
        (xb - xa).hypot(yb - ya)
    }

    pub fn total_dofs(&self) -> usize {
        2 * self.nodes.len()
    }

    /// Assembles the unconstrained stiffness matrix and lumped mass vector.
    pub fn assemble(&self) -> (Matrix<T>, Vec<T>) {
        let n = self.total_dofs();
        let mut k = Matrix::zeros(n, n);
        let mut m = vec![T::zero(); n];
        let half = T::lit(0.5);
        for (idx, &(a, b)) in self.members.iter().enumerate() {
            let len = self.member_length(idx);
            let (xa, ya) = self.nodes[a];
            let (xb, yb) = self.nodes[b];
            let c = (xb - xa) / len;
            let s = (yb - ya) / len;
            let axial = self.youngs_modulus * self.area / len;
            let t = [-c, -s, c, s];
            let dofs = [2 * a, 2 * a + 1, 2 * b, 2 * b + 1];
            for i in 0..4 {
                for j in 0..4 {
                    k[(dofs[i], dofs[j])] += axial * t[i] * t[j];
                }
            }
            let lump = self.density * self.area * len * half;
            for &d in &dofs {
                m[d] += lump;
            }
        }
        (k, m)
    }

    /// Free DOF indices in global order.
    pub fn free_dofs(&self) -> Vec<usize> {
        (0..self.total_dofs())
            .filter(|d| !self.restrained.contains(d))
            .collect()
    }

    /// Model reduced to the free DOFs, ordered by node index then x before y.
    pub fn to_model(&self) -> Result<StructuralModel<T>> {
        let (k, m) = self.assemble();
        let free = self.free_dofs();
        let n = free.len();
        let mut kr = Matrix::zeros(n, n);
        for (i, &gi) in free.iter().enumerate() {
            for (j, &gj) in free.iter().enumerate() {
                kr[(i, j)] = k[(gi, gj)];
            }
        }
        let mr = free.iter().map(|&g| m[g]).collect();
        let labels = free
            .iter()
            .map(|&g| {
                let dir = if g % 2 == 0 { "horizontal" } else { "vertical" };
                format!("node {} {dir}", g / 2 + 1)
            })
            .collect();
        StructuralModel::new(kr, mr, labels)
    }
}

/// Equilateral Warren truss: 11 nodes, 19 members of 2 m.
///
/// Bottom chord nodes 1–6 sit at x = 0, 2, …, 10 m; top chord nodes 7–11 at
/// x = 1, 3, …, 9 m and y = √3 m. Node 1 is pinned and node 6 is on a
/// roller, leaving 19 free DOFs.
pub fn warren_truss<T: Real>() -> PlaneTruss<T> {
    let height = T::lit(3f64.sqrt());
    let mut nodes = Vec::with_capacity(11);
    for i in 0..6 {
        nodes.push((T::lit(2.0 * i as f64), T::zero()));
    }
    for i in 0..5 {
        nodes.push((T::lit(2.0 * i as f64 + 1.0), height));
    }
    let mut members = Vec::with_capacity(19);
    members.extend((0..5).map(|i| (i, i + 1)));
    members.extend((0..4).map(|i| (6 + i, 7 + i)));
    for i in 0..5 {
        members.push((i, 6 + i));
        members.push((6 + i, i + 1));
    }
    PlaneTruss {
        nodes,
        members,
        youngs_modulus: T::lit(215e9),
        area: T::lit(5e-5),
        density: T::lit(7750.0),
        // pin at node 1 (x, y), roller at node 6 (y)
        restrained: vec![0, 1, 11],
    }
}

/// The reduced 19-DOF Warren truss model.
pub fn build_warren_truss<T: Real>() -> StructuralModel<T> {
    warren_truss()
        .to_model()
        .expect("built-in truss geometry is valid")
}

/// Solves `K φ = ω² M φ` through the symmetric form `M^{-1/2} K M^{-1/2}`.
///
/// Mode shapes come back mass-normalised (`φᵀMφ = 1`) with their largest
/// magnitude component positive, sorted by ascending ω².
pub fn solve_modal<T: Real>(model: &StructuralModel<T>) -> Result<ModalBasis<T>> {
    let n = model.n_dof();
    let k = model.stiffness();
    let asym = k.asymmetry();
    if !(asym <= T::lit(1e-9) * k.max_abs()) {
        return Err(Error::NumericalFailure {
            message: "stiffness matrix is not symmetric".into(),
            residual: asym.as_f64(),
        });
    }
    let inv_sqrt_m: Vec<T> = model.mass_diagonal().iter().map(|&m| m.sqrt().recip()).collect();
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = inv_sqrt_m[i] * k[(i, j)] * inv_sqrt_m[j];
        }
    }
    let eig = symmetric_eigen(&a);
    let scale = eig.values.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
    if let Some(&bad) = eig.values.iter().find(|&&v| !(v > T::epsilon() * scale * T::lit(n as f64))) {
        return Err(Error::NumericalFailure {
            message: "stiffness is not positive definite".into(),
            residual: bad.as_f64(),
        });
    }

    let mut shapes = Matrix::zeros(n, n);
    for col in 0..n {
        let mut phi: Vec<T> = (0..n).map(|p| inv_sqrt_m[p] * eig.vectors[(p, col)]).collect();
        let pivot = phi
            .iter()
            .copied()
            .fold(T::zero(), |best, x| if x.abs() > best.abs() { x } else { best });
        if pivot < T::zero() {
            phi.iter_mut().for_each(|x| *x = -*x);
        }
        for (p, x) in phi.into_iter().enumerate() {
            shapes[(p, col)] = x;
        }
    }
    let basis = ModalBasis {
        frequencies_sq: eig.values,
        mode_shapes: shapes,
    };

    let tol = T::lit(1e-6).max(T::epsilon() * T::lit(100.0 * n as f64));
    for i in 0..n {
        let r = basis.residual(model, i);
        if !(r <= tol) {
            return Err(Error::NumericalFailure {
                message: format!("eigenpair {i} failed the residual check"),
                residual: r.as_f64(),
            });
        }
    }
    Ok(basis)
}
