//! QAOA circuit assembly, the two-parameter linear schedule, sampled cost
//! estimation and approximation ratios.
//!
//! A layer applies the cost phase `e^{−iγ_j H_C}` and then the mixer with
//! `β_j`, for `j = 1..p`, starting from `|+⟩^{⊗n}` (standard X mixer) or the
//! Dicke state of weight `n_s` (full XY mixer).

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::qubo::{add_cardinality_penalty, default_penalty_weight, qubo_to_ising, IsingCoefficients, QuboProblem, Sense};
use crate::scalar::Real;
use crate::statevec::{StateVector, SubspaceState, WeightSubspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mixer {
    /// `Σ_j X_j` with a penalised objective.
    #[serde(rename = "x")]
    StandardX,
    /// Pairwise XY partial swaps from a Dicke state.
    #[serde(rename = "xy")]
    FullXy,
}

impl Mixer {
    pub fn as_str(self) -> &'static str {
        match self {
            Mixer::StandardX => "x",
            Mixer::FullXy => "xy",
        }
    }
}

impl std::fmt::Display for Mixer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How samples that violate the sensor count are scored.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InfeasibleScore {
    /// Ratio 0.
    #[default]
    Zero,
    /// Their raw MSE ratio (may exceed 1 when more sensors are selected).
    Raw,
}

/// Scaling applied to the cost Hamiltonian before it drives phases.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CostNormalization {
    /// Divide by the largest absolute MSE coefficient.
    #[default]
    MaxCoefficient,
    /// Use coefficients in their physical units.
    None,
}

/// Circuit and measurement settings for one QAOA evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct QaoaConfig<T> {
    pub p: usize,
    pub mixer: Mixer,
    /// Measurements per evaluation; 0 selects exact expectations.
    pub shots: usize,
    pub n_sensors: usize,
    /// Penalty weight for the X mixer; `None` picks [`default_penalty_weight`].
    pub alpha: Option<T>,
    pub seed: u64,
}

impl<T: Real> QaoaConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(invalid("QAOA needs at least one layer"));
        }
        if let Some(a) = self.alpha {
            if !(a > T::zero()) {
                return Err(invalid("penalty weight must be positive"));
            }
        }
        Ok(())
    }
}

/// Per-layer angles.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule<T> {
    pub betas: Vec<T>,
    pub gammas: Vec<T>,
}

impl<T: Real> Schedule<T> {
    pub fn layers(&self) -> usize {
        self.betas.len()
    }
}

/// Linear interpolation between `(β_1, 0.01π)` for the mixer angles and
/// `(0.01π, γ_p)` for the cost angles. A single layer uses `(β_1, γ_p)`.
pub fn linear_schedule<T: Real>(beta1: T, gamma_p: T, p: usize) -> Result<Schedule<T>> {
    if p == 0 {
        return Err(invalid("schedule needs p ≥ 1"));
    }
    if p == 1 {
        return Ok(Schedule {
            betas: vec![beta1],
            gammas: vec![gamma_p],
        });
    }
    let floor = T::lit(0.01) * T::PI();
    let steps = T::lit((p - 1) as f64);
    let (betas, gammas) = (0..p)
        .map(|j| {
            if j + 1 == p {
                // exact endpoints, free of rounding in the interpolation
                return (floor, gamma_p);
            }
            let t = T::lit(j as f64);
            let gamma = (gamma_p - floor) / steps * t + floor;
            let beta = beta1 - (beta1 - floor) / steps * t;
            (beta, gamma)
        })
        .unzip();
    Ok(Schedule { betas, gammas })
}

/// Evolves `|ψ(0)⟩` through `p` layers on the full register.
///
/// The cost phase uses the Ising diagonal without its constant term, which
/// only contributes a global phase.
pub fn run_qaoa_circuit<T: Real>(
    ising: &IsingCoefficients<T>,
    config: &QaoaConfig<T>,
    beta1: T,
    gamma_p: T,
) -> Result<StateVector<T>> {
    config.validate()?;
    let schedule = linear_schedule(beta1, gamma_p, config.p)?;
    let diag = ising.diagonal(false)?;
    let mut state = match config.mixer {
        Mixer::StandardX => StateVector::plus_state(ising.n_vars)?,
        Mixer::FullXy => StateVector::dicke(ising.n_vars, config.n_sensors)?,
    };
    for (&gamma, &beta) in schedule.gammas.iter().zip(&schedule.betas) {
        state.apply_cost_phase(&diag, gamma)?;
        match config.mixer {
            Mixer::StandardX => state.apply_x_mixer_layer(beta),
            Mixer::FullXy => state.apply_xy_mixer_layer(beta),
        }
    }
    Ok(state)
}

/// `value / optimum` for a maximisation objective.
pub fn approximation_ratio<T: Real>(value: T, optimum: T) -> Result<T> {
    if !(optimum > T::zero()) {
        return Err(invalid(format!("optimum {optimum} must be positive")));
    }
    Ok(value / optimum)
}

/// Sampled (or exact) summary of a final QAOA state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CostEstimate<T> {
    pub avg_ratio: T,
    pub best_ratio: T,
    pub feasible_fraction: T,
}

/// Settings that turn an MSE objective into a circuit problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemSettings<T> {
    pub n_sensors: usize,
    pub mixer: Mixer,
    pub alpha: Option<T>,
    pub normalization: CostNormalization,
    pub infeasible: InfeasibleScore,
}

impl<T> ProblemSettings<T> {
    pub fn new(n_sensors: usize, mixer: Mixer) -> Self {
        Self {
            n_sensors,
            mixer,
            alpha: None,
            normalization: CostNormalization::default(),
            infeasible: InfeasibleScore::default(),
        }
    }
}

#[derive(Debug)]
enum CostTable<T> {
    Full { diag: Vec<T>, ratio: Vec<T> },
    Sector { space: Arc<WeightSubspace>, diag: Vec<T>, ratio: Vec<T> },
}

/// Final state of a circuit evaluation.
#[derive(Debug, Clone)]
pub enum Evolved<T> {
    Full(StateVector<T>),
    Sector(SubspaceState<T>),
}

impl<T: Real> Evolved<T> {
    pub fn to_statevector(&self) -> StateVector<T> {
        match self {
            Evolved::Full(s) => s.clone(),
            Evolved::Sector(s) => s.to_statevector(),
        }
    }
}

/// An MSE sensor-placement objective prepared for repeated circuit runs.
///
/// Holds the (normalised) cost diagonal and a ratio lookup table so each
/// evaluation is a state evolution plus table lookups. The XY mixer path
/// simulates only the weight-`n_s` sector.
#[derive(Debug)]
pub struct QaoaProblem<T> {
    mse: QuboProblem<T>,
    ising: IsingCoefficients<T>,
    optimum: T,
    scale: T,
    alpha: Option<T>,
    settings: ProblemSettings<T>,
    table: CostTable<T>,
}

impl<T: Real> QaoaProblem<T> {
    /// `mse` must be the maximisation MSE QUBO and `optimum` its best
    /// feasible value (from exhaustive search).
    pub fn new(mse: &QuboProblem<T>, optimum: T, settings: ProblemSettings<T>) -> Result<Self> {
        if mse.sense() != Sense::Maximize {
            return Err(Error::ContractViolation("MSE objective must be a maximisation QUBO".into()));
        }
        if !(optimum > T::zero()) {
            return Err(invalid("optimum MSE must be positive"));
        }
        let n = mse.n_vars();
        let ns = settings.n_sensors;
        if ns > n {
            return Err(invalid(format!("cannot place {ns} sensors on {n} locations")));
        }
        let (circuit_qubo, alpha) = match settings.mixer {
            Mixer::StandardX => {
                let alpha = settings.alpha.unwrap_or_else(|| default_penalty_weight(mse, ns));
                (add_cardinality_penalty(mse, ns, alpha)?, Some(alpha))
            }
            Mixer::FullXy => (mse.negated(), None),
        };
        let scale = match settings.normalization {
            CostNormalization::MaxCoefficient => mse.max_abs_coefficient(),
            CostNormalization::None => T::one(),
        };
        if !(scale > T::zero()) {
            return Err(invalid("objective has no non-zero coefficients"));
        }
        let ising = qubo_to_ising(&circuit_qubo)?.scaled(scale.recip());
        let ratio_of = |m: usize| ratio_for_index(mse, optimum, ns, settings.infeasible, m);
        let table = match settings.mixer {
            Mixer::StandardX => {
                let diag = ising.diagonal(false)?;
                let ratio = (0..diag.len()).map(ratio_of).collect();
                CostTable::Full { diag, ratio }
            }
            Mixer::FullXy => {
                let space = WeightSubspace::new(n, ns)?;
                let diag = space.states().iter().map(|&m| ising.energy(m, false)).collect();
                let ratio = space.states().iter().map(|&m| ratio_of(m)).collect();
                CostTable::Sector { space, diag, ratio }
            }
        };
        Ok(Self {
            mse: mse.clone(),
            ising,
            optimum,
            scale,
            alpha,
            settings,
            table,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.mse.n_vars()
    }

    pub fn settings(&self) -> &ProblemSettings<T> {
        &self.settings
    }

    pub fn optimum(&self) -> T {
        self.optimum
    }

    /// Penalty weight in MSE units (X mixer only).
    pub fn alpha(&self) -> Option<T> {
        self.alpha
    }

    /// Divisor applied to the cost Hamiltonian.
    pub fn cost_scale(&self) -> T {
        self.scale
    }

    /// Normalised Ising coefficients that drive the cost phase.
    pub fn ising(&self) -> &IsingCoefficients<T> {
        &self.ising
    }

    /// Score of basis state `index` under the configured infeasibility rule.
    pub fn ratio_of_index(&self, index: usize) -> T {
        ratio_for_index(&self.mse, self.optimum, self.settings.n_sensors, self.settings.infeasible, index)
    }

    /// Runs the `p`-layer circuit for the linear schedule `(β_1, γ_p)`.
    pub fn evolve(&self, p: usize, beta1: T, gamma_p: T) -> Result<Evolved<T>> {
        let schedule = linear_schedule(beta1, gamma_p, p)?;
        let layers = schedule.gammas.iter().zip(&schedule.betas);
        match &self.table {
            CostTable::Full { diag, .. } => {
                let mut state = StateVector::plus_state(self.n_vars())?;
                for (&gamma, &beta) in layers {
                    state.apply_cost_phase(diag, gamma)?;
                    state.apply_x_mixer_layer(beta);
                }
                Ok(Evolved::Full(state))
            }
            CostTable::Sector { space, diag, .. } => {
                let mut state = SubspaceState::dicke(Arc::clone(space));
                for (&gamma, &beta) in layers {
                    state.apply_cost_phase(diag, gamma)?;
                    state.apply_xy_mixer_layer(beta);
                }
                Ok(Evolved::Sector(state))
            }
        }
    }

    /// Scores `shots` measurements of `state` (exact weighting when 0).
    pub fn estimate(&self, state: &Evolved<T>, shots: usize, seed: u64) -> Result<CostEstimate<T>> {
        let (probs, ratio): (Vec<T>, &[T]) = match (&self.table, state) {
            (CostTable::Full { ratio, .. }, Evolved::Full(s)) => (s.probabilities(), ratio),
            (CostTable::Sector { ratio, .. }, Evolved::Sector(s)) => (s.probabilities(), ratio),
            (_, other) => return self.estimate_cost(&other.to_statevector(), shots, seed),
        };
        let feasible: Vec<bool> = match &self.table {
            CostTable::Full { .. } => (0..probs.len())
                .map(|m| m.count_ones() as usize == self.settings.n_sensors)
                .collect(),
            CostTable::Sector { .. } => vec![true; probs.len()],
        };
        Ok(summarise(&probs, |i| ratio[i], |i| feasible[i], shots, seed))
    }

    /// [`estimate`](Self::estimate) for an arbitrary full-register state.
    pub fn estimate_cost(&self, state: &StateVector<T>, shots: usize, seed: u64) -> Result<CostEstimate<T>> {
        if state.n_qubits() != self.n_vars() {
            return Err(invalid(format!(
                "state has {} qubits but the problem has {} variables",
                state.n_qubits(),
                self.n_vars()
            )));
        }
        let ns = self.settings.n_sensors;
        Ok(summarise(
            &state.probabilities(),
            |m| self.ratio_of_index(m),
            |m| m.count_ones() as usize == ns,
            shots,
            seed,
        ))
    }

    /// Circuit evaluation followed by [`estimate`](Self::estimate).
    pub fn evaluate(&self, p: usize, beta1: T, gamma_p: T, shots: usize, seed: u64) -> Result<CostEstimate<T>> {
        let state = self.evolve(p, beta1, gamma_p)?;
        self.estimate(&state, shots, seed)
    }
}

fn ratio_for_index<T: Real>(mse: &QuboProblem<T>, optimum: T, ns: usize, rule: InfeasibleScore, m: usize) -> T {
    let feasible = m.count_ones() as usize == ns;
    match (feasible, rule) {
        (true, _) => (mse.evaluate_index(m) / optimum).min(T::one()),
        (false, InfeasibleScore::Zero) => T::zero(),
        (false, InfeasibleScore::Raw) => mse.evaluate_index(m) / optimum,
    }
}

/// Probabilities below this are treated as unreachable in exact mode.
const EXACT_SUPPORT: f64 = 1e-12;

fn summarise<T: Real>(
    probs: &[T],
    ratio: impl Fn(usize) -> T,
    feasible: impl Fn(usize) -> bool,
    shots: usize,
    seed: u64,
) -> CostEstimate<T> {
    if shots == 0 {
        let mut avg = T::zero();
        let mut best = T::zero();
        let mut feas = T::zero();
        for (i, &p) in probs.iter().enumerate() {
            avg += p * ratio(i);
            if feasible(i) {
                feas += p;
            }
            if p.as_f64() > EXACT_SUPPORT {
                best = best.max(ratio(i));
            }
        }
        return CostEstimate {
            avg_ratio: avg,
            best_ratio: best,
            feasible_fraction: feas,
        };
    }
    let weights: Vec<f64> = probs.iter().map(|p| p.as_f64()).collect();
    let draws = crate::statevec::sample_from_weights(&weights, shots, seed);
    let mut sum = T::zero();
    let mut best = T::zero();
    let mut hits = 0usize;
    for &i in &draws {
        let r = ratio(i);
        sum += r;
        best = best.max(r);
        if feasible(i) {
            hits += 1;
        }
    }
    let n = T::lit(shots as f64);
    CostEstimate {
        avg_ratio: sum / n,
        best_ratio: best,
        feasible_fraction: T::lit(hits as f64) / n,
    }
}

/// Elementary gate tally of the literal circuit mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateCount {
    pub n_qubits: usize,
    pub layers: usize,
    /// One preparation gate per qubit.
    pub initialization: usize,
    /// `3` per `Z_j Z_k` term (CX, R_z, CX) plus one `R_z` per qubit.
    pub cost_per_layer: usize,
    /// `R_x` per qubit (X mixer) or one two-qubit gate per pair (XY mixer).
    pub mixer_per_layer: usize,
}

impl GateCount {
    /// `p · cost_per_layer + initialization`.
    pub fn total(&self) -> usize {
        self.layers * self.cost_per_layer + self.initialization
    }

    /// [`total`](Self::total) plus the mixer gates.
    pub fn total_with_mixer(&self) -> usize {
        self.total() + self.layers * self.mixer_per_layer
    }

    /// Dense-objective bound `3n²/2 − n/2` on the cost layer.
    pub fn cost_layer_bound(&self) -> usize {
        let n = self.n_qubits;
        (3 * n * n - n) / 2
    }
}

pub fn gate_count<T: Real>(ising: &IsingCoefficients<T>, p: usize, mixer: Mixer) -> GateCount {
    let n = ising.n_vars;
    GateCount {
        n_qubits: n,
        layers: p,
        initialization: n,
        cost_per_layer: 3 * ising.nonzero_pairs() + n,
        mixer_per_layer: match mixer {
            Mixer::StandardX => n,
            Mixer::FullXy => n * n.saturating_sub(1) / 2,
        },
    }
}
