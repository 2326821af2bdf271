//! Derivative-free minimisation of the two schedule parameters and the
//! multistart protocol built on it.
//!
//! The local method keeps three interpolation points, fits the linear model
//! through them and steps a trust-region radius `ρ` down the model gradient.
//! `ρ` is halved when a step fails to improve, and points that drift too far
//! from the incumbent (or make the simplex flat) are replaced by geometry
//! steps, in the manner of COBYLA without constraints.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::qaoa::{CostEstimate, QaoaProblem};
use crate::scalar::Real;
use crate::seeds::derive_seed;

/// Axis-aligned search box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds<T> {
    pub lower: [T; 2],
    pub upper: [T; 2],
}

impl<T: Real> Bounds<T> {
    pub fn new(lower: [T; 2], upper: [T; 2]) -> Result<Self> {
        if (0..2).any(|i| !(lower[i] <= upper[i])) {
            return Err(invalid("empty search box"));
        }
        Ok(Self { lower, upper })
    }

    /// `β_1 ∈ [−π, π]`, `γ_p ∈ [−2π, 2π]`.
    pub fn qaoa() -> Self {
        let pi = T::PI();
        Self {
            lower: [-pi, -(pi + pi)],
            upper: [pi, pi + pi],
        }
    }

    pub fn clip(&self, x: [T; 2]) -> [T; 2] {
        [
            x[0].max(self.lower[0]).min(self.upper[0]),
            x[1].max(self.lower[1]).min(self.upper[1]),
        ]
    }

    pub fn contains(&self, x: [T; 2]) -> bool {
        (0..2).all(|i| x[i] >= self.lower[i] && x[i] <= self.upper[i])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerSettings<T> {
    pub budget: usize,
    pub rho_begin: T,
    pub rho_end: T,
}

impl<T: Real> Default for OptimizerSettings<T> {
    fn default() -> Self {
        Self {
            budget: 150,
            rho_begin: T::lit(0.5),
            rho_end: T::lit(1e-4),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult<T> {
    pub best_params: [T; 2],
    pub best_objective: T,
    pub evaluations: usize,
    /// Every evaluated point in order.
    pub trace: Vec<([T; 2], T)>,
}

impl<T: Real> OptimizeResult<T> {
    /// Best objective seen after each evaluation.
    pub fn running_best(&self) -> Vec<T> {
        let mut best = T::infinity();
        self.trace
            .iter()
            .map(|&(_, f)| {
                best = best.min(f);
                best
            })
            .collect()
    }
}

struct Evaluator<'a, T, F> {
    f: F,
    bounds: &'a Bounds<T>,
    budget: usize,
    trace: Vec<([T; 2], T)>,
}

impl<T: Real, F: FnMut([T; 2]) -> Result<T>> Evaluator<'_, T, F> {
    fn exhausted(&self) -> bool {
        self.trace.len() >= self.budget
    }

    fn eval(&mut self, x: [T; 2]) -> Result<T> {
        let x = self.bounds.clip(x);
        let v = (self.f)(x)?;
        if !v.is_finite() {
            return Err(Error::NonFiniteObjective(x[0].as_f64(), x[1].as_f64()));
        }
        self.trace.push((x, v));
        Ok(v)
    }
}

fn sub<T: Real>(a: [T; 2], b: [T; 2]) -> [T; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm<T: Real>(a: [T; 2]) -> T {
    a[0].hypot(a[1])
}

/// Point at distance `rho` from `base`, perpendicular to `edge`, on whichever
/// side survives clipping better.
fn geometry_point<T: Real>(bounds: &Bounds<T>, base: [T; 2], edge: [T; 2], rho: T) -> [T; 2] {
    let len = norm(edge);
    let u = if len > T::zero() {
        [-edge[1] / len, edge[0] / len]
    } else {
        [T::one(), T::zero()]
    };
    let plus = bounds.clip([base[0] + rho * u[0], base[1] + rho * u[1]]);
    let minus = bounds.clip([base[0] - rho * u[0], base[1] - rho * u[1]]);
    let spread = |p: [T; 2]| {
        let d = sub(p, base);
        (d[0] * edge[1] - d[1] * edge[0]).abs() + norm(d) * T::lit(1e-3)
    };
    if spread(plus) >= spread(minus) {
        plus
    } else {
        minus
    }
}

/// Minimises `objective` over `bounds` from `start`.
///
/// Stops after `settings.budget` evaluations or once the trust radius drops
/// below `settings.rho_end`.
pub fn minimize_derivative_free<T: Real>(
    objective: impl FnMut([T; 2]) -> Result<T>,
    start: [T; 2],
    bounds: &Bounds<T>,
    settings: &OptimizerSettings<T>,
) -> Result<OptimizeResult<T>> {
    if settings.budget < 3 {
        return Err(invalid("optimizer budget must be at least 3"));
    }
    Bounds::new(bounds.lower, bounds.upper)?;
    if !(settings.rho_begin > settings.rho_end && settings.rho_end > T::zero()) {
        return Err(invalid("need rho_begin > rho_end > 0"));
    }
    let mut ev = Evaluator {
        f: objective,
        bounds,
        budget: settings.budget,
        trace: Vec::with_capacity(settings.budget),
    };
    let mut rho = settings.rho_begin;
    let x0 = bounds.clip(start);
    let f0 = ev.eval(x0)?;
    let x1 = geometry_point(bounds, x0, [T::zero(), T::one()], rho);
    let f1 = ev.eval(x1)?;
    let x2 = geometry_point(bounds, x0, sub(x1, x0), rho);
    let f2 = ev.eval(x2)?;
    let mut pts = [(x0, f0), (x1, f1), (x2, f2)];
    let shrink_limit = T::lit(0.1);

    while !ev.exhausted() && rho >= settings.rho_end {
        // incumbent first, stable on ties so earlier points win
        pts.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite values"));
        let (xb, fb) = pts[0];
        let e1 = sub(pts[1].0, xb);
        let e2 = sub(pts[2].0, xb);

        let far = if norm(e1) >= norm(e2) { 1 } else { 2 };
        let det = e1[0] * e2[1] - e1[1] * e2[0];
        let flat = det.abs() <= shrink_limit * norm(e1) * norm(e2);
        if flat || norm(sub(pts[far].0, xb)) > rho + rho {
            let keep = if far == 1 { e2 } else { e1 };
            let x = geometry_point(bounds, xb, keep, rho);
            if norm(sub(x, xb)) < shrink_limit * rho {
                // pinned in a corner of the box
                rho *= T::lit(0.5);
                continue;
            }
            pts[far] = (x, ev.eval(x)?);
            continue;
        }

        // linear model through the three points
        let (d1, d2) = (pts[1].1 - fb, pts[2].1 - fb);
        let g = [(d1 * e2[1] - d2 * e1[1]) / det, (e1[0] * d2 - e2[0] * d1) / det];
        let gnorm = norm(g);
        if !(gnorm > T::zero()) || !gnorm.is_finite() {
            rho *= T::lit(0.5);
            continue;
        }
        let trial = bounds.clip([xb[0] - rho * g[0] / gnorm, xb[1] - rho * g[1] / gnorm]);
        let step = sub(trial, xb);
        if norm(step) < shrink_limit * rho {
            rho *= T::lit(0.5);
            continue;
        }
        let ft = ev.eval(trial)?;
        let predicted = -(g[0] * step[0] + g[1] * step[1]);
        let actual = fb - ft;
        if ft < pts[2].1 {
            pts[2] = (trial, ft);
        }
        if !(actual > shrink_limit * predicted) {
            rho *= T::lit(0.5);
        }
    }

    // min_by keeps the first of equal minima
    let &(best_params, best_objective) = ev
        .trace
        .iter()
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite values"))
        .expect("at least three evaluations");
    Ok(OptimizeResult {
        best_params,
        best_objective,
        evaluations: ev.trace.len(),
        trace: ev.trace,
    })
}

/// One restart of [`multistart_optimize`].
#[derive(Debug, Clone)]
pub struct RestartResult<T> {
    pub run_id: usize,
    pub seed: u64,
    pub start: [T; 2],
    pub result: OptimizeResult<T>,
    /// Estimate at the final parameters with the restart's shot seed.
    pub final_estimate: CostEstimate<T>,
}

#[derive(Debug, Clone)]
pub struct MultistartSummary<T> {
    pub runs: Vec<RestartResult<T>>,
    /// Mean of the final average ratios.
    pub mean: T,
    /// Population standard deviation of the final average ratios.
    pub std: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultistartConfig<T> {
    pub p: usize,
    pub restarts: usize,
    pub shots: usize,
    pub seed: u64,
    pub optimizer: OptimizerSettings<T>,
}

/// Mean and population standard deviation.
pub fn mean_std<T: Real>(values: &[T]) -> (T, T) {
    if values.is_empty() {
        return (T::nan(), T::nan());
    }
    let n = T::lit(values.len() as f64);
    let mean = values.iter().copied().sum::<T>() / n;
    let var = values.iter().map(|&v| (v - mean) * (v - mean)).sum::<T>() / n;
    (mean, var.sqrt())
}

/// Independent local optimisations of `1 − avg_ratio` from uniform starts in
/// [`Bounds::qaoa`]. Each restart owns one seed for its start point and one
/// fixed shot seed for all of its objective calls.
pub fn multistart_optimize<T: Real>(
    problem: &QaoaProblem<T>,
    config: &MultistartConfig<T>,
) -> Result<MultistartSummary<T>> {
    if config.restarts == 0 {
        return Err(invalid("need at least one restart"));
    }
    if config.p == 0 {
        return Err(invalid("QAOA needs at least one layer"));
    }
    let bounds = Bounds::<T>::qaoa();
    let runs = (0..config.restarts)
        .into_par_iter()
        .map(|run_id| {
            let seed = derive_seed(config.seed, &[run_id as u64]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let start = [
                T::lit(rng.gen_range(bounds.lower[0].as_f64()..=bounds.upper[0].as_f64())),
                T::lit(rng.gen_range(bounds.lower[1].as_f64()..=bounds.upper[1].as_f64())),
            ];
            let shot_seed = derive_seed(seed, &[1]);
            let objective = |x: [T; 2]| {
                let est = problem.evaluate(config.p, x[0], x[1], config.shots, shot_seed)?;
                Ok(T::one() - est.avg_ratio)
            };
            let result = minimize_derivative_free(objective, start, &bounds, &config.optimizer)?;
            let [b, g] = result.best_params;
            let final_estimate = problem.evaluate(config.p, b, g, config.shots, shot_seed)?;
            Ok(RestartResult {
                run_id,
                seed,
                start,
                result,
                final_estimate,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let finals: Vec<T> = runs.iter().map(|r| r.final_estimate.avg_ratio).collect();
    let (mean, std) = mean_std(&finals);
    Ok(MultistartSummary { runs, mean, std })
}
