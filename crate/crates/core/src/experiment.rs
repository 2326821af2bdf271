//! Built-in case studies, the exhaustive ranking oracle, landscape scans and
//! multistart experiments.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::modal::{build_shear_building, build_warren_truss, solve_modal, ModalBasis, StructuralModel};
use crate::optimizer::{multistart_optimize, MultistartConfig, MultistartSummary};
use crate::qaoa::QaoaProblem;
use crate::qubo::{build_mse_qubo, QuboProblem, Sense};
use crate::scalar::Real;
use crate::seeds::derive_seed;
use crate::statevec::binomial;

/// Largest number of subsets [`exhaustive_search`] will enumerate.
pub const EXHAUSTIVE_MAX_SUBSETS: f64 = 1e7;

/// Relative MSE difference below which two subsets count as tied.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    #[serde(rename = "shear16")]
    Shear16,
    #[serde(rename = "truss19")]
    Truss19,
}

impl Case {
    pub const ALL: [Case; 2] = [Case::Shear16, Case::Truss19];

    pub fn as_str(self) -> &'static str {
        match self {
            Case::Shear16 => "shear16",
            Case::Truss19 => "truss19",
        }
    }

    pub fn model<T: Real>(self) -> Result<StructuralModel<T>> {
        match self {
            // 10^6 kN/m between stories, 625 t per story
            Case::Shear16 => build_shear_building(16, T::lit(1e9), T::lit(625e3)),
            Case::Truss19 => Ok(build_warren_truss()),
        }
    }

    /// Model, modes and MSE objective in one go.
    pub fn prepare<T: Real>(self) -> Result<CaseData<T>> {
        let model = self.model()?;
        let modal = solve_modal(&model)?;
        let mse = build_mse_qubo(&modal, &model)?;
        Ok(CaseData {
            case: self,
            model,
            modal,
            mse,
        })
    }

    /// Reference top-10 ranking `(ratio, 1-based locations)` for the case.
    pub fn reference_ranking(self) -> &'static [(f64, [usize; 4])] {
        match self {
            Case::Shear16 => &SHEAR_REFERENCE,
            Case::Truss19 => &TRUSS_REFERENCE,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "shear16" => Ok(Case::Shear16),
            "truss19" => Ok(Case::Truss19),
            other => Err(invalid(format!("unknown case {other:?} (expected shear16 or truss19)"))),
        }
    }
}

const SHEAR_REFERENCE: [(f64, [usize; 4]); 10] = [
    (1.0, [7, 8, 9, 10]),
    (1.0, [5, 6, 7, 8]),
    (1.0, [4, 5, 6, 7]),
    (1.0, [2, 3, 4, 5]),
    (1.0, [1, 2, 3, 4]),
    (0.997, [12, 13, 14, 15]),
    (0.997, [6, 7, 8, 9]),
    (0.997, [3, 4, 5, 6]),
    (0.927, [11, 12, 13, 14]),
    (0.927, [8, 9, 10, 11]),
];

const TRUSS_REFERENCE: [(f64, [usize; 4]); 10] = [
    (1.0, [11, 15, 18, 19]),
    (0.965, [7, 11, 15, 19]),
    (0.940, [1, 5, 9, 13]),
    (0.930, [13, 15, 17, 19]),
    (0.918, [5, 9, 13, 17]),
    (0.918, [3, 7, 11, 15]),
    (0.915, [15, 16, 18, 19]),
    (0.913, [9, 11, 13, 15]),
    (0.899, [15, 17, 18, 19]),
    (0.899, [3, 5, 7, 9]),
];

#[derive(Debug, Clone)]
pub struct CaseData<T> {
    pub case: Case,
    pub model: StructuralModel<T>,
    pub modal: ModalBasis<T>,
    pub mse: QuboProblem<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedSolution<T> {
    pub rank: usize,
    /// Ascending, 1-based.
    pub locations: Vec<usize>,
    pub mse: T,
    pub ratio: T,
}

/// Every `n_s`-subset of a maximisation QUBO, best first.
///
/// Subsets within [`TIE_TOLERANCE`] (relative) of the first member of a tie
/// group are ordered lexicographically; ratios are capped at 1 so that every
/// member of the leading group has ratio exactly 1.
pub fn exhaustive_search<T: Real>(qubo: &QuboProblem<T>, n_sensors: usize) -> Result<Vec<RankedSolution<T>>> {
    if qubo.sense() != Sense::Maximize {
        return Err(Error::ContractViolation("exhaustive ranking expects a maximisation objective".into()));
    }
    let n = qubo.n_vars();
    if n_sensors == 0 || n_sensors > n {
        return Err(invalid(format!("cannot place {n_sensors} sensors on {n} locations")));
    }
    let count = binomial(n, n_sensors);
    if count > EXHAUSTIVE_MAX_SUBSETS {
        return Err(Error::ResourceLimit(format!(
            "C({n}, {n_sensors}) = {count} subsets exceeds {EXHAUSTIVE_MAX_SUBSETS}"
        )));
    }
    let mut scored: Vec<(Vec<usize>, T)> = (0..n)
        .combinations(n_sensors)
        .map(|c| {
            let v = qubo.evaluate_subset(&c);
            (c, v)
        })
        .collect();
    // combinations arrive in lexicographic order and the sort is stable
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite MSE"));

    let tol = T::lit(TIE_TOLERANCE);
    let mut start = 0;
    while start < scored.len() {
        let anchor = scored[start].1;
        let end = start
            + scored[start..]
                .iter()
                .take_while(|(_, v)| (anchor - *v).abs() <= tol * anchor.abs())
                .count();
        scored[start..end].sort_by(|a, b| a.0.cmp(&b.0));
        start = end;
    }

    let best = scored[0].1;
    let top_group = scored
        .iter()
        .take_while(|(_, v)| (best - *v).abs() <= tol * best.abs())
        .count();
    Ok(scored
        .into_iter()
        .enumerate()
        .map(|(i, (c, mse))| RankedSolution {
            rank: i + 1,
            locations: c.into_iter().map(|p| p + 1).collect(),
            mse,
            ratio: if i < top_group { T::one() } else { (mse / best).min(T::one()) },
        })
        .collect())
}

/// One reference row next to where the same set lands in our ranking.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow<T> {
    pub reference_rank: usize,
    pub reference_ratio: f64,
    pub locations: Vec<usize>,
    pub our_rank: Option<usize>,
    pub our_ratio: Option<T>,
}

pub fn compare_with_reference<T: Real>(case: Case, ranking: &[RankedSolution<T>]) -> Vec<ComparisonRow<T>> {
    case.reference_ranking()
        .iter()
        .enumerate()
        .map(|(i, (ratio, locs))| {
            let hit = ranking.iter().find(|r| r.locations == locs);
            ComparisonRow {
                reference_rank: i + 1,
                reference_ratio: *ratio,
                locations: locs.to_vec(),
                our_rank: hit.map(|r| r.rank),
                our_ratio: hit.map(|r| r.ratio),
            }
        })
        .collect()
}

/// Side-by-side table of our top rows against the reference ranking.
pub fn render_comparison<T: Real>(case: Case, ranking: &[RankedSolution<T>]) -> String {
    let rows = compare_with_reference(case, ranking);
    let mut out = format!(
        "{:>4}  {:<18} {:>8}  |  {:<18} {:>8} {:>8} {:>9}\n",
        "rank", "ours", "ratio", "reference", "ratio", "our rank", "our ratio"
    );
    for (i, row) in rows.iter().enumerate() {
        let (ours, ratio) = ranking
            .get(i)
            .map(|r| (join_locations(&r.locations), format!("{:.4}", r.ratio.as_f64())))
            .unwrap_or_default();
        let our_rank = row.our_rank.map_or("-".to_string(), |r| r.to_string());
        let our_ratio = row.our_ratio.map_or("-".to_string(), |r| format!("{:.4}", r.as_f64()));
        out += &format!(
            "{:>4}  {:<18} {:>8}  |  {:<18} {:>8.3} {:>8} {:>9}\n",
            i + 1,
            ours,
            ratio,
            join_locations(&row.locations),
            row.reference_ratio,
            our_rank,
            our_ratio
        );
    }
    out
}

fn join_locations(locs: &[usize]) -> String {
    locs.iter().map(|l| l.to_string()).join("+")
}

/// `n` equidistant points from `lo` to `hi` inclusive.
pub fn grid_points<T: Real>(lo: T, hi: T, n: usize) -> Result<Vec<T>> {
    if n < 2 {
        return Err(invalid("grid needs at least two points per axis"));
    }
    let step = (hi - lo) / T::lit((n - 1) as f64);
    Ok((0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * T::lit(i as f64) })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandscapeCell<T> {
    pub beta1: T,
    pub gamma_p: T,
    pub avg_ratio: T,
    pub best_ratio: T,
    pub feasible_fraction: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LandscapeConfig {
    pub p: usize,
    pub grid: usize,
    /// 0 selects exact expectations.
    pub shots: usize,
    pub seed: u64,
}

/// Evaluates a `grid × grid` sweep over `β_1 ∈ [−π, π]` (rows) and
/// `γ_p ∈ [−2π, 2π]` (columns), row-major.
pub fn run_landscape_scan<T: Real>(problem: &QaoaProblem<T>, config: &LandscapeConfig) -> Result<Vec<LandscapeCell<T>>> {
    if config.p == 0 {
        return Err(invalid("QAOA needs at least one layer"));
    }
    let pi = T::PI();
    let betas = grid_points(-pi, pi, config.grid)?;
    let gammas = grid_points(-(pi + pi), pi + pi, config.grid)?;
    let n = config.grid;
    (0..n * n)
        .into_par_iter()
        .map(|cell| {
            let (row, col) = (cell / n, cell % n);
            let seed = derive_seed(config.seed, &[row as u64, col as u64]);
            let (beta1, gamma_p) = (betas[row], gammas[col]);
            let est = problem.evaluate(config.p, beta1, gamma_p, config.shots, seed)?;
            Ok(LandscapeCell {
                beta1,
                gamma_p,
                avg_ratio: est.avg_ratio,
                best_ratio: est.best_ratio,
                feasible_fraction: est.feasible_fraction,
            })
        })
        .collect()
}

/// Multistart optimisation of a prepared problem.
pub fn run_optimization_experiment<T: Real>(
    problem: &QaoaProblem<T>,
    config: &MultistartConfig<T>,
) -> Result<MultistartSummary<T>> {
    multistart_optimize(problem, config)
}

/// Best feasible MSE of a case, from the exhaustive ranking.
pub fn optimum_mse<T: Real>(mse: &QuboProblem<T>, n_sensors: usize) -> Result<T> {
    Ok(exhaustive_search(mse, n_sensors)?[0].mse)
}

