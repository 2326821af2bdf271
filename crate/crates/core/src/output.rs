//! CSV, JSON and PGM writers for experiment results.
//!
//! Writers render to a `String` first so the file write is a single call and
//! output bytes depend only on the data.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::experiment::{LandscapeCell, RankedSolution};
use crate::modal::{ModalBasis, StructuralModel};
use crate::optimizer::MultistartSummary;
use crate::qaoa::Mixer;
use crate::qubo::QuboProblem;
use crate::scalar::Real;

pub const EXHAUSTIVE_HEADER: &str = "rank,ratio,mse,locations";
pub const LANDSCAPE_HEADER: &str = "beta1,gamma_p,p,mixer,avg_ratio,best_ratio,feasible_fraction";
pub const RUNS_HEADER: &str =
    "run_id,mixer,p,seed,beta1_init,gammap_init,beta1_final,gammap_final,evaluations,final_avg_ratio,best_sampled_ratio";

const SIG_DIGITS: usize = 12;

/// `%.12g`: 12 significant digits, trailing zeros dropped, exponent form
/// outside `[1e-4, 1e12)`.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn f<T: Real>(x: T) -> String {
    format_float(x.as_f64())
}

pub fn write_text(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_bytes(path: &Path, contents: &[u8]) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn render_exhaustive_csv<T: Real>(rows: &[RankedSolution<T>]) -> String {
    let mut out = format!("{EXHAUSTIVE_HEADER}\n");
    for r in rows {
        let locs: Vec<String> = r.locations.iter().map(|l| l.to_string()).collect();
        writeln!(out, "{},{},{},{}", r.rank, f(r.ratio), f(r.mse), locs.join("+")).unwrap();
    }
    out
}

pub fn render_landscape_csv<T: Real>(cells: &[LandscapeCell<T>], p: usize, mixer: Mixer) -> String {
    let mut out = format!("{LANDSCAPE_HEADER}\n");
    for c in cells {
        writeln!(
            out,
            "{},{},{p},{mixer},{},{},{}",
            f(c.beta1),
            f(c.gamma_p),
            f(c.avg_ratio),
            f(c.best_ratio),
            f(c.feasible_fraction)
        )
        .unwrap();
    }
    out
}

/// A parsed landscape CSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct LandscapeRow {
    pub p: usize,
    pub mixer: Mixer,
    pub cell: LandscapeCell<f64>,
}

pub fn parse_landscape_csv(path: &Path, text: &str) -> Result<Vec<LandscapeRow>> {
    let err = |line: usize, message: String| Error::Parse {
        path: path.to_path_buf(),
        message: format!("line {line}: {message}"),
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == LANDSCAPE_HEADER => {}
        Some((_, h)) => return Err(err(1, format!("unexpected header {h:?}"))),
        None => return Err(err(1, "empty file".into())),
    }
    lines
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 7 {
                return Err(err(i + 1, format!("expected 7 fields, found {}", fields.len())));
            }
            let num = |k: usize| {
                fields[k]
                    .parse::<f64>()
                    .map_err(|e| err(i + 1, format!("field {}: {e}", k + 1)))
            };
            let mixer = match fields[3] {
                "x" => Mixer::StandardX,
                "xy" => Mixer::FullXy,
                other => return Err(err(i + 1, format!("unknown mixer {other:?}"))),
            };
            Ok(LandscapeRow {
                p: fields[2].parse().map_err(|e| err(i + 1, format!("p: {e}")))?,
                mixer,
                cell: LandscapeCell {
                    beta1: num(0)?,
                    gamma_p: num(1)?,
                    avg_ratio: num(4)?,
                    best_ratio: num(5)?,
                    feasible_fraction: num(6)?,
                },
            })
        })
        .collect()
}

pub fn render_runs_csv<T: Real>(summary: &MultistartSummary<T>, p: usize, mixer: Mixer) -> String {
    let mut out = format!("{RUNS_HEADER}\n");
    for run in &summary.runs {
        let [b, g] = run.result.best_params;
        writeln!(
            out,
            "{},{mixer},{p},{},{},{},{},{},{},{},{}",
            run.run_id,
            run.seed,
            f(run.start[0]),
            f(run.start[1]),
            f(b),
            f(g),
            run.result.evaluations,
            f(run.final_estimate.avg_ratio),
            f(run.final_estimate.best_ratio)
        )
        .unwrap();
    }
    writeln!(out, "# mean={},std={}", f(summary.mean), f(summary.std)).unwrap();
    out
}

#[derive(Serialize)]
struct ModelJson {
    n_dof: usize,
    stiffness: Vec<f64>,
    mass_diagonal: Vec<f64>,
    frequencies_sq: Vec<f64>,
    /// Column-major: mode `i` occupies `[i·n_dof, (i+1)·n_dof)`.
    mode_shapes: Vec<f64>,
    dof_labels: Vec<String>,
}

pub fn render_model_json<T: Real>(model: &StructuralModel<T>, modal: &ModalBasis<T>) -> Result<String> {
    let conv = |v: &[T]| v.iter().map(|x| x.as_f64()).collect::<Vec<_>>();
    let json = ModelJson {
        n_dof: model.n_dof(),
        stiffness: conv(model.stiffness().as_row_major()),
        mass_diagonal: conv(model.mass_diagonal()),
        frequencies_sq: conv(&modal.frequencies_sq),
        mode_shapes: conv(&modal.mode_shapes.to_column_major()),
        dof_labels: model.dof_labels().to_vec(),
    };
    Ok(serde_json::to_string_pretty(&json)? + "\n")
}

#[derive(Serialize)]
struct QuboJson {
    n_vars: usize,
    sense: &'static str,
    offset: f64,
    linear: Vec<f64>,
    /// `[p, q, coefficient]` with `p < q`, 0-based.
    quadratic: Vec<(usize, usize, f64)>,
}

pub fn render_qubo_json<T: Real>(qubo: &QuboProblem<T>) -> Result<String> {
    let json = QuboJson {
        n_vars: qubo.n_vars(),
        sense: match qubo.sense() {
            crate::qubo::Sense::Maximize => "maximize",
            crate::qubo::Sense::Minimize => "minimize",
        },
        offset: qubo.offset().as_f64(),
        linear: qubo.linear().iter().map(|x| x.as_f64()).collect(),
        quadratic: qubo.quadratic().iter().map(|(&(p, q), v)| (p, q, v.as_f64())).collect(),
    };
    Ok(serde_json::to_string_pretty(&json)? + "\n")
}

/// Binary greyscale PGM of `avg_ratio`: rows are `β_1` (top = −π), columns
/// `γ_p`; black is the grid minimum and white the maximum.
pub fn render_pgm<T: Real>(cells: &[LandscapeCell<T>], grid: usize) -> Vec<u8> {
    assert_eq!(cells.len(), grid * grid, "cells must form a square grid");
    let values: Vec<f64> = cells.iter().map(|c| c.avg_ratio.as_f64()).collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = if hi > lo { hi - lo } else { 1.0 };
    let mut out = format!("P5\n{grid} {grid}\n255\n").into_bytes();
    out.extend(values.iter().map(|v| (((v - lo) / span) * 255.0).round() as u8));
    out
}
