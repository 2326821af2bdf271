//! Acceptance suite. Runs every criterion at its stated tolerance, prints one
//! `PASS`/`FAIL` line per criterion and exits non-zero if any fails.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use osp_qaoa::dense::{consolidate, embed, DenseMatrix, PlacedGate};
use osp_qaoa::experiment::{exhaustive_search, render_comparison, run_landscape_scan, Case, LandscapeConfig};
use osp_qaoa::optimizer::{multistart_optimize, MultistartConfig, OptimizerSettings};
use osp_qaoa::qaoa::{gate_count, linear_schedule, run_qaoa_circuit, Mixer, ProblemSettings, QaoaConfig, QaoaProblem};
use osp_qaoa::qubo::{add_cardinality_penalty, qubo_to_ising, IsingCoefficients, QuboProblem, Sense};
use osp_qaoa::statevec::{GateMatrix, StateVector};

type C64 = Complex<f64>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random_qubo(rng: &mut ChaCha8Rng, n: usize, density: f64) -> QuboProblem<f64> {
    let mut q = QuboProblem::new(n, Sense::Minimize);
    q.add_offset(rng.gen_range(-2.0..2.0));
    for p in 0..n {
        q.add_linear(p, rng.gen_range(-3.0..3.0));
        for r in (p + 1)..n {
            if rng.gen_bool(density) {
                q.add_quadratic(p, r, rng.gen_range(-3.0..3.0));
            }
        }
    }
    q
}

/// Kronecker product of per-qubit diagonals; qubit 0 is the leftmost factor.
fn kron_diag(factors: &[[f64; 2]]) -> Vec<f64> {
    factors.iter().fold(vec![1.0], |acc, f| {
        acc.iter().flat_map(|&x| [x * f[0], x * f[1]]).collect()
    })
}

/// `a·I + Σ b_j Z_j + Σ c_jk Z_j Z_k` assembled from Kronecker products.
fn ising_diag_by_kron(ising: &IsingCoefficients<f64>, with_constant: bool) -> Vec<f64> {
    let n = ising.n_vars;
    let z_on = |qs: &[usize]| -> Vec<f64> {
        let factors: Vec<[f64; 2]> = (0..n)
            .map(|q| if qs.contains(&q) { [1.0, -1.0] } else { [1.0, 1.0] })
            .collect();
        kron_diag(&factors)
    };
    let mut d = vec![if with_constant { ising.a } else { 0.0 }; 1 << n];
    for (j, &b) in ising.b.iter().enumerate() {
        for (x, z) in d.iter_mut().zip(z_on(&[j])) {
            *x += b * z;
        }
    }
    for (&(j, k), &c) in &ising.c {
        for (x, z) in d.iter_mut().zip(z_on(&[j, k])) {
            *x += c * z;
        }
    }
    d
}

fn brute_force_qubo(q: &QuboProblem<f64>, m: usize) -> f64 {
    let n = q.n_vars();
    let x: Vec<f64> = (0..n).map(|p| ((m >> (n - 1 - p)) & 1) as f64).collect();
    let mut v = q.offset();
    for p in 0..n {
        v += q.linear()[p] * x[p];
        for r in (p + 1)..n {
            v += q.quadratic_coefficient(p, r) * x[p] * x[r];
        }
    }
    v
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.gen_range(1..=6);
        let density = rng.gen_range(0.0..=1.0);
        let q = random_qubo(&mut rng, n, density);
        let ising = qubo_to_ising(&q).unwrap();
        let oracle = ising_diag_by_kron(&ising, true);
        let ours = ising.diagonal(true).unwrap();
        for m in 0..1usize << n {
            let f = brute_force_qubo(&q, m);
            worst = worst.max((oracle[m] - f).abs()).max((ours[m] - f).abs());
        }
    }
    // two-variable fixed cases: linear-only and with the coupling term
    let (a1, a2, a12) = (1.25, -0.5, 2.0);
    let mut lin = QuboProblem::new(2, Sense::Minimize);
    lin.add_linear(0, a1);
    lin.add_linear(1, a2);
    let mut quad = lin.clone();
    quad.add_quadratic(0, 1, a12);
    let d_lin = ising_diag_by_kron(&qubo_to_ising(&lin).unwrap(), true);
    let d_quad = ising_diag_by_kron(&qubo_to_ising(&quad).unwrap(), true);
    let expect_lin = [0.0, a2, a1, a1 + a2];
    let expect_quad = [0.0, a2, a1, a1 + a2 + a12];
    for m in 0..4 {
        worst = worst.max((d_lin[m] - expect_lin[m]).abs()).max((d_quad[m] - expect_quad[m]).abs());
    }
    outcome(worst <= 1e-12, format!("max |Ising − brute force| = {worst:.2e} over 200 QUBOs + fixed diagonals (tol 1e-12)"))
}

fn gate(g: &GateMatrix<f64>, q: usize) -> PlacedGate<f64> {
    PlacedGate::single(g, q)
}

/// Literal gate-level circuit: Hadamards (X mixer) or a Dicke vector,
/// R_z / CX·R_z·CX cost layers and matrix-exponential mixers.
fn dense_circuit(ising: &IsingCoefficients<f64>, mixer: Mixer, ns: usize, p: usize, beta1: f64, gamma_p: f64) -> Vec<C64> {
    let n = ising.n_vars;
    let sched = linear_schedule(beta1, gamma_p, p).unwrap();
    let x = DenseMatrix::from(&GateMatrix::<f64>::pauli_x());
    let y = DenseMatrix::from(&GateMatrix::<f64>::pauli_y());
    let xx_yy = x.kron(&x).add(&y.kron(&y));
    let mut gates = Vec::new();
    if mixer == Mixer::StandardX {
        gates.extend((0..n).map(|q| gate(&GateMatrix::hadamard(), q)));
    }
    for (&g, &b) in sched.gammas.iter().zip(&sched.betas) {
        for (j, &bj) in ising.b.iter().enumerate() {
            gates.push(gate(&GateMatrix::rz(2.0 * g * bj), j));
        }
        for (&(j, k), &c) in &ising.c {
            gates.push(PlacedGate::two(&GateMatrix::cx(), j, k));
            gates.push(gate(&GateMatrix::rz(2.0 * g * c), k));
            gates.push(PlacedGate::two(&GateMatrix::cx(), j, k));
        }
        match mixer {
            Mixer::StandardX => {
                let u = x.scale(C64::new(0.0, -b)).expm();
                gates.extend((0..n).map(|q| PlacedGate { matrix: u.clone(), qubits: vec![q] }));
            }
            Mixer::FullXy => {
                let u = xx_yy.scale(C64::new(0.0, b / 4.0)).expm();
                for k in 0..n {
                    for m in (k + 1)..n {
                        gates.push(PlacedGate { matrix: u.clone(), qubits: vec![k, m] });
                    }
                }
            }
        }
    }
    let u = consolidate(n, &gates).unwrap();
    let mut psi0 = vec![C64::new(0.0, 0.0); 1 << n];
    match mixer {
        Mixer::StandardX => psi0[0] = C64::new(1.0, 0.0),
        Mixer::FullXy => {
            let members: Vec<usize> = (0..1usize << n).filter(|m| m.count_ones() as usize == ns).collect();
            let a = 1.0 / (members.len() as f64).sqrt();
            for m in members {
                psi0[m] = C64::new(a, 0.0);
            }
        }
    }
    u.mul_vec(&psi0)
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    // R_x identity: e^{−iβX} equals R_x(2β)
    let x = DenseMatrix::from(&GateMatrix::<f64>::pauli_x());
    for _ in 0..20 {
        let b: f64 = rng.gen_range(-3.0..3.0);
        let u = x.scale(C64::new(0.0, -b)).expm();
        worst = worst.max(u.max_diff(&DenseMatrix::from(&GateMatrix::rx(2.0 * b))));
        // pairwise XY block against the explicit partial-swap matrix
        let xy = DenseMatrix::from(&GateMatrix::<f64>::xy_pair(b));
        let e = embed(&xy, &[0, 1], 2).unwrap();
        let y = DenseMatrix::from(&GateMatrix::<f64>::pauli_y());
        let gen = x.kron(&x).add(&y.kron(&y)).scale(C64::new(0.0, b / 4.0)).expm();
        worst = worst.max(e.max_diff(&gen));
    }
    for mixer in [Mixer::StandardX, Mixer::FullXy] {
        for _ in 0..50 {
            let n = rng.gen_range(2..=4);
            let p = rng.gen_range(1..=3);
            let ns = rng.gen_range(1..n);
            let q = random_qubo(&mut rng, n, 0.7);
            let ising = qubo_to_ising(&q).unwrap();
            let beta1 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let gamma_p = rng.gen_range(-2.0 * std::f64::consts::PI..2.0 * std::f64::consts::PI);
            let config = QaoaConfig {
                p,
                mixer,
                shots: 0,
                n_sensors: ns,
                alpha: None,
                seed: 0,
            };
            let ours = run_qaoa_circuit(&ising, &config, beta1, gamma_p).unwrap();
            let dense = dense_circuit(&ising, mixer, ns, p, beta1, gamma_p);
            for (a, b) in ours.amplitudes().iter().zip(&dense) {
                worst = worst.max((a - b).norm());
            }
        }
    }
    outcome(worst <= 1e-10, format!("max amplitude error vs dense oracle = {worst:.2e} (tol 1e-10)"))
}

fn criterion_3() -> Outcome {
    let data = Case::Truss19.prepare::<f64>().unwrap();
    let optimum = exhaustive_search(&data.mse, 4).unwrap()[0].mse;
    let problem = QaoaProblem::new(&data.mse, optimum, ProblemSettings::new(4, Mixer::FullXy)).unwrap();
    let diag = problem.ising().diagonal(false).unwrap();
    let sched = linear_schedule(0.9, 2.3, 15).unwrap();
    let mut state = StateVector::<f64>::dicke(19, 4).unwrap();
    let mut worst = state.probability_outside_weight(4);
    for (&g, &b) in sched.gammas.iter().zip(&sched.betas) {
        state.apply_cost_phase(&diag, g).unwrap();
        state.apply_xy_mixer_layer(b);
        worst = worst.max(state.probability_outside_weight(4));
    }
    // the sector engine must agree with the full register
    let sector = match problem.evolve(15, 0.9, 2.3).unwrap() {
        osp_qaoa::qaoa::Evolved::Sector(s) => s,
        _ => unreachable!("XY problems evolve in the weight sector"),
    };
    let embedded = sector.to_statevector();
    let drift = embedded
        .amplitudes()
        .iter()
        .zip(state.amplitudes())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-10 && drift <= 1e-10,
        format!("max leaked mass over 15 layers = {worst:.2e}; sector vs full drift = {drift:.2e} (tol 1e-10)"),
    )
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let data = Case::Shear16.prepare::<f64>().unwrap();
    let ranking = exhaustive_search(&data.mse, 4).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    // the tie group: subsets whose MSE equals the optimum to rounding
    let tied: Vec<_> = ranking
        .iter()
        .take_while(|r| (ranking[0].mse - r.mse).abs() <= 1e-9 * ranking[0].mse)
        .collect();
    let tie_ratio_ok = tied.iter().all(|r| (r.ratio - 1.0).abs() <= 0.005);
    let mut top: Vec<Vec<usize>> = tied.iter().map(|r| r.locations.clone()).collect();
    top.sort();
    let expected = vec![vec![1, 2, 3, 4], vec![2, 3, 4, 5], vec![4, 5, 6, 7], vec![5, 6, 7, 8], vec![7, 8, 9, 10]];
    let r12 = ranking.iter().find(|r| r.locations == [12, 13, 14, 15]).map(|r| r.ratio);
    let r12_ok = r12.is_some_and(|r| (r - 0.997).abs() <= 0.005);
    // oracle consistency: rank 1 equals the best weight-4 entry of the
    // negated objective's Ising diagonal
    let neg = qubo_to_ising(&data.mse.negated()).unwrap();
    let diag = ising_diag_by_kron(&neg, true);
    let oracle_best = (0..diag.len())
        .filter(|m| m.count_ones() == 4)
        .map(|m| -diag[m])
        .fold(f64::NEG_INFINITY, f64::max);
    let oracle_ok = (oracle_best - ranking[0].mse).abs() <= 1e-9 * oracle_best;
    outcome(
        ranking.len() == 1820 && top == expected && tie_ratio_ok && r12_ok && oracle_ok && elapsed < 5.0,
        format!(
            "{} subsets in {elapsed:.2}s; tied top sets {:?} at ratio 1.000; {{12..15}} ratio {:.4}; oracle rank-1 match {oracle_ok}",
            ranking.len(),
            top,
            r12.unwrap_or(f64::NAN)
        ),
    )
}

fn criterion_5(report_dir: &Path) -> (Outcome, Outcome) {
    let data = Case::Truss19.prepare::<f64>().unwrap();
    let ranking = exhaustive_search(&data.mse, 4).unwrap();
    let rank3 = ranking[2].locations.clone();
    let target = ranking[0].locations == [11, 15, 18, 19]
        && (ranking[1].ratio - 0.965).abs() <= 0.01
        && rank3 == [1, 5, 9, 13]
        && (ranking[2].ratio - 0.940).abs() <= 0.01;
    let target_detail = format!(
        "rank-1 {:?}, rank-2 ratio {:.4}, rank-3 {:?} at {:.4} (targets {{11,15,18,19}}, 0.965, {{1,5,9,13}} at 0.940)",
        ranking[0].locations, ranking[1].ratio, rank3, ranking[2].ratio
    );
    let report = render_comparison(Case::Truss19, &ranking);
    let path = report_dir.join("truss19_ranking_diff.txt");
    let written = std::fs::write(&path, &report).is_ok() && std::fs::metadata(&path).is_ok_and(|m| m.len() > 0);
    print!("{report}");
    (
        outcome(target, target_detail),
        outcome(written, format!("ranking diff report written to {}", path.display())),
    )
}

fn max_of(cells: &[osp_qaoa::experiment::LandscapeCell<f64>], f: impl Fn(&osp_qaoa::experiment::LandscapeCell<f64>) -> f64) -> f64 {
    cells.iter().map(f).fold(f64::NEG_INFINITY, f64::max)
}

fn criterion_6() -> Outcome {
    let data = Case::Shear16.prepare::<f64>().unwrap();
    let optimum = exhaustive_search(&data.mse, 4).unwrap()[0].mse;
    let xy = QaoaProblem::new(&data.mse, optimum, ProblemSettings::new(4, Mixer::FullXy)).unwrap();
    let x = QaoaProblem::new(&data.mse, optimum, ProblemSettings::new(4, Mixer::StandardX)).unwrap();
    let scan = |problem: &QaoaProblem<f64>, p: usize| {
        run_landscape_scan(problem, &LandscapeConfig { p, grid: 50, shots: 1000, seed: 6 }).unwrap()
    };
    let mut best = Vec::new();
    let mut xy15_avg = 0.0;
    for p in [1, 2, 7, 15] {
        let cells = scan(&xy, p);
        best.push(max_of(&cells, |c| c.best_ratio));
        if p == 15 {
            xy15_avg = max_of(&cells, |c| c.avg_ratio);
        }
    }
    let x15_avg = max_of(&scan(&x, 15), |c| c.avg_ratio);
    let monotone = best.windows(2).all(|w| w[1] >= w[0]);
    outcome(
        monotone && xy15_avg > x15_avg,
        format!(
            "XY max best_ratio over p=1,2,7,15: {:?}; p=15 max avg_ratio XY {xy15_avg:.4} vs X {x15_avg:.4}",
            best.iter().map(|b| format!("{b:.4}")).collect::<Vec<_>>()
        ),
    )
}

fn criterion_7() -> Outcome {
    let data = Case::Truss19.prepare::<f64>().unwrap();
    let optimum = exhaustive_search(&data.mse, 4).unwrap()[0].mse;
    let config = MultistartConfig {
        p: 7,
        restarts: 50,
        shots: 1000,
        seed: 7,
        optimizer: OptimizerSettings { budget: 150, ..Default::default() },
    };
    let run = |mixer| {
        let problem = QaoaProblem::new(&data.mse, optimum, ProblemSettings::new(4, mixer)).unwrap();
        multistart_optimize(&problem, &config).unwrap()
    };
    let xy = run(Mixer::FullXy);
    let x = run(Mixer::StandardX);
    outcome(
        (xy.mean - 0.6).abs() <= 0.15 && xy.mean > x.mean,
        format!(
            "XY mean {:.4} (std {:.4}), X mean {:.4} (std {:.4}); target 0.6 ± 0.15 and XY > X",
            xy.mean, xy.std, x.mean, x.std
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let shots = 100_000;
    let mut worst_stat = String::new();
    let mut chi_ok = true;
    let mut mean_ok = true;
    let mut worst_z = 0.0f64;
    for trial in 0..20 {
        let amps: Vec<C64> = (0..16).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let state = StateVector::from_amplitudes(amps).unwrap();
        let probs = state.probabilities();
        let mut counts = [0usize; 16];
        for m in state.sample_indices(shots, 100 + trial) {
            counts[m] += 1;
        }
        // pool cells with fewer than 5 expected counts
        let (mut stat, mut cells, mut pool_e, mut pool_o) = (0.0, 0usize, 0.0, 0.0);
        for (m, &p) in probs.iter().enumerate() {
            let e = p * shots as f64;
            if e < 5.0 {
                pool_e += e;
                pool_o += counts[m] as f64;
            } else {
                stat += (counts[m] as f64 - e).powi(2) / e;
                cells += 1;
            }
        }
        if pool_e > 0.0 {
            stat += (pool_o - pool_e).powi(2) / pool_e.max(f64::MIN_POSITIVE);
            cells += 1;
        }
        let critical = ChiSquared::new((cells - 1) as f64).unwrap().inverse_cdf(0.999);
        if stat > critical {
            chi_ok = false;
            worst_stat = format!("trial {trial}: χ² {stat:.2} > {critical:.2}");
        }
        // exact expectation of a random diagonal observable vs the shot mean
        let diag: Vec<f64> = (0..16).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let exact = state.expectation_of_diagonal(&diag).unwrap();
        let var = probs.iter().zip(&diag).map(|(p, d)| p * (d - exact).powi(2)).sum::<f64>();
        let draws = state.sample_indices(shots, 500 + trial);
        let mean = draws.iter().map(|&m| diag[m]).sum::<f64>() / shots as f64;
        let z = (mean - exact).abs() / (var / shots as f64).sqrt();
        worst_z = worst_z.max(z);
        mean_ok &= z <= 3.0;
    }
    // exact mode of the QAOA estimator against its sampled mode
    let mut q = QuboProblem::<f64>::new(4, Sense::Maximize);
    for p in 0..4 {
        q.add_linear(p, 1.0 + p as f64);
    }
    q.add_quadratic(0, 2, 0.5);
    let problem = QaoaProblem::new(&q, 7.0, ProblemSettings::new(2, Mixer::StandardX)).unwrap();
    let state = problem.evolve(2, 0.4, 0.9).unwrap();
    let exact = problem.estimate(&state, 0, 0).unwrap();
    let sampled = problem.estimate(&state, shots, 9).unwrap();
    let full = state.to_statevector();
    let var = full
        .probabilities()
        .iter()
        .enumerate()
        .map(|(m, p)| p * (problem.ratio_of_index(m) - exact.avg_ratio).powi(2))
        .sum::<f64>();
    let z_est = (sampled.avg_ratio - exact.avg_ratio).abs() / (var / shots as f64).sqrt();
    mean_ok &= z_est <= 3.0;
    outcome(
        chi_ok && mean_ok,
        format!(
            "chi-square at 0.001 over 20 states: {}; max |z| of shot means {:.2}, estimator |z| {z_est:.2} (limit 3)",
            if chi_ok { "all pass".to_string() } else { worst_stat },
            worst_z
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    let mut lines = Vec::new();
    let mut check = |label: String, ising: &IsingCoefficients<f64>, mixer: Mixer, p: usize| {
        let n = ising.n_vars;
        let q = ising.c.values().filter(|&&c| c != 0.0).count();
        let gc = gate_count(ising, p, mixer);
        let formula = p * (3 * q + n) + n;
        let bound = (3 * n * n - n) / 2;
        let good = gc.total() == formula && gc.cost_per_layer <= bound && gc.cost_layer_bound() == bound;
        ok &= good;
        lines.push(format!("{label}: {} gates (formula {formula})", gc.total()));
    };
    for case in Case::ALL {
        let data = case.prepare::<f64>().unwrap();
        let xy = qubo_to_ising(&data.mse.negated()).unwrap();
        let pen = add_cardinality_penalty(&data.mse, 4, 1.0).unwrap();
        let x = qubo_to_ising(&pen).unwrap();
        check(format!("{case} xy"), &xy, Mixer::FullXy, 7);
        check(format!("{case} x"), &x, Mixer::StandardX, 7);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..20 {
        let n = rng.gen_range(2..=16);
        let density = rng.gen_range(0.0..=1.0);
        let q = random_qubo(&mut rng, n, density);
        let ising = qubo_to_ising(&q).unwrap();
        check(format!("random {i}"), &ising, Mixer::StandardX, rng.gen_range(1..=15));
    }
    outcome(ok, lines[..4].join("; ") + "; 20 random sparsities")
}

fn cli(args: &[&str], dir: &Path) -> bool {
    Command::new(env!("CARGO_BIN_EXE_osp-qaoa"))
        .args(args)
        .current_dir(dir)
        .output()
        .map(|o| o.status.success())
        .unwrap_or(false)
}

fn criterion_10(dir: &Path) -> Outcome {
    let invocations: Vec<(&str, Vec<&str>)> = vec![
        ("model.json", vec!["model", "--case", "truss19", "--out"]),
        ("exhaustive.csv", vec!["exhaustive", "--case", "shear16", "--top", "0", "--diff", "diff.txt", "--out"]),
        (
            "landscape_xy.csv",
            vec!["landscape", "--case", "shear16", "--mixer", "xy", "--p", "3", "--grid", "8", "--seed", "11", "--pgm", "l.pgm", "--out"],
        ),
        (
            "landscape_x.csv",
            vec!["landscape", "--case", "shear16", "--mixer", "x", "--p", "2", "--grid", "6", "--seed", "12", "--out"],
        ),
        (
            "runs.csv",
            vec!["optimize", "--case", "shear16", "--mixer", "xy", "--p", "3", "--restarts", "4", "--budget", "40", "--seed", "13", "--out"],
        ),
    ];
    let mut ok = true;
    let mut reference: Vec<Vec<u8>> = Vec::new();
    for (round, threads) in ["1", "1", "4", "4"].iter().enumerate() {
        let sub = dir.join(format!("round{round}"));
        std::fs::create_dir_all(&sub).unwrap();
        let mut outputs = Vec::new();
        for (file, args) in &invocations {
            let mut full: Vec<&str> = vec!["--threads", threads];
            full.extend(args.iter().copied());
            full.push(file);
            ok &= cli(&full, &sub);
            outputs.push(std::fs::read(sub.join(file)).unwrap_or_default());
        }
        outputs.push(std::fs::read(sub.join("diff.txt")).unwrap_or_default());
        outputs.push(std::fs::read(sub.join("l.pgm")).unwrap_or_default());
        if reference.is_empty() {
            reference = outputs;
        } else {
            ok &= outputs == reference;
        }
    }
    ok &= reference.iter().all(|o| !o.is_empty());
    outcome(ok, "model, exhaustive, landscape (x, xy, pgm) and optimize outputs byte-identical across 2 serial and 2 four-thread runs")
}

fn main() -> ExitCode {
    let out_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&out_dir).unwrap();
    let mut results: Vec<(String, Outcome)> = Vec::new();
    let mut run = |name: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        println!(
            "[{}] {name}: {} ({:.1}s)",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed().as_secs_f64()
        );
        results.push((name.to_string(), o));
    };
    run("criterion 1 encoding oracle equivalence", &mut criterion_1);
    run("criterion 2 circuit oracle equivalence", &mut criterion_2);
    run("criterion 3 subspace conservation", &mut criterion_3);
    run("criterion 4 exhaustive ground truth, shear building", &mut criterion_4);
    let (target, report) = criterion_5(&out_dir);
    println!(
        "[{}] criterion 5 target ranking, Warren truss: {}",
        if target.pass { "PASS" } else { "FAIL" },
        target.detail
    );
    run("criterion 6 landscape qualitative reproduction", &mut criterion_6);
    run("criterion 7 multistart behaviour", &mut criterion_7);
    run("criterion 8 sampling statistics", &mut criterion_8);
    run("criterion 9 gate-count formula", &mut criterion_9);
    run("criterion 10 determinism", &mut || criterion_10(&out_dir.join("cli")));

    // the truss ranking passes either on target or through the contingent
    // path: diff report emitted and criteria 1-3 and 6-8 passing
    let internal = results
        .iter()
        .filter(|(name, _)| ["criterion 1 ", "criterion 2 ", "criterion 3 ", "criterion 6 ", "criterion 7 ", "criterion 8 "].iter().any(|p| name.starts_with(p)))
        .all(|(_, o)| o.pass);
    let c5 = target.pass || (report.pass && internal);
    println!(
        "[{}] criterion 5 exhaustive ground truth, Warren truss: {}",
        if c5 { "PASS" } else { "FAIL" },
        if target.pass {
            "target ranking reproduced".to_string()
        } else {
            format!("contingent path; {}; internal criteria pass: {internal}", report.detail)
        }
    );
    results.push(("criterion 5".into(), outcome(c5, "")));

    let failed = results.iter().filter(|(_, o)| !o.pass).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
