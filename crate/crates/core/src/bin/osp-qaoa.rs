use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use osp_qaoa::experiment::{exhaustive_search, render_comparison, run_landscape_scan, run_optimization_experiment, Case, LandscapeConfig};
use osp_qaoa::optimizer::{MultistartConfig, OptimizerSettings};
use osp_qaoa::output::{
    render_exhaustive_csv, render_landscape_csv, render_model_json, render_pgm, render_qubo_json, render_runs_csv,
    write_bytes, write_text,
};
use osp_qaoa::qaoa::{CostNormalization, InfeasibleScore, Mixer, ProblemSettings, QaoaProblem};
use osp_qaoa::Result;

#[derive(Parser)]
#[command(name = "osp-qaoa", version, about = "QAOA statevector experiments for optimal sensor placement")]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write stiffness, masses and modes of a built-in structure as JSON.
    Model {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long)]
        out: PathBuf,
        /// Also write the MSE QUBO coefficients as JSON.
        #[arg(long)]
        qubo: Option<PathBuf>,
    },
    /// Rank every sensor subset by modal strain energy.
    Exhaustive {
        #[arg(long, value_enum)]
        case: CaseArg,
        #[arg(long, default_value_t = 4)]
        sensors: usize,
        /// Rows to write; 0 writes the full ranking.
        #[arg(long, default_value_t = 10)]
        top: usize,
        #[arg(long)]
        out: PathBuf,
        /// Write the comparison against the reference ranking here instead of stdout.
        #[arg(long)]
        diff: Option<PathBuf>,
    },
    /// Scan the (β₁, γ_p) plane on a square grid.
    Landscape {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long, default_value_t = 50)]
        grid: usize,
        #[arg(long)]
        out: PathBuf,
        /// Greyscale heatmap of the average ratio.
        #[arg(long)]
        pgm: Option<PathBuf>,
        /// Exact expectations instead of sampled shots.
        #[arg(long)]
        exact: bool,
    },
    /// Multistart optimisation of (β₁, γ_p).
    Optimize {
        #[command(flatten)]
        circuit: CircuitArgs,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 150)]
        budget: usize,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct CircuitArgs {
    #[arg(long, value_enum)]
    case: CaseArg,
    #[arg(long, value_enum)]
    mixer: MixerArg,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 4)]
    sensors: usize,
    #[arg(long, default_value_t = 1000)]
    shots: usize,
    /// Penalty weight in MSE units for the X mixer (default 2·max|coef|·n_s).
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = InfeasibleArg::Zero)]
    infeasible_score: InfeasibleArg,
    #[arg(long, value_enum, default_value_t = NormalizeArg::MaxCoef)]
    normalize: NormalizeArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Shear16,
    Truss19,
}

impl From<CaseArg> for Case {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Shear16 => Case::Shear16,
            CaseArg::Truss19 => Case::Truss19,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MixerArg {
    X,
    Xy,
}

#[derive(Clone, Copy, ValueEnum)]
enum InfeasibleArg {
    Zero,
    Raw,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalizeArg {
    MaxCoef,
    None,
}

impl CircuitArgs {
    fn problem(&self) -> Result<QaoaProblem<f64>> {
        let data = Case::from(self.case).prepare::<f64>()?;
        let optimum = exhaustive_search(&data.mse, self.sensors)?[0].mse;
        let mut settings = ProblemSettings::new(
            self.sensors,
            match self.mixer {
                MixerArg::X => Mixer::StandardX,
                MixerArg::Xy => Mixer::FullXy,
            },
        );
        settings.alpha = self.alpha;
        settings.infeasible = match self.infeasible_score {
            InfeasibleArg::Zero => InfeasibleScore::Zero,
            InfeasibleArg::Raw => InfeasibleScore::Raw,
        };
        settings.normalization = match self.normalize {
            NormalizeArg::MaxCoef => CostNormalization::MaxCoefficient,
            NormalizeArg::None => CostNormalization::None,
        };
        QaoaProblem::new(&data.mse, optimum, settings)
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Model { case, out, qubo } => {
            let data = Case::from(case).prepare::<f64>()?;
            write_text(&out, &render_model_json(&data.model, &data.modal)?)?;
            if let Some(path) = qubo {
                write_text(&path, &render_qubo_json(&data.mse)?)?;
            }
        }
        Command::Exhaustive { case, sensors, top, out, diff } => {
            let case = Case::from(case);
            let data = case.prepare::<f64>()?;
            let ranking = exhaustive_search(&data.mse, sensors)?;
            let rows = if top == 0 { &ranking[..] } else { &ranking[..top.min(ranking.len())] };
            write_text(&out, &render_exhaustive_csv(rows))?;
            let report = render_comparison(case, &ranking);
            match diff {
                Some(path) => write_text(&path, &report)?,
                None => print!("{report}"),
            }
        }
        Command::Landscape { circuit, grid, out, pgm, exact } => {
            let problem = circuit.problem()?;
            let config = LandscapeConfig {
                p: circuit.p,
                grid,
                shots: if exact { 0 } else { circuit.shots },
                seed: circuit.seed,
            };
            let cells = run_landscape_scan(&problem, &config)?;
            write_text(&out, &render_landscape_csv(&cells, circuit.p, problem.settings().mixer))?;
            if let Some(path) = pgm {
                write_bytes(&path, &render_pgm(&cells, grid))?;
            }
        }
        Command::Optimize { circuit, restarts, budget, out } => {
            let problem = circuit.problem()?;
            let config = MultistartConfig {
                p: circuit.p,
                restarts,
                shots: circuit.shots,
                seed: circuit.seed,
                optimizer: OptimizerSettings { budget, ..Default::default() },
            };
            let summary = run_optimization_experiment(&problem, &config)?;
            write_text(&out, &render_runs_csv(&summary, circuit.p, problem.settings().mixer))?;
            eprintln!("mean final avg_ratio {:.4} (std {:.4})", summary.mean, summary.std);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::FAILURE;
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
