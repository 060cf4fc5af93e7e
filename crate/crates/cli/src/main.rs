//! `horoflow`: reproducible orbit, density, classification and acceptance runs.
//!
//! Exit codes: 0 success, 1 dynamics or criterion failure, 2 usage or parse error.

mod config;
mod gens;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use horoflow::checks::{run_criterion, suite, SUITES};
use horoflow::diagnostics::{default_binning, CoverageCounter, DensityReport};
use horoflow::flows::OrbitIter;
use horoflow::groups::{classify_psl_projection, detect_semi_parabolic, discreteness_gap, word_ball_with, BallLimits};
use horoflow::{
    integrate_orbit, BoundaryPoint, Lift, Model, MoebiusElement, TransverseElement, TransverseKind, TransversePoint,
};
use thiserror::Error;

use config::{output_target, LiftChoice, RawConfig, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "horoflow", version, about = "Horocycle, geodesic and Borel flows on homogeneous quotients")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate an orbit and write it as CSV.
    Flow(RunArgs),
    /// Measure grid coverage of an orbit and write a JSON report.
    Density(RunArgs),
    /// Classify the group generated by a generator file.
    Classify {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// Discreteness gap threshold.
        #[arg(long, default_value_t = horoflow::groups::DEFAULT_GAP_TOL)]
        tol: f64,
    },
    /// Run an acceptance suite.
    Check {
        /// Suite name (`all`, `quick`, `keylemma`, `t3a`, ...).
        suite: String,
    },
    /// Scatter two columns of an orbit CSV as SVG.
    Plot {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "c1")]
        x: String,
        #[arg(long, default_value = "c2")]
        y: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    /// `key = value` file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// t3a, octagon, octagon_so3, octagon_boundary or modular.
    #[arg(long)]
    model: Option<String>,
    /// Integer matrix entries "a b c d" for t3a.
    #[arg(long = "A")]
    a: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// u, d, b or sol3u.
    #[arg(long)]
    flow: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    dt: Option<f64>,
    #[arg(long)]
    d_alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d_beta: Option<f64>,
    #[arg(long)]
    steps: Option<u64>,
    /// sol (t3a only) or frame.
    #[arg(long)]
    lift: Option<String>,
    /// Start point: "x y t" for sol lifts, "a b c d" for frames.
    #[arg(long, allow_hyphen_values = true)]
    start: Option<String>,
    /// Transverse start coordinates (real, boundary angle, or quaternion w x y z).
    #[arg(long, allow_hyphen_values = true)]
    fiber: Option<String>,
    /// Cells per axis for `density`, e.g. "50,50".
    #[arg(long)]
    bins: Option<String>,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

impl RunArgs {
    fn resolve(&self) -> Result<RunConfig, CliError> {
        let mut raw = match &self.config {
            Some(p) => RawConfig::from_file(p)?,
            None => RawConfig::default(),
        };
        raw.set("model", self.model.clone());
        raw.set("A", self.a.clone());
        raw.set("seed", self.seed.map(|v| v.to_string()));
        raw.set("flow", self.flow.clone());
        raw.set("dt", self.dt.map(|v| v.to_string()));
        raw.set("d_alpha", self.d_alpha.map(|v| v.to_string()));
        raw.set("d_beta", self.d_beta.map(|v| v.to_string()));
        raw.set("steps", self.steps.map(|v| v.to_string()));
        raw.set("lift", self.lift.clone());
        raw.set("start", self.start.clone());
        raw.set("fiber", self.fiber.clone());
        raw.set("bins", self.bins.clone());
        raw.validate()
    }
}

fn failure<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Failure(e.to_string())
}

fn start_lift(model: &Model, cfg: &RunConfig) -> Result<Lift, CliError> {
    match (model, cfg.lift) {
        (Model::T3A(t), LiftChoice::Sol) => {
            let p = match cfg.start.as_deref() {
                None => [0.0; 3],
                Some([x, y, s]) => [*x, *y, *s],
                Some(v) => return Err(CliError::Usage(format!("sol start needs 3 numbers, got {}", v.len()))),
            };
            if cfg.fiber.is_some() {
                return Err(CliError::Usage("`fiber` does not apply to sol lifts".into()));
            }
            Ok(Lift::Sol(t.sol_from_unprimed(p)))
        }
        (_, _) => {
            let frame = match cfg.start.as_deref() {
                None => MoebiusElement::IDENTITY,
                Some([a, b, c, d]) => MoebiusElement::new(*a, *b, *c, *d).map_err(|e| CliError::Usage(e.to_string()))?,
                Some(v) => return Err(CliError::Usage(format!("frame start needs 4 numbers, got {}", v.len()))),
            };
            let kind = model.transverse();
            let fiber = match (kind, cfg.fiber.as_deref()) {
                (_, None) => TransversePoint::origin(kind),
                (TransverseKind::RealAffine, Some([y])) => TransversePoint::Real(*y),
                (TransverseKind::BoundaryCircle, Some([theta])) => {
                    TransversePoint::Boundary(BoundaryPoint::from_angle(*theta))
                }
                (TransverseKind::Rotations3, Some([w, x, y, z])) if [w, x, y, z].iter().any(|v| **v != 0.0) => {
                    match TransverseElement::rotation(*w, *x, *y, *z) {
                        TransverseElement::Rotation(q) => TransversePoint::Rotation(q),
                        _ => unreachable!(),
                    }
                }
                (k, Some(v)) => {
                    return Err(CliError::Usage(format!("fiber {v:?} does not fit transverse space {k:?}")))
                }
            };
            Ok(Lift::frame(frame, fiber))
        }
    }
}

fn cmd_flow(args: &RunArgs) -> Result<(), CliError> {
    let cfg = args.resolve()?;
    let model = Model::build(&cfg.model).map_err(failure)?;
    let start = start_lift(&model, &cfg)?;
    let seg = integrate_orbit(&model, &start, cfg.flow, cfg.steps, cfg.seed).map_err(failure)?;
    output::emit(output_target(&args.output), &output::orbit_csv(&seg)?)
}

fn cmd_density(args: &RunArgs) -> Result<(), CliError> {
    let cfg = args.resolve()?;
    let model = Model::build(&cfg.model).map_err(failure)?;
    let start = start_lift(&model, &cfg)?;
    let binning = default_binning(&model, cfg.bins.as_deref()).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut counter = CoverageCounter::new(&binning);
    for sample in OrbitIter::new(&model, &start, cfg.flow, cfg.steps).map_err(failure)? {
        counter.add(&sample.map_err(failure)?.1.coords);
    }
    let report = DensityReport {
        model: model.id().to_string(),
        flow: cfg.flow.name().to_string(),
        steps: cfg.steps,
        seed: cfg.seed,
        bins: binning.bins(),
        visited: counter.visited(),
        total: binning.total(),
        fraction: counter.fraction(),
    };
    let mut json = serde_json::to_string_pretty(&report).map_err(failure)?;
    json.push('\n');
    output::emit(output_target(&args.output), json.as_bytes())
}

fn cmd_classify(path: &PathBuf, radius: usize, tol: f64) -> Result<(), CliError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage("`tol` must be positive".into()));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let group = gens::parse_generators(&text)?;
    let limits = BallLimits::default();
    if radius > limits.max_radius {
        return Err(CliError::Usage(format!("radius {radius} exceeds cap {}", limits.max_radius)));
    }
    let label = classify_psl_projection(&group, radius, tol).map_err(failure)?;
    let ball = word_ball_with(&group, radius, limits).map_err(failure)?;
    let semi = detect_semi_parabolic(&group, radius).map_err(failure)?;
    println!("classification: {label}");
    println!("discreteness gap: {:.6e}", discreteness_gap(&ball));
    println!("ball({radius}): {} elements", ball.len());
    println!("semi-parabolic elements: {}", semi.len());
    for entry in &semi {
        println!("  {} = {}", group.format_word(&entry.word), entry.element.base);
    }
    Ok(())
}

fn cmd_check(name: &str) -> Result<(), CliError> {
    let ids = suite(name).ok_or_else(|| {
        let names: Vec<_> = SUITES.iter().map(|(n, _)| *n).collect();
        CliError::Usage(format!("unknown suite `{name}` (known: {})", names.join(", ")))
    })?;
    let mut failed = 0;
    for id in ids {
        let r = run_criterion(*id).expect("suite ids are valid");
        println!("{r}");
        failed += usize::from(!r.passed());
    }
    println!("suite {name}: {} passed, {failed} failed", ids.len() - failed);
    if failed > 0 {
        return Err(CliError::Failure(format!("{failed} criteria failed")));
    }
    Ok(())
}

fn cmd_plot(input: &PathBuf, x: &str, y: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?;
    let points = output::read_columns(&text, x, y)?;
    output::emit(output_target(out), output::scatter_svg(&points, x, y).as_bytes())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Flow(args) => cmd_flow(args),
        Command::Density(args) => cmd_density(args),
        Command::Classify { gens, radius, tol } => cmd_classify(gens, *radius, *tol),
        Command::Check { suite } => cmd_check(suite),
        Command::Plot { input, x, y, output } => cmd_plot(input, x, y, output),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
