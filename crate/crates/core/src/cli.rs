//! The `ccpoint` command line.
//!
//! Exit status: 0 on success, 1 when a check is violated or the solver does
//! not converge, 2 on input or parse errors. Summaries go to stdout,
//! diagnostics to stderr, and machine-readable artifacts only to `--out`.

use std::ffi::OsString;
use std::fmt::Debug;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::mappings::{
    check_banach_coupling, check_banach_g_coupling, check_commutativity, check_coupled_banach_contraction,
    check_g_coupling_implies_coupling, check_injectivity, check_lipschitz, estimate_contraction_constant,
    is_coupled_coincidence_point, is_coupling, is_cyclic, is_g_coupling, is_self_cyclic, CheckError, CheckReport,
    CoupledMap, QuadruplePattern, SelfMap,
};
use crate::metric::{FiniteSpace, MetricSpace, Subset, SubsetPair};
use crate::oracle::{
    brute_force_coincidence_points, exhaustive_definition_check, Definition, FiniteProblem,
};
use crate::point::PointFormat;
use crate::problems::{build, builtin_spec, load_problem, AnyInstance, LoadedProblem, ProblemSpec, BUILTIN_NAMES};
use crate::sampling::Sampling;
use crate::solver::{
    check_contraction_transfer, check_fixed_point_pullback, solve_coupled_coincidence, verify_trace_bounds,
    ContractionConstant, IterationTrace, KQuality, ProblemInstance, SolveError, SolverConfig,
};

/// `println!` that ignores a closed stdout (e.g. output piped into `head`).
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

pub const DEFAULT_SEED: u64 = 0;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Debug, Parser)]
#[command(name = "ccpoint", version, about = "Coupled coincidence points of Banach-type g-couplings")]
pub struct Cli {
    /// Worker threads for sample evaluation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the coupled coincidence iteration.
    Solve(SolveArgs),
    /// Check one definition on samples (or on every tuple with --exhaustive).
    Check(CheckArgs),
    /// Estimate the contraction constant of F through g.
    EstimateK(EstimateArgs),
    /// Enumerate coincidence pairs and decide every definition on a finite problem.
    Oracle(OracleArgs),
    /// Replay the geometric error bounds on a stored trace.
    Bounds(BoundsArgs),
    /// Write a built-in problem as a TOML file.
    ExportExample(ExportArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Built-in problem name.
    #[arg(long, conflicts_with = "problem")]
    pub builtin: Option<String>,
    /// Problem file (TOML).
    #[arg(long)]
    pub problem: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    pub samples: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Enumerate every tuple instead of sampling (finite problems only).
    #[arg(long)]
    pub exhaustive: bool,
}

impl SamplingArgs {
    fn plan(&self) -> Sampling {
        if self.exhaustive {
            Sampling::Exhaustive
        } else {
            Sampling::random(self.samples, self.seed)
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub source: ProblemArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Result document (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Trace table (CSV).
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// One of: cyclic, self-cyclic, coupling, g-coupling, banach-coupling,
    /// banach-g-coupling, coupled-contraction, commutativity, injectivity,
    /// lipschitz, coincidence-point, g-coupling-implies-coupling,
    /// contraction-transfer, fixed-point-pullback.
    pub definition: String,
    #[command(flatten)]
    pub source: ProblemArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    /// Contraction constant (defaults to the problem's k).
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y0: Option<String>,
    /// Equality tolerance for point checks (defaults to the space tolerance).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Report (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub source: ProblemArgs,
    #[command(flatten)]
    pub sampling: SamplingArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub source: ProblemArgs,
    /// Canonical form of the problem (TOML).
    #[arg(long)]
    pub canonical: Option<PathBuf>,
    /// Coincidence pairs and exact verdicts (JSON).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub source: ProblemArgs,
    /// Trace table written by `solve --trace`.
    #[arg(long)]
    pub trace: PathBuf,
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    #[arg(long, default_value = "example-2.10")]
    pub builtin: String,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable or invalid files.
    Input(String),
    /// A check was violated or the solver failed.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

fn input(e: impl ToString) -> CliError {
    CliError::Input(e.to_string())
}

impl From<CheckError> for CliError {
    fn from(e: CheckError) -> Self {
        input(e)
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::InvalidConfig(_) | SolveError::InvalidK(_) | SolveError::Check(_) => input(e),
            other => CliError::Failure(other.to_string()),
        }
    }
}

type Outcome = Result<(), CliError>;

pub fn main() -> i32 {
    run(std::env::args_os())
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        pool = pool.num_threads(n);
    }
    let result = match pool.build() {
        Ok(pool) => pool.install(|| dispatch(cli.command)),
        Err(e) => Err(input(e)),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            match &e {
                CliError::Input(msg) => eprintln!("error: {msg}"),
                CliError::Failure(msg) => eprintln!("failed: {msg}"),
            }
            e.exit_code()
        }
    }
}

/// Runs `$body` with `$s` bound to the [`Setting`] of whichever space the
/// loaded problem lives on.
macro_rules! with_setting {
    ($loaded:expr, $s:ident => $body:expr) => {
        match &$loaded.instance {
            AnyInstance::Real(inst) => {
                let $s = Setting::from_instance(inst);
                $body
            }
            AnyInstance::Vector(inst) => {
                let $s = Setting::from_instance(inst);
                $body
            }
            AnyInstance::Finite(fp) => {
                let $s = finite_setting(&$loaded, fp);
                $body
            }
        }
    };
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::ExportExample(args) => export_example(&args),
        Command::Solve(args) => {
            let loaded = load(&args.source)?;
            with_setting!(loaded, s => solve(&s, &loaded.spec, &args))
        }
        Command::Check(args) => {
            let loaded = load(&args.source)?;
            with_setting!(loaded, s => check(&s, &args))
        }
        Command::EstimateK(args) => {
            let loaded = load(&args.source)?;
            with_setting!(loaded, s => estimate(&s, &args))
        }
        Command::Bounds(args) => {
            let loaded = load(&args.source)?;
            with_setting!(loaded, s => bounds(&s, &args))
        }
        Command::Oracle(args) => oracle(&load(&args.source)?, &args),
    }
}


fn load(args: &ProblemArgs) -> Result<LoadedProblem, CliError> {
    match (&args.builtin, &args.problem) {
        (Some(name), None) => {
            let spec = builtin_spec(name)
                .ok_or_else(|| input(format!("unknown built-in {name:?}; available: {}", BUILTIN_NAMES.join(", "))))?;
            build(&spec).map_err(input)
        }
        (None, Some(path)) => load_problem(path).map_err(input),
        _ => Err(input("exactly one of --builtin or --problem is required")),
    }
}

/// Problem data shared by every subcommand.
struct Setting<S: MetricSpace> {
    name: String,
    space: S,
    pair: SubsetPair<S::Point>,
    universe: Arc<dyn Subset<S::Point>>,
    f: CoupledMap<S::Point>,
    g: SelfMap<S::Point>,
    k: Result<ContractionConstant, String>,
    complete: bool,
}

impl<S: MetricSpace + Clone> Setting<S> {
    fn from_instance(inst: &ProblemInstance<S>) -> Self {
        Self {
            name: inst.name.clone(),
            space: inst.space.clone(),
            pair: inst.pair.clone(),
            universe: inst.universe.clone(),
            f: inst.f.clone(),
            g: inst.g.clone(),
            k: Ok(inst.k),
            complete: inst.assumptions.complete_space,
        }
    }

    fn instance(&self) -> Result<ProblemInstance<S>, CliError> {
        let k = self.k.clone().map_err(CliError::Input)?;
        Ok(ProblemInstance::new(self.name.clone(), self.space.clone(), self.pair.clone(), self.f.clone(), self.g.clone(), k)
            .map_err(input)?
            .with_universe(self.universe.clone())
            .with_complete_space(self.complete))
    }

    fn k_or(&self, flag: Option<f64>) -> Result<f64, CliError> {
        match flag {
            Some(k) => Ok(k),
            None => self.k.as_ref().map(|k| k.value).map_err(|why| input(format!("{why}; pass --k"))),
        }
    }
}

fn finite_setting(loaded: &LoadedProblem, fp: &FiniteProblem) -> Setting<FiniteSpace> {
    let k = match loaded.spec.k {
        Some(k) => Ok(ContractionConstant { value: k, quality: KQuality::Declared }),
        None => fp.instance(loaded.spec.name.clone()).map(|inst| inst.k).map_err(|e| e.to_string()),
    };
    Setting {
        name: loaded.spec.name.clone(),
        space: fp.space(),
        pair: fp.pair(),
        universe: Arc::new(crate::metric::IndexSet::new(0..fp.len())),
        f: fp.coupled_map(),
        g: fp.self_map(),
        k,
        complete: loaded.spec.space.complete,
    }
}

fn parse_point<P: PointFormat>(flag: &str, text: &str) -> Result<P, CliError> {
    P::parse_point(text).map_err(|e| input(format!("--{flag}: {e}")))
}

/// Point from a flag, falling back to the spec's solver defaults.
fn start_point<P: PointFormat>(flag: &str, given: &Option<String>, default: Option<&crate::problems::Coeff>) -> Result<P, CliError> {
    if let Some(text) = given {
        return parse_point(flag, text);
    }
    let text = match default {
        Some(crate::problems::Coeff::Scalar(s)) => format!("{s}"),
        Some(crate::problems::Coeff::Vector(v)) => v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
        _ => return Err(input(format!("--{flag} is required"))),
    };
    parse_point(flag, &text)
}

fn write_artifact(path: &Option<PathBuf>, contents: &str) -> Outcome {
    if let Some(path) = path {
        std::fs::write(path, contents).map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("artifacts serialize");
    s.push('\n');
    s
}

fn solve<S>(setting: &Setting<S>, spec: &ProblemSpec, args: &SolveArgs) -> Outcome
where
    S: MetricSpace + Clone,
    S::Point: PointFormat + Serialize,
{
    let problem = setting.instance()?;
    let defaults = &spec.solver_defaults;
    let x0: S::Point = start_point("x0", &args.x0, defaults.x0.as_ref())?;
    let y0: S::Point = start_point("y0", &args.y0, defaults.y0.as_ref())?;
    let base = SolverConfig::default();
    let config = SolverConfig {
        residual_tol: args.tol.or(defaults.tol).unwrap_or(base.residual_tol),
        max_iter: args.max_iter.or(defaults.max_iter).unwrap_or(base.max_iter),
        record_trace: true,
        ..base
    };
    let result = solve_coupled_coincidence(&problem, &x0, &y0, &config)?;

    say!("problem: {}", result.problem);
    say!("k: {} ({:?})", result.k.value, result.k.quality);
    say!("iterations: {}", result.iterations_used);
    say!("a: {}", result.a.format_point());
    say!("b: {}", result.b.format_point());
    say!("residuals: {:e}, {:e}", result.residuals.0, result.residuals.1);
    say!("d(u, v): {:e} (bound {:e})", result.limit_gap, result.limit_gap_bound);
    match &result.strong {
        Some(s) => say!("strong point: {} (residual {:e})", s.point.format_point(), s.residual),
        None => say!("strong point: none"),
    }
    if let Some(report) = &result.bounds {
        say!("trace bounds: {}", report.verdict);
    }
    for note in &result.notes {
        say!("note: {note}");
    }

    write_artifact(&args.out, &format!("{}\n", result.to_document()))?;
    if let Some(trace) = &result.trace {
        write_artifact(&args.trace, &trace.to_csv())?;
    }
    Ok(())
}

fn print_report<P: Debug>(report: &CheckReport<P>) {
    say!("check: {}", report.check);
    say!("verdict: {}", report.verdict);
    say!("samples: {}", report.samples_used);
    match report.seed {
        Some(seed) => say!("seed: {seed}"),
        None => say!("seed: none"),
    }
    const SHOWN: usize = 5;
    for w in report.witnesses.iter().take(SHOWN) {
        let q: Vec<String> = w.quantities.iter().map(|(n, v)| format!("{n} = {v:e}")).collect();
        say!("witness #{}: {} at {:?} [{}]", w.sample_index, w.condition, w.points, q.join(", "));
    }
    if report.witnesses.len() > SHOWN {
        say!("... {} more witnesses", report.witnesses.len() - SHOWN);
    }
}

fn finish_report<P: Debug + Serialize>(report: &CheckReport<P>, out: &Option<PathBuf>) -> Outcome {
    print_report(report);
    write_artifact(out, &json(report))?;
    if report.violated() {
        Err(CliError::Failure(format!("{} violated", report.check)))
    } else {
        Ok(())
    }
}

fn require<T>(value: Option<T>, flag: &str, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| input(format!("{what} needs --{flag}")))
}

fn check<S>(setting: &Setting<S>, args: &CheckArgs) -> Outcome
where
    S: MetricSpace + Clone,
    S::Point: PointFormat + Serialize,
{
    let plan = args.sampling.plan();
    let Setting { space, pair, f, g, .. } = setting;
    let universe = setting.universe.as_ref();
    let def = args.definition.as_str();
    let report = match def {
        "cyclic" => is_cyclic(space, g, pair, plan)?,
        "self-cyclic" => is_self_cyclic(space, g, pair, plan)?,
        "coupling" => is_coupling(space, f, pair, plan)?,
        "g-coupling" => is_g_coupling(space, f, g, pair, plan)?,
        "g-coupling-implies-coupling" => check_g_coupling_implies_coupling(space, f, g, pair, plan)?,
        "banach-coupling" => check_banach_coupling(space, f, pair, setting.k_or(args.k)?, plan)?,
        "banach-g-coupling" => check_banach_g_coupling(space, f, g, pair, setting.k_or(args.k)?, plan)?,
        "coupled-contraction" => check_coupled_banach_contraction(space, f, universe, setting.k_or(args.k)?, plan)?,
        "commutativity" => check_commutativity(space, f, g, universe, plan)?,
        "injectivity" => check_injectivity(space, g, universe, plan)?,
        "lipschitz" => check_lipschitz(space, g, universe, require(args.alpha, "alpha", def)?, plan)?,
        "contraction-transfer" => check_contraction_transfer(
            space,
            f,
            g,
            pair,
            universe,
            require(args.alpha, "alpha", def)?,
            setting.k_or(args.k)?,
            plan,
        )?,
        "coincidence-point" | "fixed-point-pullback" => {
            let x: S::Point = parse_point("x0", &require(args.x0.clone(), "x0", def)?)?;
            let y: S::Point = parse_point("y0", &require(args.y0.clone(), "y0", def)?)?;
            let tol = args.tol.unwrap_or(space.tolerance());
            if def == "fixed-point-pullback" {
                check_fixed_point_pullback(space, f, g, &x, &y, tol)?
            } else {
                let c = is_coupled_coincidence_point(space, f, g, &x, &y, tol).map_err(input)?;
                say!("check: coincidence-point");
                say!("residuals: {:e}, {:e}", c.residuals.0, c.residuals.1);
                say!("coincidence: {}", c.coincidence);
                say!("strong: {}", c.strong);
                write_artifact(&args.out, &json(&c))?;
                return if c.coincidence {
                    Ok(())
                } else {
                    Err(CliError::Failure("not a coupled coincidence point".into()))
                };
            }
        }
        other => return Err(input(format!("unknown definition {other:?}"))),
    };
    finish_report(&report, &args.out)
}

fn estimate<S>(setting: &Setting<S>, args: &EstimateArgs) -> Outcome
where
    S: MetricSpace + Clone,
    S::Point: PointFormat + Serialize,
{
    let est = estimate_contraction_constant(
        &setting.space,
        &setting.f,
        &setting.g,
        &setting.pair,
        QuadruplePattern::Coupled,
        args.sampling.plan(),
    )?;
    say!("k_hat: {}", est.k_hat);
    say!("samples: {} ({} skipped)", est.samples_used, est.skipped);
    match est.seed {
        Some(seed) => say!("seed: {seed}"),
        None => say!("seed: none"),
    }
    write_artifact(&args.out, &json(&est))?;
    match &est.violation {
        None => Ok(()),
        Some(w) => {
            say!("violation: {} at {:?}", w.condition, w.points);
            Err(CliError::Failure(format!("no contraction constant below 1 ({})", w.condition)))
        }
    }
}

fn bounds<S>(setting: &Setting<S>, args: &BoundsArgs) -> Outcome
where
    S: MetricSpace + Clone,
    S::Point: PointFormat + Serialize,
{
    let text = std::fs::read_to_string(&args.trace)
        .map_err(|e| input(format!("cannot read {}: {e}", args.trace.display())))?;
    let trace = IterationTrace::<S::Point>::from_csv(&text).map_err(|e| input(format!("{}: {e}", args.trace.display())))?;
    let k = setting.k_or(args.k)?;
    let report = verify_trace_bounds(&setting.space, &trace, k).map_err(input)?;
    say!("k: {k}");
    finish_report(&report, &args.out)
}

#[derive(Serialize)]
struct OracleDocument<'a> {
    problem: &'a str,
    coincidence_pairs: Vec<(usize, usize)>,
    strong_points: Vec<usize>,
    verdicts: Vec<(&'static str, crate::oracle::ExactVerdict)>,
}

fn oracle(loaded: &LoadedProblem, args: &OracleArgs) -> Outcome {
    let AnyInstance::Finite(fp) = &loaded.instance else {
        return Err(input("oracle needs a finite problem"));
    };
    let pairs = brute_force_coincidence_points(fp);
    let strong: Vec<usize> = pairs.iter().filter(|(i, j)| i == j).map(|(i, _)| *i).collect();
    let verdicts: Vec<_> = Definition::ALL.iter().map(|d| (d.name(), exhaustive_definition_check(fp, *d))).collect();

    say!("problem: {} ({} points)", loaded.spec.name, fp.len());
    say!("coincidence pairs: {}", pairs.len());
    for (i, j) in &pairs {
        say!("  ({}, {})  [{}, {}]", i, j, fp.labels[*i], fp.labels[*j]);
    }
    say!("strong points: {strong:?}");
    for (name, v) in &verdicts {
        match v.minimal_k {
            Some(k) => say!("{name}: {} ({k})", v.holds),
            None => say!("{name}: {}", v.holds),
        }
    }
    let doc = OracleDocument { problem: &loaded.spec.name, coincidence_pairs: pairs, strong_points: strong, verdicts };
    write_artifact(&args.out, &json(&doc))?;
    write_artifact(&args.canonical, &canonical_finite(&loaded.spec, fp))
}

/// The spec with `A` and `B` sorted and deduplicated, as validated.
fn canonical_finite(spec: &ProblemSpec, fp: &FiniteProblem) -> String {
    let mut spec = spec.clone();
    spec.subsets.a = crate::problems::SubsetSpec::Indices(fp.a.clone());
    spec.subsets.b = crate::problems::SubsetSpec::Indices(fp.b.clone());
    spec.to_toml()
}

fn export_example(args: &ExportArgs) -> Outcome {
    let spec = builtin_spec(&args.builtin)
        .ok_or_else(|| input(format!("unknown built-in {:?}; available: {}", args.builtin, BUILTIN_NAMES.join(", "))))?;
    std::fs::write(&args.out, spec.to_toml()).map_err(|e| input(format!("cannot write {}: {e}", args.out.display())))?;
    say!("wrote {} to {}", spec.name, args.out.display());
    Ok(())
}
