//! The `maxcut` command: generate instances, run solvers, benchmark, tune,
//! train SoftTabu policies and render result tables.

pub mod report;
pub mod results;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};

use maxcut_core::eval::{benchmark, run_protocol, tune_registry_from_runs, BestKnownRegistry, Instance, ProtocolConfig, Solver};
use maxcut_core::generate::{generate_batch, DistributionSpec, Family, FamilyParams, Size, WeightScheme};
use maxcut_core::io::{format_assignment, parse_gset, serialize_gset, PolicyCheckpoint, TrainMetadata};
use maxcut_core::softtabu::{train, TrainConfig};
use maxcut_core::solvers::SolverKind;
use maxcut_core::tuning::{grid_search, GridParameter, GridSpec};
use maxcut_core::{brute_force_optimum, Graph};

pub use results::ResultsDocument;

/// Exit status for bad arguments or unusable input.
pub const EXIT_USAGE: i32 = 2;
/// Exit status when a command fails while running.
pub const EXIT_FAILURE: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: maxcut_core::Error },
    #[error(transparent)]
    Core(#[from] maxcut_core::Error),
    #[error("{0}")]
    Results(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } => EXIT_USAGE,
            CliError::Core(maxcut_core::Error::InvalidInput(_)) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "maxcut", version, about = "MaxCut heuristics benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write seeded random instances as Gset files.
    Generate(GenerateArgs),
    /// Run one solver on one instance under the episode protocol.
    Solve(SolveArgs),
    /// Run solvers over a set of instances and write results.json.
    Benchmark(BenchmarkArgs),
    /// Grid-search the tabu tenure or the EO exponent on validation instances.
    Tune(TuneArgs),
    /// Train a SoftTabu policy on a distribution.
    TrainSofttabu(TrainArgs),
    /// Exact optimum by exhaustive search (small graphs only).
    Oracle(OracleArgs),
    /// Render a results.json as a table.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct DistributionArgs {
    #[arg(long)]
    family: Family,
    /// Vertex count, or an inclusive range such as 70:100.
    #[arg(long)]
    n: Option<Size>,
    /// Family parameters such as p=0.15 or m=4.
    #[arg(long)]
    params: Option<String>,
    #[arg(long)]
    weights: Option<WeightScheme>,
}

impl DistributionArgs {
    fn spec(&self) -> CliResult<DistributionSpec> {
        let mut spec = DistributionSpec::new(self.family);
        if let Some(size) = self.n {
            spec = spec.with_size(size);
        }
        if let Some(p) = &self.params {
            spec = spec.with_params(FamilyParams::parse(p)?);
        }
        if let Some(w) = self.weights {
            spec = spec.with_weights(w);
        }
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[command(flatten)]
    dist: DistributionArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Fg,
    Rg,
    Ts,
    Eo,
    Softtabu,
}

#[derive(Debug, Args)]
struct SolverParams {
    #[arg(long, default_value_t = 20)]
    tenure: usize,
    #[arg(long, default_value_t = 1.4)]
    tau: f64,
    /// SoftTabu policy checkpoint.
    #[arg(long)]
    policy: Option<PathBuf>,
}

impl SolverParams {
    fn solver(&self, which: SolverArg) -> CliResult<Solver> {
        Ok(match which {
            SolverArg::Fg => Solver::ForwardGreedy,
            SolverArg::Rg => Solver::ReversibleGreedy,
            SolverArg::Ts => Solver::Tabu { tenure: self.tenure },
            SolverArg::Eo => Solver::Eo { tau: self.tau },
            SolverArg::Softtabu => {
                let path = self
                    .policy
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("softtabu needs --policy".into()))?;
                let text = read(path)?;
                let checkpoint =
                    PolicyCheckpoint::from_json(&text).map_err(|source| CliError::Input { path: path.clone(), source })?;
                Solver::SoftTabu { policy: checkpoint.policy() }
            }
        })
    }
}

#[derive(Debug, Args)]
struct ProtocolArgs {
    #[arg(long, default_value_t = 50)]
    episodes: usize,
    /// Steps per episode as a multiple of n.
    #[arg(long, default_value_t = 2.0)]
    steps_factor: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget per (solver, instance) run, in seconds.
    #[arg(long)]
    time_limit: Option<f64>,
}

impl ProtocolArgs {
    fn config(&self) -> CliResult<ProtocolConfig> {
        let config = ProtocolConfig {
            episodes: self.episodes,
            steps_factor: self.steps_factor,
            time_limit: self.time_limit,
            base_seed: self.seed,
            ..ProtocolConfig::default()
        };
        config.validate()?;
        Ok(config)
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    solver: SolverArg,
    #[arg(long)]
    instance: PathBuf,
    #[command(flatten)]
    protocol: ProtocolArgs,
    #[command(flatten)]
    params: SolverParams,
    /// Write the best assignment here instead of printing it.
    #[arg(long)]
    assignment_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BenchmarkArgs {
    /// Comma-separated solver list, e.g. fg,rg,ts,eo.
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    solvers: Vec<SolverArg>,
    /// Glob of Gset files; each file's parent directory names its distribution.
    #[arg(long)]
    instances: String,
    /// Best-known values (TSV). Without it, ratios use the best value found.
    #[arg(long)]
    registry: Option<PathBuf>,
    /// Fall back to the best value found for instances missing from the registry.
    #[arg(long)]
    best_found: bool,
    /// Write the registry implied by this run.
    #[arg(long)]
    registry_out: Option<PathBuf>,
    #[command(flatten)]
    protocol: ProtocolArgs,
    #[command(flatten)]
    params: SolverParams,
    #[arg(long, default_value = "results.json")]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct TuneArgs {
    #[arg(long, value_enum)]
    solver: SolverArg,
    /// start:stop:step; defaults to 20:150:10 for ts and 1.1:1.9:0.1 for eo.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    validation: String,
    #[command(flatten)]
    protocol: ProtocolArgs,
    /// Write the table here instead of printing it.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[command(flatten)]
    dist: DistributionArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    episodes: Option<usize>,
    #[arg(long)]
    learning_rate: Option<f64>,
    #[arg(long)]
    discount: Option<f64>,
    #[arg(long)]
    batch_size: Option<usize>,
    #[arg(long)]
    replay_capacity: Option<usize>,
    #[arg(long)]
    validation_graphs: Option<usize>,
    #[arg(long)]
    steps_factor: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    assignment_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long)]
    results: PathBuf,
    #[arg(long, value_enum, default_value = "md")]
    format: Format,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> CliResult<()> {
    match command {
        Command::Generate(a) => cmd_generate(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Benchmark(a) => cmd_benchmark(a, out),
        Command::Tune(a) => cmd_tune(a, out),
        Command::TrainSofttabu(a) => cmd_train(a, out),
        Command::Oracle(a) => cmd_oracle(a, out),
        Command::Report(a) => cmd_report(a, out),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn emit(out: &mut impl Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io { path: PathBuf::from("<stdout>"), source })
}

/// Loads a Gset file, naming the graph after the file stem.
pub fn load_instance(path: &Path) -> Result<Graph, CliError> {
    let text = read(path)?;
    let graph = parse_gset(&text).map_err(|source| CliError::Input { path: path.to_path_buf(), source })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(graph.with_name(name))
}

/// Every file matching `pattern`, sorted by path. The distribution label is
/// the name of the containing directory.
pub fn load_instances(pattern: &str) -> Result<Vec<Instance>, CliError> {
    let paths = glob::glob(pattern).map_err(|e| CliError::Usage(format!("bad glob '{pattern}': {e}")))?;
    let mut paths: Vec<PathBuf> = paths
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Usage(format!("{e}")))?;
    paths.retain(|p| p.is_file());
    paths.sort();
    if paths.is_empty() {
        return Err(CliError::Usage(format!("no instances match '{pattern}'")));
    }
    paths
        .iter()
        .map(|p| {
            let distribution = p
                .parent()
                .and_then(Path::file_name)
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "default".into());
            Ok(Instance::new(distribution, load_instance(p)?))
        })
        .collect()
}

fn cmd_generate(a: GenerateArgs, out: &mut impl Write) -> CliResult<()> {
    let spec = a.dist.spec()?;
    let graphs = generate_batch(&spec, a.count, a.seed)?;
    fs::create_dir_all(&a.out).map_err(|source| CliError::Io { path: a.out.clone(), source })?;
    for g in graphs {
        let path = a.out.join(format!("{}.gset", g.name()));
        write(&path, &serialize_gset(&g))?;
        emit(out, &format!("{}\n", path.display()))?;
    }
    Ok(())
}

fn cmd_solve(a: SolveArgs, out: &mut impl Write) -> CliResult<()> {
    let graph = load_instance(&a.instance)?;
    let solver = a.params.solver(a.solver)?;
    let protocol = a.protocol.config()?;
    let result = run_protocol(&solver, &graph, &protocol)?;
    let assignment = format_assignment(&result.outcome.best_side);
    emit(out, &format!("{}\n", result.outcome.best_value))?;
    match &a.assignment_out {
        Some(path) => write(path, &format!("{assignment}\n"))?,
        None => emit(out, &format!("{assignment}\n"))?,
    }
    Ok(())
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn cmd_benchmark(a: BenchmarkArgs, out: &mut impl Write) -> CliResult<()> {
    let mut solvers = Vec::new();
    for s in &a.solvers {
        let solver = a.params.solver(*s)?;
        if !solvers.contains(&solver) {
            solvers.push(solver);
        }
    }
    let instances = load_instances(&a.instances)?;
    let protocol = a.protocol.config()?;
    let registry = match &a.registry {
        Some(path) => {
            let mut r = BestKnownRegistry::from_tsv(&read(path)?)
                .map_err(|source| CliError::Input { path: path.clone(), source })?;
            r.best_found_fallback = a.best_found;
            r
        }
        None => BestKnownRegistry::best_found(),
    };
    let report = benchmark(&solvers, &instances, &protocol, &registry)?;
    if let Some(path) = &a.registry_out {
        let mut merged = registry.clone();
        merged.merge(&tune_registry_from_runs(&report));
        write(path, &merged.to_tsv())?;
    }
    let doc = ResultsDocument::new(report, protocol, solvers, unix_now());
    write(&a.out, &doc.to_json())?;
    emit(out, &report::to_markdown(&doc))
}

fn cmd_tune(a: TuneArgs, out: &mut impl Write) -> CliResult<()> {
    let (kind, parameter, default) = match a.solver {
        SolverArg::Ts => (SolverKind::Tabu, GridParameter::Tenure, GridSpec::tenure_default()),
        SolverArg::Eo => (SolverKind::Eo, GridParameter::Tau, GridSpec::tau_default()),
        other => return Err(CliError::Usage(format!("{other:?} has no tunable parameter"))),
    };
    let grid = match &a.grid {
        Some(s) => GridSpec::parse(parameter, s)?,
        None => default,
    };
    let validation = load_instances(&a.validation)?;
    let protocol = a.protocol.config()?;
    let result = grid_search(kind, &grid, &validation, &protocol, &BestKnownRegistry::best_found())?;
    let csv = result.to_csv();
    match &a.out {
        Some(path) => write(path, &csv)?,
        None => emit(out, &csv)?,
    }
    emit(out, &format!("best {}\n", result.best_param))
}

fn cmd_train(a: TrainArgs, out: &mut impl Write) -> CliResult<()> {
    let spec = a.dist.spec()?;
    let mut config = TrainConfig { seed: a.seed, ..TrainConfig::default() };
    if let Some(x) = a.episodes {
        config.episodes = x;
    }
    if let Some(x) = a.learning_rate {
        config.learning_rate = x;
    }
    if let Some(x) = a.discount {
        config.discount = x;
    }
    if let Some(x) = a.batch_size {
        config.batch_size = x;
    }
    if let Some(x) = a.replay_capacity {
        config.replay_capacity = x;
    }
    if let Some(x) = a.validation_graphs {
        config.validation_graphs = x;
    }
    if let Some(x) = a.steps_factor {
        config.steps_factor = x;
    }
    let outcome = train(&spec, &config)?;
    let metadata = TrainMetadata {
        distribution: spec,
        config: config.clone(),
        validation_ratio: outcome.validation_ratio,
        env_steps: outcome.env_steps,
    };
    let checkpoint = PolicyCheckpoint::new(outcome.policy, config.steps_factor, Some(metadata));
    write(&a.out, &checkpoint.to_json()?)?;
    emit(
        out,
        &format!(
            "validation ratio {:.4} after {} environment steps\n",
            outcome.validation_ratio, outcome.env_steps
        ),
    )
}

fn cmd_oracle(a: OracleArgs, out: &mut impl Write) -> CliResult<()> {
    let graph = load_instance(&a.instance)?;
    let (value, side) = brute_force_optimum(&graph)?;
    emit(out, &format!("{value}\n"))?;
    if let Some(path) = &a.assignment_out {
        write(path, &format!("{}\n", format_assignment(&side)))?;
    }
    Ok(())
}

fn cmd_report(a: ReportArgs, out: &mut impl Write) -> CliResult<()> {
    let doc = ResultsDocument::from_json(&read(&a.results)?).map_err(CliError::Results)?;
    let table = match a.format {
        Format::Csv => report::to_csv(&doc),
        Format::Md => report::to_markdown(&doc),
    };
    emit(out, &table)
}
