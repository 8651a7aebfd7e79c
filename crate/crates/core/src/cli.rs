//! The `crossangle` command line: generate → layout → optimize → evaluate.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::eval::{self, DrawingFamily, EvalError, DEFAULT_P_GRID};
use crate::generators::{self, CountMode, Family, GenError, GenSpec};
use crate::layouts::{self, CrossingForces, ForceConfig, LayoutError, StressConfig, LAYOUT_STREAM};
use crate::minangle::{crossing_angle, estimate_delta, MinPairEngine};
use crate::model::{self, crossing_count, crossings_per_edge, Drawing, Graph, ModelError, ResultRecord};
use crate::sampler::{self, ConfigError, Preset, SamplerConfig};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: PathBuf,
        #[source]
        source: ModelError,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Generator(#[from] GenError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    /// Process exit status: 2 for unreadable input or output failures, 3 for
    /// input that is readable but invalid.
    pub fn exit_code(&self) -> i32 {
        let validation = match self {
            CliError::Io { .. } => false,
            CliError::Input { source, .. } | CliError::Model(source) => source.is_validation(),
            CliError::Generator(GenError::Model(e)) | CliError::Layout(LayoutError::Model(e)) => e.is_validation(),
            CliError::Eval(EvalError::Io(_) | EvalError::Json(_) | EvalError::Csv(_)) => false,
            _ => true,
        };
        if validation {
            3
        } else {
            2
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "crossangle",
    version,
    about = "Straight-line drawings with large crossing angles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a benchmark graph.
    Generate(GenerateArgs),
    /// Compute an initial drawing of a graph.
    Layout(LayoutArgs),
    /// Improve the crossing angle of a drawing.
    Optimize(OptimizeArgs),
    /// Compare two families of result records.
    Evaluate(EvaluateArgs),
    /// Print statistics of a graph, a drawing or a result file.
    Stats(StatsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "tri_plus_x")]
    TriPlusX,
    #[value(name = "oneplanar_geo")]
    OneplanarGeo,
    #[value(name = "oneplanar_topo")]
    OneplanarTopo,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::TriPlusX => Family::TriPlusX,
            FamilyArg::OneplanarGeo => Family::OneplanarGeo,
            FamilyArg::OneplanarTopo => Family::OneplanarTopo,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CountArg {
    Attempts,
    Successes,
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    /// Graph file; with `--instances`, a directory.
    #[arg(long)]
    out: PathBuf,
    /// Witness drawing of the geometric 1-planar family.
    #[arg(long)]
    drawing: Option<PathBuf>,
    /// What the chord budget of the topological family counts.
    #[arg(long, value_enum, default_value = "attempts")]
    count: CountArg,
    /// Generate this many graphs with seeds `seed, seed+1, …` into `--out`.
    #[arg(long)]
    instances: Option<usize>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Random,
    Fr,
    Frcos,
    Frcage,
    Stress,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Random => "random",
            Algo::Fr => "fr",
            Algo::Frcos => "frcos",
            Algo::Frcage => "frcage",
            Algo::Stress => "stress",
        }
    }
}

#[derive(Debug, Args)]
struct LayoutArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    seed: u64,
    /// Force or stress iterations; defaults to the algorithm's default.
    #[arg(long)]
    iterations: Option<usize>,
    /// Start from this drawing instead of a random one.
    #[arg(long)]
    init: Option<PathBuf>,
    /// Side of the square the output is scaled into.
    #[arg(long = "box", default_value_t = sampler::DEFAULT_SIDE)]
    side: f64,
    #[arg(long)]
    out: PathBuf,
    /// Also write a result record for the drawing.
    #[arg(long)]
    record: Option<PathBuf>,
    #[arg(long)]
    graph_id: Option<String>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PresetArg {
    Sloppy,
    Medium,
    Precise,
}

impl From<PresetArg> for Preset {
    fn from(p: PresetArg) -> Self {
        match p {
            PresetArg::Sloppy => Preset::Sloppy,
            PresetArg::Medium => Preset::Medium,
            PresetArg::Precise => Preset::Precise,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Bucket,
    Bruteforce,
}

impl From<EngineArg> for MinPairEngine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Bucket => MinPairEngine::Bucket,
            EngineArg::Bruteforce => MinPairEngine::Bruteforce,
        }
    }
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, visible_alias = "in")]
    drawing: PathBuf,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value = "precise")]
    preset: PresetArg,
    /// Iteration budget; defaults to twice the vertex count.
    #[arg(long)]
    iterations: Option<usize>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    seconds: Option<f64>,
    #[arg(long, value_enum, default_value = "bucket")]
    engine: EngineArg,
    /// Round sampled positions to integers.
    #[arg(long)]
    snap_integer: bool,
    #[arg(long)]
    out: PathBuf,
    /// Per-iteration trace as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Result record destination; printed to stdout when absent.
    #[arg(long)]
    record: Option<PathBuf>,
    #[arg(long)]
    graph_id: Option<String>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    #[arg(long)]
    results_a: PathBuf,
    #[arg(long)]
    results_b: PathBuf,
    #[arg(long)]
    class_a: Option<String>,
    #[arg(long)]
    class_b: Option<String>,
    /// Comma separated relative sizes.
    #[arg(long, value_delimiter = ',')]
    p_grid: Option<Vec<f64>>,
    /// Advantage curve CSV (`class,p,delta`).
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Summary CSV (`class,min,mean,median,max`).
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Full report as JSON; printed to stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[arg(long, required_unless_present = "results")]
    graph: Option<PathBuf>,
    #[arg(long, requires = "graph")]
    drawing: Option<PathBuf>,
    #[arg(long, conflicts_with = "graph")]
    results: Option<PathBuf>,
}

/// Parses `args` (program name first), runs the command and returns the exit
/// status. Errors are reported on stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<(), CliError> {
    match command {
        Command::Generate(a) => generate(a),
        Command::Layout(a) => layout(a),
        Command::Optimize(a) => optimize(a),
        Command::Evaluate(a) => evaluate(a),
        Command::Stats(a) => stats(a),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(io_err(path))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_file(path, text.as_bytes())
}

fn print_json<T: Serialize>(value: &T) -> Result<(), CliError> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    serde_json::to_writer_pretty(&mut out, value).expect("serializable");
    writeln!(out).map_err(io_err(Path::new("<stdout>")))
}

fn read_graph(path: &Path) -> Result<Arc<Graph>, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    model::load_graph(BufReader::new(file))
        .map(Arc::new)
        .map_err(|source| CliError::Input {
            path: path.to_path_buf(),
            source,
        })
}

fn read_drawing(graph: Arc<Graph>, path: &Path) -> Result<Drawing, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    model::load_drawing(graph, BufReader::new(file)).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn read_records(path: &Path) -> Result<Vec<ResultRecord>, CliError> {
    let file = File::open(path).map_err(io_err(path))?;
    Ok(eval::load_records(BufReader::new(file))?)
}

fn certificate_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".cert.json");
    PathBuf::from(name)
}

fn graph_id(explicit: &Option<String>, graph: &Path) -> String {
    explicit.clone().unwrap_or_else(|| {
        graph
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    })
}

fn generate_one(spec: &GenSpec, out: &Path, drawing_out: Option<&Path>) -> Result<(), CliError> {
    let generated = generators::generate(spec)?;
    write_file(out, generated.graph.to_text().as_bytes())?;
    if let Some(cert) = &generated.certificate {
        write_json(&certificate_path(out), cert)?;
    }
    if let (Some(path), Some(d)) = (drawing_out, &generated.drawing) {
        write_file(path, d.to_text().as_bytes())?;
    }
    Ok(())
}

fn generate(a: GenerateArgs) -> Result<(), CliError> {
    let count_mode = match a.count {
        CountArg::Attempts => CountMode::Attempts,
        CountArg::Successes => CountMode::Successes,
    };
    let spec = |seed| GenSpec {
        family: a.family.into(),
        n: a.n,
        seed,
        count_mode,
    };
    let Some(instances) = a.instances else {
        return generate_one(&spec(a.seed), &a.out, a.drawing.as_deref());
    };
    if a.drawing.is_some() {
        return Err(CliError::Invalid(
            "--drawing cannot be combined with --instances".into(),
        ));
    }
    fs::create_dir_all(&a.out).map_err(io_err(&a.out))?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.max(1))
        .build()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    pool.install(|| {
        (0..instances).into_par_iter().try_for_each(|i| {
            let seed = a.seed.wrapping_add(i as u64);
            let out = a.out.join(format!("g{i}.txt"));
            let drawing = a.out.join(format!("g{i}.draw"));
            let family: Family = a.family.into();
            generate_one(
                &spec(seed),
                &out,
                (family == Family::OneplanarGeo).then_some(drawing.as_path()),
            )
        })
    })
}

fn record_for(
    graph: String,
    algorithm: &str,
    seed: u64,
    d: &Drawing,
    iterations: usize,
    wall: Duration,
    tested_pairs: u64,
) -> ResultRecord {
    ResultRecord {
        graph,
        algorithm: algorithm.to_string(),
        seed,
        crossing_angle_deg: crossing_angle(d).degrees(),
        iterations,
        wall_ms: wall.as_secs_f64() * 1e3,
        crossings: crossing_count(d),
        tested_pairs,
    }
}

fn layout(a: LayoutArgs) -> Result<(), CliError> {
    if !(a.side.is_finite() && a.side > 0.0) {
        return Err(CliError::Invalid(format!("box side must be positive, got {}", a.side)));
    }
    let start = std::time::Instant::now();
    let graph = read_graph(&a.graph)?;
    let mut rng = sampler::stream_rng(a.seed, LAYOUT_STREAM);
    let init = match &a.init {
        Some(path) => read_drawing(graph.clone(), path)?,
        None => layouts::random_layout(&graph, a.side, &mut rng),
    };
    let (drawing, iterations) = match a.algo {
        Algo::Random => (init, 0),
        Algo::Fr | Algo::Frcos | Algo::Frcage => {
            let forces = match a.algo {
                Algo::Frcos => CrossingForces::Cosine,
                Algo::Frcage => CrossingForces::CageAngular,
                _ => CrossingForces::None,
            };
            let mut cfg = ForceConfig::with_forces(forces);
            if let Some(n) = a.iterations {
                cfg.iterations = n;
            }
            let d = layouts::fr_layout(&init, &cfg, &mut rng)?;
            (d.fit_to_box(a.side)?, cfg.iterations)
        }
        Algo::Stress => {
            let mut cfg = StressConfig::default();
            if let Some(n) = a.iterations {
                cfg.max_iterations = n;
            }
            let d = layouts::stress_layout(&init, &cfg)?;
            (d.fit_to_box(a.side)?, cfg.max_iterations)
        }
    };
    write_file(&a.out, drawing.to_text().as_bytes())?;
    if let Some(path) = &a.record {
        let id = graph_id(&a.graph_id, &a.graph);
        let record = record_for(id, a.algo.name(), a.seed, &drawing, iterations, start.elapsed(), 0);
        write_json(path, &record)?;
    }
    Ok(())
}

fn optimize(a: OptimizeArgs) -> Result<(), CliError> {
    let graph = read_graph(&a.graph)?;
    let drawing = read_drawing(graph, &a.drawing)?;
    let preset: Preset = a.preset.into();
    let mut cfg = SamplerConfig::from_preset(preset, a.seed);
    cfg.max_iterations = a.iterations;
    cfg.engine = a.engine.into();
    cfg.snap_integer = a.snap_integer;
    if let Some(s) = a.seconds {
        cfg.time_limit =
            Some(Duration::try_from_secs_f64(s).map_err(|_| CliError::Invalid(format!("invalid time limit {s}")))?);
    }
    let outcome = sampler::optimize(&drawing, &cfg)?;
    write_file(&a.out, outcome.drawing.to_text().as_bytes())?;
    if let Some(path) = &a.trace {
        write_json(path, &outcome.trace)?;
    }
    let record = record_for(
        graph_id(&a.graph_id, &a.graph),
        preset.name(),
        a.seed,
        &outcome.drawing,
        outcome.iterations,
        outcome.wall,
        outcome.stats.tested_pairs,
    );
    match &a.record {
        Some(path) => write_json(path, &record)?,
        None => print_json(&OptimizeReport {
            record: &record,
            stop: outcome.stop,
            accepted_moves: outcome.accepted_moves(),
        })?,
    }
    Ok(())
}

#[derive(Serialize)]
struct OptimizeReport<'a> {
    #[serde(flatten)]
    record: &'a ResultRecord,
    stop: sampler::StopReason,
    accepted_moves: usize,
}

#[derive(Serialize)]
struct EvaluateReport {
    curve: eval::AdvantageCurve,
    summary_a: eval::Summary,
    summary_b: eval::Summary,
    t_test: TTestReport,
}

#[derive(Serialize)]
#[serde(untagged)]
enum TTestReport {
    Ok(eval::TTest),
    Failed { error: String },
}

fn class_label(explicit: &Option<String>, records: &[ResultRecord], fallback: &str) -> String {
    explicit
        .clone()
        .or_else(|| records.first().map(|r| r.algorithm.clone()))
        .unwrap_or_else(|| fallback.to_string())
}

fn evaluate(a: EvaluateArgs) -> Result<(), CliError> {
    let ra = read_records(&a.results_a)?;
    let rb = read_records(&a.results_b)?;
    let fa = DrawingFamily::from_records(class_label(&a.class_a, &ra, "A"), &ra);
    let fb = DrawingFamily::from_records(class_label(&a.class_b, &rb, "B"), &rb);
    let grid = a.p_grid.clone().unwrap_or_else(|| DEFAULT_P_GRID.to_vec());
    let curve = eval::advantage_curve(&fa, &fb, &grid)?;
    let summary_a = eval::summarize(&fa)?;
    let summary_b = eval::summarize(&fb)?;
    let t_test = match eval::welch_t_test(&fa.angles(), &fb.angles()) {
        Ok(t) => TTestReport::Ok(t),
        Err(e) => TTestReport::Failed { error: e.to_string() },
    };
    if let Some(path) = &a.curve {
        let file = File::create(path).map_err(io_err(path))?;
        eval::write_curves_csv(std::slice::from_ref(&curve), BufWriter::new(file))?;
    }
    if let Some(path) = &a.summary {
        let file = File::create(path).map_err(io_err(path))?;
        let rows = [(fa.class.clone(), summary_a), (fb.class.clone(), summary_b)];
        eval::write_summary_csv(&rows, BufWriter::new(file))?;
    }
    let report = EvaluateReport {
        curve,
        summary_a,
        summary_b,
        t_test,
    };
    match &a.report {
        Some(path) => write_json(path, &report),
        None => print_json(&report),
    }
}

#[derive(Serialize)]
struct GraphStats {
    vertices: usize,
    edges: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    drawing: Option<DrawingStats>,
}

#[derive(Serialize)]
struct DrawingStats {
    crossings: usize,
    crossing_angle_deg: f64,
    max_crossings_per_edge: usize,
    /// Estimated minimum angle among the longest edges.
    delta_estimate_deg: Option<f64>,
}

fn stats(a: StatsArgs) -> Result<(), CliError> {
    if let Some(path) = &a.results {
        let records = read_records(path)?;
        let family = DrawingFamily::from_records(class_label(&None, &records, "results"), &records);
        return print_json(&eval::summarize(&family)?);
    }
    let path = a.graph.as_ref().expect("clap requires --graph without --results");
    let graph = read_graph(path)?;
    let drawing = match &a.drawing {
        Some(p) => {
            let d = read_drawing(graph.clone(), p)?;
            Some(DrawingStats {
                crossings: crossing_count(&d),
                crossing_angle_deg: crossing_angle(&d).degrees(),
                max_crossings_per_edge: crossings_per_edge(&d).into_iter().max().unwrap_or(0),
                delta_estimate_deg: estimate_delta(&d).map(|a| a.degrees()),
            })
        }
        None => None,
    };
    print_json(&GraphStats {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        drawing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["crossangle", "frobnicate"]), 1);
        assert_eq!(run(["crossangle", "generate", "--n", "5"]), 1);
    }

    #[test]
    fn help_exits_zero() {
        assert_eq!(run(["crossangle", "--help"]), 0);
    }

    #[test]
    fn missing_input_exits_two() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("d.txt");
        let code = run([
            "crossangle".as_ref(),
            "layout".as_ref(),
            "--graph".as_ref(),
            dir.path().join("missing.txt").as_os_str(),
            "--algo".as_ref(),
            "random".as_ref(),
            "--seed".as_ref(),
            "1".as_ref(),
            "--out".as_ref(),
            out.as_os_str(),
        ] as [&std::ffi::OsStr; 10]);
        assert_eq!(code, 2);
    }

    #[test]
    fn invalid_graph_exits_three() {
        let dir = tempfile::tempdir().unwrap();
        let graph = dir.path().join("g.txt");
        fs::write(&graph, "3 2\n0 1\n1 1\n").unwrap();
        let out = dir.path().join("d.txt");
        let args: Vec<OsString> = vec![
            "crossangle".into(),
            "layout".into(),
            "--graph".into(),
            graph.into(),
            "--algo".into(),
            "random".into(),
            "--seed".into(),
            "1".into(),
            "--out".into(),
            out.into(),
        ];
        assert_eq!(run(args), 3);
    }

    #[test]
    fn too_small_generator_exits_three() {
        let dir = tempfile::tempdir().unwrap();
        let out = dir.path().join("g.txt");
        let args: Vec<OsString> = vec![
            "crossangle".into(),
            "generate".into(),
            "--family".into(),
            "tri_plus_x".into(),
            "--n".into(),
            "3".into(),
            "--seed".into(),
            "1".into(),
            "--out".into(),
            out.into(),
        ];
        assert_eq!(run(args), 3);
    }

    #[test]
    fn certificate_path_appends_suffix() {
        assert_eq!(
            certificate_path(Path::new("a/g.txt")),
            PathBuf::from("a/g.txt.cert.json")
        );
    }
}
