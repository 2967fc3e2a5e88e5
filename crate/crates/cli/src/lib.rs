//! Command-line front end: reads algebra, graph and cloud documents, runs one
//! command, and renders a deterministic JSON report.
//!
//! Exit status is 0 on success, 2 on any validation error (the document is then
//! an error object with a stable `kind`), and 3 when a solver does not converge.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use geolie::classify::{qc_implies_qi_verdict, ClassifyError, Group};
use geolie::lab::{
    annulus_capacity_bound, build_net, capacity_upper_teichmuller, io, is_monotone, isoperimetric_profile,
    p_capacity_with, quasi_straight_defect, sobolev_constant_probe, straighten, Capacitor, LabError,
    MetricMeasureGraph, ProfileMode, SolverOptions,
};
use geolie::lie::{rational, LieError};
use geolie::report::{self, float};

#[derive(Debug, Clone, Parser)]
#[command(name = "geolie", version, about = "Conformal type of geodesic Lie groups and discrete capacity experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Dimensions and conformal type of each algebra or declared group.
    Classify { inputs: Vec<PathBuf> },
    /// Whether quasi-conformal maps between two groups must be quasi-isometries.
    Verdict { first: PathBuf, second: PathBuf },
    /// p-capacity of the capacitor (E; F) on a graph.
    Capacity { graph: PathBuf },
    /// Isoperimetric profile J(v), for one volume or all volumes up to n/2.
    Profile { graph: PathBuf },
    /// Straightens a vertex function `{"u": [...], "domain": [...]}` to a monotone one.
    Straighten { graph: PathBuf, function: PathBuf },
    /// Quasi-straight defect of a point sequence (cloud format, in order).
    Qstraight { sequence: PathBuf },
    /// Kanai net of a point cloud.
    Net { cloud: PathBuf },
    /// Empirical Sobolev constants on a graph (dimension from --Q, exponent from --p).
    Probe { graph: PathBuf },
    /// Closed-form annulus capacity bound.
    Annulus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Heuristic,
    #[value(name = "path_upper")]
    PathUpper,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Capacity exponent (Sobolev exponent for `probe`).
    #[arg(long = "p", global = true)]
    pub p: Option<f64>,
    /// Dimension exponent for `probe`.
    #[arg(long = "Q", global = true)]
    pub q: Option<f64>,
    #[arg(long, global = true, value_enum, default_value = "exact")]
    pub mode: Mode,
    /// Seed for randomized procedures.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated vertex indices.
    #[arg(long = "E", global = true)]
    pub e: Option<String>,
    /// Comma-separated vertex indices, or `inf` for the infinity boundary.
    #[arg(long = "F", global = true)]
    pub f: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Solver stopping tolerance.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Solver iteration cap.
    #[arg(long, global = true)]
    pub max_iterations: Option<usize>,
    /// Volume for `profile`.
    #[arg(long, global = true)]
    pub volume: Option<f64>,
    /// Net scale for `net`.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Sample count for `probe`.
    #[arg(long, global = true, default_value_t = 1000)]
    pub samples: usize,
    /// Volume growth constant for `annulus`.
    #[arg(long = "C", global = true)]
    pub c: Option<f64>,
    /// Volume growth exponent for `annulus`.
    #[arg(long = "q-growth", global = true)]
    pub q_growth: Option<f64>,
    /// Inner radius for `annulus`.
    #[arg(long = "r-inner", global = true)]
    pub r_inner: Option<f64>,
    /// Outer radius for `annulus`.
    #[arg(long = "r-outer", global = true)]
    pub r_outer: Option<f64>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Lie(LieError),
    Classify(ClassifyError),
    Lab(LabError),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Io(_) => "Io",
            CliError::Lie(e) => e.kind(),
            CliError::Classify(e) => e.kind(),
            CliError::Lab(e) => e.kind(),
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Usage(m) | CliError::Io(m) => m.clone(),
            CliError::Lie(e) => e.to_string(),
            CliError::Classify(e) => e.to_string(),
            CliError::Lab(e) => e.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lab(LabError::SolverDiverged { .. }) => 3,
            _ => 2,
        }
    }
}

impl From<LabError> for CliError {
    fn from(e: LabError) -> Self {
        CliError::Lab(e)
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> Self {
        CliError::Lie(e)
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        // Surface the underlying algebra error kind (e.g. JacobiViolation).
        match e {
            ClassifyError::Lie(inner) => CliError::Lie(inner),
            other => CliError::Classify(other),
        }
    }
}

/// Rendered document and process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub document: String,
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_json(path: &PathBuf) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &PathBuf) -> Result<MetricMeasureGraph, CliError> {
    Ok(io::parse_graph(&read(path)?)?)
}

fn parse_indices(text: &str, flag: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("--{flag} expects comma-separated vertex indices, got {text:?}")))
        })
        .collect()
}

fn require<T: Copy>(value: Option<T>, flag: &str, command: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{command} requires --{flag}")))
}

fn name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Verdict { .. } => "verdict",
        Command::Capacity { .. } => "capacity",
        Command::Profile { .. } => "profile",
        Command::Straighten { .. } => "straighten",
        Command::Qstraight { .. } => "qstraight",
        Command::Net { .. } => "net",
        Command::Probe { .. } => "probe",
        Command::Annulus => "annulus",
    }
}

fn inputs(c: &Command) -> Vec<&PathBuf> {
    match c {
        Command::Classify { inputs } => inputs.iter().collect(),
        Command::Verdict { first, second } => vec![first, second],
        Command::Capacity { graph } | Command::Profile { graph } | Command::Probe { graph } => vec![graph],
        Command::Straighten { graph, function } => vec![graph, function],
        Command::Qstraight { sequence } => vec![sequence],
        Command::Net { cloud } => vec![cloud],
        Command::Annulus => vec![],
    }
}

fn opt_float(x: Option<f64>) -> Value {
    x.map_or(Value::Null, float)
}

/// The full resolved configuration, embedded in every report.
pub fn resolved_config(cli: &Cli) -> Value {
    let o = &cli.options;
    let mode = match o.mode {
        Mode::Exact => "exact",
        Mode::Heuristic => "heuristic",
        Mode::PathUpper => "path_upper",
    };
    let defaults = SolverOptions::default();
    json!({
        "command": command_name(&cli.command),
        "inputs": inputs(&cli.command).iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
        "output_path": o.out.as_ref().map(|p| p.display().to_string()),
        "exponent_p": opt_float(o.p),
        "exponent_Q": opt_float(o.q),
        "mode": mode,
        "seed": o.seed,
        "E": o.e,
        "F": o.f,
        "tolerance": float(o.tolerance.unwrap_or(defaults.tolerance)),
        "max_iterations": o.max_iterations.unwrap_or(defaults.max_iterations),
        "volume": opt_float(o.volume),
        "epsilon": opt_float(o.epsilon),
        "samples": o.samples,
        "C": opt_float(o.c),
        "q_growth": opt_float(o.q_growth),
        "r_inner": opt_float(o.r_inner),
        "r_outer": opt_float(o.r_outer),
    })
}

fn classify_one(path: &PathBuf) -> Result<Value, CliError> {
    let group = Group::from_value(read_json(path)?)?;
    let report = group.classify()?;
    let mut value = serde_json::to_value(&report).expect("report serializes");
    if let Group::Spec(spec) = &group {
        let alg = spec.algebra();
        let flag = alg.polarization_flag(spec.polarization())?;
        value["basis"] = json!(alg.labels());
        value["polarization"] = json!(spec
            .polarization()
            .basis()
            .iter()
            .map(|v| v.iter().map(rational::format).collect::<Vec<_>>())
            .collect::<Vec<_>>());
        value["flag_dims"] = json!(flag.iter().map(|s| s.rank()).collect::<Vec<_>>());
        value["lower_central_series_dims"] =
            json!(alg.lower_central_series().iter().map(|s| s.rank()).collect::<Vec<_>>());
        value["lattice_rank"] = json!(spec.lattice_rank());
        if let Ok(data) = alg.guivarch_splitting() {
            value["layer_dims"] = json!(data.layers().iter().map(|s| s.rank()).collect::<Vec<_>>());
        }
    } else if let Group::Declared(fixture) = &group {
        value["declared"] = json!(fixture.name);
    }
    Ok(json!({ "input": name(path), "report": value }))
}

fn capacitor(o: &Options) -> Result<Capacitor, CliError> {
    let e = parse_indices(require(o.e.as_deref(), "E", "capacity")?, "E")?;
    let f = require(o.f.as_deref(), "F", "capacity")?;
    Ok(if f.trim() == "inf" {
        Capacitor::at_infinity(e)
    } else {
        Capacitor::new(e, parse_indices(f, "F")?)
    })
}

fn execute(cli: &Cli) -> Result<Value, CliError> {
    let o = &cli.options;
    match &cli.command {
        Command::Classify { inputs } => {
            if inputs.is_empty() {
                return Err(CliError::Usage("classify needs at least one input".into()));
            }
            Ok(Value::Array(inputs.iter().map(classify_one).collect::<Result<_, _>>()?))
        }
        Command::Verdict { first, second } => {
            let a = Group::from_value(read_json(first)?)?;
            let b = Group::from_value(read_json(second)?)?;
            Ok(serde_json::to_value(qc_implies_qi_verdict(&a, &b)?).expect("verdict serializes"))
        }
        Command::Capacity { graph } => {
            let p = require(o.p, "p", "capacity")?;
            let cap = capacitor(o)?;
            let g = read_graph(graph)?;
            let mut options = SolverOptions::default();
            if let Some(t) = o.tolerance {
                options.tolerance = t;
            }
            if let Some(m) = o.max_iterations {
                options.max_iterations = m;
            }
            let result = p_capacity_with(&g, &cap, p, &options)?;
            let mut value = serde_json::to_value(&result).expect("result serializes");
            let (e, f) = cap.resolve(&g)?;
            if result.value.is_finite() && !f.is_empty() {
                value["teichmuller_upper_bound"] = float(capacity_upper_teichmuller(&g, &e, &f, p)?);
            }
            Ok(value)
        }
        Command::Profile { graph } => {
            let g = read_graph(graph)?;
            let mode = match o.mode {
                Mode::Exact => ProfileMode::Exact,
                _ => ProfileMode::Heuristic,
            };
            let volumes: Vec<f64> = match o.volume {
                Some(v) => vec![v],
                None => (1..=g.vertex_count() / 2).map(|v| v as f64).collect(),
            };
            let rows = volumes
                .into_iter()
                .map(|v| {
                    let r = isoperimetric_profile(&g, v, mode)?;
                    let mut value = serde_json::to_value(&r).expect("profile serializes");
                    value["volume"] = float(v);
                    Ok(value)
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Value::Array(rows))
        }
        Command::Straighten { graph, function } => {
            let g = read_graph(graph)?;
            let doc = read_json(function)?;
            let u: Vec<f64> = serde_json::from_value(doc["u"].clone())
                .map_err(|e| CliError::Lab(LabError::Malformed(format!("u: {e}"))))?;
            let domain: Vec<usize> = serde_json::from_value(doc["domain"].clone())
                .map_err(|e| CliError::Lab(LabError::Malformed(format!("domain: {e}"))))?;
            if u.len() != g.vertex_count() || domain.iter().any(|&x| x >= g.vertex_count()) {
                return Err(LabError::Malformed("function or domain does not fit the graph".into()).into());
            }
            let s = straighten(&g, &u, &domain);
            let exponents = o.p.map_or(vec![1.0, 2.0, 4.0], |p| vec![p]);
            let energies: Vec<Value> = exponents
                .iter()
                .map(|&p| json!({"p": float(p), "before": float(g.p_energy(&u, p)), "after": float(g.p_energy(&s, p))}))
                .collect();
            Ok(json!({
                "u": s.iter().map(|&x| float(x)).collect::<Vec<_>>(),
                "monotone_before": is_monotone(&g, &u, &domain),
                "monotone_after": is_monotone(&g, &s, &domain),
                "energies": energies,
            }))
        }
        Command::Qstraight { sequence } => {
            let cloud = io::cloud_from_value(read_json(sequence)?)?;
            let idx: Vec<usize> = (0..cloud.len()).collect();
            let r = quasi_straight_defect(&idx, |&a, &b| cloud.distance(a, b))?;
            Ok(serde_json::to_value(r).expect("defect serializes"))
        }
        Command::Net { cloud } => {
            let eps = require(o.epsilon, "epsilon", "net")?;
            let cloud = io::cloud_from_value(read_json(cloud)?)?;
            let net = build_net(&cloud, eps)?;
            let mut value = serde_json::to_value(&net).expect("net serializes");
            value["graph"] = io::graph_to_value(&net.graph);
            value["order_bound"] = float(cloud.order_bound(eps));
            Ok(value)
        }
        Command::Probe { graph } => {
            let n = require(o.q, "Q", "probe")?;
            let q = require(o.p, "p", "probe")?;
            let g = read_graph(graph)?;
            let r = sobolev_constant_probe(&g, n, q, o.samples, o.seed)?;
            Ok(serde_json::to_value(r).expect("probe serializes"))
        }
        Command::Annulus => {
            let c = require(o.c, "C", "annulus")?;
            let q = require(o.q_growth, "q-growth", "annulus")?;
            let p = require(o.p, "p", "annulus")?;
            let r = require(o.r_inner, "r-inner", "annulus")?;
            let big = require(o.r_outer, "r-outer", "annulus")?;
            Ok(json!({ "bound": float(annulus_capacity_bound(c, q, p, r, big)?) }))
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    let config = resolved_config(cli);
    let command = command_name(&cli.command);
    match execute(cli) {
        Ok(result) => Outcome {
            exit_code: 0,
            document: report::render(&report::envelope(command, config, result)),
        },
        Err(e) => {
            let mut doc = report::error_value(e.kind(), &e.message());
            doc["config"] = config;
            doc["version"] = json!(report::VERSION);
            Outcome {
                exit_code: e.exit_code(),
                document: report::render(&doc),
            }
        }
    }
}

/// Parses raw arguments (program name first) and runs them; usage errors exit with 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            Outcome {
                exit_code: 0,
                document: e.to_string(),
            }
        }
        Err(e) => Outcome {
            exit_code: 2,
            document: report::render(&report::error_value("Usage", e.to_string().trim())),
        },
    }
}
