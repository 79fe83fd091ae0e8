//! Command-line front end for `interval-centers`.
//!
//! Reads interval datasets from CSV (see [`dataset`]) and prints JSON on
//! standard output. Exit codes: 0 on success, 1 for usage errors, 2 for data
//! or validation errors.

pub mod dataset;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use interval_centers::l2_hausdorff::{self, ScanOptions};
use interval_centers::{
    cluster, dispersion_profile, dist_hypercube, normalized_dist, oracle, CentralEstimate,
    CentralMethod, ClusterDistance, ClusteringConfig, Exponent, Hypercube, IntervalSample, Metric,
};
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::dataset::{read_csv, DatasetError, DatasetFile};

pub const THREADS_ENV: &str = "INTERVAL_CENTERS_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "interval-centers",
    version,
    about = "Central intervals, dispersions and clustering for interval-valued data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Central interval and dispersion of every variable.
    Center(CenterArgs),
    /// Dynamic clustering with centrocube prototypes.
    Cluster(ClusterArgs),
    /// Distance between two rows.
    Dist(DistArgs),
    /// Brute-force grid minimum, for cross-checking `center`.
    #[command(hide = true)]
    Oracle(CenterArgs),
}

#[derive(Debug, Args)]
pub struct CenterArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// median, midrange, mean-bounds, mean-midlen or l2-hausdorff.
    #[arg(long, value_parser = parse_method)]
    pub method: CentralMethod,
    /// Restrict the output to one variable.
    #[arg(long)]
    pub var: Option<String>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub k: usize,
    /// 1 or 2.
    #[arg(long, value_parser = parse_exponent)]
    pub p: Exponent,
    /// hausdorff, l2-bounds or l2-midlen.
    #[arg(long, value_parser = parse_cluster_distance)]
    pub distance: ClusterDistance,
    /// Scale each variable by its dispersion over the whole file.
    #[arg(long)]
    pub normalize: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub max_iter: usize,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Row id, or 1-based row number.
    #[arg(long)]
    pub first: String,
    /// Row id, or 1-based row number.
    #[arg(long)]
    pub second: String,
    /// hausdorff, l{1,2,inf}-bounds or l{1,2,inf}-midlen.
    #[arg(long, value_parser = parse_metric)]
    pub distance: Metric,
    /// Exponent combining the per-variable distances: 1, 2 or inf.
    #[arg(long, value_parser = parse_exponent)]
    pub q: Exponent,
    /// Divide each variable's distance by its dispersion over the file.
    #[arg(long)]
    pub normalize: bool,
}

fn parse_method(s: &str) -> Result<CentralMethod, String> {
    s.parse()
        .map_err(|e: interval_centers::Error| e.to_string())
}

fn parse_exponent(s: &str) -> Result<Exponent, String> {
    s.parse()
        .map_err(|e: interval_centers::Error| e.to_string())
}

fn parse_cluster_distance(s: &str) -> Result<ClusterDistance, String> {
    s.parse()
        .map_err(|e: interval_centers::Error| e.to_string())
}

fn parse_metric(s: &str) -> Result<Metric, String> {
    s.parse()
        .map_err(|e: interval_centers::Error| e.to_string())
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Dataset(#[from] DatasetError),
    #[error(transparent)]
    Core(#[from] interval_centers::Error),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use interval_centers::Error as E;
        match self {
            CliError::Usage(_) => 1,
            CliError::Core(E::InvalidConfig(_) | E::UnsupportedPairing { .. }) => 1,
            _ => 2,
        }
    }
}

/// Rounds to 12 decimal places so that output does not depend on the last
/// bits of floating-point noise.
pub fn round_number(x: f64) -> Value {
    let rounded: f64 = format!("{x:.12}").parse().expect("formatted float parses");
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    json!(rounded)
}

fn exponent_json(p: Exponent) -> Value {
    match p {
        Exponent::One => json!(1),
        Exponent::Two => json!(2),
        Exponent::Infinity => json!("inf"),
    }
}

fn hypercube_json(names: &[String], cube: &Hypercube) -> Value {
    let mut obj = Map::new();
    for (name, c) in names.iter().zip(cube.components()) {
        obj.insert(
            name.clone(),
            json!({"lo": round_number(c.lower()), "hi": round_number(c.upper())}),
        );
    }
    Value::Object(obj)
}

fn estimate(sample: &IntervalSample, method: CentralMethod) -> CentralEstimate {
    match method {
        CentralMethod::L2Hausdorff => {
            let options = ScanOptions {
                parallel: true,
                ..ScanOptions::default()
            };
            l2_hausdorff::scan(sample, options).estimate
        }
        _ => method.center(sample),
    }
}

fn selected_vars(file: &DatasetFile, var: Option<&str>) -> Result<Vec<usize>, CliError> {
    let names = file.data.names();
    match var {
        None => Ok((0..names.len()).collect()),
        Some(v) => names
            .iter()
            .position(|n| n == v)
            .map(|j| vec![j])
            .ok_or_else(|| CliError::Data(format!("no variable named {v:?}"))),
    }
}

pub fn cmd_center(args: &CenterArgs) -> Result<Value, CliError> {
    let file = read_csv(&args.input)?;
    let mut out = Vec::new();
    for j in selected_vars(&file, args.var.as_deref())? {
        let est = estimate(&file.data.coordinate(j), args.method);
        out.push(json!({
            "variable": file.data.names()[j],
            "center": {"lo": round_number(est.center.lower()), "hi": round_number(est.center.upper())},
            "dispersion": round_number(est.dispersion),
            "method": args.method.name(),
            "p": exponent_json(args.method.exponent()),
        }));
    }
    Ok(Value::Array(out))
}

pub fn cmd_oracle(args: &CenterArgs) -> Result<Value, CliError> {
    let file = read_csv(&args.input)?;
    let (p, metric) = (args.method.exponent(), args.method.metric());
    let mut out = Vec::new();
    for j in selected_vars(&file, args.var.as_deref())? {
        let res = oracle::grid_minimize(&file.data.coordinate(j), p, metric);
        out.push(json!({
            "variable": file.data.names()[j],
            "center": {"lo": round_number(res.center.lower()), "hi": round_number(res.center.upper())},
            "dispersion": round_number(res.value),
            "resolution": res.resolution,
            "method": args.method.name(),
            "p": exponent_json(p),
        }));
    }
    Ok(Value::Array(out))
}

pub fn cmd_cluster(args: &ClusterArgs) -> Result<Value, CliError> {
    let config = ClusteringConfig {
        k: args.k,
        p: args.p,
        distance: args.distance,
        normalize: args.normalize,
        seed: args.seed,
        max_iter: args.max_iter,
    };
    // reject the configuration before touching the file
    config.method()?;
    let file = read_csv(&args.input)?;
    let result = cluster(&file.data, &config)?;
    let names = file.data.names();
    Ok(json!({
        "k": args.k,
        "p": exponent_json(args.p),
        "distance": args.distance.name(),
        "normalize": args.normalize,
        "seed": args.seed,
        "assignments": result.assignments,
        "prototypes": result.prototypes.iter().map(|c| hypercube_json(names, c)).collect::<Vec<_>>(),
        "criterion_trace": result.criterion_trace.iter().map(|&v| round_number(v)).collect::<Vec<_>>(),
        "iterations": result.iterations,
        "converged": result.converged,
        "repairs": result.repairs,
    }))
}

pub fn cmd_dist(args: &DistArgs) -> Result<Value, CliError> {
    let file = read_csv(&args.input)?;
    let row = |sel: &str| {
        file.find_row(sel)
            .ok_or_else(|| CliError::Data(format!("no row {sel:?}")))
    };
    let x = &file.data.items()[row(&args.first)?];
    let y = &file.data.items()[row(&args.second)?];
    let value = if args.normalize {
        let method = CentralMethod::for_pairing(args.distance, args.q)?;
        let profile = dispersion_profile(&file.data, method);
        normalized_dist(x, y, &profile, args.distance, args.q)?
    } else {
        dist_hypercube(x, y, args.distance, args.q)?
    };
    Ok(json!({"distance": round_number(value)}))
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let threads = match std::env::var(THREADS_ENV) {
        Ok(v) if !v.trim().is_empty() => v.trim().parse::<usize>().map_err(|_| {
            CliError::Usage(format!(
                "{THREADS_ENV} must be a non-negative integer, got {v:?}"
            ))
        })?,
        _ => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    thread_pool()?.install(|| match &cli.command {
        Command::Center(a) => cmd_center(a),
        Command::Cluster(a) => cmd_cluster(a),
        Command::Dist(a) => cmd_dist(a),
        Command::Oracle(a) => cmd_oracle(a),
    })
}

/// Outcome of one invocation: what goes to stdout, what goes to stderr, and
/// the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                stdout,
                stderr,
                code,
            };
        }
    };
    match execute(&cli) {
        Ok(value) => Outcome {
            stdout: serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n",
            stderr: String::new(),
            code: 0,
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        },
    }
}
