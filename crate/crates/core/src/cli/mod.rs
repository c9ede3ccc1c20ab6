//! Command-line front end. One subcommand per task plus `run`, which takes
//! the task from the problem file.

pub mod problem;
pub mod tasks;

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use problem::{parse_problem, Task};
use tasks::{run_task, Settings};

pub const ENV_THREADS: &str = "ORBITFRAMES_THREADS";

/// Exit status for a negative verdict under `--strict`.
pub const EXIT_NEGATIVE: i32 = 2;
pub const EXIT_ERROR: i32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot access {path}: {message}")]
    Io { path: String, message: String },
    #[error("ParseError at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("SchemaError at {pointer:?}: {message}")]
    Schema { pointer: String, message: String },
    #[error("ComputeError: {0}")]
    Compute(#[from] crate::Error),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "orbitframes",
    version,
    about = "Frames of operator orbits: decide, certify, construct"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Frame bounds of the orbits of a matrix.
    FrameBounds(Flags),
    /// Grid certificate of the matrix corona condition.
    CoronaCheck(Flags),
    /// Orthonormal model space and compressed shift.
    ModelSpace(Flags),
    /// Similarity to the compressed shift on (Ker W)^perp.
    Similarity(Flags),
    /// Unilateral frame number of S_Theta.
    FrameNumber(Flags),
    /// Fiberwise bounds of bilateral orbits.
    BilateralFrame(Flags),
    /// Bilateral frame number with minimal generators.
    BilateralNumber(Flags),
    /// Case analysis for rank-one operators.
    RankOne(Flags),
    /// Runs whatever task the problem file names.
    Run(Flags),
}

#[derive(Debug, Clone, clap::Args)]
pub struct Flags {
    /// Problem file (JSON).
    pub problem: PathBuf,
    #[arg(long)]
    pub grid_radial: Option<usize>,
    #[arg(long)]
    pub grid_angular: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub kernel_tol: Option<f64>,
    #[arg(long)]
    pub frame_tol: Option<f64>,
    /// Exit with status 2 when the verdict is negative.
    #[arg(long)]
    pub strict: bool,
    /// Leave large matrices out of the report.
    #[arg(long)]
    pub no_matrices: bool,
    /// Write per-grid-point lambda_min as CSV (corona-check only).
    #[arg(long, value_name = "PATH")]
    pub dump_grid: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

impl Command {
    fn split(&self) -> (Option<Task>, &Flags) {
        match self {
            Command::FrameBounds(f) => (Some(Task::FrameBounds), f),
            Command::CoronaCheck(f) => (Some(Task::CoronaCheck), f),
            Command::ModelSpace(f) => (Some(Task::ModelSpace), f),
            Command::Similarity(f) => (Some(Task::Similarity), f),
            Command::FrameNumber(f) => (Some(Task::FrameNumber), f),
            Command::BilateralFrame(f) => (Some(Task::BilateralFrame), f),
            Command::BilateralNumber(f) => (Some(Task::BilateralNumber), f),
            Command::RankOne(f) => (Some(Task::RankOne), f),
            Command::Run(f) => (None, f),
        }
    }
}

/// Keys holding bulky matrices, dropped by `--no-matrices`.
const MATRIX_KEYS: &[&str] = &["W", "K_basis", "V", "basis", "points"];

fn strip_matrices(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for k in MATRIX_KEYS {
                map.remove(*k);
            }
            map.values_mut().for_each(strip_matrices);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_matrices),
        _ => {}
    }
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = path.with_file_name(format!(".{name}.tmp-{}", std::process::id()));
    let mut file = std::fs::File::create(&tmp).map_err(io)?;
    file.write_all(bytes).map_err(io)?;
    file.sync_all().map_err(io)?;
    drop(file);
    std::fs::rename(&tmp, path).map_err(|e| {
        let _ = std::fs::remove_file(&tmp);
        io(e)
    })
}

fn configure_threads() {
    if let Some(n) = std::env::var(ENV_THREADS)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

/// The full report and the exit status it implies.
pub fn execute(cmd: &Command) -> Result<(Value, i32), CliError> {
    let (expected, flags) = cmd.split();
    let text = std::fs::read_to_string(&flags.problem).map_err(|e| CliError::Io {
        path: flags.problem.display().to_string(),
        message: e.to_string(),
    })?;
    let problem = parse_problem(&text)?;
    if let Some(t) = expected {
        if t != problem.task {
            return Err(CliError::Usage(format!(
                "subcommand {} does not match task {:?} in the problem file",
                t.name(),
                problem.task.name()
            )));
        }
    }
    if flags.dump_grid.is_some() && problem.task != Task::CoronaCheck {
        return Err(CliError::Usage("--dump-grid needs a corona-check problem".into()));
    }
    let mut settings = Settings::default();
    settings.apply_file(&problem.options);
    if let Some(v) = flags.grid_radial {
        settings.grid_radial = v;
    }
    if let Some(v) = flags.grid_angular {
        settings.grid_angular = v;
    }
    if flags.order.is_some() {
        settings.order = flags.order;
    }
    if let Some(v) = flags.kernel_tol {
        settings.kernel_tol = v;
    }
    if let Some(v) = flags.frame_tol {
        settings.frame_tol = v;
    }
    let out = run_task(&problem, &settings)?;
    if let (Some(path), Some(rows)) = (&flags.dump_grid, &out.grid_rows) {
        let mut csv = String::from("re,im,lambda_min\n");
        for (re, im, l) in rows {
            csv.push_str(&format!("{re},{im},{l}\n"));
        }
        write_atomic(path, csv.as_bytes())?;
    }
    let mut result = out.result;
    if flags.no_matrices {
        strip_matrices(&mut result);
    }
    let report = json!({
        "tool": "orbitframes",
        "version": env!("CARGO_PKG_VERSION"),
        "task": problem.task.name(),
        "input_sha256": hex::encode(Sha256::digest(text.as_bytes())),
        "tolerances": serde_json::to_value(&settings).expect("settings serialize"),
        "verdict": out.verdict,
        "result": result,
    });
    let code = if flags.strict && out.verdict == Some(false) {
        EXIT_NEGATIVE
    } else {
        0
    };
    Ok((report, code))
}

/// Entry point shared by the binary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    let (_, flags) = cli.command.split();
    let output = flags.output.clone();
    match execute(&cli.command) {
        Ok((report, code)) => {
            let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
            text.push('\n');
            match output {
                Some(path) => {
                    if let Err(e) = write_atomic(&path, text.as_bytes()) {
                        eprintln!("error: {e}");
                        return EXIT_ERROR;
                    }
                    println!("task     {}", report["task"].as_str().unwrap_or(""));
                    println!("verdict  {}", report["verdict"]);
                    println!("report   {}", path.display());
                }
                None => print!("{text}"),
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}
