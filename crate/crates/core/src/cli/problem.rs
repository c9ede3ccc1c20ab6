//! Problem files: `{"version": "1", "task": ..., "payload": {...}, "options": {...}}`.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::CliError;
use crate::bilateral::PiecewiseSymbol;
use crate::hardy::AnalyticMatrixFunction;
use crate::linalg::{CMat, CVec};

pub const FORMAT_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    FrameBounds,
    CoronaCheck,
    ModelSpace,
    Similarity,
    FrameNumber,
    BilateralFrame,
    BilateralNumber,
    RankOne,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::FrameBounds => "frame-bounds",
            Task::CoronaCheck => "corona-check",
            Task::ModelSpace => "model-space",
            Task::Similarity => "similarity",
            Task::FrameNumber => "frame-number",
            Task::BilateralFrame => "bilateral-frame",
            Task::BilateralNumber => "bilateral-number",
            Task::RankOne => "rank-one",
        }
    }
}

/// Optional overrides of the default tolerances and grid sizes.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileOptions {
    pub grid_radial: Option<usize>,
    pub grid_angular: Option<usize>,
    pub order: Option<usize>,
    pub kernel_tol: Option<f64>,
    pub frame_tol: Option<f64>,
    pub threshold: Option<f64>,
    pub max_rounds: Option<usize>,
    pub seed: Option<u64>,
    pub force: Option<bool>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    version: String,
    task: Task,
    payload: Value,
    #[serde(default)]
    options: Value,
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub task: Task,
    pub payload: Value,
    pub options: FileOptions,
}

/// Deserializes `value`, reporting the failing location as a JSON pointer
/// below `prefix`.
pub fn from_value<T: DeserializeOwned>(value: &Value, prefix: &str) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let mut pointer = prefix.to_string();
        for seg in e.path().iter() {
            use serde_path_to_error::Segment;
            match seg {
                Segment::Seq { index } => pointer.push_str(&format!("/{index}")),
                Segment::Map { key } => pointer.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
                Segment::Enum { variant } => pointer.push_str(&format!("/{variant}")),
                Segment::Unknown => {}
            }
        }
        CliError::Schema {
            pointer,
            message: e.into_inner().to_string(),
        }
    })
}

pub fn parse_problem(text: &str) -> Result<Problem, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let env: Envelope = from_value(&value, "")?;
    if env.version != FORMAT_VERSION {
        return Err(CliError::Schema {
            pointer: "/version".into(),
            message: format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", env.version),
        });
    }
    let options = if env.options.is_null() {
        FileOptions::default()
    } else {
        from_value(&env.options, "/options")?
    };
    Ok(Problem {
        task: env.task,
        payload: env.payload,
        options,
    })
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitPayload {
    #[serde(rename = "T", with = "crate::serde_util::cmat")]
    pub t: CMat,
    #[serde(rename = "G", with = "crate::serde_util::cmat")]
    pub g: CMat,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RankOnePayload {
    #[serde(with = "crate::serde_util::cvec")]
    pub f: CVec,
    #[serde(with = "crate::serde_util::cvec")]
    pub g: CVec,
    #[serde(rename = "X", with = "crate::serde_util::cmat")]
    pub x: CMat,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaPayload {
    pub theta: AnalyticMatrixFunction,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoronaPayload {
    #[serde(rename = "F")]
    pub f: AnalyticMatrixFunction,
    pub theta: AnalyticMatrixFunction,
    #[serde(default, with = "crate::serde_util::complex_vec")]
    pub refine_near: Vec<crate::linalg::C64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BilateralFramePayload {
    #[serde(rename = "G")]
    pub g: PiecewiseSymbol,
    pub sigma: PiecewiseSymbol,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaPayload {
    pub sigma: PiecewiseSymbol,
}
