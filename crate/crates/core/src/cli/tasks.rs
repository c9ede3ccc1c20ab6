use serde::Serialize;
use serde_json::{json, Value};

use super::problem::*;
use super::CliError;
use crate::corona::{self, FrameNumberOptions};
use crate::error::Error;
use crate::hardy::make_grid;
use crate::linalg::{RankPolicy, DEFAULT_GAP_RATIO};
use crate::orbit::{self, FrameOptions, OrbitSystem, Verdict};
use crate::similarity::{self, SimilarityOptions};
use crate::{bilateral, model_space};

/// Every tolerance and size a run may use; embedded in each report.
#[derive(Debug, Clone, Serialize)]
pub struct Settings {
    pub grid_radial: usize,
    pub grid_angular: usize,
    pub order: Option<usize>,
    pub kernel_tol: f64,
    pub gap_ratio: f64,
    pub frame_tol: f64,
    pub threshold: f64,
    pub max_rounds: usize,
    pub seed: u64,
    pub force: bool,
    pub stein_margin: f64,
    pub divergence_factor: f64,
    pub refine_radius: f64,
    pub simple_zero_separation: f64,
    pub projection_tol: f64,
    pub range_tol: f64,
    pub bilateral_frame_tol: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            grid_radial: 32,
            grid_angular: 128,
            order: None,
            kernel_tol: crate::linalg::DEFAULT_RANK_TOL,
            gap_ratio: DEFAULT_GAP_RATIO,
            frame_tol: orbit::DEFAULT_FRAME_TOL,
            threshold: corona::DEFAULT_THRESHOLD,
            max_rounds: 3,
            seed: 0,
            force: false,
            stein_margin: orbit::STEIN_MARGIN,
            divergence_factor: orbit::DIVERGENCE_FACTOR,
            refine_radius: corona::REFINE_RADIUS,
            simple_zero_separation: corona::SIMPLE_ZERO_SEPARATION,
            projection_tol: bilateral::PROJECTION_TOL,
            range_tol: bilateral::RANGE_TOL,
            bilateral_frame_tol: bilateral::FRAME_TOL,
        }
    }
}

impl Settings {
    pub fn apply_file(&mut self, o: &FileOptions) {
        if let Some(v) = o.grid_radial {
            self.grid_radial = v;
        }
        if let Some(v) = o.grid_angular {
            self.grid_angular = v;
        }
        if o.order.is_some() {
            self.order = o.order;
        }
        if let Some(v) = o.kernel_tol {
            self.kernel_tol = v;
        }
        if let Some(v) = o.frame_tol {
            self.frame_tol = v;
        }
        if let Some(v) = o.threshold {
            self.threshold = v;
        }
        if let Some(v) = o.max_rounds {
            self.max_rounds = v;
        }
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.force {
            self.force = v;
        }
    }

    fn policy(&self) -> RankPolicy {
        RankPolicy {
            tol: self.kernel_tol,
            gap_ratio: self.gap_ratio,
        }
    }

    fn frame(&self) -> FrameOptions {
        FrameOptions {
            frame_tol: self.frame_tol,
        }
    }
}

pub struct TaskOutput {
    pub result: Value,
    /// `None` for tasks without a yes/no outcome.
    pub verdict: Option<bool>,
    /// `(re, im, lambda_min)` rows for corona tasks.
    pub grid_rows: Option<Vec<(f64, f64, f64)>>,
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

pub fn run_task(p: &Problem, s: &Settings) -> Result<TaskOutput, CliError> {
    match p.task {
        Task::FrameBounds => {
            let pl: OrbitPayload = from_value(&p.payload, "/payload")?;
            let sys = OrbitSystem::new(pl.t, pl.g)?;
            let report = orbit::frame_bounds(&sys, &s.frame())?;
            Ok(TaskOutput {
                verdict: Some(report.is_frame),
                result: json!({ "spectral_radius": sys.spectral_radius, "report": to_json(&report) }),
                grid_rows: None,
            })
        }
        Task::RankOne => {
            let pl: RankOnePayload = from_value(&p.payload, "/payload")?;
            let r = orbit::rank_one_classifier(&pl.f, &pl.g, &pl.x, &s.frame())?;
            Ok(TaskOutput {
                verdict: Some(r.verdict == Verdict::Frame),
                result: to_json(&r),
                grid_rows: None,
            })
        }
        Task::ModelSpace => {
            let pl: ThetaPayload = from_value(&p.payload, "/payload")?;
            let k = model_space::model_space_auto(&pl.theta, s.order, &s.policy())?;
            let eig = k.eigenvalues()?;
            let defect = k.spectrum_defect()?;
            let mut v = to_json(&k);
            v["eigenvalues"] = to_json(&eig.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
            v["spectrum_defect"] = json!(defect);
            v["orthonormality_defect"] = json!(k.orthonormality_defect());
            Ok(TaskOutput {
                verdict: None,
                result: v,
                grid_rows: None,
            })
        }
        Task::CoronaCheck => {
            let pl: CoronaPayload = from_value(&p.payload, "/payload")?;
            let grid = make_grid(s.grid_radial, s.grid_angular, &pl.refine_near)?;
            let cert = corona::corona_infimum(&pl.f, &pl.theta, &grid, s.threshold)?;
            let n = s.order.unwrap_or(64);
            let tlb = corona::toeplitz_lower_bound(&pl.f, &pl.theta, n, &s.policy());
            let gap = corona::tujess_gap(&pl.f, &pl.theta, n)?;
            let rows = cert
                .grid
                .points
                .iter()
                .zip(&cert.values)
                .map(|(z, v)| (z.re, z.im, *v))
                .collect();
            let result = json!({
                "certificate": to_json(&cert),
                "grid_points": cert.grid.len(),
                "toeplitz_order": n,
                "toeplitz_lower_bound": match &tlb { Ok(v) => json!(v), Err(e) => json!({ "error": e.to_string() }) },
                "tujess_gap": gap,
                "F_sup_norm": pl.f.boundary_sup_norm(256)?,
                "theta_sup_norm": pl.theta.boundary_sup_norm(256)?,
            });
            Ok(TaskOutput {
                verdict: Some(cert.passed),
                result,
                grid_rows: Some(rows),
            })
        }
        Task::Similarity => {
            let pl: OrbitPayload = from_value(&p.payload, "/payload")?;
            let opts = SimilarityOptions {
                order: s.order,
                kernel_tol: s.kernel_tol,
                force: s.force,
                frame: s.frame(),
            };
            let r = similarity::similarity_verify(&pl.t, &pl.g, &opts)?;
            let eig = crate::linalg::eigenvalues(&r.s_k)?;
            let mut v = to_json(&r);
            v["S_K_eigenvalues"] = to_json(&eig.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>());
            Ok(TaskOutput {
                verdict: Some(!r.advisory && r.intertwine_residual <= 1e-6),
                result: v,
                grid_rows: None,
            })
        }
        Task::FrameNumber => {
            let pl: ThetaPayload = from_value(&p.payload, "/payload")?;
            let opts = FrameNumberOptions {
                grid_radial: s.grid_radial,
                grid_angular: s.grid_angular,
                max_rounds: s.max_rounds,
                threshold: s.threshold,
                policy: s.policy(),
            };
            match corona::unilateral_frame_number(&pl.theta, &opts) {
                Ok(r) => Ok(TaskOutput {
                    verdict: Some(true),
                    result: json!({ "status": "constructed", "result": to_json(&r) }),
                    grid_rows: None,
                }),
                Err(e @ (Error::RepeatedZeros { .. } | Error::CertificationFailed { .. })) => {
                    let (p_low, witnesses) = corona::frame_number_lower_bound(&pl.theta, &opts.policy)?;
                    let status = if matches!(e, Error::RepeatedZeros { .. }) {
                        "repeated-zeros"
                    } else {
                        "certification-failed"
                    };
                    Ok(TaskOutput {
                        verdict: Some(false),
                        result: json!({
                            "status": status,
                            "message": e.to_string(),
                            "p_lower_bound": p_low,
                            "witnesses": to_json(&witnesses),
                        }),
                        grid_rows: None,
                    })
                }
                Err(e) => Err(e.into()),
            }
        }
        Task::BilateralFrame => {
            let pl: BilateralFramePayload = from_value(&p.payload, "/payload")?;
            let mut report = bilateral::fiber_frame_bounds(&pl.g, &pl.sigma)?;
            report.frame_number = Some(bilateral::bilateral_frame_number(&pl.sigma)?.p);
            Ok(TaskOutput {
                verdict: Some(report.is_frame),
                result: json!({ "report": to_json(&report), "bessel": bilateral::bessel_symbol_check(&pl.g) }),
                grid_rows: None,
            })
        }
        Task::BilateralNumber => {
            let pl: SigmaPayload = from_value(&p.payload, "/payload")?;
            let n = bilateral::bilateral_frame_number(&pl.sigma)?;
            let fibers = bilateral::fiber_frame_bounds(&n.generators, &pl.sigma)?;
            let minimal = bilateral::minimality_check(&pl.sigma, n.p, s.seed)?;
            Ok(TaskOutput {
                verdict: Some(!n.degenerate && minimal.holds && fibers.is_frame),
                result: json!({
                    "frame_number": to_json(&n),
                    "generator_bounds": to_json(&fibers),
                    "minimality": to_json(&minimal),
                }),
                grid_rows: None,
            })
        }
    }
}
