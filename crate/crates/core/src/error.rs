use nalgebra::Complex;
use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("Blaschke zero {0} does not lie in the open unit disk")]
    ZeroOutsideDisk(Complex<f64>),
    #[error("constant {0} is not unimodular")]
    NotUnimodular(Complex<f64>),
    #[error("denominator has a root at {0}, not outside the closed disk")]
    PoleInsideDisk(Complex<f64>),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("evaluation point {point} is within 1e-9 of a pole")]
    PoleTooClose { point: Complex<f64> },
    #[error("evaluation point {0} lies outside the closed unit disk")]
    OutsideDisk(Complex<f64>),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("symbol is not rigid: {0}")]
    NotRigid(String),
    #[error("no spectral gap: {0}")]
    NoSpectralGap(String),
    #[error("Blaschke product is constant; model space is trivial")]
    DegreeZero,
    #[error("spectral radius {0} is not below 1 - 1e-9")]
    SpectralRadiusTooLarge(f64),
    #[error("zero vector")]
    ZeroVector,
    #[error("determinant zeros are not simple (closest pair {distance:e}); frame number is at least {lower_bound}")]
    RepeatedZeros { distance: f64, lower_bound: usize },
    #[error("corona certificate could not be established after {rounds} rounds (best eta^2 = {eta_sq:e}); frame number is at least {lower_bound}")]
    CertificationFailed {
        rounds: usize,
        eta_sq: f64,
        lower_bound: usize,
    },
    #[error("symbol piece on arc #{arc} is not an orthogonal projection (defect {defect:e})")]
    NotProjection { arc: usize, defect: f64 },
    #[error("generator columns leave the range of the projection on arc #{arc} (defect {defect:e})")]
    ColumnsNotInRange { arc: usize, defect: f64 },
    #[error("invalid arc partition: {0}")]
    InvalidPartition(String),
    #[error("operator is not normal (defect {0:e})")]
    NotNormal(f64),
    #[error("eigenvalue {0} is off the unit circle")]
    SpectrumOffCircle(Complex<f64>),
    #[error("matrix decomposition did not converge: {0}")]
    NoConvergence(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
