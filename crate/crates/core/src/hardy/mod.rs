//! Scalar and matrix rational functions analytic on the closed unit disk,
//! finite Blaschke products and sample grids of the disk.

pub mod blaschke;
pub mod grid;
pub mod matrix_fn;
pub mod poly;
pub mod rational;

pub use blaschke::BlaschkeProduct;
pub use grid::{make_grid, DiskGrid};
pub use matrix_fn::AnalyticMatrixFunction;
pub use poly::ComplexPoly;
pub use rational::{RationalFn, TailBound, TaylorSeries};
