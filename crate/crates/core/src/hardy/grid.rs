use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Radius of the point cluster added around each refinement centre.
pub const REFINE_RADIUS: f64 = 1e-3;

/// Sample points of the closed unit disk: polar rings plus optional
/// clusters around chosen centres.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskGrid {
    pub radii: Vec<f64>,
    pub angles_per_radius: usize,
    pub include_origin: bool,
    #[serde(with = "crate::serde_util::complex_vec")]
    pub refine_centers: Vec<C64>,
    #[serde(with = "crate::serde_util::complex_vec")]
    pub points: Vec<C64>,
}

/// Grid of `n_radial` rings at radii `i / n_radial` with `n_angular` equally
/// spaced angles each. Every refinement centre gets at least 16 extra points
/// within `1e-3`.
pub fn make_grid(n_radial: usize, n_angular: usize, refine_near: &[C64]) -> Result<DiskGrid> {
    if n_radial < 1 || n_angular < 8 {
        return Err(Error::InvalidArgument(format!(
            "grid needs n_radial >= 1 and n_angular >= 8, got {n_radial} x {n_angular}"
        )));
    }
    let radii: Vec<f64> = (1..=n_radial).map(|i| i as f64 / n_radial as f64).collect();
    let mut points = Vec::with_capacity(n_radial * n_angular);
    for &r in &radii {
        for j in 0..n_angular {
            points.push(C64::from_polar(r, 2.0 * PI * j as f64 / n_angular as f64));
        }
    }
    let mut grid = DiskGrid {
        radii,
        angles_per_radius: n_angular,
        include_origin: false,
        refine_centers: Vec::new(),
        points,
    };
    for &c in refine_near {
        grid.add_cluster(c, REFINE_RADIUS, &[0.25, 0.5, 0.99], 8);
    }
    grid.normalize();
    Ok(grid)
}

impl DiskGrid {
    /// Arbitrary point set, clipped to the closed disk and sorted.
    pub fn from_points(points: Vec<C64>) -> Self {
        let mut grid = DiskGrid {
            radii: Vec::new(),
            angles_per_radius: 0,
            include_origin: false,
            refine_centers: Vec::new(),
            points,
        };
        grid.normalize();
        grid
    }

    pub fn with_origin(mut self) -> Self {
        self.include_origin = true;
        self.points.push(C64::new(0.0, 0.0));
        self.normalize();
        self
    }

    /// Adds rings at `radius * {1/8, 1/4, 1/2, 1}` (16 angles each) plus the
    /// centre itself around every given centre.
    pub fn refined(&self, centers: &[C64], radius: f64) -> Self {
        let mut out = self.clone();
        for &c in centers {
            out.add_cluster(c, radius, &[0.125, 0.25, 0.5, 1.0], 16);
        }
        out.normalize();
        out
    }

    /// Union with extra points.
    pub fn extended(&self, extra: &[C64]) -> Self {
        let mut out = self.clone();
        out.points.extend_from_slice(extra);
        out.normalize();
        out
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn add_cluster(&mut self, center: C64, radius: f64, fractions: &[f64], n_angles: usize) {
        self.refine_centers.push(center);
        self.points.push(center);
        for &f in fractions {
            for j in 0..n_angles {
                let offset = C64::from_polar(radius * f, 2.0 * PI * j as f64 / n_angles as f64);
                self.points.push(center + offset);
            }
        }
    }

    /// Clips onto the closed disk, then sorts by (modulus, angle in [0, 2pi))
    /// and drops coincident neighbours.
    fn normalize(&mut self) {
        for p in &mut self.points {
            let r = p.norm();
            if r > 1.0 {
                *p /= r;
                while p.norm() > 1.0 {
                    *p *= 1.0 - f64::EPSILON;
                }
            }
        }
        self.points.sort_by(|a, b| point_order(*a, *b));
        self.points.dedup_by(|a, b| (*a - *b).norm() <= 1e-15);
    }
}

fn angle(z: C64) -> f64 {
    let t = z.arg();
    if t < 0.0 {
        t + 2.0 * PI
    } else {
        t
    }
}

/// Radius-major, angle-minor ordering of disk points.
pub fn point_order(a: C64, b: C64) -> std::cmp::Ordering {
    a.norm()
        .total_cmp(&b.norm())
        .then_with(|| angle(a).total_cmp(&angle(b)))
}
