//! Acceptance criteria, one line of output each.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use orbitframes::bilateral::{self, PiecewiseSymbol};
use orbitframes::corona::{self, FrameNumberOptions};
use orbitframes::hardy::{make_grid, AnalyticMatrixFunction, BlaschkeProduct, ComplexPoly, RationalFn};
use orbitframes::linalg::{self, CMat, RankPolicy, C64};
use orbitframes::model_space::{model_space_diagonal, model_space_truncated};
use orbitframes::orbit::{self, FrameOptions, Method, OrbitSystem, RankOneCase, Verdict};
use orbitframes::similarity::{similarity_verify, SimilarityOptions};
use orbitframes::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn b(a: f64) -> BlaschkeProduct {
    BlaschkeProduct::factor(c(a, 0.0)).unwrap()
}

fn poly(coeffs: &[C64]) -> RationalFn {
    RationalFn::polynomial(ComplexPoly::new(coeffs.to_vec()))
}

fn random_c(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
}

fn random_mat(rng: &mut ChaCha8Rng, r: usize, k: usize) -> CMat {
    CMat::from_fn(r, k, |_, _| random_c(rng))
}

/// `F = [1; 1]`, `Theta = diag(z, b_{1/2})`.
fn unit_pair() -> (AnalyticMatrixFunction, AnalyticMatrixFunction) {
    let f = AnalyticMatrixFunction::column(vec![RationalFn::one(), RationalFn::one()]);
    let theta = AnalyticMatrixFunction::blaschke_diagonal(&[BlaschkeProduct::power_of_z(1), b(0.5)]);
    (f, theta)
}

fn criterion_1() -> Outcome {
    let (f, theta) = unit_pair();
    let b2 = b(0.5);
    let sum_sq = |z: C64| z.norm_sqr() + b2.eval(z).norm_sqr();
    let coarse = make_grid(64, 256, &[]).map_err(|e| e.to_string())?;
    let start = coarse
        .points
        .iter()
        .copied()
        .fold((f64::INFINITY, c(0.0, 0.0)), |acc, z| {
            let v = sum_sq(z);
            if v < acc.0 {
                (v, z)
            } else {
                acc
            }
        });
    let fine = coarse.refined(&[start.1], 2.0 / 64.0).refined(&[start.1], 1e-3);
    let delta_sq = fine.points.iter().map(|&z| sum_sq(z)).fold(f64::INFINITY, f64::min);
    let cert = corona::corona_infimum(&f, &theta, &coarse, corona::DEFAULT_THRESHOLD).map_err(|e| e.to_string())?;
    let bound = delta_sq / 16.0;
    let worst = cert.grid.points.iter().zip(&cert.values).map(|(z, v)| (*z, *v)).fold(
        (c(0.0, 0.0), f64::INFINITY),
        |acc, (z, v)| if v < acc.1 { (z, v) } else { acc },
    );
    check(cert.values.len() == cert.grid.len(), || {
        "values and grid differ in length".into()
    })?;
    check(worst.1 >= bound - 1e-12, || {
        format!("lambda_min {} at {} below delta^2/16 = {bound}", worst.1, worst.0)
    })?;
    check(cert.eta_sq >= bound - 1e-12 && cert.passed, || {
        format!("eta_sq {} below {bound}", cert.eta_sq)
    })?;
    Ok(format!(
        "delta^2 = {delta_sq:.6}, min lambda_min = {:.6} >= {bound:.6} over {} points",
        worst.1,
        cert.grid.len()
    ))
}

fn criterion_2() -> Outcome {
    let order = 64;
    let b2 = b(0.5);
    let k = model_space_diagonal(&[BlaschkeProduct::power_of_z(1), b2.clone()], order).map_err(|e| e.to_string())?;
    let one = AnalyticMatrixFunction::column(vec![RationalFn::one(), RationalFn::one()]);
    let proj = k.project(&one).map_err(|e| e.to_string())?;

    // P_K 1 = 1 - conj(b(0)) b per entry: (1, 1 + b_{1/2}/2).
    let b2c = b2.to_rational().taylor_coeffs(order);
    let mut expected = vec![c(0.0, 0.0); 2 * order];
    expected[0] = c(1.0, 0.0);
    for (n, coef) in b2c.iter().enumerate() {
        expected[2 * n + 1] += coef * 0.5;
    }
    expected[1] += c(1.0, 0.0);
    let lifted = k.lift(&proj.coords);
    let lift_err = lifted
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    check(lift_err <= 1e-10, || {
        format!("P_K(1,1) differs from (1, 1 + b/2) by {lift_err:e}")
    })?;

    let g = CMat::from_column_slice(k.dim, 1, proj.coords.as_slice());
    let sys = OrbitSystem::new(k.shift_matrix.clone(), g.clone()).map_err(|e| e.to_string())?;
    let report = orbit::frame_bounds(&sys, &FrameOptions::default()).map_err(|e| e.to_string())?;
    check(report.method == Method::SteinExact, || {
        "frame bounds did not use the Stein solver".into()
    })?;
    check(report.lower_bound_a > 0.0 && report.is_frame, || {
        format!("A = {}", report.lower_bound_a)
    })?;

    let sim = similarity_verify(&k.shift_matrix, &g, &SimilarityOptions::default()).map_err(|e| e.to_string())?;
    check(sim.intertwine_residual <= 1e-6, || {
        format!("intertwine residual {:e}", sim.intertwine_residual)
    })?;
    let eig = linalg::eigenvalues(&sim.s_k).map_err(|e| e.to_string())?;
    let spec_err = linalg::multiset_distance(&eig, &[c(0.0, 0.0), c(0.5, 0.0)]);
    check(eig.len() == 2 && spec_err <= 1e-6, || format!("S_K spectrum {eig:?}"))?;

    // b1 b2 z^n, n < 10, must lie in Ker W.
    let bb = b2.to_rational().taylor_coeffs(sim.order);
    let cols = CMat::from_fn(sim.order, 10, |i, n| if i > n { bb[i - n - 1] } else { c(0.0, 0.0) });
    let align = sim.kernel_alignment(&cols);
    check(align <= 1e-6, || format!("Ker W alignment residual {align:e}"))?;
    Ok(format!(
        "A = {:.6}, intertwine {:.1e}, spectrum err {:.1e}, Ker W residual {:.1e}",
        report.lower_bound_a, sim.intertwine_residual, spec_err, align
    ))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    for trial in 0..50 {
        let d = rng.gen_range(1..=6);
        let k = rng.gen_range(1..=3);
        let raw = random_mat(&mut rng, d, d);
        let rho = linalg::spectral_radius(&raw).map_err(|e| e.to_string())?;
        let target = rng.gen_range(0.05..0.9);
        let t = if rho > 0.0 { raw * c(target / rho, 0.0) } else { raw };
        let g = random_mat(&mut rng, d, k);
        let sys = OrbitSystem::new(t.clone(), g.clone()).map_err(|e| e.to_string())?;
        let phi = orbit::frame_operator_stein(&sys).map_err(|e| e.to_string())?.phi;
        let mut sum = CMat::zeros(d, d);
        let mut orbit = g.clone();
        for _ in 0..200 {
            sum += &orbit * orbit.adjoint();
            orbit = &t * orbit;
        }
        let rel = (&phi - &sum).norm() / (1.0 + phi.norm());
        check(rel <= 1e-8, || {
            format!("system {trial}: d={d} k={k} relative error {rel:e}")
        })?;
        worst = worst.max(rel);
    }
    Ok(format!("50 systems, worst relative error {worst:.1e}"))
}

fn criterion_4() -> Outcome {
    let theta = AnalyticMatrixFunction::zeros(1, 1);
    let k = model_space_truncated(&theta, 256, &RankPolicy::default()).map_err(|e| e.to_string())?;
    check(k.dim == 256, || format!("K_0 at order 256 has dimension {}", k.dim))?;
    let opts = FrameOptions::default();
    let constant = AnalyticMatrixFunction::scalar(RationalFn::constant(c(2.0, 0.0)));
    let r = orbit::model_frame_bounds(&k, &constant, &opts).map_err(|e| e.to_string())?;
    check(r.is_frame, || "f = 2 not reported as a frame".into())?;
    check(
        (r.lower_bound_a - 4.0).abs() <= 1e-10 && (r.upper_bound_b - 4.0).abs() <= 1e-10,
        || format!("f = 2 gives A = {}, B = {}", r.lower_bound_a, r.upper_bound_b),
    )?;
    let z = AnalyticMatrixFunction::scalar(RationalFn::z());
    let rz = orbit::model_frame_bounds(&k, &z, &opts).map_err(|e| e.to_string())?;
    check(rz.lower_bound_a < 1e-3 && !rz.is_frame, || {
        format!("f = z gives A = {}", rz.lower_bound_a)
    })?;
    Ok(format!(
        "f = 2: A = B = {:.12}; f = z: A = {:.1e}, not a frame",
        r.lower_bound_a, rz.lower_bound_a
    ))
}

/// Partial sums of the orbit Gram operator for `T = f g^*`.
fn partial_gram(f: &CMat, g: &CMat, x: &CMat, terms: usize) -> (f64, f64) {
    let t = f * g.adjoint();
    let d = t.nrows();
    let mut sum = CMat::zeros(d, d);
    let mut orbit = x.clone();
    for _ in 0..terms {
        sum += &orbit * orbit.adjoint();
        orbit = &t * orbit;
    }
    let ev = linalg::hermitian_eigenvalues(&sum);
    (ev[0], ev[ev.len() - 1])
}

fn criterion_5() -> Outcome {
    let e1 = CMat::from_column_slice(2, 1, &[c(1.0, 0.0), c(0.0, 0.0)]);
    let e2 = CMat::from_column_slice(2, 1, &[c(0.0, 0.0), c(1.0, 0.0)]);
    let id = linalg::identity(2);
    let cases = [
        (
            "<f,g> = 0",
            e1.clone(),
            e2.clone(),
            id.clone(),
            RankOneCase::Orthogonal,
            Verdict::Frame,
        ),
        (
            "<f,g> = 1",
            e1.clone(),
            e1.clone(),
            e1.clone(),
            RankOneCase::NonContracting,
            Verdict::NotBessel,
        ),
        (
            "<f,g> = 0.5",
            e1.clone(),
            &e1 * c(0.5, 0.0),
            id.clone(),
            RankOneCase::Contracting,
            Verdict::Frame,
        ),
    ];
    let mut lines = Vec::new();
    for (name, f, g, x, case, verdict) in cases {
        let r = orbit::rank_one_classifier(&f.column(0).into(), &g.column(0).into(), &x, &FrameOptions::default())
            .map_err(|e| e.to_string())?;
        check(r.case == case, || format!("{name}: case {:?}", r.case))?;
        check(r.verdict == verdict && r.agrees, || {
            format!("{name}: verdict {:?}, agrees {}", r.verdict, r.agrees)
        })?;
        let (a1, b1) = partial_gram(&f, &g, &x, 500);
        let (a2, b2) = partial_gram(&f, &g, &x, 1000);
        match verdict {
            Verdict::Frame => {
                check(
                    a1 > 1e-3 && (b2 - b1).abs() <= 1e-10 && (a2 - a1).abs() <= 1e-10,
                    || format!("{name}: truncated bounds ({a1}, {b1}) -> ({a2}, {b2})"),
                )?;
                check(
                    (r.report.lower_bound_a - a2).abs() <= 1e-8 && (r.report.upper_bound_b - b2).abs() <= 1e-8,
                    || {
                        format!(
                            "{name}: Stein ({}, {}) vs truncated ({a2}, {b2})",
                            r.report.lower_bound_a, r.report.upper_bound_b
                        )
                    },
                )?;
            }
            _ => check(b2 >= 1.9 * b1, || {
                format!("{name}: truncated upper bound {b1} -> {b2} does not grow")
            })?,
        }
        lines.push(format!("{name}: {:?}", r.verdict));
    }
    Ok(lines.join("; "))
}

fn criterion_6() -> Outcome {
    let opts = FrameNumberOptions::default();
    let theta = AnalyticMatrixFunction::blaschke_diagonal(&[BlaschkeProduct::power_of_z(1), b(0.5)]);
    let r = corona::unilateral_frame_number(&theta, &opts).map_err(|e| e.to_string())?;
    let cert = r.construction_certificate.as_ref().ok_or("no certificate")?;
    check(r.p == 1 && r.f_constructed.is_some() && cert.passed, || {
        format!("diag(z, b_1/2): p = {}", r.p)
    })?;

    let double = AnalyticMatrixFunction::blaschke_diagonal(&[b(1.0 / 3.0), b(1.0 / 3.0)]);
    match corona::unilateral_frame_number(&double, &opts) {
        Err(Error::RepeatedZeros { .. }) => {}
        other => return Err(format!("diag(b, b): expected RepeatedZeros, got {other:?}")),
    }

    let b04 = b(0.4);
    let zb04 = BlaschkeProduct::power_of_z(1).product(&b04);
    let theta2 = AnalyticMatrixFunction::blaschke_diagonal(&[b04, zb04]);
    let (p, witnesses) = corona::frame_number_lower_bound(&theta2, &opts.policy).map_err(|e| e.to_string())?;
    let at = witnesses
        .iter()
        .find(|w| (w.point - c(0.4, 0.0)).norm() < 1e-8)
        .ok_or("no witness at 0.4")?;
    check(p == 2 && at.kernel_dim == 2, || {
        format!("Theta_2: p = {p}, kernel dim at 0.4 = {}", at.kernel_dim)
    })?;
    let deficit = corona::structural_rank_deficit(1, &witnesses).ok_or("no structural deficit for one column")?;
    check((deficit.point - c(0.4, 0.0)).norm() < 1e-8, || {
        format!("deficit at {}", deficit.point)
    })?;
    match corona::unilateral_frame_number(&theta2, &opts) {
        Err(Error::RepeatedZeros { lower_bound: 2, .. }) => {}
        other => return Err(format!("Theta_2: expected RepeatedZeros with bound 2, got {other:?}")),
    }

    let grid = make_grid(16, 64, &[c(0.4, 0.0)]).map_err(|e| e.to_string())?;
    check(grid.points.contains(&c(0.4, 0.0)), || "grid misses 0.4".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let col: Vec<RationalFn> = (0..2)
            .map(|_| poly(&[random_c(&mut rng), random_c(&mut rng), random_c(&mut rng)]))
            .collect();
        let f = AnalyticMatrixFunction::column(col);
        let cert = corona::grid_infimum(&f, &theta2, &grid, corona::DEFAULT_THRESHOLD).map_err(|e| e.to_string())?;
        check(!cert.passed, || {
            format!("one-column F certified with eta_sq {}", cert.eta_sq)
        })?;
        worst = worst.max(cert.eta_sq);
    }
    Ok(format!(
        "p = 1 certified (eta_sq {:.3e}); diag(b,b) repeated; Theta_2 p = 2 at 0.4, one-column eta_sq <= {worst:.1e}",
        cert.eta_sq
    ))
}

fn sigma_example() -> PiecewiseSymbol {
    let full = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(1.0, 0.0)]));
    let half = CMat::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]));
    PiecewiseSymbol::from_breaks(2, vec![(PI, full), (2.0 * PI, half)]).unwrap()
}

fn criterion_7() -> Outcome {
    let sigma = sigma_example();
    let n = bilateral::bilateral_frame_number(&sigma).map_err(|e| e.to_string())?;
    check(n.p == 2, || format!("p = {}", n.p))?;
    let r = bilateral::fiber_frame_bounds(&n.generators, &sigma).map_err(|e| e.to_string())?;
    check(
        r.is_frame && (r.a - 1.0).abs() <= 1e-10 && (r.b - 1.0).abs() <= 1e-10,
        || format!("A = {}, B = {}", r.a, r.b),
    )?;
    let m = bilateral::minimality_check(&sigma, n.p, 7).map_err(|e| e.to_string())?;
    check(m.holds && m.structural, || {
        format!("minimality fails, best single-column A = {}", m.max_candidate_a)
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let u = linalg::random_unitary(2, &mut rng);
    let sigma_u = sigma.conjugate(&u);
    let nu = bilateral::bilateral_frame_number(&sigma_u).map_err(|e| e.to_string())?;
    check(nu.p == 2, || format!("conjugated p = {}", nu.p))?;
    let transported = n.generators.map(|x| &u * x);
    let ru = bilateral::fiber_frame_bounds(&transported, &sigma_u).map_err(|e| e.to_string())?;
    check((ru.a - r.a).abs() <= 1e-10 && (ru.b - r.b).abs() <= 1e-10, || {
        format!("transported A = {}, B = {}", ru.a, ru.b)
    })?;
    let own = bilateral::fiber_frame_bounds(&nu.generators, &sigma_u).map_err(|e| e.to_string())?;
    check((own.a - 1.0).abs() <= 1e-10 && (own.b - 1.0).abs() <= 1e-10, || {
        format!("conjugated generators A = {}", own.a)
    })?;
    let mu = bilateral::minimality_check(&sigma_u, nu.p, 7).map_err(|e| e.to_string())?;
    check(mu.holds, || "minimality fails after conjugation".into())?;
    Ok(format!(
        "p = 2, A = B = 1 (err {:.1e}), single column max A = {:.1e}",
        (r.a - 1.0).abs(),
        m.max_candidate_a
    ))
}

/// Gauss-Legendre nodes and weights on [-1, 1].
fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            (x, 2.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

struct PlancherelSystem {
    sigma: PiecewiseSymbol,
    g: PiecewiseSymbol,
    breaks: Vec<f64>,
}

fn random_projection(rng: &mut ChaCha8Rng, m: usize, rank: usize) -> CMat {
    let u = linalg::random_unitary(m, rng);
    let cols = u.columns(0, rank).into_owned();
    &cols * cols.adjoint()
}

fn random_plancherel_system(rng: &mut ChaCha8Rng) -> PlancherelSystem {
    let m = rng.gen_range(1..=3);
    let arcs = rng.gen_range(1..=4);
    let mut ends: Vec<f64> = (1..arcs).map(|_| rng.gen_range(0.1..2.0 * PI - 0.1)).collect();
    ends.sort_by(f64::total_cmp);
    ends.push(2.0 * PI);
    let parts: Vec<(f64, CMat)> = ends
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let rank = if i == 0 {
                rng.gen_range(1..=m)
            } else {
                rng.gen_range(0..=m)
            };
            (e, random_projection(rng, m, rank))
        })
        .collect();
    let sigma = PiecewiseSymbol::from_breaks(m, parts).unwrap();
    let k = rng.gen_range(1..=3);
    let extra = rng.gen_range(0.05..2.0 * PI - 0.05);
    let mut g_ends = ends.clone();
    g_ends.push(extra);
    g_ends.sort_by(f64::total_cmp);
    let mut start = 0.0;
    let g_parts: Vec<(f64, CMat)> = g_ends
        .iter()
        .map(|&e| {
            let p = sigma.eval(0.5 * (start + e)).clone();
            start = e;
            (e, &p * random_mat(rng, m, k))
        })
        .collect();
    let g = PiecewiseSymbol::from_breaks(m, g_parts).unwrap();
    let mut breaks = vec![0.0];
    breaks.extend(g_ends.iter().copied().filter(|&e| e < 2.0 * PI));
    PlancherelSystem { sigma, g, breaks }
}

/// `h = w sigma p` with `w` vanishing to second order at every breakpoint.
struct TestVector {
    coeffs: Vec<(i32, nalgebra::DVector<C64>)>,
    scale: f64,
}

impl TestVector {
    fn eval(&self, sys: &PlancherelSystem, theta: f64) -> nalgebra::DVector<C64> {
        let e = C64::from_polar(1.0, theta);
        let w: C64 = sys
            .breaks
            .iter()
            .map(|&a| ((e - C64::from_polar(1.0, a)) * 0.5).powi(2))
            .product();
        let mut p = nalgebra::DVector::zeros(sys.sigma.m);
        for (n, v) in &self.coeffs {
            p += v * C64::from_polar(1.0, *n as f64 * theta);
        }
        sys.sigma.eval(theta) * p * (w * self.scale)
    }
}

/// `(1/2pi) int f` over the circle, Gauss-Legendre on each arc between breakpoints.
fn circle_mean(breaks: &[f64], nodes: &[(f64, f64)], f: impl Fn(f64) -> f64) -> f64 {
    let mut ends: Vec<f64> = breaks.to_vec();
    ends.push(2.0 * PI);
    ends.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let half = 0.5 * (b - a);
            nodes.iter().map(|&(x, wt)| wt * f(a + half * (x + 1.0))).sum::<f64>() * half
        })
        .sum::<f64>()
        / (2.0 * PI)
}

fn criterion_8() -> Outcome {
    use rustfft::FftPlanner;
    const Q: usize = 4096;
    const N: i64 = 1024;
    let nodes = gauss_legendre(160);
    let mut planner = FftPlanner::<f64>::new();
    let fft = planner.plan_fft_forward(Q);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut worst_sum, mut worst_bracket) = (0.0f64, f64::NEG_INFINITY);
    for s in 0..10 {
        let sys = random_plancherel_system(&mut rng);
        let report = bilateral::fiber_frame_bounds(&sys.g, &sys.sigma).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let mut h = TestVector {
                coeffs: (-2..=2)
                    .map(|n| (n, nalgebra::DVector::from_fn(sys.sigma.m, |_, _| random_c(&mut rng))))
                    .collect(),
                scale: 1.0,
            };
            let norm_sq = circle_mean(&sys.breaks, &nodes, |t| h.eval(&sys, t).norm_squared());
            if norm_sq < 1e-20 {
                continue;
            }
            h.scale = 1.0 / norm_sq.sqrt();
            let samples: Vec<nalgebra::DVector<C64>> =
                (0..Q).map(|q| h.eval(&sys, 2.0 * PI * q as f64 / Q as f64)).collect();
            let mut direct = 0.0;
            let mut quad = 0.0;
            for j in 0..sys.g.cols() {
                let phi = |t: f64| sys.g.eval(t).column(j).dotc(&h.eval(&sys, t));
                let mut buf: Vec<C64> = (0..Q)
                    .map(|q| sys.g.eval(2.0 * PI * q as f64 / Q as f64).column(j).dotc(&samples[q]) / Q as f64)
                    .collect();
                fft.process(&mut buf);
                direct += (-N..=N)
                    .map(|n| buf[n.rem_euclid(Q as i64) as usize].norm_sqr())
                    .sum::<f64>();
                quad += circle_mean(&sys.breaks, &nodes, |t| phi(t).norm_sqr());
            }
            let diff = (direct - quad).abs();
            check(diff <= 1e-6, || {
                format!("system {s}: direct {direct} vs quadrature {quad}")
            })?;
            worst_sum = worst_sum.max(diff);
            let rq = direct;
            let excess = (report.a - rq).max(rq - report.b);
            check(excess <= 1e-6, || {
                format!(
                    "system {s}: Rayleigh quotient {rq} outside [{}, {}]",
                    report.a, report.b
                )
            })?;
            worst_bracket = worst_bracket.max(excess);
        }
    }
    Ok(format!(
        "10 systems, worst |sum - quadrature| {worst_sum:.1e}, worst bracket excess {worst_bracket:.1e}"
    ))
}

fn criterion_9() -> Outcome {
    let z03 = poly(&[c(-0.3, 0.0), c(1.0, 0.0)]);
    let tail = poly(&[c(2.0 / 3.0, 0.0), c(1.0 / 3.0, 0.0)]);
    let theta = AnalyticMatrixFunction::scalar(
        BlaschkeProduct::from_zeros(vec![c(0.3, 0.0), c(-0.5, 0.0)], c(1.0, 0.0))
            .unwrap()
            .to_rational(),
    );
    let planted = AnalyticMatrixFunction::from_rows(vec![vec![z03.clone(), z03.try_mul(&tail).unwrap()]]).unwrap();
    let cleared = AnalyticMatrixFunction::from_rows(vec![vec![RationalFn::one(), tail]]).unwrap();
    let grid = make_grid(16, 64, &[]).map_err(|e| e.to_string())?;
    let bad = corona::corona_infimum(&planted, &theta, &grid, corona::DEFAULT_THRESHOLD).map_err(|e| e.to_string())?;
    check(bad.eta_sq < 1e-4 && !bad.passed, || {
        format!("planted zero: eta_sq {}", bad.eta_sq)
    })?;
    let good = corona::corona_infimum(&cleared, &theta, &grid, corona::DEFAULT_THRESHOLD).map_err(|e| e.to_string())?;
    check(good.eta_sq >= 1e-2, || format!("cleared: eta_sq {}", good.eta_sq))?;

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let coarse = make_grid(8, 32, &[]).map_err(|e| e.to_string())?;
    let finer = make_grid(16, 64, &[]).map_err(|e| e.to_string())?;
    for i in 0..20 {
        let zeros: Vec<BlaschkeProduct> = (0..2)
            .map(|_| {
                BlaschkeProduct::factor(C64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(0.0..2.0 * PI))).unwrap()
            })
            .collect();
        let th = AnalyticMatrixFunction::blaschke_diagonal(&zeros);
        let f = AnalyticMatrixFunction::column(
            (0..2)
                .map(|_| poly(&[random_c(&mut rng), random_c(&mut rng)]))
                .collect(),
        );
        let t = corona::DEFAULT_THRESHOLD;
        let g1 = corona::grid_infimum(&f, &th, &coarse, t).map_err(|e| e.to_string())?;
        let g2 = corona::grid_infimum(&f, &th, &finer, t).map_err(|e| e.to_string())?;
        check(g2.eta_sq <= g1.eta_sq, || {
            format!("instance {i}: nested grids {} -> {}", g1.eta_sq, g2.eta_sq)
        })?;
        let c1 = corona::corona_infimum(&f, &th, &coarse, t).map_err(|e| e.to_string())?;
        check(c1.eta_sq <= g1.eta_sq, || {
            format!("instance {i}: refinement raised eta_sq")
        })?;
        let extra: Vec<C64> = (0..100)
            .map(|_| C64::from_polar(rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI)))
            .collect();
        let c2 = corona::corona_infimum(&f, &th, &c1.grid.extended(&extra), t).map_err(|e| e.to_string())?;
        check(c2.eta_sq <= c1.eta_sq, || {
            format!("instance {i}: extended grid {} -> {}", c1.eta_sq, c2.eta_sq)
        })?;
    }
    Ok(format!(
        "planted eta_sq {:.1e}, cleared eta_sq {:.3}, 20 instances monotone",
        bad.eta_sq, good.eta_sq
    ))
}

fn criterion_10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_orbitframes");
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("problems");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    check(files.len() >= 8, || format!("only {} problem files", files.len()))?;
    for file in &files {
        let mut outputs = Vec::new();
        for (run, threads) in ["1", "4"].iter().enumerate() {
            let out = tmp.path().join(format!("report-{run}.json"));
            let status = Command::new(bin)
                .arg("run")
                .arg(file)
                .arg("--output")
                .arg(&out)
                .env("ORBITFRAMES_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            check(status.status.success(), || {
                format!("{} exited with {:?}", file.display(), status.status.code())
            })?;
            let stdout = Command::new(bin)
                .arg("run")
                .arg(file)
                .env("ORBITFRAMES_THREADS", threads)
                .output()
                .map_err(|e| e.to_string())?;
            outputs.push((std::fs::read(&out).map_err(|e| e.to_string())?, stdout.stdout));
        }
        check(outputs[0] == outputs[1], || {
            format!("{} differs between runs", file.display())
        })?;
        check(outputs[0].0 == outputs[0].1, || {
            format!("{}: file and stdout reports differ", file.display())
        })?;
    }
    Ok(format!(
        "{} tasks byte-identical across reruns and thread counts",
        files.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("diag(z, b_1/2) pointwise corona inequality", criterion_1),
        ("diag(z, b_1/2) single-orbit frame and similarity", criterion_2),
        ("Stein solve vs truncated sum", criterion_3),
        ("plain shift invertibility dichotomy", criterion_4),
        ("rank-one trichotomy", criterion_5),
        ("unilateral frame number", criterion_6),
        ("bilateral frame number", criterion_7),
        ("Plancherel and fiber bounds", criterion_8),
        ("corona soundness and monotonicity", criterion_9),
        ("CLI determinism", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2} s)", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2} s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
