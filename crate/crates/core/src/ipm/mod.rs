//! Primal-dual log-barrier interior point methods in the wide neighborhood,
//! a direct central-path tracer and polygonal curvature.

mod curvature;
mod point;

use std::fmt;

use crate::error::{Error, Result};
use crate::instances::{warm_start_for, RealLP};
use crate::numeric::{inf_norm, solve, DenseMatrix, Real};
use crate::tropical::Q;

pub use curvature::{polygonal_curvature, polygonal_curvature_f64, Curvature};
pub use point::{duality_measure, in_wide_neighborhood, Direction, PDPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    LongStep,
    PredictorCorrector,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::LongStep => "long-step",
            Variant::PredictorCorrector => "pc",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "long-step" | "longstep" | "ls" => Ok(Variant::LongStep),
            "pc" | "predictor-corrector" => Ok(Variant::PredictorCorrector),
            other => Err(Error::InvalidArgument(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IPMConfig {
    pub variant: Variant,
    /// Outer neighborhood.
    pub theta: f64,
    /// Corrector target neighborhood (predictor-corrector only).
    pub theta_inner: f64,
    /// Centering parameter of the long-step method.
    pub sigma: f64,
    pub mu_target: Real,
    pub max_iters: usize,
    pub precision_bits: usize,
    /// Relative tolerance of the step-length bisection.
    pub step_tol: f64,
    /// Sample 16 interior points of every accepted step.
    pub audit: bool,
}

impl IPMConfig {
    pub fn new(variant: Variant, mu_target: Real) -> Self {
        let precision_bits = mu_target.prec();
        IPMConfig {
            variant,
            theta: 0.5,
            theta_inner: 0.25,
            sigma: 0.1,
            mu_target,
            max_iters: 10_000,
            precision_bits,
            step_tol: 1e-3,
            audit: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0 < self.theta && self.theta < 1.0) {
            return Err(Error::InvalidArgument(format!("theta = {} must lie in (0, 1)", self.theta)));
        }
        if self.variant == Variant::PredictorCorrector && !(0.0 < self.theta_inner && self.theta_inner < self.theta) {
            return Err(Error::InvalidArgument(format!("need 0 < theta' = {} < theta = {}", self.theta_inner, self.theta)));
        }
        if !(0.0 < self.sigma && self.sigma < 1.0) {
            return Err(Error::InvalidArgument(format!("sigma = {} must lie in (0, 1)", self.sigma)));
        }
        if !(self.step_tol > 0.0 && self.step_tol < 1.0) {
            return Err(Error::InvalidArgument("step tolerance must lie in (0, 1)".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    LongStep,
    Predictor,
    Corrector,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::LongStep => "long-step",
            Phase::Predictor => "predictor",
            Phase::Corrector => "corrector",
        })
    }
}

#[derive(Clone, Debug)]
pub struct StepMeta {
    pub iter: usize,
    pub phase: Phase,
    pub alpha: f64,
}

/// Iterates `z⁰ … z^p`; `steps[k]` describes the move `z^k → z^{k+1}`.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub points: Vec<PDPoint>,
    pub steps: Vec<StepMeta>,
    /// Outer iterations (a predictor-corrector pair counts once).
    pub iterations: usize,
}

impl Trajectory {
    /// Number of segments `p` of the polygonal trajectory.
    pub fn segments(&self) -> usize {
        self.steps.len()
    }

    pub fn final_point(&self) -> &PDPoint {
        self.points.last().expect("nonempty trajectory")
    }
}

/// Solves the full Newton system towards `xs = μe`, `wy = μe`.
///
/// Feasibility residuals enter the right-hand side, so small drift is
/// corrected rather than accumulated.
pub fn newton_direction(z: &PDPoint, mu_goal: &Real, lp: &RealLP) -> Result<Direction> {
    let (n, m) = (z.n(), z.m());
    if n != lp.n() || m != lp.m() {
        return Err(Error::DimensionMismatch { expected: lp.n() + lp.m(), got: z.dim() });
    }
    let p = z.prec();
    let size = 2 * (n + m);
    // unknowns: dx (0..n), dw (n..n+m), ds (n+m..2n+m), dy (2n+m..size)
    let (ow, os, oy) = (n, n + m, 2 * n + m);
    let mut k = DenseMatrix::zeros(size, size, p);
    let mut rhs = Vec::with_capacity(size);
    let ax = lp.a.mul_vec(&z.x);
    let aty = lp.a.transpose_mul_vec(&z.y);
    let one = Real::one(p);
    for i in 0..m {
        for j in 0..n {
            let a = lp.a.get(i, j);
            if !a.is_zero() {
                k.set(i, j, a.clone());
            }
        }
        k.set(i, ow + i, one.clone());
        rhs.push(&lp.b[i] - &ax[i] - &z.w[i]);
    }
    for j in 0..n {
        let row = m + j;
        k.set(row, os + j, one.clone());
        for i in 0..m {
            let a = lp.a.get(i, j);
            if !a.is_zero() {
                k.set(row, oy + i, -a);
            }
        }
        rhs.push(&lp.c[j] - &z.s[j] + &aty[j]);
    }
    for j in 0..n {
        let row = m + n + j;
        k.set(row, j, z.s[j].clone());
        k.set(row, os + j, z.x[j].clone());
        rhs.push(mu_goal - &(&z.x[j] * &z.s[j]));
    }
    for i in 0..m {
        let row = m + 2 * n + i;
        k.set(row, ow + i, z.y[i].clone());
        k.set(row, oy + i, z.w[i].clone());
        rhs.push(mu_goal - &(&z.w[i] * &z.y[i]));
    }
    let sol = solve(&k, &rhs, p)?;
    Ok(Direction { dx: sol[..n].to_vec(), dw: sol[ow..os].to_vec(), ds: sol[os..oy].to_vec(), dy: sol[oy..].to_vec() })
}

/// Largest `α ∈ (0, 1]` (to relative `tol`) with `z + αΔz ∈ N_θ`.
pub fn step_to(z: &PDPoint, dz: &Direction, theta: f64, tol: f64) -> Result<(f64, PDPoint)> {
    let p = z.prec();
    let at = |a: f64| z.moved(dz, &Real::from_f64(a, p));
    let full = at(1.0);
    if in_wide_neighborhood(&full, theta) {
        return Ok((1.0, full));
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let mut lo_point = None;
    while lo == 0.0 || hi - lo > tol * hi {
        if hi < 1e-300 {
            return Err(Error::NoAdmissibleStep);
        }
        let mid = if lo == 0.0 { hi / 2.0 } else { 0.5 * (lo + hi) };
        let cand = at(mid);
        if in_wide_neighborhood(&cand, theta) {
            lo = mid;
            lo_point = Some(cand);
        } else {
            hi = mid;
        }
    }
    Ok((lo, lo_point.expect("lo > 0 implies a stored point")))
}

fn audit_segment(z: &PDPoint, dz: &Direction, alpha: f64, theta: f64, iter: usize) -> Result<()> {
    for k in 1..=16 {
        let beta = alpha * k as f64 / 17.0;
        if !in_wide_neighborhood(&z.moved(dz, &Real::from_f64(beta, z.prec())), theta) {
            return Err(Error::NeighborhoodViolation { iter, detail: format!("interior sample beta = {beta:.6} leaves the neighborhood") });
        }
    }
    Ok(())
}

/// Runs the configured method from `z0` until `μ̄ ≤ μ_target`.
pub fn run_ipm(lp: &RealLP, config: &IPMConfig, z0: PDPoint) -> Result<Trajectory> {
    config.validate()?;
    if !in_wide_neighborhood(&z0, config.theta) {
        return Err(Error::NeighborhoodViolation { iter: 0, detail: "starting point is outside the neighborhood".into() });
    }
    let p = z0.prec();
    let slack = Real::one(p) + Real::one(p).mul_pow2(16 - p as i32);
    let zero = Real::zero(p);
    let mut traj = Trajectory { points: vec![z0], steps: Vec::new(), iterations: 0 };
    loop {
        let z = traj.final_point().clone();
        let mu = duality_measure(&z);
        if mu <= config.mu_target {
            return Ok(traj);
        }
        if traj.iterations >= config.max_iters {
            return Err(Error::MaxIterations(config.max_iters));
        }
        let iter = traj.iterations + 1;
        let push = |traj: &mut Trajectory, from: &PDPoint, dz: &Direction, alpha: f64, next: PDPoint, phase: Phase| -> Result<()> {
            if config.audit {
                audit_segment(from, dz, alpha, config.theta, iter)?;
            }
            if !in_wide_neighborhood(&next, config.theta) {
                return Err(Error::NeighborhoodViolation { iter, detail: format!("{phase} iterate left the neighborhood") });
            }
            traj.points.push(next);
            traj.steps.push(StepMeta { iter, phase, alpha });
            Ok(())
        };
        match config.variant {
            Variant::LongStep => {
                let goal = &mu * &Real::from_f64(config.sigma, p);
                let dz = newton_direction(&z, &goal, lp)?;
                let (alpha, next) = step_to(&z, &dz, config.theta, config.step_tol)?;
                if duality_measure(&next) >= mu {
                    return Err(Error::NonMonotone(format!("duality measure did not decrease at iteration {iter}")));
                }
                push(&mut traj, &z, &dz, alpha, next, Phase::LongStep)?;
            }
            Variant::PredictorCorrector => {
                let dz = newton_direction(&z, &zero, lp)?;
                let (alpha, zp) = step_to(&z, &dz, config.theta, config.step_tol)?;
                let mu_p = duality_measure(&zp);
                if mu_p >= mu {
                    return Err(Error::NonMonotone(format!("predictor did not decrease the duality measure at iteration {iter}")));
                }
                push(&mut traj, &z, &dz, alpha, zp.clone(), Phase::Predictor)?;
                let dc = newton_direction(&zp, &mu_p, lp)?;
                let full = zp.moved(&dc, &Real::one(p));
                let (alpha, zc) = if in_wide_neighborhood(&full, config.theta_inner) {
                    (1.0, full)
                } else {
                    step_to(&zp, &dc, config.theta, config.step_tol)?
                };
                if duality_measure(&zc) > &mu_p * &slack {
                    return Err(Error::NonMonotone(format!("corrector increased the duality measure at iteration {iter}")));
                }
                push(&mut traj, &zp, &dc, alpha, zc, Phase::Corrector)?;
            }
        }
        traj.iterations = iter;
    }
}

/// A point on the central path at `μ = t^λ`.
#[derive(Clone, Debug)]
pub struct CPSample {
    pub lambda: Q,
    pub mu: Real,
    pub z: PDPoint,
    /// `‖(xs; wy) − μe‖∞ / μ`.
    pub residual: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub newton_steps: usize,
}

const MAX_NEWTON: usize = 200;

fn centrality_residual(z: &PDPoint, mu: &Real) -> f64 {
    let dev: Vec<Real> = z.products().iter().map(|v| v - mu).collect();
    (inf_norm(&dev) / mu).to_f64()
}

fn largest_positive_step(z: &PDPoint, dz: &Direction) -> f64 {
    let mut best = f64::INFINITY;
    let pairs = z.x.iter().zip(&dz.dx).chain(z.w.iter().zip(&dz.dw)).chain(z.s.iter().zip(&dz.ds)).chain(z.y.iter().zip(&dz.dy));
    for (v, d) in pairs {
        if d.is_negative() {
            let a = (v / &(-d)).to_f64();
            best = best.min(a);
        }
    }
    best
}

/// Damped Newton on the central-path equations at `μ`.
fn center(lp: &RealLP, z: PDPoint, mu: &Real, tol: f64, lambda: &Q) -> Result<(PDPoint, f64, usize)> {
    let p = z.prec();
    let mut z = z;
    let mut res = centrality_residual(&z, mu);
    let mut steps = 0;
    while res > tol {
        if steps >= MAX_NEWTON {
            return Err(Error::NoConvergence { lambda: lambda.to_string(), steps, residual: res });
        }
        let dz = newton_direction(&z, mu, lp)?;
        let alpha = (0.9 * largest_positive_step(&z, &dz)).min(1.0);
        z = z.moved(&dz, &Real::from_f64(alpha, p));
        if !z.is_positive() {
            return Err(Error::NoAdmissibleStep);
        }
        res = centrality_residual(&z, mu);
        steps += 1;
    }
    Ok((z, res, steps))
}

/// Follows the central path through `μ = t^λ` for every `λ` of the grid.
///
/// The first sample is warm-started from the lifted tropical path; each
/// later one from its predecessor, moving `μ` by at most a factor 4 per
/// continuation stage. `tol` defaults to `2^{−p/4}`.
pub fn trace_central_path(lp: &RealLP, lambdas: &[Q], tol: Option<f64>) -> Result<Vec<CPSample>> {
    let Some(first) = lambdas.first() else {
        return Err(Error::Empty("lambda grid"));
    };
    let p = lp.precision_bits;
    let tol = tol.unwrap_or_else(|| 2f64.powi(-(p as i32) / 4));
    let ws = warm_start_for(lp, first)?;
    let mut z = ws.point;
    let mut mu_cur = ws.mu.clone();
    let mut lambda_cur = ws.lambda.clone();
    let mut out = Vec::with_capacity(lambdas.len());
    for lambda in lambdas {
        let mu = lp.t_pow(lambda)?;
        let gap = (mu.log2() - mu_cur.log2()).abs();
        let stages = (gap / 2.0).ceil().max(1.0) as usize;
        let mut steps = 0;
        let mut res = 0.0;
        for k in 1..=stages {
            let target = if k == stages {
                mu.clone()
            } else {
                let frac = Q::new((k as i64).into(), (stages as i64).into());
                lp.t_pow(&(&lambda_cur + &(&(lambda - &lambda_cur) * &frac)))?
            };
            let (zn, r, s) = center(lp, z, &target, tol, lambda)?;
            z = zn;
            res = r;
            steps += s;
        }
        mu_cur = mu.clone();
        lambda_cur = lambda.clone();
        let (rp, rd) = z.feasibility_residuals(lp);
        out.push(CPSample { lambda: lambda.clone(), mu, z: z.clone(), residual: res, primal_residual: rp, dual_residual: rd, newton_steps: steps });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{build_lw, evaluate_lp, tropical_warm_start, LWSpec};
    use crate::puiseux::{q, qi};

    /// `min x s.t. x + w = b` as a 1×1 instance.
    fn scalar_lp(b: f64, p: usize) -> RealLP {
        let mut a = DenseMatrix::zeros(1, 1, p);
        a.set(0, 0, Real::one(p));
        RealLP { r: 0, a, b: vec![Real::from_f64(b, p)], c: vec![Real::one(p)], t: Real::from_i64(2, p), precision_bits: p }
    }

    /// Exact central point of the scalar LP: `x(μ) = ((b+2μ) − √((b+2μ)² − 4μb)) / 2`.
    fn scalar_central(b: f64, mu: f64, p: usize) -> PDPoint {
        let (bb, mm) = (Real::from_f64(b, p), Real::from_f64(mu, p));
        let two = Real::from_i64(2, p);
        let four = Real::from_i64(4, p);
        let sum = &bb + &(&two * &mm);
        let x = (&sum - &(&sum * &sum - &four * &mm * &bb).sqrt()) / &two;
        let w = &bb - &x;
        let s = &mm / &x;
        let y = &mm / &w;
        PDPoint::new(vec![x], vec![w], vec![s], vec![y]).unwrap()
    }

    #[test]
    fn newton_vanishes_on_the_path() {
        let lp = scalar_lp(3.0, 256);
        let z = scalar_central(3.0, 0.5, 256);
        let d = newton_direction(&z, &duality_measure(&z), &lp).unwrap();
        assert!(inf_norm(&d.dx).to_f64() < 1e-60);
        assert!(inf_norm(&d.dy).to_f64() < 1e-60);
    }

    #[test]
    fn newton_matches_path_derivative() {
        // Tangent: Newton towards μ + h from the central point at μ agrees with
        // x(μ + h) − x(μ) to first order.
        let (b, mu, h) = (3.0, 0.5, 1e-12);
        let lp = scalar_lp(b, 256);
        let z = scalar_central(b, mu, 256);
        let d = newton_direction(&z, &Real::from_f64(mu + h, 256), &lp).unwrap();
        let fd = &scalar_central(b, mu + h, 256).x[0] - &z.x[0];
        let rel = ((&d.dx[0] - &fd) / &fd).abs().to_f64();
        assert!(rel < 1e-9, "{rel}");
        assert!(d.cross().abs().to_f64() < 1e-60);
    }

    #[test]
    fn step_on_zero_direction() {
        let z = scalar_central(3.0, 0.5, 128);
        let d = Direction::zero_like(&z);
        let (a, zn) = step_to(&z, &d, 0.5, 1e-3).unwrap();
        assert_eq!(a, 1.0);
        assert_eq!(zn.x, z.x);
    }

    #[test]
    fn long_step_r1() {
        let t = Real::from_i64(100, 256);
        let spec = LWSpec::new(1).unwrap();
        let lp = evaluate_lp(&build_lw(spec).unwrap(), &t, 256).unwrap();
        let ws = tropical_warm_start(spec, &t, &(qi(2) + q(1, 8)), 256).unwrap();
        let z = ws.point;
        let mu = duality_measure(&z);
        let d = newton_direction(&z, &(&mu * &Real::from_f64(0.1, 256)), &lp).unwrap();
        let (a, zn) = step_to(&z, &d, 0.5, 1e-3).unwrap();
        assert!(a > 0.0 && a <= 1.0);
        assert!(in_wide_neighborhood(&zn, 0.5));
        for beta in [a / 4.0, a / 2.0, 3.0 * a / 4.0] {
            assert!(in_wide_neighborhood(&z.moved(&d, &Real::from_f64(beta, 256)), 0.5));
        }
        let mut cfg = IPMConfig::new(Variant::LongStep, Real::one(256));
        cfg.audit = true;
        let tr = run_ipm(&lp, &cfg, z).unwrap();
        assert!(duality_measure(tr.final_point()) <= Real::one(256));
    }

    #[test]
    fn pc_r1() {
        let t = Real::from_i64(100, 256);
        let spec = LWSpec::new(1).unwrap();
        let lp = evaluate_lp(&build_lw(spec).unwrap(), &t, 256).unwrap();
        let z = tropical_warm_start(spec, &t, &(qi(2) + q(1, 8)), 256).unwrap().point;
        let mut cfg = IPMConfig::new(Variant::PredictorCorrector, Real::one(256));
        cfg.audit = true;
        let tr = run_ipm(&lp, &cfg, z).unwrap();
        assert!(duality_measure(tr.final_point()) <= Real::one(256));
        let mus: Vec<Real> = tr.points.iter().map(duality_measure).collect();
        assert!(mus.windows(2).all(|w| w[1] <= w[0]));
        for z in &tr.points {
            let (rp, rd) = z.feasibility_residuals(&lp);
            assert!(rp < 2f64.powi(24 - 256) && rd < 2f64.powi(24 - 256), "{rp} {rd}");
        }
    }

    #[test]
    fn scalar_trace_matches_quadratic() {
        let lp = scalar_lp(3.0, 256);
        let z0 = scalar_central(3.0, 1.0, 256);
        let mut z = z0;
        for mu in [1.0, 0.25, 1e-3] {
            let m = Real::from_f64(mu, 256);
            let (zn, res, _) = center(&lp, z, &m, 1e-30, &qi(0)).unwrap();
            let exact = scalar_central(3.0, mu, 256);
            assert!(res <= 1e-30);
            assert!(((&zn.x[0] - &exact.x[0]) / &exact.x[0]).abs().to_f64() < 1e-25);
            z = zn;
        }
    }

    #[test]
    fn trace_r1() {
        let t = Real::from_i64(1000, 256);
        let lp = evaluate_lp(&build_lw(LWSpec::new(1).unwrap()).unwrap(), &t, 256).unwrap();
        let samples = trace_central_path(&lp, &[qi(3), qi(2), qi(1), qi(0)], None).unwrap();
        assert_eq!(samples.len(), 4);
        for s in &samples {
            assert!(s.residual <= 2f64.powi(-64));
            assert!(s.primal_residual < 1e-40 && s.dual_residual < 1e-40);
        }
    }
}
