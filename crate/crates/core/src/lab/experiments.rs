use num_traits::ToPrimitive;

use super::report::CellRecord;
use super::thresholds::{convergence_budget, delta_bound, min_valid_t, threshold_met};
use crate::error::{Error, Result};
use crate::instances::{build_lw, evaluate_lp, tropical_warm_start, LWSpec, RealLP};
use crate::ipm::{polygonal_curvature, run_ipm, trace_central_path, IPMConfig, Trajectory, Variant};
use crate::numeric::{decimal_digits, default_precision_bits, Real};
use crate::trop_path::{breakpoints, gamma_count, standard_grid, trop_curvature_lower_bound, trop_path_point};
use crate::tropical::Q;

/// Parses `t` and picks the working precision (explicit or default).
pub fn parse_t(r: usize, t: &str, precision: Option<usize>) -> Result<(Real, usize)> {
    let rough = Real::parse_decimal(t, 64)?;
    if !(rough.log2() > 0.0) {
        return Err(Error::InvalidArgument(format!("t = {t} must exceed 1")));
    }
    let p = precision.unwrap_or_else(|| default_precision_bits(r, rough.log2()));
    Ok((Real::parse_decimal(t, p)?, p))
}

pub fn instance(r: usize, t: &str, precision: Option<usize>) -> Result<RealLP> {
    let (tv, p) = parse_t(r, t, precision)?;
    evaluate_lp(&build_lw(LWSpec::new(r)?)?, &tv, p)
}

/// `λ` of the IPM starting point: `μ⁰ = t^{17/8} ≥ t²`.
pub fn start_lambda() -> Q {
    Q::new(17.into(), 8.into())
}

fn q_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Runs the IPM from `μ ≈ t^{17/8}` down to `μ ≤ 1` and compares the segment
/// count with `2^{r−1}`.
pub fn experiment_iterations(r: usize, t: &str, variant: Variant, theta: f64, precision: Option<usize>) -> Result<(CellRecord, Trajectory)> {
    let lp = instance(r, t, precision)?;
    let p = lp.precision_bits;
    let spec = LWSpec::new(r)?;
    let z0 = tropical_warm_start(spec, &lp.t, &start_lambda(), p)?.point;
    let mut cfg = IPMConfig::new(variant, Real::one(p));
    cfg.theta = theta;
    cfg.theta_inner = theta / 2.0;
    let traj = run_ipm(&lp, &cfg, z0)?;
    let invocation = format!("lw run-ipm --r {r} --t {t} --theta {theta} --variant {variant} --mu-start t^2 --mu-end 1 --precision-bits {p}");
    let mut rec = CellRecord::new("iterations", r, t, invocation);
    rec.variant = Some(variant.to_string());
    rec.theta = Some(theta);
    rec.precision_bits = Some(p);
    rec.iterations = Some(traj.iterations);
    rec.segments = Some(traj.segments());
    rec.gamma = Some(gamma_count(&breakpoints(r, &Q::from_integer(0.into()), &Q::from_integer(2.into()))?)?);
    if r >= 2 {
        let th = Q::from_float(theta).ok_or_else(|| Error::InvalidArgument("theta".into()))?;
        let big = min_valid_t(r, &th)?;
        rec.threshold_met = Some(threshold_met(&lp.t, &big));
        rec.min_valid_t_digits = Some(decimal_digits(&big));
    }
    rec.pass = traj.segments() as u64 >= rec.lower_bound;
    Ok((rec, traj))
}

/// Per-sample distance between `log_t` of the traced central path and the
/// tropical central path.
#[derive(Clone, Debug)]
pub struct Deviation {
    pub lambda: Q,
    pub distance: f64,
    pub residual: f64,
}

pub fn central_path_deviations(lp: &RealLP, lambdas: &[Q]) -> Result<Vec<Deviation>> {
    let samples = trace_central_path(lp, lambdas, None)?;
    Ok(samples
        .iter()
        .map(|s| {
            let trop = trop_path_point(lp.r, &s.lambda).full().finite_values().expect("finite path");
            let logs = s.z.log_coords(&lp.t);
            let distance = logs.iter().zip(&trop).map(|(a, b)| (a - q_f64(b)).abs()).fold(0.0, f64::max);
            Deviation { lambda: s.lambda.clone(), distance, residual: s.residual }
        })
        .collect())
}

/// One record per `t`: max `d_∞` deviation against the budget
/// `log_t(2N/(1−θ)) + δ(t)`.
pub fn experiment_convergence(r: usize, ts: &[&str], lambdas: &[Q], theta: f64, precision: Option<usize>) -> Result<Vec<CellRecord>> {
    let mut out = Vec::with_capacity(ts.len());
    let lam_str: Vec<String> = lambdas.iter().map(|l| l.to_string()).collect();
    for t in ts {
        let lp = instance(r, t, precision)?;
        let devs = central_path_deviations(&lp, lambdas)?;
        let max = devs.iter().map(|d| d.distance).fold(0.0, f64::max);
        let budget = convergence_budget(r, &lp.t, theta)?;
        let invocation = format!(
            "lw convergence --r {r} --t {t} --lambdas {} --theta {theta} --precision-bits {}",
            lam_str.join(","),
            lp.precision_bits
        );
        let mut rec = CellRecord::new("convergence", r, t, invocation);
        rec.theta = Some(theta);
        rec.precision_bits = Some(lp.precision_bits);
        rec.max_deviation = Some(max);
        rec.budget = Some(budget);
        rec.bound_guaranteed = Some(delta_bound(r, &lp.t)?.guaranteed);
        rec.pass = max <= budget;
        out.push(rec);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CurvatureOutcome {
    pub record: CellRecord,
    /// Polygonal curvature on the refined grid.
    pub measured: f64,
    /// Angles of the coarse polygon `λ_k = 4k/2^{r−1}` at its interior vertices.
    pub corners: Vec<(Q, f64)>,
    pub tropical_half_pis: usize,
}

/// Primal central path `(x, w)` sampled on the coarse grid refined `refine`
/// times; curvature of the refined polygon, plus the coarse corner angles.
pub fn experiment_curvature(r: usize, t: &str, refine: usize, precision: Option<usize>) -> Result<CurvatureOutcome> {
    if refine == 0 {
        return Err(Error::InvalidArgument("refinement must be positive".into()));
    }
    let coarse = standard_grid(r)?;
    let mut fine = vec![coarse[0].clone()];
    for w in coarse.windows(2) {
        for k in 1..=refine {
            let f = Q::new((k as i64).into(), (refine as i64).into());
            fine.push(&w[0] + &(&(&w[1] - &w[0]) * &f));
        }
    }
    let lp = instance(r, t, precision)?;
    // trace from large μ downwards
    let descending: Vec<Q> = fine.iter().rev().cloned().collect();
    let samples = trace_central_path(&lp, &descending, None)?;
    let mut pts: Vec<Vec<Real>> = samples.iter().map(|s| s.z.primal()).collect();
    pts.reverse();
    let measured = polygonal_curvature(&pts)?;
    let coarse_pts: Vec<Vec<Real>> = pts.iter().step_by(refine).cloned().collect();
    let corners = if coarse_pts.len() >= 3 {
        let c = polygonal_curvature(&coarse_pts)?;
        coarse[1..coarse.len() - 1].iter().cloned().zip(c.angles).collect()
    } else {
        Vec::new()
    };
    let trop = if coarse.len() >= 3 { trop_curvature_lower_bound(r, &coarse)?.half_pis() } else { 0 };
    let invocation = format!("lw curvature --r {r} --t {t} --refine {refine} --precision-bits {}", lp.precision_bits);
    let mut rec = CellRecord::new("curvature", r, t, invocation);
    rec.precision_bits = Some(lp.precision_bits);
    rec.curvature = Some(measured.total);
    rec.trop_bound = Some(trop);
    rec.angles = Some(measured.angles.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(";"));
    rec.pass = measured.total >= 0.9 * trop as f64 * std::f64::consts::FRAC_PI_2;
    Ok(CurvatureOutcome { record: rec, measured: measured.total, corners, tropical_half_pis: trop })
}
