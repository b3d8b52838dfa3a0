use super::{build_lw, evaluate_lp, LWSpec, RealLP};
use crate::error::{Error, Result};
use crate::ipm::PDPoint;
use crate::numeric::{solve, DenseMatrix, Real};
use crate::trop_path::trop_path_x;
use crate::tropical::Q;

/// Result of the warm start: a strictly feasible, nearly centred point.
#[derive(Clone, Debug)]
pub struct WarmStart {
    pub point: PDPoint,
    pub lambda: Q,
    pub mu: Real,
    pub centering_steps: usize,
    /// Newton decrement of the primal barrier at the returned point.
    pub decrement: f64,
}

const MAX_CENTERING: usize = 200;

/// Strictly feasible primal-dual seed near the central point at `μ = t^λ`.
///
/// The primal part starts from the lift `x_{2j+1}, x_{2j+2} = 2^{−(j+1)} t^{x^λ}`
/// of the tropical central path, with `w = b − Ax`. It is then centred by
/// damped Newton steps on the primal barrier
/// `cᵀx − μ Σ log x − μ Σ log(b − Ax)`; the dual part is read off as
/// `y = μ / w`, `s = c + Aᵀy`, which is exactly dual feasible and, at the
/// barrier minimiser, equal to `μ / x`.
pub fn tropical_warm_start(spec: LWSpec, t: &Real, lambda: &Q, precision_bits: usize) -> Result<WarmStart> {
    let lp = evaluate_lp(&build_lw(spec)?, t, precision_bits)?;
    warm_start_for(&lp, lambda)
}

pub(crate) fn warm_start_for(lp: &RealLP, lambda: &Q) -> Result<WarmStart> {
    if *lambda < Q::from_integer(0.into()) {
        return Err(Error::InvalidArgument("warm start needs λ ≥ 0".into()));
    }
    let p = lp.precision_bits;
    let (n, m) = (lp.n(), lp.m());
    let xl = trop_path_x(lp.r, lambda);
    let mut x = Vec::with_capacity(n);
    for j in 0..lp.r {
        let alpha = Real::one(p).mul_pow2(-(j as i32 + 1));
        for k in [2 * j, 2 * j + 1] {
            let e = xl.get(k).finite().expect("finite recursion").clone();
            x.push(&alpha * &lp.t_pow(&e)?);
        }
    }
    let slack = |x: &[Real]| -> Vec<Real> { lp.a.mul_vec(x).iter().zip(&lp.b).map(|(ax, b)| b - ax).collect() };
    let mut w = slack(&x);
    if let Some(i) = w.iter().position(|v| !v.is_positive()) {
        return Err(Error::NotStrictlyFeasible(format!("lifted slack w_{} is not positive; raise t", i + 1)));
    }

    let mu = lp.t_pow(lambda)?;
    let one = Real::one(p);
    let mut steps = 0;
    let mut decrement = f64::INFINITY;
    // Below this the decrement is rounding noise at the working precision.
    let stop = 2f64.powi(-(p.min(3000) as i32) / 3);
    while steps < MAX_CENTERING {
        let inv_w: Vec<Real> = w.iter().map(Real::recip).collect();
        let at_inv_w = lp.a.transpose_mul_vec(&inv_w);
        // g = c − μ/x + μ Aᵀ(1/w)
        let g: Vec<Real> = (0..n).map(|j| &lp.c[j] - &(&mu / &x[j]) + &mu * &at_inv_w[j]).collect();
        // H = μ diag(1/x²) + μ Aᵀ diag(1/w²) A
        let mut h = DenseMatrix::zeros(n, n, p);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Real::zero(p);
                for k in 0..m {
                    let (aki, akj) = (lp.a.get(k, i), lp.a.get(k, j));
                    if !aki.is_zero() && !akj.is_zero() {
                        acc = acc + aki * akj * &inv_w[k] * &inv_w[k];
                    }
                }
                if i == j {
                    let xi = x[i].recip();
                    acc = acc + &xi * &xi;
                }
                h.set(i, j, &mu * &acc);
            }
        }
        let neg_g: Vec<Real> = g.iter().map(|v| -v).collect();
        let dx = solve(&h, &neg_g, p)?;
        let dec2 = crate::numeric::dot(&neg_g, &dx) / &mu;
        decrement = dec2.to_f64().max(0.0).sqrt();
        if decrement <= stop {
            break;
        }
        let mut step = if decrement > 0.25 { Real::from_f64(1.0 / (1.0 + decrement), p) } else { one.clone() };
        loop {
            let cand: Vec<Real> = x.iter().zip(&dx).map(|(a, d)| a + &(&step * d)).collect();
            let cw = slack(&cand);
            if cand.iter().chain(&cw).all(Real::is_positive) {
                x = cand;
                w = cw;
                break;
            }
            step = step.mul_pow2(-1);
            if step.log2() < -200.0 {
                return Err(Error::NoAdmissibleStep);
            }
        }
        steps += 1;
    }
    if decrement > 1e-6 {
        return Err(Error::NoConvergence { lambda: lambda.to_string(), steps, residual: decrement });
    }
    let y: Vec<Real> = w.iter().map(|wi| &mu / wi).collect();
    let aty = lp.a.transpose_mul_vec(&y);
    let s: Vec<Real> = lp.c.iter().zip(&aty).map(|(c, v)| c + v).collect();
    let point = PDPoint::new(x, w, s, y).map_err(|e| match e {
        Error::NotStrictlyFeasible(d) => Error::NotStrictlyFeasible(format!("warm-start dual: {d}")),
        other => other,
    })?;
    Ok(WarmStart { point, lambda: lambda.clone(), mu, centering_steps: steps, decrement })
}

/// The textbook dual seed `y = ε e`, `s = c + Aᵀy`, raising `ε` by `t^{1/2}`
/// from `t^{−(r+2)}` until `s > 0`.
///
/// For LW every column but the first has a net negative coefficient sum, so
/// this never succeeds there; it is kept to document why the barrier-based
/// seed of [`tropical_warm_start`] is used instead.
pub fn uniform_dual_start(lp: &RealLP) -> Result<(Vec<Real>, Vec<Real>)> {
    let p = lp.precision_bits;
    let r = lp.r as i64;
    let mut eps = lp.t_pow(&Q::from_integer((-(r + 2)).into()))?;
    let factor = lp.t_pow(&Q::new(1.into(), 2.into()))?;
    let ceiling = lp.t_pow(&Q::from_integer((r + 2).into()))?;
    while eps <= ceiling {
        let y = vec![eps.clone(); lp.m()];
        let aty = lp.a.transpose_mul_vec(&y);
        let s: Vec<Real> = lp.c.iter().zip(&aty).map(|(c, v)| c + v).collect();
        if s.iter().all(Real::is_positive) {
            return Ok((s, y));
        }
        eps = &eps * &factor;
    }
    Err(Error::NotStrictlyFeasible(format!("no uniform dual seed y = ε·e with s > 0 at {p} bits")))
}
