use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{ceil_rational, Real};
use crate::tropical::Q;

fn factorial(n: usize) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn log2_factorial(n: usize) -> f64 {
    (2..=n).map(|k| (k as f64).log2()).sum()
}

/// `2N = 10r − 2` for LW(r).
pub fn two_n(r: usize) -> usize {
    10 * r - 2
}

/// `(max((2N)!, ⌈((2N+1)!)^24 / (1−θ)^3⌉))^{2^{r−1}}` with `2N = 10r − 2`.
pub fn min_valid_t(r: usize, theta: &Q) -> Result<BigInt> {
    if r < 2 {
        return Err(Error::InvalidArgument("min_valid_t needs r ≥ 2".into()));
    }
    if !theta.is_positive() || *theta >= Q::one() {
        return Err(Error::InvalidArgument(format!("theta = {theta} must lie in (0, 1)")));
    }
    let n2 = two_n(r);
    let first = factorial(n2);
    let gap = Q::one() - theta;
    let second = ceil_rational(&(Q::from_integer(factorial(n2 + 1).pow(24)) / (&gap * &gap * &gap)));
    let base = first.max(second);
    Ok(base.pow(1u32 << (r - 1)))
}

/// `δ(t) = 2 log_t((2N+1)² ((2N)!)⁴)`, and whether `t ≥ ((2N)!)^{2^{r−1}}`
/// so that the estimate is guaranteed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeltaBound {
    pub value: f64,
    pub guaranteed: bool,
}

pub fn delta_bound(r: usize, t: &Real) -> Result<DeltaBound> {
    if r < 1 {
        return Err(Error::InvalidArgument("delta_bound needs r ≥ 1".into()));
    }
    let l = t.log2();
    if !(l > 0.0) {
        return Err(Error::InvalidArgument("delta_bound needs t > 1".into()));
    }
    let n2 = two_n(r);
    let lf = log2_factorial(n2);
    let value = 2.0 * (2.0 * ((n2 + 1) as f64).log2() + 4.0 * lf) / l;
    let guaranteed = l >= lf * (1u64 << (r - 1)) as f64;
    Ok(DeltaBound { value, guaranteed })
}

/// `log_t(2N / (1−θ)) + δ(t)`: the admissible `d_∞` distance between the
/// log-image of the central path and the tropical central path.
pub fn convergence_budget(r: usize, t: &Real, theta: f64) -> Result<f64> {
    if !(0.0 < theta && theta < 1.0) {
        return Err(Error::InvalidArgument(format!("theta = {theta} must lie in (0, 1)")));
    }
    let d = delta_bound(r, t)?;
    Ok((two_n(r) as f64 / (1.0 - theta)).log2() / t.log2() + d.value)
}

/// Whether `t` reaches [`min_valid_t`].
pub fn threshold_met(t: &Real, threshold: &BigInt) -> bool {
    if threshold.is_zero() {
        return true;
    }
    let p = t.prec().max(64);
    // compare logarithms first; fall back to exact comparison when close
    let lt = t.log2();
    let lb = crate::numeric::ceil_log2(threshold) as f64;
    if lt < lb - 2.0 {
        return false;
    }
    let th = Real::from_bigint(threshold, (lb as usize + 64).max(p));
    t.with_prec(th.prec()) >= th
}
