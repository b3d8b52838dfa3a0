use std::fmt;

use super::trop_path_point;
use crate::error::{Error, Result};
use crate::tropical::{Coord, TropPoint, Q};

/// The two values of the weak tropical angle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TropAngle {
    Zero,
    HalfPi,
}

impl TropAngle {
    /// Multiples of `π/2`.
    pub fn units(self) -> usize {
        match self {
            TropAngle::Zero => 0,
            TropAngle::HalfPi => 1,
        }
    }

    pub fn radians(self) -> f64 {
        self.units() as f64 * std::f64::consts::FRAC_PI_2
    }
}

impl fmt::Display for TropAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TropAngle::Zero => "0",
            TropAngle::HalfPi => "pi/2",
        })
    }
}

/// `∠* UVW`: `π/2` iff `max U < max V < max W` and the argmax sets of `V`
/// and `W` are disjoint.
pub fn weak_tropical_angle<T: Coord>(u: &TropPoint<T>, v: &TropPoint<T>, w: &TropPoint<T>) -> Result<TropAngle> {
    crate::tropical::check_dims(u.dim(), v.dim())?;
    crate::tropical::check_dims(u.dim(), w.dim())?;
    let (mu, _) = u.argmax();
    let (mv, av) = v.argmax();
    let (mw, aw) = w.argmax();
    let disjoint = av.iter().all(|i| !aw.contains(i));
    Ok(if mu < mv && mv < mw && disjoint { TropAngle::HalfPi } else { TropAngle::Zero })
}

/// Sum of weak tropical angles along the tropical central path at `grid`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureBound {
    pub angles: Vec<TropAngle>,
}

impl CurvatureBound {
    /// The bound as a multiple of `π/2`.
    pub fn half_pis(&self) -> usize {
        self.angles.iter().map(|a| a.units()).sum()
    }

    pub fn radians(&self) -> f64 {
        self.half_pis() as f64 * std::f64::consts::FRAC_PI_2
    }
}

/// `Σ_k ∠* C(λ_{k−1}) C(λ_k) C(λ_{k+1})` over the full primal-dual points.
pub fn trop_curvature_lower_bound(r: usize, grid: &[Q]) -> Result<CurvatureBound> {
    if grid.len() < 3 {
        return Err(Error::InvalidArgument(format!("curvature grid needs at least 3 points, got {}", grid.len())));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("curvature grid must be increasing".into()));
    }
    let pts: Vec<TropPoint<Q>> = grid.iter().map(|l| trop_path_point(r, l).full()).collect();
    let angles = pts.windows(3).map(|w| weak_tropical_angle(&w[0], &w[1], &w[2])).collect::<Result<_>>()?;
    Ok(CurvatureBound { angles })
}

/// The grid `λ_k = 4k / 2^{r−1}`, `k = 0..=2^{r−2}`, covering `[0, 2]`.
pub fn standard_grid(r: usize) -> Result<Vec<Q>> {
    if r < 2 {
        return Err(Error::InvalidArgument("the curvature grid needs r ≥ 2".into()));
    }
    let den = num_bigint::BigInt::from(1u8) << (r - 1);
    Ok((0..=(1usize << (r - 2))).map(|k| Q::new((4 * k).into(), den.clone())).collect())
}
