use super::{check_dims, Coord, PolygonalPath, TropPoint, TropScalar};
use crate::error::{Error, Result};

/// Extended nonnegative distance. `Finite` sorts below `Infinite`.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub enum Dist<T> {
    Finite(T),
    Infinite,
}

impl<T: Coord> Dist<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            Dist::Finite(v) => Some(v),
            Dist::Infinite => None,
        }
    }

    fn plus(self, other: Self) -> Self {
        match (self, other) {
            (Dist::Finite(a), Dist::Finite(b)) => Dist::Finite(a + b),
            _ => Dist::Infinite,
        }
    }

    fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Metric {
    /// Affine Hilbert metric `d_H`.
    Hilbert,
    /// `d_∞ = max(δ_F(x,y), δ_F(y,x))`.
    Inf,
}

/// Tropical Funk distance `δ_F(x, y) = max(0, max_k (y_k − x_k))`.
///
/// Infinite exactly when some coordinate is −∞ in `x` but finite in `y`.
pub fn funk_distance<T: Coord>(x: &TropPoint<T>, y: &TropPoint<T>) -> Result<Dist<T>> {
    check_dims(x.dim(), y.dim())?;
    let mut best = T::zero();
    for (a, b) in x.entries().iter().zip(y.entries()) {
        match (a, b) {
            (TropScalar::Bottom, TropScalar::Fin(_)) => return Ok(Dist::Infinite),
            (TropScalar::Fin(a), TropScalar::Fin(b)) => {
                let d = b.clone() - a.clone();
                if d > best {
                    best = d;
                }
            }
            _ => {}
        }
    }
    Ok(Dist::Finite(best))
}

pub fn hilbert_distance<T: Coord>(x: &TropPoint<T>, y: &TropPoint<T>) -> Result<Dist<T>> {
    Ok(funk_distance(x, y)?.plus(funk_distance(y, x)?))
}

pub fn dinf_distance<T: Coord>(x: &TropPoint<T>, y: &TropPoint<T>) -> Result<Dist<T>> {
    Ok(funk_distance(x, y)?.max(funk_distance(y, x)?))
}

fn distance<T: Coord>(x: &TropPoint<T>, y: &TropPoint<T>, metric: Metric) -> Result<Dist<T>> {
    match metric {
        Metric::Hilbert => hilbert_distance(x, y),
        Metric::Inf => dinf_distance(x, y),
    }
}

/// `sup_{p ∈ sample} inf_{q ∈ target} d(p, q)`.
///
/// The inner infimum over each piece is exact: along a piece the distance is
/// a convex piecewise-linear function of the parameter, so it suffices to
/// evaluate it at the endpoints and at every parameter where two of its
/// affine parts cross.
pub fn directed_hausdorff<T: Coord>(sample: &[TropPoint<T>], target: &PolygonalPath<T>, metric: Metric) -> Result<Dist<T>> {
    if sample.is_empty() {
        return Err(Error::Empty("hausdorff sample"));
    }
    let mut sup = Dist::Finite(T::zero());
    for p in sample {
        check_dims(target.dim(), p.dim())?;
        let mut inf = distance(p, target.start(), metric)?;
        for i in 0..target.num_pieces() {
            let d = piece_distance(p, &target.points()[i], &target.points()[i + 1], metric)?;
            if d < inf {
                inf = d;
            }
        }
        sup = sup.max(inf);
    }
    Ok(sup)
}

fn piece_distance<T: Coord>(p: &TropPoint<T>, a: &TropPoint<T>, b: &TropPoint<T>, metric: Metric) -> Result<Dist<T>> {
    if a.support() != b.support() {
        return Ok(distance(p, a, metric)?.min_with(distance(p, b, metric)?));
    }
    if p.support() != a.support() {
        return Ok(Dist::Infinite);
    }
    // g_k(τ) = c_k + τ d_k is the offset of the moving point from p.
    let mut c = Vec::new();
    let mut d = Vec::new();
    for k in 0..p.dim() {
        if let (Some(pk), Some(ak), Some(bk)) = (p.get(k).finite(), a.get(k).finite(), b.get(k).finite()) {
            c.push(ak.clone() - pk.clone());
            d.push(bk.clone() - ak.clone());
        }
    }
    let one = T::from_i64(1);
    let zero = T::zero();
    let mut taus = vec![zero.clone(), one.clone()];
    let mut push = |num: T, den: T| {
        if !den.is_zero() {
            let tau = num / den;
            if tau > zero && tau < one {
                taus.push(tau);
            }
        }
    };
    for k in 0..c.len() {
        push(-c[k].clone(), d[k].clone());
        for l in (k + 1)..c.len() {
            push(c[l].clone() - c[k].clone(), d[k].clone() - d[l].clone());
            push(-(c[k].clone() + c[l].clone()), d[k].clone() + d[l].clone());
        }
    }
    let eval = |tau: &T| -> T {
        let mut hi = zero.clone();
        let mut lo = zero.clone();
        for k in 0..c.len() {
            let g = c[k].clone() + tau.clone() * d[k].clone();
            if g > hi {
                hi = g.clone();
            }
            let ng = -g;
            if ng > lo {
                lo = ng;
            }
        }
        match metric {
            Metric::Hilbert => hi + lo,
            Metric::Inf => {
                if hi >= lo {
                    hi
                } else {
                    lo
                }
            }
        }
    };
    let best = taus.iter().map(eval).fold(None::<T>, |m, v| match m {
        Some(m) if m <= v => Some(m),
        _ => Some(v),
    });
    Ok(Dist::Finite(best.expect("at least two candidates")))
}

impl<T: Coord> Dist<T> {
    fn min_with(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}
