use crate::error::{Error, Result};
use crate::numeric::{inf_norm, Real};

/// Total turning angle of a polyline, with the angle at each interior vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Curvature {
    pub total: f64,
    pub angles: Vec<f64>,
}

// atan2(‖u ∧ v‖, ⟨u, v⟩) is the same angle as the clamped arccos of the
// cosine, without losing half the digits near 0 and π.
fn angle(u: &[f64], v: &[f64]) -> f64 {
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let mut wedge = 0.0;
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            let c = u[i] * v[j] - u[j] * v[i];
            wedge += c * c;
        }
    }
    wedge.sqrt().atan2(dot)
}

fn from_differences(diffs: Vec<Vec<f64>>) -> Curvature {
    let angles: Vec<f64> = diffs.windows(2).map(|w| angle(&w[0], &w[1])).collect();
    Curvature { total: angles.iter().sum(), angles }
}

fn check_len(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("curvature needs at least 3 points, got {k}")));
    }
    Ok(())
}

/// Curvature of a polyline given in high precision.
///
/// Differences are formed exactly at working precision and rescaled by a
/// power of two before dropping to doubles, so huge coordinates with small
/// increments keep their direction.
pub fn polygonal_curvature(points: &[Vec<Real>]) -> Result<Curvature> {
    check_len(points.len())?;
    let mut diffs = Vec::with_capacity(points.len() - 1);
    for (i, w) in points.windows(2).enumerate() {
        if w[0].len() != w[1].len() {
            return Err(Error::DimensionMismatch { expected: w[0].len(), got: w[1].len() });
        }
        let d: Vec<Real> = w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect();
        let norm = inf_norm(&d);
        if norm.is_zero() {
            return Err(Error::InvalidArgument(format!("points {} and {} coincide", i + 1, i + 2)));
        }
        let shift = -(norm.log2().floor() as i32);
        diffs.push(d.iter().map(|v| v.mul_pow2(shift).to_f64()).collect());
    }
    Ok(from_differences(diffs))
}

pub fn polygonal_curvature_f64(points: &[Vec<f64>]) -> Result<Curvature> {
    check_len(points.len())?;
    let mut diffs = Vec::with_capacity(points.len() - 1);
    for (i, w) in points.windows(2).enumerate() {
        if w[0].len() != w[1].len() {
            return Err(Error::DimensionMismatch { expected: w[0].len(), got: w[1].len() });
        }
        let d: Vec<f64> = w[1].iter().zip(&w[0]).map(|(a, b)| a - b).collect();
        if d.iter().all(|v| *v == 0.0) {
            return Err(Error::InvalidArgument(format!("points {} and {} coincide", i + 1, i + 2)));
        }
        diffs.push(d);
    }
    Ok(from_differences(diffs))
}
