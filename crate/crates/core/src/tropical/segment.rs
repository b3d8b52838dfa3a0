use super::{check_dims, Coord, PolygonalPath, TropPoint, TropScalar};
use crate::error::{Error, Result};

/// The tropical segment `{λ ⊙ u ⊕ μ ⊙ v : λ ⊕ μ = 0}` as a polygonal path
/// from `u` to `v`.
///
/// The first half sweeps `μ` from −∞ to 0 with `λ = 0`, the second half sweeps
/// `λ` from 0 down to −∞ with `μ = 0`. Kinks occur where one coordinate
/// switches from following `u` to following `v`.
///
/// Coordinates that are −∞ must be −∞ in both endpoints; otherwise the
/// segment has an unbounded piece that cannot be represented by breakpoints.
pub fn trop_segment<T: Coord>(u: &TropPoint<T>, v: &TropPoint<T>) -> Result<PolygonalPath<T>> {
    check_dims(u.dim(), v.dim())?;
    if u.support() != v.support() {
        return Err(Error::InvalidArgument("tropical segment endpoints must have equal supports".into()));
    }
    let pairs: Vec<(T, T)> = u
        .entries()
        .iter()
        .zip(v.entries())
        .filter_map(|(a, b)| Some((a.finite()?.clone(), b.finite()?.clone())))
        .collect();

    let zero = T::zero();
    let mut first: Vec<T> = pairs.iter().map(|(a, b)| a.clone() - b.clone()).filter(|m| *m <= zero).collect();
    sort(&mut first);
    let mut second: Vec<T> = pairs.iter().map(|(a, b)| b.clone() - a.clone()).filter(|l| *l <= zero).collect();
    sort(&mut second);
    second.reverse();

    let mu_point = |mu: &T| u.oplus(&v.scale(&TropScalar::Fin(mu.clone()))).expect("same dim");
    let lambda_point = |l: &T| u.scale(&TropScalar::Fin(l.clone())).oplus(v).expect("same dim");

    let mut pts = vec![u.clone()];
    pts.extend(first.iter().map(mu_point));
    pts.push(mu_point(&zero));
    pts.extend(second.iter().map(lambda_point));
    pts.push(v.clone());
    Ok(PolygonalPath::new(pts)?.merge_collinear())
}

fn sort<T: Coord>(xs: &mut [T]) {
    xs.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates are ordered"));
}
