use super::BreakpointDecomposition;
use crate::error::{Error, Result};
use crate::tropical::{DirectionSet, PolygonalPath, Q};

/// Minimal number of tropical segments whose concatenation is the path.
///
/// A run of pieces `i..=j` is a single tropical segment iff its direction
/// sets are strictly nested, `K_i ⊊ … ⊊ K_j`: a monotone polyline from `u`
/// to `v` with nested increasing directions is exactly `tsegm(u, v)`, and
/// `tsegm` pieces always nest that way. Sub-runs of a valid run are valid,
/// so taking maximal runs greedily is optimal (an exchange argument: any
/// optimal cover can be shifted so each segment ends where the greedy one
/// does, without increasing the count).
pub fn gamma_from_directions(dirs: &[DirectionSet]) -> usize {
    if dirs.is_empty() {
        return 0;
    }
    1 + dirs.windows(2).filter(|w| !w[0].is_strict_subset(&w[1])).count()
}

/// `γ` of the full primal-dual path: directions `(e^K, e^{[N]∖K})` over `2N`
/// coordinates.
pub fn gamma_count(path: &BreakpointDecomposition) -> Result<usize> {
    let full: Vec<DirectionSet> = path
        .directions
        .iter()
        .map(|k| {
            let mut ind: Vec<bool> = k.indicator().iter().map(|&b| b == 1).collect();
            ind.extend(k.complement().indicator().iter().map(|&b| b == 1));
            DirectionSet::from_indicator(ind)
        })
        .collect();
    for (i, w) in full.windows(2).enumerate() {
        if w[0] == w[1] {
            return Err(Error::InvalidArgument(format!("pieces {} and {} share a direction set", i + 1, i + 2)));
        }
    }
    Ok(gamma_from_directions(&full).max(1))
}

/// `γ` of an arbitrary polyline, e.g. a projection of the path.
pub fn gamma_of_path(path: &PolygonalPath<Q>) -> Result<usize> {
    let path = path.clone().merge_collinear();
    if path.num_pieces() == 0 {
        return Ok(1);
    }
    let dirs = path.directions().ok_or_else(|| Error::NonMonotone("a piece is not a positive 0/1 direction".into()))?;
    Ok(gamma_from_directions(&dirs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::qi;
    use crate::tropical::TropPoint;

    fn path(pts: &[[i64; 2]]) -> PolygonalPath<Q> {
        PolygonalPath::new(pts.iter().map(|p| TropPoint::from_finite(vec![qi(p[0]), qi(p[1])]).unwrap()).collect()).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(gamma_of_path(&path(&[[0, 0], [1, 0]])).unwrap(), 1);
        assert_eq!(gamma_of_path(&path(&[[0, 0], [1, 0], [2, 1]])).unwrap(), 1);
        assert_eq!(gamma_of_path(&path(&[[0, 0], [1, 0], [1, 1]])).unwrap(), 2);
        assert_eq!(gamma_of_path(&path(&[[0, 0], [1, 0], [1, 1], [2, 2], [3, 2]])).unwrap(), 3);
        assert!(matches!(gamma_of_path(&path(&[[0, 0], [1, 0], [0, 1]])), Err(Error::NonMonotone(_))));
    }

    #[test]
    fn staircase_r3() {
        let d = super::super::breakpoints(3, &qi(0), &qi(2)).unwrap();
        let proj = d.primal_path().project(&[4, 5]).unwrap();
        assert_eq!(gamma_of_path(&proj).unwrap(), 4);
        assert!(gamma_count(&d).unwrap() >= 4);
    }
}
