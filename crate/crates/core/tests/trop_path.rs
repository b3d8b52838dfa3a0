use lw_core::puiseux::{q, qi};
use lw_core::trop_path::{breakpoints, gamma_of_path, projected_path, trop_path_point, verify_membership};
use lw_core::tropical::{pointwise_barycenter, trop_segment, PolygonalPath, TropPoint, Q};
use proptest::prelude::*;

fn sub(path: &PolygonalPath<Q>, a: usize, b: usize) -> PolygonalPath<Q> {
    PolygonalPath::new(path.points()[a..=b].to_vec()).unwrap().merge_collinear()
}

/// Minimal partition into runs whose polyline *is* `tsegm(endpoints)`.
fn brute_gamma(path: &PolygonalPath<Q>) -> usize {
    let n = path.points().len();
    let single = |a: usize, b: usize| {
        let seg = trop_segment(&path.points()[a], &path.points()[b]).unwrap().merge_collinear();
        seg.points() == sub(path, a, b).points()
    };
    let mut best = vec![usize::MAX; n];
    best[0] = 0;
    for b in 1..n {
        for a in 0..b {
            if best[a] != usize::MAX && single(a, b) {
                best[b] = best[b].min(best[a] + 1);
            }
        }
    }
    best[n - 1]
}

fn check_all_subpaths(path: &PolygonalPath<Q>) {
    let n = path.points().len();
    for a in 0..n {
        for b in a + 1..n {
            let s = PolygonalPath::new(path.points()[a..=b].to_vec()).unwrap();
            assert_eq!(gamma_of_path(&s).unwrap(), brute_gamma(&s), "subpath {a}..{b}");
        }
    }
}

#[test]
fn gamma_matches_brute_force_on_all_subpaths() {
    for r in 1..=3 {
        let d = breakpoints(r, &qi(-1), &qi(3)).unwrap();
        check_all_subpaths(&d.full_path());
        check_all_subpaths(&d.primal_path());
        if r >= 2 {
            check_all_subpaths(&projected_path(r, &qi(0), &qi(2), &[2 * r - 2, 2 * r - 1]).unwrap());
        }
    }
}

#[test]
fn brute_force_small_cases() {
    let p = |pts: &[[i64; 2]]| PolygonalPath::new(pts.iter().map(|v| TropPoint::from_finite(vec![qi(v[0]), qi(v[1])]).unwrap()).collect()).unwrap();
    // e^{1} then e^{1,2}; e^{1} then e^{2}
    assert_eq!(brute_gamma(&p(&[[0, 0], [1, 0], [2, 1]])), 1);
    assert_eq!(brute_gamma(&p(&[[0, 0], [1, 0], [1, 1]])), 2);
}

#[test]
fn staircase_vertices_on_fine_grid() {
    // breakpoints land on the grid of step 1/2^{r-2}
    for r in 2..=6usize {
        let d = breakpoints(r, &qi(0), &qi(2)).unwrap();
        let step = q(1, 1 << (r - 2));
        for l in d.interior() {
            assert!((l / &step).is_integer(), "r={r}: {l}");
        }
    }
}

proptest! {
    #[test]
    fn path_point_is_barycenter_of_shrunk_samples(r in 1usize..=3, num in -8i64..=24, seeds in prop::collection::vec(prop::collection::vec(0i64..=8, 16), 1..6)) {
        let lambda = q(num, 8);
        prop_assert!(verify_membership(r, &lambda).unwrap().ok());
        let top = trop_path_point(r, &lambda).primal();
        let vals = top.finite_values().unwrap();
        let mut pts = vec![top.clone()];
        for s in &seeds {
            let shrunk: Vec<Q> = vals.iter().zip(s.iter().cycle()).map(|(v, k)| v - q(*k, 4)).collect();
            pts.push(TropPoint::from_finite(shrunk).unwrap());
        }
        prop_assert_eq!(pointwise_barycenter(&pts).unwrap(), top);
    }
}
