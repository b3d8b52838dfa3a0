use lw_core::puiseux::{q, series_add, series_cmp, series_mul, val, PuiseuxSeries};
use lw_core::tropical::{dinf_distance, funk_distance, hilbert_distance, pointwise_barycenter, trop_segment, Dist, TropPoint, Q};
use proptest::prelude::*;
use std::cmp::Ordering;

fn rat() -> impl Strategy<Value = Q> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn point(d: usize) -> impl Strategy<Value = TropPoint<Q>> {
    prop::collection::vec(rat(), d).prop_map(|v| TropPoint::from_finite(v).unwrap())
}

fn series() -> impl Strategy<Value = PuiseuxSeries> {
    prop::collection::vec(((-5i64..=5).prop_filter("nonzero", |c| *c != 0), rat()), 0..5)
        .prop_map(|t| PuiseuxSeries::from_terms(t.into_iter().map(|(c, e)| (q(c, 1), e)).collect()))
}

fn fin(d: Dist<Q>) -> Q {
    d.finite().cloned().expect("finite")
}

proptest! {
    #[test]
    fn dinf_is_a_metric((x, y, z) in (1usize..6).prop_flat_map(|d| (point(d), point(d), point(d)))) {
        let (xy, yz, xz) = (fin(dinf_distance(&x, &y).unwrap()), fin(dinf_distance(&y, &z).unwrap()), fin(dinf_distance(&x, &z).unwrap()));
        prop_assert_eq!(&xy, &fin(dinf_distance(&y, &x).unwrap()));
        prop_assert!(xz <= xy + yz);
        prop_assert_eq!(fin(dinf_distance(&x, &x).unwrap()), q(0, 1));
    }

    #[test]
    fn hilbert_is_funk_sum((x, y) in (1usize..6).prop_flat_map(|d| (point(d), point(d)))) {
        let h = fin(hilbert_distance(&x, &y).unwrap());
        prop_assert_eq!(&h, &fin(hilbert_distance(&y, &x).unwrap()));
        prop_assert_eq!(h, fin(funk_distance(&x, &y).unwrap()) + fin(funk_distance(&y, &x).unwrap()));
    }

    #[test]
    fn segment_stays_in_box((u, v) in (1usize..7).prop_flat_map(|d| (point(d), point(d)))) {
        let hi = u.oplus(&v).unwrap();
        let seg = trop_segment(&u, &v).unwrap();
        prop_assert_eq!(seg.start(), &u);
        prop_assert_eq!(seg.end(), &v);
        for p in seg.points() {
            prop_assert!(p.le(&hi));
        }
        prop_assert_eq!(pointwise_barycenter(seg.points()).unwrap(), hi);
    }

    #[test]
    fn val_is_a_valuation(f in series(), g in series()) {
        prop_assert_eq!(val(&series_mul(&f, &g)), val(&f).odot(&val(&g)));
        prop_assert!(val(&series_add(&f, &g)) <= val(&f).oplus(&val(&g)));
        if series_cmp(&f, &g) == Ordering::Greater {
            prop_assert_eq!(series_cmp(&g, &f), Ordering::Less);
        }
    }

    #[test]
    fn series_json_round_trip(f in series()) {
        let s = serde_json::to_string(&f).unwrap();
        prop_assert!(!s.contains('.'), "exponents are exact strings: {}", s);
        prop_assert_eq!(serde_json::from_str::<PuiseuxSeries>(&s).unwrap(), f);
    }
}
