//! Exact tropical central path of LW(r).
//!
//! Every quantity is an exact rational; on `[0, 2]` all values are multiples
//! of `2^{−(r−1)}` whenever `λ` is.

mod curvature;
mod gamma;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::instances::{build_lw, tropical_rows, LWSpec, TropRow};
use crate::tropical::{DirectionSet, PolygonalPath, TropPoint, TropScalar, Q};

pub use curvature::{standard_grid, trop_curvature_lower_bound, weak_tropical_angle, CurvatureBound, TropAngle};
pub use gamma::{gamma_count, gamma_from_directions, gamma_of_path};

fn pow2_inv(j: usize) -> Q {
    Q::new(1.into(), num_bigint::BigInt::from(1u8) << j)
}

fn fin(v: Q) -> TropScalar<Q> {
    TropScalar::Fin(v)
}

fn x_values(r: usize, lambda: &Q) -> Vec<Q> {
    let two = Q::from_integer(2.into());
    let one = Q::one();
    let mut x = Vec::with_capacity(2 * r);
    x.push(lambda.clone().min(two));
    x.push(one.clone());
    for j in 1..r {
        let (a, b) = (&x[2 * j - 2], &x[2 * j - 1]);
        let lo = a.min(b).clone();
        let hi = a.max(b).clone();
        x.push(&one + &lo);
        x.push(&one - &pow2_inv(j) + hi);
    }
    x
}

fn w_values(r: usize, x: &[Q]) -> Vec<Q> {
    let one = Q::one();
    let mut w = Vec::with_capacity(3 * r - 1);
    w.push(Q::from_integer(2.into()));
    w.push(one.clone());
    for j in 1..r {
        w.push(&one + &x[2 * j - 2]);
        w.push(&one + &x[2 * j - 1]);
        w.push(x[2 * j + 1].clone());
    }
    w
}

fn point(values: Vec<Q>) -> TropPoint<Q> {
    TropPoint::from_finite(values).expect("nonempty")
}

/// `x^λ` from the recursion `x_1 = min(λ, 2)`, `x_2 = 1`,
/// `x_{2j+1} = 1 + min(x_{2j−1}, x_{2j})`,
/// `x_{2j+2} = 1 − 2^{−j} + max(x_{2j−1}, x_{2j})`.
pub fn trop_path_x(r: usize, lambda: &Q) -> TropPoint<Q> {
    point(x_values(r, lambda))
}

/// `w^λ`: `w_1 = 2`, `w_2 = 1`, `w_{3j} = 1 + x_{2j−1}`, `w_{3j+1} = 1 + x_{2j}`,
/// `w_{3j+2} = x_{2j+2}`.
pub fn trop_path_w(r: usize, lambda: &Q) -> TropPoint<Q> {
    point(w_values(r, &x_values(r, lambda)))
}

/// A point `C^trop(λ) = (x, w, s, y)` of the tropical central path.
#[derive(Clone, Debug, PartialEq)]
pub struct TropCPPoint {
    pub lambda: Q,
    pub x: TropPoint<Q>,
    pub w: TropPoint<Q>,
    pub s: TropPoint<Q>,
    pub y: TropPoint<Q>,
}

impl TropCPPoint {
    /// All `2N` coordinates in the order `x, w, s, y`.
    pub fn full(&self) -> TropPoint<Q> {
        let e = [&self.x, &self.w, &self.s, &self.y].iter().flat_map(|p| p.entries().to_vec()).collect();
        TropPoint::new(e).expect("nonempty")
    }

    /// Primal part `(x, w)`.
    pub fn primal(&self) -> TropPoint<Q> {
        let e = [&self.x, &self.w].iter().flat_map(|p| p.entries().to_vec()).collect();
        TropPoint::new(e).expect("nonempty")
    }
}

pub fn trop_path_point(r: usize, lambda: &Q) -> TropCPPoint {
    let x = x_values(r, lambda);
    let w = w_values(r, &x);
    let s: Vec<Q> = x.iter().map(|v| lambda - v).collect();
    let y: Vec<Q> = w.iter().map(|v| lambda - v).collect();
    TropCPPoint { lambda: lambda.clone(), x: point(x), w: point(w), s: point(s), y: point(y) }
}

/// Tropical duality gap `⊕_j x_j ⊙ s_j ⊕ ⊕_i w_i ⊙ y_i`.
pub fn tgap(x: &TropPoint<Q>, w: &TropPoint<Q>, s: &TropPoint<Q>, y: &TropPoint<Q>) -> Result<TropScalar<Q>> {
    crate::tropical::check_dims(x.dim(), s.dim())?;
    crate::tropical::check_dims(w.dim(), y.dim())?;
    let pairs = x.entries().iter().zip(s.entries()).chain(w.entries().iter().zip(y.entries()));
    Ok(pairs.fold(TropScalar::Bottom, |acc, (a, b)| acc.oplus(&a.odot(b))))
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub violations: Vec<String>,
    /// Rows whose slack is not equal to its tropical bound.
    pub loose_slacks: Vec<usize>,
}

impl MembershipReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty() && self.loose_slacks.is_empty()
    }
}

/// The tropicalized primal rows of LW(r), built once for repeated checks.
#[derive(Clone, Debug)]
pub struct MembershipChecker {
    n: usize,
    m: usize,
    rows: Vec<TropRow>,
}

impl MembershipChecker {
    pub fn new(r: usize) -> Result<Self> {
        let lp = build_lw(LWSpec::new(r)?)?;
        Ok(MembershipChecker { n: lp.n(), m: lp.m(), rows: tropical_rows(&lp)? })
    }

    /// Largest slack values compatible with `x`, row by row.
    pub fn slack_bounds(&self, x: &TropPoint<Q>) -> Vec<TropScalar<Q>> {
        self.rows.iter().map(|row| row.rhs(x)).collect()
    }

    /// Checks `(x, w)` against every row and `x_1 ≤ λ`.
    ///
    /// Violations are reported per row (`w_i`, 1-based). A slack is "loose"
    /// when `w_i` is strictly below its bound.
    pub fn check(&self, lambda: &Q, x: &TropPoint<Q>, w: &TropPoint<Q>) -> Result<MembershipReport> {
        crate::tropical::check_dims(self.n, x.dim())?;
        crate::tropical::check_dims(self.m, w.dim())?;
        let mut violations = Vec::new();
        let mut loose = Vec::new();
        if *x.get(0) > fin(lambda.clone()) {
            violations.push(format!("x_1 = {} exceeds lambda = {lambda}", x.get(0)));
        }
        for row in &self.rows {
            let bound = row.rhs(x);
            if *x.get(row.lhs) > bound {
                violations.push(format!("row w_{}: x_{} = {} > {}", row.row + 1, row.lhs + 1, x.get(row.lhs), bound));
            }
            let wi = w.get(row.row);
            if *wi > bound {
                violations.push(format!("row w_{}: w_{} = {} > {}", row.row + 1, row.row + 1, wi, bound));
            } else if *wi < bound {
                loose.push(row.row + 1);
            }
        }
        Ok(MembershipReport { violations, loose_slacks: loose })
    }
}

pub fn verify_point(r: usize, lambda: &Q, x: &TropPoint<Q>, w: &TropPoint<Q>) -> Result<MembershipReport> {
    MembershipChecker::new(r)?.check(lambda, x, w)
}

pub fn verify_membership(r: usize, lambda: &Q) -> Result<MembershipReport> {
    let p = trop_path_point(r, lambda);
    verify_point(r, lambda, &p.x, &p.w)
}

/// Piecewise-linear description of `λ ↦ C^trop(λ)` on an interval.
#[derive(Clone, Debug, PartialEq)]
pub struct BreakpointDecomposition {
    pub r: usize,
    /// Piece boundaries, including both ends of the interval.
    pub lambdas: Vec<Q>,
    /// Primal direction set `K` of each piece, over the `N` primal
    /// coordinates; the dual direction is the complement.
    pub directions: Vec<DirectionSet>,
}

impl BreakpointDecomposition {
    pub fn interior(&self) -> &[Q] {
        let k = self.lambdas.len();
        if k <= 2 {
            &[]
        } else {
            &self.lambdas[1..k - 1]
        }
    }

    /// The path through the full points at every boundary.
    pub fn full_path(&self) -> PolygonalPath<Q> {
        let pts = self.lambdas.iter().map(|l| trop_path_point(self.r, l).full()).collect();
        PolygonalPath::new(pts).expect("nonempty")
    }

    pub fn primal_path(&self) -> PolygonalPath<Q> {
        let pts = self.lambdas.iter().map(|l| trop_path_point(self.r, l).primal()).collect();
        PolygonalPath::new(pts).expect("nonempty")
    }
}

fn full_values(r: usize, lambda: &Q) -> Vec<Q> {
    trop_path_point(r, lambda).full().finite_values().expect("finite")
}

/// Breakpoints of the tropical central path on `[lo, hi]`.
///
/// The interval is cut on the grid `2^{−r} ℤ`; on every cell the path is
/// checked to be affine (midpoint test) with derivative `(e^K, e^{[N]∖K})`.
/// Cells with equal `K` are merged.
pub fn breakpoints(r: usize, lo: &Q, hi: &Q) -> Result<BreakpointDecomposition> {
    LWSpec::new(r)?;
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty interval [{lo}, {hi}]")));
    }
    let big_n = 5 * r - 1;
    if lo == hi {
        return Ok(BreakpointDecomposition { r, lambdas: vec![lo.clone()], directions: vec![] });
    }
    let step = pow2_inv(r);
    let mut cuts = vec![lo.clone()];
    let mut k = (lo / &step).floor() + Q::one();
    loop {
        let v = &k * &step;
        if v >= *hi {
            break;
        }
        cuts.push(v);
        k += Q::one();
    }
    cuts.push(hi.clone());

    let half = Q::new(1.into(), 2.into());
    let mut lambdas = vec![lo.clone()];
    let mut directions: Vec<DirectionSet> = Vec::new();
    for cell in cuts.windows(2) {
        let (a, b) = (&cell[0], &cell[1]);
        let (pa, pb) = (full_values(r, a), full_values(r, b));
        let mid = full_values(r, &(&(a + b) * &half));
        let len = b - a;
        let mut members = Vec::with_capacity(big_n);
        for i in 0..2 * big_n {
            if &(&pa[i] + &pb[i]) * &half != mid[i] {
                return Err(Error::Certification(format!("coordinate {} is not affine on [{a}, {b}]", i + 1)));
            }
            let slope = &(&pb[i] - &pa[i]) / &len;
            if !(slope.is_zero() || slope.is_one()) {
                return Err(Error::Certification(format!("coordinate {} has slope {slope} on [{a}, {b}]", i + 1)));
            }
            if i < big_n {
                members.push(slope.is_one());
            } else if slope.is_one() == members[i - big_n] {
                return Err(Error::Certification(format!("dual slope of coordinate {} is not complementary", i + 1)));
            }
        }
        let dir = DirectionSet::from_indicator(members);
        if directions.last() == Some(&dir) {
            *lambdas.last_mut().expect("nonempty") = b.clone();
        } else {
            directions.push(dir);
            lambdas.push(b.clone());
        }
    }
    Ok(BreakpointDecomposition { r, lambdas, directions })
}

/// Projection of `C^trop([lo, hi])` onto the primal coordinates `coords`
/// (0-based over `x, w`), with collinear pieces merged.
pub fn projected_path(r: usize, lo: &Q, hi: &Q, coords: &[usize]) -> Result<PolygonalPath<Q>> {
    breakpoints(r, lo, hi)?.primal_path().project(coords)
}

/// `ε₀ = 1 / (3 · 2^{r−1})`.
pub fn epsilon0(r: usize) -> Result<Q> {
    if r < 2 {
        return Err(Error::InvalidArgument("epsilon0 needs r ≥ 2".into()));
    }
    Ok(Q::new(1.into(), num_bigint::BigInt::from(3) << (r - 1)))
}
