//! Max-plus arithmetic over `ℝ ∪ {−∞}`.
//!
//! Coordinates are generic over [`Coord`]: the tropical central path lives in
//! exact rationals, while images `log_t` of numeric iterates are doubles. A
//! single [`TropPoint`] never mixes the two.

mod metric;
mod segment;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

pub use metric::{dinf_distance, directed_hausdorff, funk_distance, hilbert_distance, Dist, Metric};
pub use segment::trop_segment;

/// Exact coordinates used by the combinatorial code.
pub type Q = BigRational;

/// Scalar type usable as a finite tropical coordinate.
pub trait Coord:
    Clone
    + PartialOrd
    + fmt::Debug
    + fmt::Display
    + Zero
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(n: i64) -> Self;
}

impl Coord for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }
}

impl Coord for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
}

/// Element of the tropical semifield. `Bottom` is −∞.
///
/// The derived order puts `Bottom` below every finite value.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub enum TropScalar<T> {
    Bottom,
    Fin(T),
}

impl<T: Coord> TropScalar<T> {
    pub fn zero() -> Self {
        TropScalar::Fin(T::zero())
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, TropScalar::Bottom)
    }

    pub fn finite(&self) -> Option<&T> {
        match self {
            TropScalar::Fin(v) => Some(v),
            TropScalar::Bottom => None,
        }
    }

    /// `a ⊕ b = max(a, b)`.
    pub fn oplus(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `a ⊙ b = a + b`, with −∞ absorbing.
    pub fn odot(&self, other: &Self) -> Self {
        match (self, other) {
            (TropScalar::Fin(a), TropScalar::Fin(b)) => TropScalar::Fin(a.clone() + b.clone()),
            _ => TropScalar::Bottom,
        }
    }

    /// Tropical inverse `λ^{⊙(−1)} = −λ`; undefined for −∞.
    pub fn inverse(&self) -> Option<Self> {
        self.finite().map(|v| TropScalar::Fin(-v.clone()))
    }
}

impl<T: fmt::Display> fmt::Display for TropScalar<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::Bottom => write!(f, "-inf"),
            TropScalar::Fin(v) => write!(f, "{v}"),
        }
    }
}

pub fn trop_add<T: Coord>(a: &TropScalar<T>, b: &TropScalar<T>) -> TropScalar<T> {
    a.oplus(b)
}

pub fn trop_mul<T: Coord>(a: &TropScalar<T>, b: &TropScalar<T>) -> TropScalar<T> {
    a.odot(b)
}

/// Point of `𝕋^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct TropPoint<T> {
    entries: Vec<TropScalar<T>>,
}

impl<T: Coord> TropPoint<T> {
    pub fn new(entries: Vec<TropScalar<T>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty("tropical point"));
        }
        Ok(TropPoint { entries })
    }

    pub fn from_finite(values: Vec<T>) -> Result<Self> {
        Self::new(values.into_iter().map(TropScalar::Fin).collect())
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[TropScalar<T>] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &TropScalar<T> {
        &self.entries[i]
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|e| !e.is_bottom())
    }

    /// Finite coordinates, or `None` if any coordinate is −∞.
    pub fn finite_values(&self) -> Option<Vec<T>> {
        self.entries.iter().map(|e| e.finite().cloned()).collect()
    }

    pub fn support(&self) -> Vec<bool> {
        self.entries.iter().map(|e| !e.is_bottom()).collect()
    }

    /// Componentwise partial order.
    pub fn le(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// `λ ⊙ self`.
    pub fn scale(&self, lambda: &TropScalar<T>) -> Self {
        TropPoint { entries: self.entries.iter().map(|e| e.odot(lambda)).collect() }
    }

    /// Componentwise `⊕`.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        check_dims(self.dim(), other.dim())?;
        Ok(TropPoint { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.oplus(b)).collect() })
    }

    /// Largest coordinate and the (0-based) set of indices attaining it.
    pub fn argmax(&self) -> (TropScalar<T>, Vec<usize>) {
        let best = self.entries.iter().fold(TropScalar::Bottom, |m, e| m.oplus(e));
        let idx = self.entries.iter().enumerate().filter(|(_, e)| **e == best).map(|(i, _)| i).collect();
        (best, idx)
    }

    pub fn map_finite<U: Coord>(&self, f: impl Fn(&T) -> U) -> TropPoint<U> {
        TropPoint {
            entries: self
                .entries
                .iter()
                .map(|e| match e {
                    TropScalar::Fin(v) => TropScalar::Fin(f(v)),
                    TropScalar::Bottom => TropScalar::Bottom,
                })
                .collect(),
        }
    }
}

impl<T: fmt::Display> fmt::Display for TropPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub(crate) fn check_dims(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}

/// Subset `K ⊆ {0..dim}`; its indicator is the vector `e^K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectionSet {
    members: Vec<bool>,
}

impl DirectionSet {
    pub fn new(dim: usize, members: &[usize]) -> Self {
        let mut m = vec![false; dim];
        for &i in members {
            m[i] = true;
        }
        DirectionSet { members: m }
    }

    pub fn from_indicator(members: Vec<bool>) -> Self {
        DirectionSet { members }
    }

    pub fn dim(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members[i]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.members[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn indicator(&self) -> Vec<u8> {
        self.members.iter().map(|&b| b as u8).collect()
    }

    pub fn complement(&self) -> Self {
        DirectionSet { members: self.members.iter().map(|b| !b).collect() }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.members.iter().zip(&other.members).all(|(a, b)| !a || *b)
    }

    pub fn is_strict_subset(&self, other: &Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.members.iter().zip(&other.members).all(|(a, b)| !(a & b))
    }

    pub fn restrict(&self, coords: &[usize]) -> Self {
        DirectionSet { members: coords.iter().map(|&i| self.members[i]).collect() }
    }
}

impl fmt::Display for DirectionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "e^{{{}}}", m.join(","))
    }
}

/// Piecewise-linear curve given by its breakpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonalPath<T> {
    points: Vec<TropPoint<T>>,
}

impl<T: Coord> PolygonalPath<T> {
    /// Drops consecutive duplicates; fails on an empty list or mixed dimensions.
    pub fn new(points: Vec<TropPoint<T>>) -> Result<Self> {
        let first = points.first().ok_or(Error::Empty("polygonal path"))?;
        let d = first.dim();
        let mut out: Vec<TropPoint<T>> = Vec::with_capacity(points.len());
        for p in points {
            check_dims(d, p.dim())?;
            if out.last() != Some(&p) {
                out.push(p);
            }
        }
        Ok(PolygonalPath { points: out })
    }

    pub fn points(&self) -> &[TropPoint<T>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn num_pieces(&self) -> usize {
        self.points.len() - 1
    }

    pub fn start(&self) -> &TropPoint<T> {
        &self.points[0]
    }

    pub fn end(&self) -> &TropPoint<T> {
        self.points.last().expect("nonempty path")
    }

    /// Difference `p_{i+1} − p_i`; coordinates that are −∞ at both ends give 0.
    pub fn piece_difference(&self, i: usize) -> Option<Vec<T>> {
        let (a, b) = (&self.points[i], &self.points[i + 1]);
        a.entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| match (x, y) {
                (TropScalar::Fin(x), TropScalar::Fin(y)) => Some(y.clone() - x.clone()),
                (TropScalar::Bottom, TropScalar::Bottom) => Some(T::zero()),
                _ => None,
            })
            .collect()
    }

    /// Direction set `K` of piece `i` when the difference is a positive
    /// multiple of `e^K`; `None` otherwise.
    pub fn piece_direction(&self, i: usize) -> Option<DirectionSet> {
        let d = self.piece_difference(i)?;
        let len = d.iter().fold(T::zero(), |m, v| if *v > m { v.clone() } else { m });
        if len <= T::zero() {
            return None;
        }
        let mut members = Vec::with_capacity(d.len());
        for v in &d {
            if v.is_zero() {
                members.push(false);
            } else if *v == len {
                members.push(true);
            } else {
                return None;
            }
        }
        Some(DirectionSet { members })
    }

    /// Direction sets of all pieces, if every piece is monotone of 0/1 type.
    pub fn directions(&self) -> Option<Vec<DirectionSet>> {
        (0..self.num_pieces()).map(|i| self.piece_direction(i)).collect()
    }

    /// Projection onto the given coordinates, merging collinear pieces.
    pub fn project(&self, coords: &[usize]) -> Result<Self> {
        let pts = self
            .points
            .iter()
            .map(|p| TropPoint::new(coords.iter().map(|&i| p.entries[i].clone()).collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(pts)?.merge_collinear())
    }

    /// Removes breakpoints whose adjacent pieces have the same direction.
    ///
    /// Two pieces are considered collinear when their differences are
    /// positive multiples of one another.
    pub fn merge_collinear(self) -> Self {
        let mut out: Vec<TropPoint<T>> = Vec::with_capacity(self.points.len());
        for p in self.points {
            while out.len() >= 2 {
                let a = &out[out.len() - 2];
                let b = &out[out.len() - 1];
                if collinear(a, b, &p) {
                    out.pop();
                } else {
                    break;
                }
            }
            if out.last() != Some(&p) {
                out.push(p);
            }
        }
        PolygonalPath { points: out }
    }
}

fn collinear<T: Coord>(a: &TropPoint<T>, b: &TropPoint<T>, c: &TropPoint<T>) -> bool {
    let diff = |p: &TropPoint<T>, q: &TropPoint<T>| -> Option<Vec<T>> {
        p.entries
            .iter()
            .zip(&q.entries)
            .map(|(x, y)| match (x, y) {
                (TropScalar::Fin(x), TropScalar::Fin(y)) => Some(y.clone() - x.clone()),
                (TropScalar::Bottom, TropScalar::Bottom) => Some(T::zero()),
                _ => None,
            })
            .collect()
    };
    let (Some(u), Some(v)) = (diff(a, b), diff(b, c)) else { return false };
    // v = κ u with κ > 0  ⇔  cross terms vanish and signs agree.
    for i in 0..u.len() {
        let su = sign(&u[i]);
        if su != sign(&v[i]) {
            return false;
        }
        for j in (i + 1)..u.len() {
            if u[i].clone() * v[j].clone() != u[j].clone() * v[i].clone() {
                return false;
            }
        }
    }
    true
}

fn sign<T: Coord>(x: &T) -> Ordering {
    x.partial_cmp(&T::zero()).unwrap_or(Ordering::Equal)
}

/// Coordinate-wise maximum of a finite set of points.
pub fn pointwise_barycenter<T: Coord>(points: &[TropPoint<T>]) -> Result<TropPoint<T>> {
    let (first, rest) = points.split_first().ok_or(Error::Empty("barycenter of an empty set"))?;
    rest.iter().try_fold(first.clone(), |acc, p| acc.oplus(p))
}
