//! Finite generalized Puiseux series `Σ q_i t^{α_i}` with rational
//! coefficients and exponents.
//!
//! A series is ordered by its eventual sign as `t → ∞`, and its valuation is
//! the leading exponent.

mod matrix;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::Real;
use crate::tropical::{TropScalar, Q};

pub use matrix::{det_log_bounds, eta, eta0, eta0_lw, DetBounds, EtaBound, MonomialMatrix, DEFAULT_ENUM_LIMIT};

pub fn q(n: i64, d: i64) -> Q {
    BigRational::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Q {
    BigRational::from_integer(n.into())
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    Q::from_str(s).map_err(|_| Error::Parse(format!("not an exact rational: {s:?}")))
}

/// Signed monomial `coef · t^exp` with `coef ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub coef: Q,
    pub exp: Q,
}

impl Monomial {
    pub fn new(coef: Q, exp: Q) -> Self {
        assert!(!coef.is_zero(), "monomial coefficient must be nonzero");
        Monomial { coef, exp }
    }

    /// `t^exp`.
    pub fn power(exp: Q) -> Self {
        Monomial { coef: Q::one(), exp }
    }

    pub fn series(&self) -> PuiseuxSeries {
        PuiseuxSeries { terms: vec![(self.coef.clone(), self.exp.clone())] }
    }

    pub fn evaluate(&self, t: &Real, p: usize) -> Result<Real> {
        let c = Real::from_rational(&self.coef, p);
        Ok(c * t.with_prec(p).pow_rational(&self.exp)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PuiseuxSeries {
    // Strictly decreasing exponents, nonzero coefficients.
    terms: Vec<(Q, Q)>,
}

impl PuiseuxSeries {
    pub fn zero() -> Self {
        PuiseuxSeries { terms: Vec::new() }
    }

    pub fn constant(c: Q) -> Self {
        Self::from_terms(vec![(c, Q::zero())])
    }

    pub fn monomial(coef: Q, exp: Q) -> Self {
        Self::from_terms(vec![(coef, exp)])
    }

    /// Builds a series from arbitrary `(coef, exp)` pairs, merging equal
    /// exponents and dropping zero coefficients.
    pub fn from_terms(mut raw: Vec<(Q, Q)>) -> Self {
        raw.sort_by(|a, b| b.1.cmp(&a.1));
        let mut terms: Vec<(Q, Q)> = Vec::with_capacity(raw.len());
        for (c, e) in raw {
            match terms.last_mut() {
                Some(last) if last.1 == e => last.0 = &last.0 + &c,
                _ => terms.push((c, e)),
            }
        }
        terms.retain(|(c, _)| !c.is_zero());
        PuiseuxSeries { terms }
    }

    pub fn terms(&self) -> &[(Q, Q)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&(Q, Q)> {
        self.terms.first()
    }

    pub fn signum(&self) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some((c, _)) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    /// Evaluates `Σ q_i t^{α_i}` at `precision_bits`.
    pub fn evaluate(&self, t: &Real, precision_bits: usize) -> Result<Real> {
        if !t.is_positive() {
            return Err(Error::InvalidArgument("evaluation point must be positive".into()));
        }
        if precision_bits < 64 {
            return Err(Error::InvalidArgument("precision_bits must be at least 64".into()));
        }
        let guard = precision_bits + 32;
        let t = t.with_prec(guard);
        let mut acc = Real::zero(guard);
        for (c, e) in &self.terms {
            let term = Real::from_rational(c, guard) * t.pow_rational(e)?;
            acc = acc + term;
        }
        Ok(acc.with_prec(precision_bits))
    }
}

/// Leading exponent, or −∞ for the zero series.
pub fn val(f: &PuiseuxSeries) -> TropScalar<Q> {
    match f.leading() {
        Some((_, e)) => TropScalar::Fin(e.clone()),
        None => TropScalar::Bottom,
    }
}

pub fn series_add(f: &PuiseuxSeries, g: &PuiseuxSeries) -> PuiseuxSeries {
    f + g
}

pub fn series_mul(f: &PuiseuxSeries, g: &PuiseuxSeries) -> PuiseuxSeries {
    f * g
}

/// Compares by the sign of `f − g`, i.e. for all sufficiently large `t`.
pub fn series_cmp(f: &PuiseuxSeries, g: &PuiseuxSeries) -> Ordering {
    (f - g).signum()
}

impl PartialOrd for PuiseuxSeries {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(series_cmp(self, other))
    }
}

impl Add for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn add(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        PuiseuxSeries::from_terms(self.terms.iter().chain(&rhs.terms).cloned().collect())
    }
}

impl Neg for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn neg(self) -> PuiseuxSeries {
        PuiseuxSeries { terms: self.terms.iter().map(|(c, e)| (-c, e.clone())).collect() }
    }
}

impl Sub for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn sub(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        self + &(-rhs)
    }
}

impl Mul for &PuiseuxSeries {
    type Output = PuiseuxSeries;
    fn mul(self, rhs: &PuiseuxSeries) -> PuiseuxSeries {
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                raw.push((a * b, x + y));
            }
        }
        PuiseuxSeries::from_terms(raw)
    }
}

impl fmt::Display for PuiseuxSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, e)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mag.is_one(), e.is_zero()) {
                (_, true) => write!(f, "{mag}")?,
                (true, false) => write!(f, "t^{e}")?,
                (false, false) => write!(f, "{mag}*t^{e}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coef: String,
    exp: String,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for PuiseuxSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeriesRepr { terms: self.terms.iter().map(|(c, e)| TermRepr { coef: c.to_string(), exp: e.to_string() }).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PuiseuxSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SeriesRepr::deserialize(d)?;
        let terms = repr
            .terms
            .into_iter()
            .map(|t| Ok((parse_q(&t.coef)?, parse_q(&t.exp)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(PuiseuxSeries::from_terms(terms))
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TermRepr { coef: self.coef.to_string(), exp: self.exp.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let t = TermRepr::deserialize(d)?;
        let coef = parse_q(&t.coef).map_err(serde::de::Error::custom)?;
        if coef.is_zero() {
            return Err(serde::de::Error::custom("monomial coefficient must be nonzero"));
        }
        Ok(Monomial { coef, exp: parse_q(&t.exp).map_err(serde::de::Error::custom)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t_pow(c: i64, e: Q) -> PuiseuxSeries {
        PuiseuxSeries::monomial(qi(c), e)
    }

    #[test]
    fn valuation() {
        let f = &t_pow(2, qi(3)) - &t_pow(1, qi(1));
        assert_eq!(val(&f), TropScalar::Fin(qi(3)));
        assert_eq!(val(&PuiseuxSeries::zero()), TropScalar::Bottom);
        let a = &t_pow(1, qi(1)) - &PuiseuxSeries::constant(qi(1));
        let b = &t_pow(1, qi(1)) + &PuiseuxSeries::constant(qi(1));
        assert_eq!(val(&(&a * &b)), TropScalar::Fin(qi(2)));
    }

    #[test]
    fn arithmetic_and_order() {
        let a = &t_pow(1, qi(1)) - &PuiseuxSeries::constant(qi(1));
        assert_eq!(&a + &PuiseuxSeries::constant(qi(1)), t_pow(1, qi(1)));
        let h = t_pow(1, q(1, 2));
        assert_eq!(&h * &h, t_pow(1, qi(1)));
        assert_eq!(series_cmp(&t_pow(1, qi(1)), &PuiseuxSeries::constant(qi(1000))), Ordering::Greater);
        assert_eq!(series_cmp(&h, &h), Ordering::Equal);
    }

    #[test]
    fn evaluation() {
        let four = Real::from_i64(4, 128);
        assert_eq!(t_pow(1, q(1, 2)).evaluate(&four, 128).unwrap().to_f64(), 2.0);
        let nine = Real::from_i64(9, 128);
        assert_eq!(t_pow(1, &qi(1) - &q(1, 2)).evaluate(&nine, 128).unwrap().to_f64(), 3.0);
        let ten = Real::from_i64(10, 128);
        let f = &t_pow(1, qi(2)) - &t_pow(1, qi(1));
        assert_eq!(f.evaluate(&ten, 128).unwrap().to_f64(), 90.0);
        assert!(f.evaluate(&Real::from_i64(-1, 128), 128).is_err());
    }

    #[test]
    fn json_uses_exact_strings() {
        let f = PuiseuxSeries::from_terms(vec![(q(-3, 2), q(1, 4)), (qi(2), qi(3))]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"terms":[{"coef":"2","exp":"3"},{"coef":"-3/2","exp":"1/4"}]}"#);
        let back: PuiseuxSeries = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<PuiseuxSeries>(r#"{"terms":[{"coef":"x","exp":"1"}]}"#).is_err());
    }

    #[test]
    fn display() {
        let f = PuiseuxSeries::from_terms(vec![(qi(-1), qi(0)), (qi(2), q(3, 2)), (qi(1), qi(1))]);
        assert_eq!(f.to_string(), "2*t^3/2 + t^1 - 1");
    }
}
