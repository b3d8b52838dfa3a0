//! Binary floating point numbers with a configurable mantissa length.
//!
//! [`Real`] wraps `astro_float::BigFloat` and fixes the rounding mode to
//! round-half-to-even. Every value remembers the precision it was created
//! with; binary operations work at the larger of the two precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign, Word, WORD_BIT_SIZE};
use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Guard bits used internally by transcendental helpers.
const GUARD: usize = 64;

#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    p: usize,
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache")
}

#[cfg(target_pointer_width = "64")]
fn biguint_words(n: &num_bigint::BigUint) -> Vec<Word> {
    n.to_u64_digits()
}

#[cfg(not(target_pointer_width = "64"))]
fn biguint_words(n: &num_bigint::BigUint) -> Vec<Word> {
    n.to_u32_digits()
}

impl Real {
    pub fn zero(p: usize) -> Self {
        Real { v: BigFloat::from_word(0, p), p }
    }

    pub fn one(p: usize) -> Self {
        Real { v: BigFloat::from_word(1, p), p }
    }

    pub fn from_i64(x: i64, p: usize) -> Self {
        Real { v: BigFloat::from_i64(x, p), p }
    }

    pub fn from_f64(x: f64, p: usize) -> Self {
        Real { v: BigFloat::from_f64(x, p), p }
    }

    pub fn from_bigint(n: &BigInt, p: usize) -> Self {
        if n.is_zero() {
            return Real::zero(p);
        }
        let words = biguint_words(n.magnitude());
        let sign = if n.sign() == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let e = (words.len() * WORD_BIT_SIZE) as i32;
        let mut v = BigFloat::from_words(&words, sign, e);
        // from_words keeps every word; round to the requested precision.
        let _ = v.set_precision(p.max(WORD_BIT_SIZE), RM);
        Real { v, p }
    }

    pub fn from_rational(q: &BigRational, p: usize) -> Self {
        let num = Real::from_bigint(q.numer(), p + GUARD);
        let den = Real::from_bigint(q.denom(), p + GUARD);
        Real { v: num.v.div(&den.v, p, RM), p }
    }

    /// Parses a decimal string such as `"1e16"`, `"12.5"` or `"-3"`.
    pub fn parse_decimal(s: &str, p: usize) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        let v = BigFloat::parse(trimmed, Radix::Dec, p, RM, &mut consts());
        if v.is_nan() {
            return Err(Error::Parse(format!("not a decimal number: {s:?}")));
        }
        Ok(Real { v, p })
    }

    pub fn prec(&self) -> usize {
        self.p
    }

    pub fn with_prec(&self, p: usize) -> Self {
        let mut v = self.v.clone();
        let _ = v.set_precision(p, RM);
        Real { v, p }
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive() && !self.v.is_nan()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative() && !self.v.is_nan()
    }

    pub fn is_finite(&self) -> bool {
        !self.v.is_nan() && !self.v.is_inf()
    }

    pub fn abs(&self) -> Self {
        Real { v: self.v.abs(), p: self.p }
    }

    pub fn sqrt(&self) -> Self {
        Real { v: self.v.sqrt(self.p, RM), p: self.p }
    }

    pub fn recip(&self) -> Self {
        Real { v: self.v.reciprocal(self.p, RM), p: self.p }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_pow2(&self, k: i32) -> Self {
        if self.v.is_zero() || !self.is_finite() {
            return self.clone();
        }
        let mut v = self.v.clone();
        let e = v.exponent().expect("finite value has an exponent");
        v.set_exponent(e + k);
        Real { v, p: self.p }
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let q = self.p + GUARD;
        let mag = self.v.powi(n.unsigned_abs() as usize, q, RM);
        let v = if n < 0 { mag.reciprocal(self.p, RM) } else { mag };
        Real { v, p: q }.with_prec(self.p)
    }

    /// `self^q` for a positive base and a rational exponent.
    ///
    /// Dyadic exponents are evaluated by an integer power followed by
    /// repeated square roots; other denominators use `exp(q ln x)` with guard
    /// bits.
    pub fn pow_rational(&self, q: &BigRational) -> Result<Self> {
        if !self.is_positive() {
            return Err(Error::InvalidArgument("pow_rational needs a positive base".into()));
        }
        let p = self.p;
        let num = q.numer().to_i64().ok_or_else(|| Error::ExponentOverflow(format!("exponent {q}")))?;
        let den = q.denom();
        let guarded = self.with_prec(p + GUARD);
        let out = if den.is_one_pow2() {
            let k = den.bits() - 1;
            let mut v = guarded.powi(num);
            for _ in 0..k {
                v = v.sqrt();
            }
            v
        } else {
            let e = Real::from_rational(q, p + GUARD);
            let mut cc = consts();
            Real { v: guarded.v.pow(&e.v, p + GUARD, RM, &mut cc), p: p + GUARD }
        };
        let out = out.with_prec(p);
        if !out.is_finite() || (out.is_zero() && !self.is_zero()) {
            return Err(Error::ExponentOverflow(format!("t^{q} at {p} bits")));
        }
        Ok(out)
    }

    /// `log2 |self|` as a double; `-inf` for zero.
    pub fn log2(&self) -> f64 {
        if self.v.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, _n, _s, e, _) = match self.v.as_raw_parts() {
            Some(parts) => parts,
            None => return f64::NAN,
        };
        let top = top_bits(m);
        e as f64 + top.log2()
    }

    /// `log_base |self|` as a double.
    pub fn log_base(&self, base: &Real) -> f64 {
        self.log2() / base.log2()
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf() {
            return if self.v.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY };
        }
        let (m, _n, s, e, _) = self.v.as_raw_parts().expect("finite value");
        let mag = top_bits(m) * 2f64.powi(e.clamp(-1100, 1100));
        if s == Sign::Neg {
            -mag
        } else {
            mag
        }
    }

    /// Decimal representation with `digits` significant digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.v.is_zero() {
            return "0".into();
        }
        let mut cc = consts();
        // Round to roughly `digits` decimal digits worth of bits first.
        let bits = ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 4;
        let mut v = self.v.clone();
        let _ = v.set_precision(bits.max(WORD_BIT_SIZE), RM);
        match v.format(Radix::Dec, RM, &mut cc) {
            Ok(s) => trim_decimal(&s, digits),
            Err(_) => format!("{:e}", self.to_f64()),
        }
    }

    pub fn max(&self, other: &Real) -> Real {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Real) -> Real {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    fn binop_prec(&self, other: &Real) -> usize {
        self.p.max(other.p)
    }
}

fn top_bits(m: &[Word]) -> f64 {
    // Mantissa is normalised: value = 0.m * 2^e with the top bit of the last
    // word set. Two words give more than the 53 bits a double can hold.
    let scale = 2f64.powi(WORD_BIT_SIZE as i32);
    let mut acc = 0.0;
    for w in m.iter().rev().take(2).rev() {
        acc = acc / scale + (*w as f64) / scale;
    }
    acc
}

fn trim_decimal(s: &str, digits: usize) -> String {
    // astro-float prints "d.ddddde+x"; keep `digits` significant digits.
    let (mant, exp) = match s.find('e') {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => (s, "0"),
    };
    let (sign, mant) = if let Some(rest) = mant.strip_prefix('-') { ("-", rest) } else { ("", mant) };
    let ds: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = mant.find('.').unwrap_or(mant.len());
    let exp: i64 = exp.trim_start_matches('+').parse().unwrap_or(0);
    let lead = ds.trim_start_matches('0');
    let skipped = ds.len() - lead.len();
    if lead.is_empty() {
        return "0".into();
    }
    let exp10 = exp + point as i64 - 1 - skipped as i64;
    let mut kept: String = lead.chars().take(digits.max(1)).collect();
    while kept.len() > 1 && kept.ends_with('0') {
        kept.pop();
    }
    let (first, rest) = kept.split_at(1);
    if rest.is_empty() {
        format!("{sign}{first}e{exp10}")
    } else {
        format!("{sign}{first}.{rest}e{exp10}")
    }
}

trait Pow2Check {
    fn is_one_pow2(&self) -> bool;
}

impl Pow2Check for BigInt {
    fn is_one_pow2(&self) -> bool {
        self.is_positive() && (self & (self - BigInt::from(1))).is_zero()
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Real({})", self.to_decimal(20))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(f.precision().unwrap_or(20)))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let p = self.binop_prec(rhs);
                Real { v: self.v.$method(&rhs.v, p, RM), p }
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);
real_binop!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { v: BigFloat::neg(&self.v), p: self.p }
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { v: BigFloat::neg(&self.v), p: self.p }
    }
}

/// Smallest power of two `>= n`, as an exponent.
pub fn ceil_log2(n: &BigInt) -> u64 {
    let bits = n.bits();
    if (n - BigInt::from(1)).bits() < bits {
        bits - 1
    } else {
        bits
    }
}

/// Decimal digit count of a positive integer.
pub fn decimal_digits(n: &BigInt) -> usize {
    n.magnitude().to_str_radix(10).len()
}

/// Integer ceiling of a non-negative rational.
pub fn ceil_rational(q: &BigRational) -> BigInt {
    let (d, r) = q.numer().div_rem(q.denom());
    if r.is_zero() || q.is_negative() {
        d
    } else {
        d + 1
    }
}
