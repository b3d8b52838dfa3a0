//! The "long and winding" family LW(r, t) in slack form.
//!
//! Variables are ordered `x_1..x_{2r}`, rows `w_1..w_{3r−1}`:
//!
//! ```text
//! x_1 + w_1 = t^2
//! x_2 + w_2 = t
//! x_{2j+1} + w_{3j}   = t x_{2j−1}                          (1 ≤ j < r)
//! x_{2j+1} + w_{3j+1} = t x_{2j}
//! x_{2j+2} + w_{3j+2} = t^{1−1/2^j} (x_{2j−1} + x_{2j})
//! ```

mod warm;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::numeric::{DenseMatrix, Real};
use crate::puiseux::{qi, Monomial, MonomialMatrix};
use crate::tropical::{TropPoint, TropScalar, Q};

pub(crate) use warm::warm_start_for;
pub use warm::{tropical_warm_start, uniform_dual_start, WarmStart};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LWSpec {
    pub r: usize,
}

impl LWSpec {
    pub fn new(r: usize) -> Result<Self> {
        if r < 1 {
            return Err(Error::InvalidArgument("r must be at least 1".into()));
        }
        Ok(LWSpec { r })
    }
}

/// `min cᵀx` subject to `Ax + w = b`, `(x, w) ≥ 0`, with monomial data.
#[derive(Clone, Debug, PartialEq)]
pub struct SlackLP {
    pub r: usize,
    pub a: MonomialMatrix,
    pub b: Vec<Option<Monomial>>,
    pub c: Vec<Option<Monomial>>,
}

impl SlackLP {
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn big_n(&self) -> usize {
        self.n() + self.m()
    }

    /// Number of inequalities of the original (slack-free) program:
    /// one per row plus the two sign constraints on `x_{2r−1}, x_{2r}`.
    pub fn inequality_count(&self) -> usize {
        self.m() + 2
    }
}

pub fn build_lw(spec: LWSpec) -> Result<SlackLP> {
    let r = LWSpec::new(spec.r)?.r;
    let (n, m) = (2 * r, 3 * r - 1);
    let mut a = MonomialMatrix::zeros(m, n);
    let mut b = vec![None; m];
    let one = || Some(Monomial::power(Q::zero()));
    let neg = |e: Q| Some(Monomial::new(-Q::one(), e));

    a.set(0, 0, one());
    b[0] = Some(Monomial::power(qi(2)));
    a.set(1, 1, one());
    b[1] = Some(Monomial::power(qi(1)));
    for j in 1..r {
        // 0-based: x_{2j−1} ↦ 2j−2, rows w_{3j} ↦ 3j−1.
        let (xa, xb, xc, xd) = (2 * j - 2, 2 * j - 1, 2 * j, 2 * j + 1);
        let row = 3 * j - 1;
        a.set(row, xc, one());
        a.set(row, xa, neg(qi(1)));
        a.set(row + 1, xc, one());
        a.set(row + 1, xb, neg(qi(1)));
        let e = Q::one() - Q::new(1.into(), num_bigint::BigInt::from(1u8) << j);
        a.set(row + 2, xd, one());
        a.set(row + 2, xa, neg(e.clone()));
        a.set(row + 2, xb, neg(e));
    }
    let mut c = vec![None; n];
    c[0] = one();
    Ok(SlackLP { r, a, b, c })
}

/// Dual data for the feasibility test `s − Aᵀy = c`, `(s, y) ≥ 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualLP {
    pub at: MonomialMatrix,
    pub b: Vec<Option<Monomial>>,
    pub c: Vec<Option<Monomial>>,
}

pub fn dual_lp(lp: &SlackLP) -> DualLP {
    DualLP { at: lp.a.transpose(), b: lp.b.clone(), c: lp.c.clone() }
}

/// `LP(A(t), b(t), c(t))` at a concrete `t`.
#[derive(Clone, Debug)]
pub struct RealLP {
    pub r: usize,
    pub a: DenseMatrix,
    pub b: Vec<Real>,
    pub c: Vec<Real>,
    pub t: Real,
    pub precision_bits: usize,
}

impl RealLP {
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn big_n(&self) -> usize {
        self.n() + self.m()
    }

    /// `t^λ` at working precision.
    pub fn t_pow(&self, lambda: &Q) -> Result<Real> {
        self.t.with_prec(self.precision_bits).pow_rational(lambda)
    }
}

fn eval_vec(v: &[Option<Monomial>], t: &Real, p: usize) -> Result<Vec<Real>> {
    v.iter().map(|e| e.as_ref().map(|m| m.evaluate(t, p)).unwrap_or_else(|| Ok(Real::zero(p)))).collect()
}

pub fn evaluate_lp(lp: &SlackLP, t: &Real, precision_bits: usize) -> Result<RealLP> {
    if *t <= Real::one(t.prec()) {
        return Err(Error::InvalidArgument("t must exceed 1".into()));
    }
    let t = t.with_prec(precision_bits);
    Ok(RealLP {
        r: lp.r,
        a: lp.a.evaluate(&t, precision_bits)?,
        b: eval_vec(&lp.b, &t, precision_bits)?,
        c: eval_vec(&lp.c, &t, precision_bits)?,
        t,
        precision_bits,
    })
}

/// Known optimum: value 0 and the dual solution `(s*, y*) = (1, 0, …, 0)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OptimalData {
    pub value: Q,
    pub s_star: Vec<Q>,
    pub y_star: Vec<Q>,
}

pub fn optimal_data(lp: &SlackLP) -> OptimalData {
    let mut s_star = vec![Q::zero(); lp.n()];
    s_star[0] = Q::one();
    OptimalData { value: Q::zero(), s_star, y_star: vec![Q::zero(); lp.m()] }
}

/// Valuation of one row `x_k + w_i = b_i + Σ_l |a_il| x_l`: both `x_k` and
/// `w_i` are bounded by `max(val b_i, max_l (α_il + x_l))`.
#[derive(Clone, Debug, PartialEq)]
pub struct TropRow {
    pub row: usize,
    pub lhs: usize,
    pub constant: TropScalar<Q>,
    pub terms: Vec<(usize, Q)>,
}

impl TropRow {
    pub fn rhs(&self, x: &TropPoint<Q>) -> TropScalar<Q> {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (l, e)| acc.oplus(&x.get(*l).odot(&TropScalar::Fin(e.clone()))))
    }
}

/// Tropicalization of the primal rows, read off the symbolic data.
///
/// Each row must have a single positive coefficient (its defining variable)
/// and only negative coefficients otherwise, which is the case for LW.
pub fn tropical_rows(lp: &SlackLP) -> Result<Vec<TropRow>> {
    (0..lp.m())
        .map(|i| {
            let mut lhs = None;
            let mut terms = Vec::new();
            for (l, e) in lp.a.row(i).iter().enumerate() {
                let Some(mono) = e else { continue };
                if mono.coef.is_positive() {
                    if lhs.replace(l).is_some() {
                        return Err(Error::InvalidArgument(format!("row {i} has two positive coefficients")));
                    }
                } else {
                    terms.push((l, mono.exp.clone()));
                }
            }
            let lhs = lhs.ok_or_else(|| Error::InvalidArgument(format!("row {i} has no defining variable")))?;
            let constant = match &lp.b[i] {
                Some(mono) if mono.coef.is_positive() => TropScalar::Fin(mono.exp.clone()),
                Some(_) => return Err(Error::InvalidArgument(format!("row {i} has a negative right-hand side"))),
                None => TropScalar::Bottom,
            };
            Ok(TropRow { row: i, lhs, constant, terms })
        })
        .collect()
}

fn mono_json(m: &Option<Monomial>) -> Value {
    match m {
        Some(m) => json!({"coef": m.coef.to_string(), "exp": m.exp.to_string()}),
        None => json!(0),
    }
}

fn mono_text(m: &Option<Monomial>) -> String {
    match m {
        None => "0".into(),
        Some(m) if m.exp.is_zero() => m.coef.to_string(),
        Some(m) => format!("{}*t^{}", m.coef, m.exp),
    }
}

/// JSON export. With `numeric`, `t` and decimal evaluations are added.
pub fn lp_to_json(lp: &SlackLP, numeric: Option<&RealLP>) -> Value {
    let a: Vec<Value> = (0..lp.m()).map(|i| Value::Array(lp.a.row(i).iter().map(mono_json).collect())).collect();
    let mut v = json!({
        "r": lp.r,
        "n": lp.n(),
        "m": lp.m(),
        "A": a,
        "b": lp.b.iter().map(mono_json).collect::<Vec<_>>(),
        "c": lp.c.iter().map(mono_json).collect::<Vec<_>>(),
    });
    if let Some(real) = numeric {
        let digits = decimal_digits_for(real.precision_bits);
        let dec = |x: &Real| Value::String(x.to_decimal(digits));
        v["t"] = Value::String(real.t.to_decimal(digits));
        v["A_numeric"] =
            Value::Array((0..real.m()).map(|i| Value::Array((0..real.n()).map(|j| dec(real.a.get(i, j))).collect())).collect());
        v["b_numeric"] = Value::Array(real.b.iter().map(dec).collect());
        v["c_numeric"] = Value::Array(real.c.iter().map(dec).collect());
    }
    v
}

/// CSV export: one line per row, `row,x_1..x_n,b`.
pub fn lp_to_csv(lp: &SlackLP, numeric: Option<&RealLP>) -> String {
    let mut out = String::from("row");
    for j in 1..=lp.n() {
        out.push_str(&format!(",x_{j}"));
    }
    out.push_str(",b\n");
    for i in 0..lp.m() {
        out.push_str(&format!("w_{}", i + 1));
        match numeric {
            Some(real) => {
                let digits = decimal_digits_for(real.precision_bits);
                for j in 0..lp.n() {
                    out.push_str(&format!(",{}", real.a.get(i, j).to_decimal(digits)));
                }
                out.push_str(&format!(",{}\n", real.b[i].to_decimal(digits)));
            }
            None => {
                for e in lp.a.row(i) {
                    out.push_str(&format!(",{}", mono_text(e)));
                }
                out.push_str(&format!(",{}\n", mono_text(&lp.b[i])));
            }
        }
    }
    out
}

pub(crate) fn decimal_digits_for(bits: usize) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor() as usize
}
