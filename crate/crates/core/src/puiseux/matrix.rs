use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Monomial, PuiseuxSeries};
use crate::error::{Error, Result};
use crate::numeric::{DenseMatrix, Real};
use crate::tropical::{TropScalar, Q};

/// Largest order for which permutation expansions are attempted.
pub const DEFAULT_ENUM_LIMIT: usize = 12;

/// Cap on the number of square submatrices `eta0` is willing to visit.
const MAX_SUBMATRICES: u128 = 2_000_000;

/// Matrix whose entries are zero or a single signed monomial.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonomialMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Option<Monomial>>,
}

impl MonomialMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MonomialMatrix { rows, cols, entries: vec![None; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Option<Monomial>>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(Vec::len).ok_or(Error::Empty("monomial matrix"))?;
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch { expected: c, got: row.len() });
            }
            for (j, e) in row.into_iter().enumerate() {
                m.entries[i * c + j] = e;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&Monomial> {
        self.entries[i * self.cols + j].as_ref()
    }

    pub fn set(&mut self, i: usize, j: usize, m: Option<Monomial>) {
        self.entries[i * self.cols + j] = m;
    }

    pub fn row(&self, i: usize) -> &[Option<Monomial>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// True when every nonzero coefficient is ±1.
    pub fn is_unit(&self) -> bool {
        self.entries.iter().flatten().all(|m| m.coef.abs().is_one())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut s = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                s.set(a, b, self.get(i, j).cloned());
            }
        }
        s
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).cloned());
            }
        }
        t
    }

    /// Exponents of all nonzero entries.
    pub fn exponents(&self) -> impl Iterator<Item = &Q> {
        self.entries.iter().flatten().map(|m| &m.exp)
    }

    pub fn evaluate(&self, t: &Real, p: usize) -> Result<DenseMatrix> {
        let mut out = DenseMatrix::zeros(self.rows, self.cols, p);
        let mut cache: HashMap<Q, Real> = HashMap::new();
        let t = t.with_prec(p + 32);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if let Some(m) = self.get(i, j) {
                    let pow = match cache.get(&m.exp) {
                        Some(v) => v.clone(),
                        None => {
                            let v = t.pow_rational(&m.exp)?;
                            cache.insert(m.exp.clone(), v.clone());
                            v
                        }
                    };
                    out.set(i, j, (Real::from_rational(&m.coef, p + 32) * pow).with_prec(p));
                }
            }
        }
        Ok(out)
    }

    /// Exact determinant as a Puiseux series.
    pub fn determinant(&self) -> Result<PuiseuxSeries> {
        let exp = expand(self, DEFAULT_ENUM_LIMIT)?;
        Ok(PuiseuxSeries::from_terms(exp.into_iter().map(|(e, (c, _))| (c, e)).collect()))
    }
}

/// For every permutation sum `Σ α_{iσ(i)}` over permutations hitting only
/// nonzero entries: the signed coefficient total and the total of absolute
/// coefficient products.
fn expand(m: &MonomialMatrix, limit: usize) -> Result<BTreeMap<Q, (Q, Q)>> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch { expected: m.rows, got: m.cols });
    }
    let d = m.rows;
    if d > limit || d > 30 {
        return Err(Error::DimensionOverLimit { order: d, limit });
    }
    // Dynamic programming over the set of used columns; row i is the
    // popcount of the mask.
    let mut layer: HashMap<u32, BTreeMap<Q, (Q, Q)>> = HashMap::new();
    layer.insert(0, BTreeMap::from([(Q::zero(), (Q::one(), Q::one()))]));
    for i in 0..d {
        let mut next: HashMap<u32, BTreeMap<Q, (Q, Q)>> = HashMap::new();
        for (mask, sums) in &layer {
            for j in 0..d {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let Some(mono) = m.get(i, j) else { continue };
                let inversions = (mask >> (j + 1)).count_ones();
                let sign = if inversions % 2 == 1 { -Q::one() } else { Q::one() };
                let target = next.entry(mask | (1 << j)).or_default();
                for (e, (c, a)) in sums {
                    let slot = target.entry(e + &mono.exp).or_insert_with(|| (Q::zero(), Q::zero()));
                    slot.0 = &slot.0 + &(&sign * c * &mono.coef);
                    slot.1 = &slot.1 + &(a * mono.coef.abs());
                }
            }
        }
        layer = next;
    }
    Ok(layer.remove(&((1u64 << d) as u32).wrapping_sub(1)).unwrap_or_default())
}

/// Gap bound `η(M)`; `+∞` is reported as `EtaBound::Unconstrained`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EtaBound {
    Finite(Q),
    Unconstrained,
}

impl EtaBound {
    fn min(self, other: EtaBound) -> EtaBound {
        match (self, other) {
            (EtaBound::Finite(a), EtaBound::Finite(b)) => EtaBound::Finite(a.min(b)),
            (EtaBound::Finite(a), _) | (_, EtaBound::Finite(a)) => EtaBound::Finite(a),
            _ => EtaBound::Unconstrained,
        }
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            EtaBound::Finite(q) => Some(q),
            EtaBound::Unconstrained => None,
        }
    }
}

/// Smallest positive difference between two permutation sums of `m`.
pub fn eta(m: &MonomialMatrix, limit: usize) -> Result<EtaBound> {
    let sums: Vec<Q> = expand(m, limit)?.into_keys().collect();
    Ok(sums
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .map(EtaBound::Finite)
        .unwrap_or(EtaBound::Unconstrained))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetBounds {
    /// Lower end of the bracket for `log_t |det M(t)|`.
    pub lower: f64,
    pub upper: f64,
    pub val_det: TropScalar<Q>,
    /// Whether `t` is large enough for the lower end to be a proven bound.
    pub lower_guaranteed: bool,
}

impl DetBounds {
    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

/// Bracket for `log_t |det M(t)|` around `val(det M)`.
///
/// For coefficients `±1` the bracket is `val ± log_t d!`, and the lower end is
/// guaranteed once `t ≥ (d!)^{1/η}`. For other coefficients the same argument
/// is run with the actual coefficients of `det M`: the upper end is
/// `val + log_t Σ|c_k|` and the lower end `val + log_t(|c_1| − t^{−η} Σ_{k≥2}|c_k|)`,
/// guaranteed whenever that argument is positive.
pub fn det_log_bounds(m: &MonomialMatrix, t: &Real) -> Result<DetBounds> {
    let one = Real::one(t.prec());
    if *t <= one {
        return Err(Error::InvalidArgument("det_log_bounds needs t > 1".into()));
    }
    let exp = expand(m, DEFAULT_ENUM_LIMIT)?;
    let d = m.rows;
    let log2_t = t.log2();
    let log_t = |x: f64| x.log2() / log2_t;
    let det: Vec<(Q, Q)> = exp.iter().rev().filter(|(_, (c, _))| !c.is_zero()).map(|(e, (c, _))| (e.clone(), c.abs())).collect();
    let Some((v, c1)) = det.first().cloned() else {
        return Ok(DetBounds { lower: f64::NEG_INFINITY, upper: f64::NEG_INFINITY, val_det: TropScalar::Bottom, lower_guaranteed: true });
    };
    let vf = q_to_f64(&v);
    let eta = eta(m, DEFAULT_ENUM_LIMIT)?;
    if m.is_unit() {
        let log2_fact = log2_factorial(d);
        let w = log2_fact / log2_t;
        let guaranteed = match eta.finite() {
            None => true,
            Some(e) => q_to_f64(e) * log2_t >= log2_fact,
        };
        return Ok(DetBounds { lower: vf - w, upper: vf + w, val_det: TropScalar::Fin(v), lower_guaranteed: guaranteed });
    }
    let rest: f64 = det.iter().skip(1).map(|(_, c)| q_to_f64(c)).sum();
    let c1 = q_to_f64(&c1);
    let decay = match eta.finite() {
        Some(e) => (-q_to_f64(e) * log2_t).exp2(),
        None => 0.0,
    };
    let low_arg = c1 - rest * decay;
    let (lower, guaranteed) = if low_arg > 0.0 { (vf + log_t(low_arg), true) } else { (f64::NEG_INFINITY, false) };
    Ok(DetBounds { lower, upper: vf + log_t(c1 + rest), val_det: TropScalar::Fin(v), lower_guaranteed: guaranteed })
}

/// `η₀`: minimum of `η(M)` over the order-`n` square submatrices of
/// `[[A b 0], [eᵀ 0 1]]`, where `A` is `m × n`.
pub fn eta0(a: &MonomialMatrix, b: &[Option<Monomial>], limit: usize) -> Result<EtaBound> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch { expected: a.rows(), got: b.len() });
    }
    let (m, n) = (a.rows(), a.cols());
    if n > limit {
        return Err(Error::DimensionOverLimit { order: n, limit });
    }
    let count = binom(m + 1, n) * binom(n + 2, n);
    if count > MAX_SUBMATRICES {
        return Err(Error::DimensionOverLimit { order: n, limit });
    }
    let mut bordered = MonomialMatrix::zeros(m + 1, n + 2);
    for i in 0..m {
        for j in 0..n {
            bordered.set(i, j, a.get(i, j).cloned());
        }
        bordered.set(i, n, b[i].clone());
    }
    for j in 0..n {
        bordered.set(m, j, Some(Monomial::power(Q::zero())));
    }
    bordered.set(m, n + 1, Some(Monomial::power(Q::zero())));

    let mut best = EtaBound::Unconstrained;
    for rows in combinations(m + 1, n) {
        for cols in combinations(n + 2, n) {
            best = best.min(eta(&bordered.submatrix(&rows, &cols), limit)?);
        }
    }
    Ok(best)
}

/// Certified `η₀` bound for the LW family: every exponent lies in
/// `2^{−(r−1)} ℤ`, hence so does every difference of permutation sums.
pub fn eta0_lw(r: usize) -> Q {
    Q::new(1.into(), num_bigint::BigInt::from(1u8) << (r.max(1) - 1))
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub(crate) fn log2_factorial(d: usize) -> f64 {
    (2..=d).map(|k| (k as f64).log2()).sum()
}

pub(crate) fn q_to_f64(q: &Q) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::{q, qi};

    fn mono(exp: Q) -> Option<Monomial> {
        Some(Monomial::power(exp))
    }

    #[test]
    fn eta_examples() {
        let m = MonomialMatrix::from_rows(vec![vec![mono(qi(1)), mono(qi(0))], vec![mono(qi(0)), mono(qi(1))]]).unwrap();
        assert_eq!(eta(&m, 12).unwrap(), EtaBound::Finite(qi(2)));
        let diag = MonomialMatrix::from_rows(vec![vec![mono(qi(1)), None], vec![None, mono(qi(1))]]).unwrap();
        assert_eq!(eta(&diag, 12).unwrap(), EtaBound::Unconstrained);
        let m = MonomialMatrix::from_rows(vec![vec![mono(q(1, 2)), mono(qi(0))], vec![mono(qi(0)), mono(q(1, 4))]]).unwrap();
        assert_eq!(eta(&m, 12).unwrap(), EtaBound::Finite(q(3, 4)));
        assert!(matches!(eta(&MonomialMatrix::zeros(13, 13), 12), Err(Error::DimensionOverLimit { .. })));
    }

    #[test]
    fn determinant_expansion_signs() {
        // [[t, 1], [1, t]] → t² − 1
        let m = MonomialMatrix::from_rows(vec![vec![mono(qi(1)), mono(qi(0))], vec![mono(qi(0)), mono(qi(1))]]).unwrap();
        let det = m.determinant().unwrap();
        assert_eq!(det, PuiseuxSeries::from_terms(vec![(qi(1), qi(2)), (qi(-1), qi(0))]));
        // Permutation matrix of a 3-cycle has determinant +1.
        let c = MonomialMatrix::from_rows(vec![
            vec![None, mono(qi(0)), None],
            vec![None, None, mono(qi(0))],
            vec![mono(qi(0)), None, None],
        ])
        .unwrap();
        assert_eq!(c.determinant().unwrap(), PuiseuxSeries::constant(qi(1)));
    }

    #[test]
    fn det_bracket_examples() {
        let m = MonomialMatrix::from_rows(vec![vec![mono(qi(1)), mono(qi(0))], vec![mono(qi(0)), mono(qi(1))]]).unwrap();
        let t = Real::from_i64(10, 128);
        let b = det_log_bounds(&m, &t).unwrap();
        assert_eq!(b.val_det, TropScalar::Fin(qi(2)));
        assert!(b.lower_guaranteed);
        assert!(b.contains(99f64.log10()));

        let equal_rows = MonomialMatrix::from_rows(vec![vec![mono(qi(1)), mono(qi(0))], vec![mono(qi(1)), mono(qi(0))]]).unwrap();
        let b = det_log_bounds(&equal_rows, &t).unwrap();
        assert_eq!(b.val_det, TropScalar::Bottom);

        let diag = MonomialMatrix::from_rows(vec![vec![mono(qi(1)), None], vec![None, mono(qi(1))]]).unwrap();
        let b = det_log_bounds(&diag, &Real::from_i64(3, 128)).unwrap();
        assert!(b.contains(2.0) && b.lower_guaranteed);
        assert!((b.upper - b.lower - 2.0 * 2f64.log(3.0)).abs() < 1e-12);
    }

    #[test]
    fn non_unit_bracket_uses_actual_coefficients() {
        // [[3t, 1], [1, t]] → 3t² − 1
        let m = MonomialMatrix::from_rows(vec![
            vec![Some(Monomial::new(qi(3), qi(1))), mono(qi(0))],
            vec![mono(qi(0)), mono(qi(1))],
        ])
        .unwrap();
        let t = Real::from_i64(5, 128);
        let b = det_log_bounds(&m, &t).unwrap();
        let exact = (3.0 * 25.0 - 1.0f64).ln() / 5f64.ln();
        assert!(b.lower_guaranteed && b.contains(exact));
    }

    #[test]
    fn eta0_small_cases() {
        // A = [[t]], b = [t²]: the order-1 submatrices are single entries,
        // each with exactly one permutation, so no gap constraint arises.
        let a = MonomialMatrix::from_rows(vec![vec![mono(qi(1))]]).unwrap();
        assert_eq!(eta0(&a, &[mono(qi(2))], 12).unwrap(), EtaBound::Unconstrained);
        // A 2×2 example with a genuine gap.
        let a = MonomialMatrix::from_rows(vec![vec![mono(qi(1)), mono(qi(0))], vec![mono(qi(0)), mono(q(1, 2))]]).unwrap();
        let e = eta0(&a, &[mono(qi(2)), mono(qi(1))], 12).unwrap();
        assert_eq!(e, EtaBound::Finite(q(1, 2)));
        assert_eq!(eta0_lw(3), q(1, 4));
    }
}
