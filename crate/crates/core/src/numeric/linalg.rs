//! Dense linear algebra over [`Real`].

use crate::error::{Error, Result};
use crate::numeric::Real;

/// Row-major dense matrix.
#[derive(Clone, Debug)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Real>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize, p: usize) -> Self {
        DenseMatrix { rows, cols, data: vec![Real::zero(p); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Real {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Real) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, x: &[Real]) -> Vec<Real> {
        assert_eq!(x.len(), self.cols);
        let p = x.first().map(Real::prec).unwrap_or(64);
        (0..self.rows)
            .map(|i| {
                let mut acc = Real::zero(p);
                for (j, xj) in x.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc = acc + a * xj;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn transpose_mul_vec(&self, y: &[Real]) -> Vec<Real> {
        assert_eq!(y.len(), self.rows);
        let p = y.first().map(Real::prec).unwrap_or(64);
        (0..self.cols)
            .map(|j| {
                let mut acc = Real::zero(p);
                for (i, yi) in y.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        acc = acc + a * yi;
                    }
                }
                acc
            })
            .collect()
    }
}

pub fn dot(a: &[Real], b: &[Real]) -> Real {
    let p = a.first().map(Real::prec).unwrap_or(64);
    a.iter().zip(b).fold(Real::zero(p), |acc, (x, y)| acc + x * y)
}

pub fn inf_norm(v: &[Real]) -> Real {
    let p = v.first().map(Real::prec).unwrap_or(64);
    v.iter().fold(Real::zero(p), |m, x| m.max(&x.abs()))
}

fn exponent_of(x: &Real) -> i32 {
    if x.is_zero() {
        0
    } else {
        x.log2().floor() as i32
    }
}

/// Solves the square system `a x = b` by Gaussian elimination with partial
/// pivoting, after equilibrating rows and columns by exact powers of two.
///
/// One step of iterative refinement is applied. The solve fails with
/// [`Error::Singular`] when a pivot vanishes or the normwise backward error
/// exceeds `2^(16 - p)`.
pub fn solve(a: &DenseMatrix, b: &[Real], p: usize) -> Result<Vec<Real>> {
    let n = a.rows;
    if a.cols != n {
        return Err(Error::DimensionMismatch { expected: n, got: a.cols });
    }
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: b.len() });
    }

    // Column scaling first, then row scaling of the column-scaled matrix.
    let col_shift: Vec<i32> = (0..n)
        .map(|j| {
            let m = (0..n).map(|i| a.get(i, j)).filter(|x| !x.is_zero()).map(exponent_of).max();
            -m.unwrap_or(0)
        })
        .collect();
    let row_shift: Vec<i32> = (0..n)
        .map(|i| {
            let m = (0..n)
                .map(|j| (a.get(i, j), col_shift[j]))
                .filter(|(x, _)| !x.is_zero())
                .map(|(x, s)| exponent_of(x) + s)
                .max();
            -m.unwrap_or(0)
        })
        .collect();
    let mut scaled = DenseMatrix::zeros(n, n, p);
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j);
            if !v.is_zero() {
                scaled.set(i, j, v.with_prec(p).mul_pow2(row_shift[i] + col_shift[j]));
            }
        }
    }
    let lu = Lu::factor(scaled, p)?;

    let scaled_rhs = |r: &[Real]| -> Vec<Real> { r.iter().zip(&row_shift).map(|(v, s)| v.with_prec(p).mul_pow2(*s)).collect() };
    let unscale = |z: Vec<Real>| -> Vec<Real> { z.into_iter().zip(&col_shift).map(|(v, s)| v.mul_pow2(*s)).collect() };

    let mut x = unscale(lu.solve(&scaled_rhs(b)));
    let residual = |x: &[Real]| -> Vec<Real> {
        let ax = a.mul_vec(x);
        b.iter().zip(ax).map(|(bi, ai)| bi.with_prec(p) - ai).collect()
    };
    let r = residual(&x);
    let dx = unscale(lu.solve(&scaled_rhs(&r)));
    for (xi, di) in x.iter_mut().zip(dx) {
        *xi = &*xi + &di;
    }

    let r = residual(&x);
    let a_norm = (0..n)
        .map(|i| (0..n).fold(Real::zero(p), |acc, j| acc + a.get(i, j).abs()))
        .fold(Real::zero(p), |m, v| m.max(&v));
    let denom = &a_norm * &inf_norm(&x) + inf_norm(b);
    let backward = if denom.is_zero() { 0.0 } else { (inf_norm(&r) / denom).to_f64() };
    let limit = 2f64.powi(16 - p as i32);
    if !(backward <= limit) {
        return Err(Error::Singular { precision: p, residual: backward });
    }
    Ok(x)
}

struct Lu {
    n: usize,
    m: DenseMatrix,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut m: DenseMatrix, p: usize) -> Result<Self> {
        let n = m.rows;
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (piv, best) = (k..n)
                .map(|i| (i, m.get(i, k).abs()))
                .fold((k, Real::zero(p)), |(bi, bv), (i, v)| if v > bv { (i, v) } else { (bi, bv) });
            if best.is_zero() {
                return Err(Error::Singular { precision: p, residual: f64::INFINITY });
            }
            if piv != k {
                for j in 0..n {
                    m.data.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
            }
            let pivot = m.get(k, k).clone();
            for i in (k + 1)..n {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let factor = m.get(i, k) / &pivot;
                for j in (k + 1)..n {
                    let mkj = m.get(k, j);
                    if mkj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * mkj);
                    m.set(i, j, v);
                }
                m.set(i, k, factor);
            }
        }
        Ok(Lu { n, m, perm })
    }

    fn solve(&self, b: &[Real]) -> Vec<Real> {
        let n = self.n;
        let mut y: Vec<Real> = self.perm.iter().map(|&i| b[i].clone()).collect();
        for i in 0..n {
            for j in 0..i {
                let l = self.m.get(i, j);
                if !l.is_zero() {
                    y[i] = &y[i] - &(l * &y[j]);
                }
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let u = self.m.get(i, j);
                if !u.is_zero() {
                    y[i] = &y[i] - &(u * &y[j]);
                }
            }
            y[i] = &y[i] / self.m.get(i, i);
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[f64]], p: usize) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(rows.len(), rows[0].len(), p);
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, Real::from_f64(*v, p));
            }
        }
        m
    }

    #[test]
    fn solves_small_system() {
        let p = 128;
        let a = mat(&[&[2.0, 1.0], &[1.0, 3.0]], p);
        let b = vec![Real::from_f64(3.0, p), Real::from_f64(5.0, p)];
        let x = solve(&a, &b, p).unwrap();
        assert!((x[0].to_f64() - 0.8).abs() < 1e-30);
        assert!((x[1].to_f64() - 1.4).abs() < 1e-30);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let p = 128;
        let a = mat(&[&[0.0, 1.0], &[1.0, 0.0]], p);
        let b = vec![Real::from_f64(7.0, p), Real::from_f64(-2.0, p)];
        let x = solve(&a, &b, p).unwrap();
        assert_eq!(x[0].to_f64(), -2.0);
        assert_eq!(x[1].to_f64(), 7.0);
    }

    #[test]
    fn wide_dynamic_range() {
        let p = 512;
        let a = mat(&[&[1e60, 1.0], &[1.0, 3e-60]], p);
        let b = vec![Real::from_f64(1.0, p), Real::from_f64(1.0, p)];
        let x = solve(&a, &b, p).unwrap();
        let r = a.mul_vec(&x);
        for (ri, bi) in r.iter().zip(&b) {
            assert!(((ri - bi).abs().to_f64()) < 1e-80);
        }
    }

    #[test]
    fn singular_matrix_is_reported() {
        let p = 128;
        let a = mat(&[&[1.0, 2.0], &[2.0, 4.0]], p);
        let b = vec![Real::from_f64(1.0, p), Real::from_f64(1.0, p)];
        assert!(matches!(solve(&a, &b, p), Err(Error::Singular { .. })));
    }
}
