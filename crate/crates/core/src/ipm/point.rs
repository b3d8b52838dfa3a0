use crate::error::{Error, Result};
use crate::instances::RealLP;
use crate::numeric::{dot, inf_norm, Real};

/// Strictly positive primal-dual point `z = (x, w, s, y)`.
#[derive(Clone, Debug)]
pub struct PDPoint {
    pub x: Vec<Real>,
    pub w: Vec<Real>,
    pub s: Vec<Real>,
    pub y: Vec<Real>,
}

impl PDPoint {
    /// Checks dimensions and strict positivity.
    pub fn new(x: Vec<Real>, w: Vec<Real>, s: Vec<Real>, y: Vec<Real>) -> Result<Self> {
        if s.len() != x.len() {
            return Err(Error::DimensionMismatch { expected: x.len(), got: s.len() });
        }
        if y.len() != w.len() {
            return Err(Error::DimensionMismatch { expected: w.len(), got: y.len() });
        }
        let z = PDPoint { x, w, s, y };
        if let Some(i) = z.coords().position(|v| !v.is_positive()) {
            return Err(Error::NotStrictlyFeasible(format!("coordinate {i} is not positive")));
        }
        Ok(z)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn m(&self) -> usize {
        self.w.len()
    }

    /// `N = n + m`.
    pub fn dim(&self) -> usize {
        self.n() + self.m()
    }

    pub fn prec(&self) -> usize {
        self.x[0].prec()
    }

    /// All `2N` coordinates in the order `x, w, s, y`.
    pub fn coords(&self) -> impl Iterator<Item = &Real> {
        self.x.iter().chain(&self.w).chain(&self.s).chain(&self.y)
    }

    /// Complementarity products `(x∘s ; w∘y)`.
    pub fn products(&self) -> Vec<Real> {
        self.x.iter().zip(&self.s).chain(self.w.iter().zip(&self.y)).map(|(a, b)| a * b).collect()
    }

    pub fn primal(&self) -> Vec<Real> {
        self.x.iter().chain(&self.w).cloned().collect()
    }

    /// `log_t` of every coordinate, as doubles.
    pub fn log_coords(&self, t: &Real) -> Vec<f64> {
        let l = t.log2();
        self.coords().map(|v| v.log2() / l).collect()
    }

    /// `z + α Δz` without any positivity check.
    pub fn moved(&self, dz: &Direction, alpha: &Real) -> PDPoint {
        let step = |a: &[Real], d: &[Real]| a.iter().zip(d).map(|(v, dv)| v + &(alpha * dv)).collect();
        PDPoint { x: step(&self.x, &dz.dx), w: step(&self.w, &dz.dw), s: step(&self.s, &dz.ds), y: step(&self.y, &dz.dy) }
    }

    pub fn is_positive(&self) -> bool {
        self.coords().all(Real::is_positive)
    }

    /// Relative primal and dual infeasibility:
    /// `‖Ax + w − b‖∞ / max(1, ‖b‖∞)` and `‖s − Aᵀy − c‖∞ / max(1, ‖Aᵀy‖∞)`.
    pub fn feasibility_residuals(&self, lp: &RealLP) -> (f64, f64) {
        let p = self.prec();
        let ax = lp.a.mul_vec(&self.x);
        let rp: Vec<Real> = ax.iter().zip(&self.w).zip(&lp.b).map(|((a, w), b)| a + w - b).collect();
        let aty = lp.a.transpose_mul_vec(&self.y);
        let rd: Vec<Real> = self.s.iter().zip(&aty).zip(&lp.c).map(|((s, a), c)| s - a - c).collect();
        let one = Real::one(p);
        let bp = inf_norm(&lp.b).max(&one);
        let bd = inf_norm(&aty).max(&inf_norm(&self.s)).max(&one);
        ((inf_norm(&rp) / bp).to_f64(), (inf_norm(&rd) / bd).to_f64())
    }
}

/// Newton direction `Δz = (Δx, Δw, Δs, Δy)`.
#[derive(Clone, Debug)]
pub struct Direction {
    pub dx: Vec<Real>,
    pub dw: Vec<Real>,
    pub ds: Vec<Real>,
    pub dy: Vec<Real>,
}

impl Direction {
    pub fn zero_like(z: &PDPoint) -> Self {
        let p = z.prec();
        let zeros = |k: usize| vec![Real::zero(p); k];
        Direction { dx: zeros(z.n()), dw: zeros(z.m()), ds: zeros(z.n()), dy: zeros(z.m()) }
    }

    /// `⟨Δx, Δs⟩ + ⟨Δw, Δy⟩`.
    pub fn cross(&self) -> Real {
        dot(&self.dx, &self.ds) + dot(&self.dw, &self.dy)
    }

    pub fn is_zero(&self) -> bool {
        self.dx.iter().chain(&self.dw).chain(&self.ds).chain(&self.dy).all(Real::is_zero)
    }
}

/// `μ̄(z) = (⟨x, s⟩ + ⟨w, y⟩) / N`.
pub fn duality_measure(z: &PDPoint) -> Real {
    let total = dot(&z.x, &z.s) + dot(&z.w, &z.y);
    total / Real::from_i64(z.dim() as i64, z.prec())
}

/// Wide neighborhood: every product `≥ (1 − θ) μ̄(z)`, all coordinates positive.
pub fn in_wide_neighborhood(z: &PDPoint, theta: f64) -> bool {
    if !z.is_positive() {
        return false;
    }
    let p = z.prec();
    let floor = duality_measure(z) * (Real::one(p) - Real::from_f64(theta, p));
    z.products().iter().all(|v| *v >= floor)
}
