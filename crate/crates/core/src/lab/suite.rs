//! The ten acceptance checks, runnable from the CLI (`lw verify`).

use std::f64::consts::FRAC_PI_2;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::experiments::{experiment_convergence, experiment_curvature, experiment_iterations, instance, start_lambda};
use super::thresholds::min_valid_t;
use crate::error::{Error, Result};
use crate::instances::{build_lw, tropical_rows, tropical_warm_start, LWSpec};
use crate::ipm::{duality_measure, newton_direction, run_ipm, trace_central_path, IPMConfig, Variant};
use crate::numeric::Real;
use crate::puiseux::{det_log_bounds, series_add, series_mul, val, Monomial, MonomialMatrix, PuiseuxSeries};
use crate::trop_path::{
    breakpoints, epsilon0, gamma_count, gamma_of_path, projected_path, standard_grid, trop_curvature_lower_bound, trop_path_point,
    trop_path_w, trop_path_x, verify_membership, MembershipChecker,
};
use crate::tropical::{directed_hausdorff, trop_segment, DirectionSet, Metric, TropPoint, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Skips every run with `t ≥ 10¹²`.
    Fast,
    Full,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

const GOLDEN_R2: &str = include_str!("../../tests/golden/min_valid_t_r2_half.txt");

fn qq(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

fn pow2(j: usize) -> i64 {
    1i64 << j
}

fn table_columns(j: usize) -> Vec<(i64, i64)> {
    // λ = (4k + c)/2^j with k even, c ∈ {0,2,4,6,8}, restricted to λ ≤ 2
    let mut out = Vec::new();
    let mut k = 0;
    while 4 * k <= 2 * pow2(j) {
        for c in [0, 2, 4, 6, 8] {
            if 4 * k + c <= 2 * pow2(j) {
                out.push((k, c));
            }
        }
        k += 2;
    }
    out
}

/// Closed forms `j + num/2^j` for (x_{2j+1}, x_{2j+2}, w_{3j}, w_{3j+1}, w_{3j+2}).
fn table_entry(j: usize, k: i64, c: i64) -> [Q; 5] {
    let e = |a: i64| Q::from_integer((j as i64).into()) + qq(2 * k + a, pow2(j));
    match c {
        0 => [e(0), e(1), e(0), e(2), e(1)],
        2 => [e(2), e(1), e(2), e(2), e(1)],
        4 => [e(2), e(3), e(4), e(2), e(3)],
        6 => [e(4), e(3), e(4), e(4), e(3)],
        _ => [e(4), e(5), e(4), e(6), e(5)],
    }
}

fn c1_table() -> Result<(bool, String)> {
    let mut checked = 0;
    for r in 2..=6 {
        for j in 1..r {
            for (k, c) in table_columns(j) {
                let l = qq(4 * k + c, pow2(j));
                let x = trop_path_x(r, &l).finite_values().expect("finite");
                let w = trop_path_w(r, &l).finite_values().expect("finite");
                let got = [x[2 * j].clone(), x[2 * j + 1].clone(), w[3 * j - 1].clone(), w[3 * j].clone(), w[3 * j + 1].clone()];
                if got != table_entry(j, k, c) {
                    return Ok((false, format!("r={r} j={j} lambda={l}: {got:?}")));
                }
                checked += 1;
            }
        }
    }
    Ok((true, format!("{checked} columns exact")))
}

fn c2_staircase() -> Result<(bool, String)> {
    let (zero, two) = (Q::zero(), Q::from_integer(2.into()));
    for r in 2..=8 {
        let proj = projected_path(r, &zero, &two, &[2 * r - 2, 2 * r - 1])?;
        let dirs = proj.directions().ok_or_else(|| Error::NonMonotone("staircase".into()))?;
        let want = 1usize << (r - 1);
        let alternating = dirs.windows(2).all(|w| w[0].is_disjoint(&w[1]) && !w[0].is_empty() && !w[1].is_empty());
        let g_proj = gamma_of_path(&proj)?;
        let g_full = gamma_count(&breakpoints(r, &zero, &two)?)?;
        if dirs.len() != want || !alternating || g_proj < want || g_full < want {
            return Ok((false, format!("r={r}: pieces {} gamma {g_proj}/{g_full}, want {want}", dirs.len())));
        }
    }
    Ok((true, "r=2..8 staircases have 2^(r-1) alternating pieces".into()))
}

fn c3_trop_curvature() -> Result<(bool, String)> {
    for r in 3..=8 {
        let b = trop_curvature_lower_bound(r, &standard_grid(r)?)?;
        if b.half_pis() != (1 << (r - 2)) - 1 {
            return Ok((false, format!("r={r}: {} x pi/2", b.half_pis())));
        }
    }
    Ok((true, "(2^(r-2)-1) pi/2 for r=3..8".into()))
}

fn dyadic(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Q {
    qq(rng.gen_range(lo * den..=hi * den), den)
}

fn scaled(q: &Q, d: i64) -> i64 {
    let v = q * Q::from_integer(d.into());
    assert!(v.is_integer(), "{q} is not a multiple of 1/{d}");
    v.to_integer().try_into().expect("small exponent")
}

/// Tropical primal rows with every exponent scaled by `d` to an integer.
struct IntRows {
    rows: Vec<(usize, i64, Vec<(usize, i64)>)>,
}

impl IntRows {
    fn new(r: usize, d: i64) -> Result<Self> {
        let rows = tropical_rows(&build_lw(LWSpec::new(r)?)?)?
            .into_iter()
            .map(|row| {
                let c = row.constant.finite().map_or(i64::MIN / 4, |v| scaled(v, d));
                (row.lhs, c, row.terms.iter().map(|(l, e)| (*l, scaled(e, d))).collect())
            })
            .collect();
        Ok(IntRows { rows })
    }

    /// Largest feasible slacks, or `None` if some row is violated.
    fn slacks(&self, lambda: i64, x: &[i64]) -> Option<Vec<i64>> {
        if x[0] > lambda {
            return None;
        }
        let mut w = Vec::with_capacity(self.rows.len());
        for (lhs, c, terms) in &self.rows {
            let bound = terms.iter().map(|(l, e)| x[*l] + e).fold(*c, i64::max);
            if x[*lhs] > bound {
                return None;
            }
            w.push(bound);
        }
        Some(w)
    }
}

fn c4_barycenter(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0usize;
    for r in [2usize, 3] {
        let d = 1i64 << r;
        let rows = IntRows::new(r, d)?;
        let checker = MembershipChecker::new(r)?;
        for _ in 0..20 {
            let lambda = dyadic(&mut rng, -1, 3, d);
            if !verify_membership(r, &lambda)?.ok() {
                return Ok((false, format!("path point r={r} lambda={lambda} fails membership")));
            }
            let p = trop_path_point(r, &lambda);
            let px: Vec<i64> = p.x.finite_values().expect("finite").iter().map(|v| scaled(v, d)).collect();
            let pw: Vec<i64> = p.w.finite_values().expect("finite").iter().map(|v| scaled(v, d)).collect();
            let l = scaled(&lambda, d);
            let mut accepted = 0;
            let mut attempts = 0;
            while accepted < 10_000 {
                attempts += 1;
                if attempts > 10_000_000 {
                    return Ok((false, format!("sampler starved at r={r} lambda={lambda}")));
                }
                let up = if rng.gen_bool(0.5) { d } else { 0 };
                let x: Vec<i64> = px.iter().map(|v| v + rng.gen_range(-3 * d..=up)).collect();
                let Some(w) = rows.slacks(l, &x) else { continue };
                accepted += 1;
                if x.iter().zip(&px).any(|(a, b)| a > b) || w.iter().zip(&pw).any(|(a, b)| a > b) {
                    return Ok((false, format!("feasible sample above the path at r={r} lambda={lambda}")));
                }
                if accepted <= 50 {
                    // cross-check the integer rows against the exact checker
                    let xq = TropPoint::from_finite(x.iter().map(|v| qq(*v, d)).collect())?;
                    let wq = TropPoint::from_finite(w.iter().map(|v| qq(*v, d)).collect())?;
                    if !checker.check(&lambda, &xq, &wq)?.ok() {
                        return Ok((false, "integer rows disagree with the exact checker".into()));
                    }
                }
            }
            total += accepted;
        }
    }
    Ok((true, format!("{total} feasible samples below the path")))
}

fn c5_convergence(level: Level) -> Result<(bool, String)> {
    let ts: &[&str] = if level == Level::Full { &["1e4", "1e8", "1e16"] } else { &["1e4", "1e8"] };
    let lambdas = [qq(2, 1), qq(3, 2), qq(1, 1), qq(1, 2), qq(0, 1)];
    let recs = experiment_convergence(2, ts, &lambdas, 0.5, Some(1024))?;
    let devs: Vec<f64> = recs.iter().map(|r| r.max_deviation.unwrap_or(f64::INFINITY)).collect();
    let within = recs.iter().all(|r| r.pass);
    let decreasing = devs.windows(2).all(|w| w[1] < w[0]);
    let last = recs.last().expect("nonempty");
    let slack = last.max_deviation.unwrap_or(f64::INFINITY) <= 0.9 * last.budget.unwrap_or(0.0);
    Ok((within && decreasing && slack, format!("max deviations {devs:.4?}, budget at t={}: {:.3}", last.t, last.budget.unwrap_or(f64::NAN))))
}

fn c6_iterations(level: Level) -> Result<(bool, String)> {
    let seg = |r, t| experiment_iterations(r, t, Variant::PredictorCorrector, 0.5, None).map(|(rec, _)| rec.segments.unwrap_or(0));
    let a = seg(2, "1e8")?;
    let mut ok = a >= 2;
    let mut detail = format!("r=2,t=1e8: p={a}");
    if level == Level::Full {
        let ps = [seg(2, "1e12")?, seg(3, "1e12")?, seg(4, "1e12")?];
        ok &= ps[1] >= 4 && ps.windows(2).all(|w| w[0] <= w[1]);
        detail.push_str(&format!("; t=1e12: p(r=2,3,4)={ps:?}"));
    }
    Ok((ok, detail))
}

fn c7_curvature(level: Level) -> Result<(bool, String)> {
    let o = experiment_curvature(3, "1e8", 8, None)?;
    let corner = o.corners.iter().find(|(l, _)| l.is_one()).map(|c| c.1).unwrap_or(f64::NAN);
    let mut ok = o.measured >= 0.9 * FRAC_PI_2 && (corner - FRAC_PI_2).abs() <= 0.15;
    let mut detail = format!("r=3: {:.4} (corner {corner:.4})", o.measured);
    if level == Level::Full {
        let o4 = experiment_curvature(4, "1e12", 8, None)?;
        ok &= o4.measured >= 0.9 * 3.0 * FRAC_PI_2;
        detail.push_str(&format!("; r=4: {:.4}", o4.measured));
    }
    Ok((ok, detail))
}

fn c8_ipm_invariants() -> Result<(bool, String)> {
    let lp = instance(2, "1e8", None)?;
    let p = lp.precision_bits;
    let z0 = tropical_warm_start(LWSpec::new(2)?, &lp.t, &start_lambda(), p)?.point;
    let mut cfg = IPMConfig::new(Variant::PredictorCorrector, Real::one(p));
    cfg.audit = true;
    let traj = run_ipm(&lp, &cfg, z0)?;
    let tol_aff = 2f64.powi(32 - p as i32);
    let mut worst_aff = 0.0f64;
    let mut worst_orth = 0.0f64;
    for (k, w) in traj.points.windows(2).enumerate() {
        let (z, zn) = (&w[0], &w[1]);
        let alpha = Real::from_f64(0.375, p);
        let mid: Vec<Vec<Real>> = [(&z.x, &zn.x), (&z.w, &zn.w), (&z.s, &zn.s), (&z.y, &zn.y)]
            .iter()
            .map(|(a, b)| a.iter().zip(b.iter()).map(|(u, v)| u + &(&alpha * &(v - u))).collect())
            .collect();
        let zm = crate::ipm::PDPoint { x: mid[0].clone(), w: mid[1].clone(), s: mid[2].clone(), y: mid[3].clone() };
        let expect = duality_measure(z) + &alpha * &(duality_measure(zn) - duality_measure(z));
        worst_aff = worst_aff.max(((duality_measure(&zm) - &expect) / &expect).abs().to_f64());
        let goal = if traj.steps[k].phase == crate::ipm::Phase::Predictor { Real::zero(p) } else { duality_measure(z) };
        let d = newton_direction(z, &goal, &lp)?;
        let scale: Real = d.dx.iter().zip(&d.ds).chain(d.dw.iter().zip(&d.dy)).fold(Real::zero(p), |acc, (a, b)| acc + (a * b).abs());
        if !scale.is_zero() {
            worst_orth = worst_orth.max((d.cross().abs() / scale).to_f64());
        }
    }
    let samples = trace_central_path(&lp, &[qq(2, 1), qq(1, 1), qq(0, 1)], None)?;
    let tol = 2f64.powi(-(p as i32) / 4);
    let trace_ok = samples.iter().all(|s| s.residual <= tol && s.primal_residual <= tol && s.dual_residual <= tol);
    let ok = worst_aff <= tol_aff && worst_orth <= tol_aff && trace_ok;
    Ok((ok, format!("{} steps audited; affinity err {worst_aff:.2e}, orthogonality {worst_orth:.2e}, trace ok {trace_ok}", traj.segments())))
}

fn random_series(rng: &mut ChaCha8Rng) -> PuiseuxSeries {
    let k = rng.gen_range(0..4);
    PuiseuxSeries::from_terms((0..k).map(|_| (qq(rng.gen_range(-5..=5), rng.gen_range(1..=3)), qq(rng.gen_range(-12..=12), rng.gen_range(1..=4)))).collect())
}

fn c9_lemmas(seed: u64) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
    for _ in 0..1000 {
        let (f, g) = (random_series(&mut rng), random_series(&mut rng));
        if val(&series_mul(&f, &g)) != val(&f).odot(&val(&g)) || val(&series_add(&f, &g)) > val(&f).oplus(&val(&g)) {
            return Ok((false, format!("valuation is not a homomorphism on {f} and {g}")));
        }
        let (fs, gs) = (series_mul(&f, &f), series_mul(&g, &g));
        if series_add(&fs, &(-&gs)).signum().is_le() && val(&fs) > val(&gs) {
            return Ok((false, "valuation is not monotone".into()));
        }
    }
    let t = Real::parse_decimal("1e6", 256)?;
    for _ in 0..100 {
        let d = rng.gen_range(1..=5);
        let rows = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| {
                        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                        rng.gen_bool(0.85).then(|| Monomial::new(Q::from_integer(sign.into()), qq(rng.gen_range(-8..=8), 4)))
                    })
                    .collect()
            })
            .collect();
        let m = MonomialMatrix::from_rows(rows)?;
        let b = det_log_bounds(&m, &t)?;
        let det = m.determinant()?;
        if det.is_zero() {
            continue;
        }
        let lv = det.evaluate(&t, 256)?.abs().log2() / t.log2();
        if lv > b.upper + 1e-9 || (b.lower_guaranteed && lv < b.lower - 1e-9) {
            return Ok((false, format!("log det {lv} outside [{}, {}]", b.lower, b.upper)));
        }
    }
    for _ in 0..1000 {
        let d = rng.gen_range(1..=8);
        let u: Vec<Q> = (0..d).map(|_| qq(rng.gen_range(-20..=20), 2)).collect();
        let v: Vec<Q> = u.iter().map(|x| x + qq(rng.gen_range(0..=20), 2)).collect();
        let seg = trop_segment(&TropPoint::from_finite(u)?, &TropPoint::from_finite(v)?)?;
        let Some(dirs) = seg.directions() else {
            return Ok((false, "segment piece is not a 0/1 direction".into()));
        };
        if !dirs.windows(2).all(|w: &[DirectionSet]| w[0].is_strict_subset(&w[1])) {
            return Ok((false, "segment directions are not a strict chain".into()));
        }
    }
    for t in [1e2f64, 1e6] {
        let lt = t.ln();
        let budget = 2f64.ln() / lt + 1e-9;
        for _ in 0..100 {
            let d = rng.gen_range(2..=5);
            let u: Vec<f64> = (0..d).map(|_| t.powf(rng.gen_range(-3.0..3.0))).collect();
            let v: Vec<f64> = (0..d).map(|_| t.powf(rng.gen_range(-3.0..3.0))).collect();
            let logp = |x: &[f64]| TropPoint::from_finite(x.iter().map(|c| c.ln() / lt).collect()).expect("nonempty");
            let seg = trop_segment(&logp(&u), &logp(&v))?;
            let sample: Vec<TropPoint<f64>> = (0..=200)
                .map(|k| {
                    let s = k as f64 / 200.0;
                    logp(&u.iter().zip(&v).map(|(a, b)| (1.0 - s) * a + s * b).collect::<Vec<_>>())
                })
                .collect();
            let dist = directed_hausdorff(&sample, &seg, Metric::Inf)?;
            if dist.finite().map_or(true, |x| *x > budget) {
                return Ok((false, format!("log-image of a segment is {dist:?} from its tropical segment at t={t}")));
            }
            // each tropical vertex has a real preimage within log_t 2
            for vert in seg.points() {
                let vf = vert.finite_values().expect("finite");
                let lu = logp(&u).finite_values().expect("finite");
                let lv = logp(&v).finite_values().expect("finite");
                let a = vf.iter().zip(&lu).map(|(x, y)| x - y).fold(f64::INFINITY, f64::min);
                let b = vf.iter().zip(&lv).map(|(x, y)| x - y).fold(f64::INFINITY, f64::min);
                let (wa, wb) = (t.powf(a), t.powf(b));
                let point: Vec<f64> = u.iter().zip(&v).map(|(x, y)| (wa * x + wb * y) / (wa + wb)).collect();
                let shift = (wa.max(wb)).ln() / lt;
                let gap = logp(&point).finite_values().expect("finite").iter().zip(&vf).map(|(x, y)| (x - (y - shift)).abs()).fold(0.0, f64::max);
                if gap > budget {
                    return Ok((false, format!("tropical vertex without preimage: {gap}")));
                }
            }
        }
    }
    Ok((true, "valuation, determinant bracket, segment chains and log-limits hold".into()))
}

fn c10_thresholds() -> Result<(bool, String)> {
    let golden: BigInt = GOLDEN_R2.trim().parse().map_err(|_| Error::Parse("golden min_valid_t".into()))?;
    let got = min_valid_t(2, &qq(1, 2))?;
    let mut ok = got == golden;
    for r in 2..=8 {
        ok &= epsilon0(r)? == Q::new(BigInt::one(), BigInt::from(3) << (r - 1));
    }
    let digits = got.to_string().len();
    Ok((ok, format!("min_valid_t(2, 1/2) has {digits} digits")))
}

pub const CRITERIA: [&str; 10] = [
    "table closed forms",
    "staircase and gamma",
    "tropical curvature count",
    "barycenter property",
    "convergence bound",
    "iteration lower bound",
    "classical curvature",
    "ipm invariants",
    "puiseux and metric lemmas",
    "threshold formulas",
];

/// Runs one check by number (1-based).
pub fn run_criterion(id: usize, level: Level, seed: u64) -> CriterionResult {
    let out = match id {
        1 => c1_table(),
        2 => c2_staircase(),
        3 => c3_trop_curvature(),
        4 => c4_barycenter(seed),
        5 => c5_convergence(level),
        6 => c6_iterations(level),
        7 => c7_curvature(level),
        8 => c8_ipm_invariants(),
        9 => c9_lemmas(seed),
        10 => c10_thresholds(),
        _ => Err(Error::InvalidArgument(format!("no criterion {id}"))),
    };
    let (pass, detail) = out.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionResult { id, name: CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), pass, detail }
}

pub fn verify_suite(level: Level, seed: u64) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run_criterion(id, level, seed)).collect()
}
