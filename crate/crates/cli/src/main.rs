//! `lw` — the long-and-winding lab.

mod table;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use num_traits::ToPrimitive;
use clap::{Args, Parser, Subcommand, ValueEnum};
use lw_core::instances::{build_lw, lp_to_csv, lp_to_json, tropical_warm_start, LWSpec};
use lw_core::ipm::{duality_measure, run_ipm, trace_central_path, IPMConfig, Trajectory, Variant};
use lw_core::lab::{
    convergence_budget, delta_bound, experiment_convergence, experiment_curvature, instance, min_valid_t, records_to_csv, run_criterion,
    threshold_met, two_n, verify_suite, CellRecord, Level, Report, TOOL_VERSION,
};
use lw_core::numeric::{decimal_digits, Real};
use lw_core::puiseux::{eta0_lw, parse_q};
use lw_core::trop_path::{
    breakpoints, epsilon0, gamma_count, gamma_of_path, projected_path, standard_grid, trop_curvature_lower_bound, trop_path_point,
};
use lw_core::tropical::Q;
use lw_core::Error;
use serde_json::{json, Value};

use table::Table;

#[derive(Parser)]
#[command(name = "lw", version, about = "Tropical and numeric central paths of the long and winding LPs")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Working precision; default grows with r and log2 t.
    #[arg(long, global = true)]
    precision_bits: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Export LW(r), symbolically or evaluated at t.
    Gen {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: Option<String>,
    },
    /// Exact tropical central path (x, w, s, y) on a λ grid.
    TropPath {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        range: Range,
        /// Grid step; without it, the path vertices are listed.
        #[arg(long)]
        step: Option<String>,
    },
    /// Minimal number of tropical segments of the path.
    Gamma {
        #[arg(long)]
        r: usize,
        #[command(flatten)]
        range: Range,
        /// `last-pair` projects onto (x_{2r-1}, x_{2r}).
        #[arg(long)]
        project: Option<String>,
    },
    /// Weak tropical angles on the grid 4k/2^{r-1}.
    TropCurvature {
        #[arg(long)]
        r: usize,
    },
    RunIpm(RunIpm),
    /// Follow the numeric central path through μ = t^λ.
    TraceCp {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: String,
        #[command(flatten)]
        range: Range,
        #[arg(long, default_value_t = 9)]
        samples: usize,
        #[arg(long)]
        tol: Option<f64>,
    },
    /// d_∞ distance between log_t of the central path and its tropicalization.
    Convergence {
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',', default_value = "1e4,1e8,1e16")]
        t: Vec<String>,
        #[arg(long, value_delimiter = ',', default_value = "2,3/2,1,1/2,0")]
        lambdas: Vec<String>,
        #[arg(long, default_value_t = 0.5)]
        theta: f64,
    },
    /// Polygonal curvature of the primal central path.
    Curvature {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        t: String,
        #[arg(long, default_value_t = 8)]
        refine: usize,
    },
    /// Exact thresholds and error budgets.
    Thresholds {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value = "1/2")]
        theta: String,
        #[arg(long)]
        t: Option<String>,
    },
    /// The acceptance checks.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
        /// Run a single criterion (1-10).
        #[arg(long)]
        criterion: Option<usize>,
    },
}

#[derive(Args)]
struct Range {
    #[arg(long, default_value = "0")]
    lambda_from: String,
    #[arg(long, default_value = "2")]
    lambda_to: String,
}

/// Run an interior point method on LW(r) at t.
#[derive(Args)]
struct RunIpm {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    t: String,
    #[arg(long, default_value_t = 0.5)]
    theta: f64,
    #[arg(long, default_value = "pc")]
    variant: String,
    /// `t^a`: start on the warm-started central path with μ ≥ t^a.
    #[arg(long, default_value = "t^2")]
    mu_start: String,
    /// `t^a` or a decimal.
    #[arg(long, default_value = "1")]
    mu_end: String,
    #[arg(long)]
    max_iters: Option<usize>,
    /// Per-iteration CSV.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug)]
enum Fail {
    Core(Error),
    Config(String),
    Assertion(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Core(e)
    }
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Core(e) => e.exit_code() as u8,
            Fail::Config(_) => 2,
            Fail::Assertion(_) => 1,
        }
    }
}

impl std::fmt::Display for Fail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Fail::Core(e) => write!(f, "{e}"),
            Fail::Config(s) | Fail::Assertion(s) => f.write_str(s),
        }
    }
}

type Res<T> = Result<T, Fail>;

/// What a command produced.
enum Output {
    Table(Table),
    Records(Vec<CellRecord>, Value),
    Json(Value),
    Text(String),
    /// Table plus the number of failed checks.
    Verdict(Table, usize),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&cli, o)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("lw: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn emit(cli: &Cli, out: Output) -> Res<()> {
    let text = match (out, cli.format) {
        (Output::Table(t), Some(Format::Json)) => serde_json::to_string_pretty(&t.to_json()).unwrap(),
        (Output::Table(t), _) => t.to_csv().map_err(Fail::Config)?,
        (Output::Records(r, config), f) => {
            let report = Report::new(config, r);
            let s = match f {
                Some(Format::Csv) => records_to_csv(&report.records)?,
                _ => report.to_json(),
            };
            write(cli, &s)?;
            return match report.all_pass() {
                true => Ok(()),
                false => Err(Fail::Assertion("a record failed its check".into())),
            };
        }
        (Output::Json(v), _) => serde_json::to_string_pretty(&v).unwrap(),
        (Output::Text(s), _) => s,
        (Output::Verdict(t, failed), _) => {
            emit(cli, Output::Table(t))?;
            return match failed {
                0 => Ok(()),
                k => Err(Fail::Assertion(format!("{k} criteria failed"))),
            };
        }
    };
    write(cli, &text)
}

fn write(cli: &Cli, text: &str) -> Res<()> {
    let text = if text.ends_with('\n') { text.to_string() } else { format!("{text}\n") };
    match &cli.out {
        Some(p) => fs::write(p, text).map_err(|e| Fail::Config(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn rat(s: &str) -> Res<Q> {
    Ok(parse_q(s)?)
}

fn range(r: &Range) -> Res<(Q, Q)> {
    let (a, b) = (rat(&r.lambda_from)?, rat(&r.lambda_to)?);
    if a >= b {
        return Err(Fail::Config(format!("empty lambda range [{a}, {b}]")));
    }
    Ok((a, b))
}

fn run(cli: &Cli) -> Res<Output> {
    let prec = cli.precision_bits;
    match &cli.cmd {
        Cmd::Gen { r, t } => {
            let lp = build_lw(LWSpec::new(*r)?)?;
            let numeric = match t {
                Some(t) => Some(instance(*r, t, prec)?),
                None => None,
            };
            Ok(match cli.format {
                Some(Format::Csv) => Output::Text(lp_to_csv(&lp, numeric.as_ref())),
                _ => Output::Json(lp_to_json(&lp, numeric.as_ref())),
            })
        }
        Cmd::TropPath { r, range: rg, step } => {
            LWSpec::new(*r)?;
            let (a, b) = range(rg)?;
            let lambdas = match step {
                Some(s) => grid(&a, &b, &rat(s)?)?,
                None => {
                    let d = breakpoints(*r, &a, &b)?;
                    d.lambdas.clone()
                }
            };
            Ok(Output::Table(table::trop_path(*r, &lambdas)))
        }
        Cmd::Gamma { r, range: rg, project } => {
            let (a, b) = range(rg)?;
            let d = breakpoints(*r, &a, &b)?;
            let (pieces, gamma, what) = match project.as_deref() {
                None => (d.directions.len(), gamma_count(&d)?, "full"),
                Some("last-pair") => {
                    if *r < 1 {
                        return Err(Fail::Config("r must be positive".into()));
                    }
                    let p = projected_path(*r, &a, &b, &[2 * r - 2, 2 * r - 1])?.merge_collinear();
                    (p.num_pieces(), gamma_of_path(&p)?, "last-pair")
                }
                Some(other) => return Err(Fail::Config(format!("unknown projection {other:?}; expected last-pair"))),
            };
            let mut t = Table::new(&["r", "path", "pieces", "gamma", "lower_bound", "breakpoints"]);
            let bps: Vec<String> = d.interior().iter().map(|l| l.to_string()).collect();
            t.push(vec![r.to_string(), what.into(), pieces.to_string(), gamma.to_string(), (1u64 << (r - 1)).to_string(), bps.join(";")]);
            Ok(Output::Table(t))
        }
        Cmd::TropCurvature { r } => {
            let g = standard_grid(*r)?;
            let bound = trop_curvature_lower_bound(*r, &g)?;
            let mut t = Table::new(&["lambda", "angle_half_pis", "angle_rad"]);
            for (l, a) in g[1..g.len() - 1].iter().zip(&bound.angles) {
                t.push(vec![l.to_string(), a.units().to_string(), format!("{}", a.radians())]);
            }
            eprintln!("tropical curvature lower bound: {} x pi/2 = {:.6}", bound.half_pis(), bound.radians());
            Ok(Output::Table(t))
        }
        Cmd::RunIpm(args) => run_ipm_cmd(args, prec),
        Cmd::TraceCp { r, t, range: rg, samples, tol } => {
            let (a, b) = range(rg)?;
            if *samples < 2 {
                return Err(Fail::Config("need at least two samples".into()));
            }
            let step = (&b - &a) / Q::from_integer(((*samples - 1) as i64).into());
            // from large μ down, as an IPM would
            let lambdas: Vec<Q> = grid(&a, &b, &step)?.into_iter().rev().collect();
            let lp = instance(*r, t, prec)?;
            let out = trace_central_path(&lp, &lambdas, *tol)?;
            let n = lp.n();
            let m = lp.m();
            let mut head: Vec<String> = ["lambda", "mu", "residual", "primal_residual", "dual_residual", "newton_steps", "dinf_trop"].map(String::from).to_vec();
            head.extend(coord_names(n, m));
            let mut tab = Table::from_header(head);
            let digits = 30;
            for s in &out {
                let logs = s.z.log_coords(&lp.t);
                let trop = trop_path_point(*r, &s.lambda).full().finite_values().expect("finite path");
                let dev = logs.iter().zip(&trop).map(|(x, q)| (x - q_f64(q)).abs()).fold(0.0, f64::max);
                let mut row = vec![
                    s.lambda.to_string(),
                    s.mu.to_decimal(digits),
                    format!("{:e}", s.residual),
                    format!("{:e}", s.primal_residual),
                    format!("{:e}", s.dual_residual),
                    s.newton_steps.to_string(),
                    dev.to_string(),
                ];
                row.extend(logs.iter().map(|v| v.to_string()));
                tab.push(row);
            }
            Ok(Output::Table(tab))
        }
        Cmd::Convergence { r, t, lambdas, theta } => {
            let ls = lambdas.iter().map(|s| rat(s)).collect::<Res<Vec<_>>>()?;
            let ts: Vec<&str> = t.iter().map(String::as_str).collect();
            let recs = experiment_convergence(*r, &ts, &ls, *theta, prec)?;
            // the budget uses the larger of the two constants N and 2N that appear for it
            let config = json!({"command": "convergence", "r": r, "t": t, "lambdas": lambdas, "theta": theta, "precision_bits": prec,
                "budget": "log_t(2N/(1-theta)) + delta(t)", "budget_constant": "2N"});
            Ok(Output::Records(recs, config))
        }
        Cmd::Curvature { r, t, refine } => {
            let o = experiment_curvature(*r, t, *refine, prec)?;
            for (l, a) in &o.corners {
                eprintln!("corner at lambda={l}: {a:.6} rad");
            }
            eprintln!("curvature {:.6} vs tropical bound {} x pi/2", o.measured, o.tropical_half_pis);
            let config = json!({"command": "curvature", "r": r, "t": t, "refine": refine, "precision_bits": prec});
            Ok(Output::Records(vec![o.record], config))
        }
        Cmd::Thresholds { r, theta, t } => {
            let th = rat(theta)?;
            let big = min_valid_t(*r, &th)?;
            let mut v = json!({
                "r": r,
                "theta": th.to_string(),
                "two_n": two_n(*r),
                "min_valid_t": big.to_string(),
                "min_valid_t_digits": decimal_digits(&big),
                "epsilon0": epsilon0(*r)?.to_string(),
                "eta0": eta0_lw(*r).to_string(),
            });
            if let Some(t) = t {
                let (tv, _) = lw_core::lab::parse_t(*r, t, prec)?;
                let d = delta_bound(*r, &tv)?;
                v["t"] = json!(t);
                v["delta"] = json!(d.value);
                v["delta_guaranteed"] = json!(d.guaranteed);
                v["budget"] = json!(convergence_budget(*r, &tv, q_f64(&th))?);
                v["threshold_met"] = json!(threshold_met(&tv, &big));
            }
            Ok(match cli.format {
                Some(Format::Csv) => Output::Table(Table::key_value(&v)),
                _ => Output::Json(v),
            })
        }
        Cmd::Verify { level, criterion } => {
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Full => Level::Full,
            };
            let results = match criterion {
                Some(id) if (1..=10).contains(id) => vec![run_criterion(*id, level, cli.seed)],
                Some(id) => return Err(Fail::Config(format!("no criterion {id}"))),
                None => verify_suite(level, cli.seed),
            };
            let mut t = Table::new(&["id", "name", "pass", "detail"]);
            for c in &results {
                eprintln!("criterion {:>2} {}  {}: {}", c.id, if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
                t.push(vec![c.id.to_string(), c.name.into(), c.pass.to_string(), c.detail.clone()]);
            }
            Ok(Output::Verdict(t, results.iter().filter(|c| !c.pass).count()))
        }
    }
}

fn run_ipm_cmd(a: &RunIpm, prec: Option<usize>) -> Res<Output> {
    let variant: Variant = a.variant.parse()?;
    let lp = instance(a.r, &a.t, prec)?;
    let p = lp.precision_bits;
    let start = a
        .mu_start
        .strip_prefix("t^")
        .ok_or_else(|| Fail::Config(format!("--mu-start must have the form t^a, got {:?}", a.mu_start)))?;
    // the warm start sits slightly above the requested μ
    let lambda = rat(start)? + Q::new(1.into(), 8.into());
    let mu_end = match a.mu_end.strip_prefix("t^") {
        Some(e) => lp.t_pow(&rat(e)?)?,
        None => Real::parse_decimal(&a.mu_end, p)?,
    };
    let z0 = tropical_warm_start(LWSpec::new(a.r)?, &lp.t, &lambda, p)?.point;
    let mut cfg = IPMConfig::new(variant, mu_end);
    cfg.theta = a.theta;
    cfg.theta_inner = a.theta / 2.0;
    if let Some(m) = a.max_iters {
        cfg.max_iters = m;
    }
    let traj = run_ipm(&lp, &cfg, z0)?;
    if let Some(path) = &a.trace {
        let text = trace_table(&traj, &lp.t, lp.n(), lp.m()).to_csv().map_err(Fail::Config)?;
        fs::write(path, text).map_err(|e| Fail::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    let invocation = format!(
        "lw run-ipm --r {} --t {} --theta {} --variant {variant} --mu-start {} --mu-end {} --precision-bits {p}",
        a.r, a.t, a.theta, a.mu_start, a.mu_end
    );
    let mut rec = CellRecord::new("iterations", a.r, &a.t, invocation);
    rec.variant = Some(variant.to_string());
    rec.theta = Some(a.theta);
    rec.precision_bits = Some(p);
    rec.iterations = Some(traj.iterations);
    rec.segments = Some(traj.segments());
    rec.pass = traj.segments() as u64 >= rec.lower_bound;
    eprintln!("{} iterations, {} segments (2^(r-1) = {})", traj.iterations, traj.segments(), rec.lower_bound);
    let config = json!({"command": "run-ipm", "r": a.r, "t": a.t, "theta": a.theta, "variant": variant.to_string(),
        "mu_start": a.mu_start, "mu_end": a.mu_end, "precision_bits": p, "tool": TOOL_VERSION});
    Ok(Output::Records(vec![rec], config))
}

fn trace_table(traj: &Trajectory, t: &Real, n: usize, m: usize) -> Table {
    let mut head: Vec<String> = ["iter", "phase", "alpha", "mu_bar"].map(String::from).to_vec();
    head.extend(coord_names(n, m));
    let mut tab = Table::from_header(head);
    for (k, z) in traj.points.iter().enumerate() {
        let (phase, alpha) = match k.checked_sub(1).map(|i| &traj.steps[i]) {
            Some(s) => (s.phase.to_string(), s.alpha.to_string()),
            None => ("start".into(), String::new()),
        };
        let mut row = vec![k.to_string(), phase, alpha, duality_measure(z).to_decimal(30)];
        row.extend(z.log_coords(t).iter().map(|v| v.to_string()));
        tab.push(row);
    }
    tab
}

fn coord_names(n: usize, m: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(2 * (n + m));
    for (name, k) in [("x", n), ("w", m), ("s", n), ("y", m)] {
        out.extend((1..=k).map(|i| format!("{name}_{i}")));
    }
    out
}

fn grid(a: &Q, b: &Q, step: &Q) -> Res<Vec<Q>> {
    if *step <= Q::from_integer(0.into()) {
        return Err(Fail::Config("step must be positive".into()));
    }
    let mut out = vec![];
    let mut l = a.clone();
    while l <= *b {
        out.push(l.clone());
        l += step;
        if out.len() > 1_000_000 {
            return Err(Fail::Config("grid too large".into()));
        }
    }
    Ok(out)
}

fn q_f64(q: &Q) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
