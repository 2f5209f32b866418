//! The experiments behind each command.

use fracode::analysis::{
    check_comparison, fit_decay_exponent, laplace_check, oscillator_closed_form, relative_gap,
    ComparisonCase,
};
use fracode::catalog::{self, RhsParams};
use fracode::fode::{existence_horizon, picard_solve, step_solve, FodeProblem, SolveReport};
use fracode::mittag_leffler::{ml, ml_e_samples, MlEvaluator};
use fracode::{suite, Error, GridFunction};

use crate::config::{Command, ConfigError, Method, Phi, RunConfig};
use crate::table::{fmt_f64, Table};

/// A table plus whether the run reached its goal. Incomplete runs still
/// carry everything computed up to the failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub table: Table,
    pub incomplete: Option<String>,
}

impl Outcome {
    fn complete(table: Table) -> Self {
        Outcome {
            table,
            incomplete: None,
        }
    }
}

/// Which configuration field a library error is about.
fn field_of(e: &Error) -> &'static str {
    match e {
        Error::OutOfRange { name, .. } => match *name {
            "x" | "t" | "t_lo" => "t_end",
            n => n,
        },
        Error::BadStep(_) => "h",
        Error::GridTooShort { .. } | Error::LaplaceTruncation(_) | Error::EmptyWindow { .. } => {
            "t_end"
        }
        Error::BeyondHorizon { .. } => "t_end",
        Error::ZeroLambda => "lambda",
        Error::Dimension { .. } => "v0",
        Error::NotSubSolution { .. } => "delta",
        Error::NotMonotone { .. } => "lambda",
        _ => "config",
    }
}

fn lib(e: Error) -> ConfigError {
    ConfigError::new(field_of(&e), e.to_string())
}

fn positive(field: &str, x: f64) -> Result<f64, ConfigError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(ConfigError::new(
            field,
            format!("{x} must be positive and finite"),
        ))
    }
}

fn finite(field: &str, x: f64) -> Result<f64, ConfigError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ConfigError::new(field, format!("{x} must be finite")))
    }
}

/// Validated parameters with command defaults filled in.
struct Params {
    cmd: Command,
    gamma: f64,
    h: f64,
    t_end: f64,
    lambda: f64,
    c: f64,
    v0: f64,
    p0: f64,
    q0: f64,
    rhs: &'static catalog::RhsCatalogEntry,
    method: Method,
    tol: f64,
    max_iter: usize,
    delta: f64,
    phi: Phi,
}

impl Params {
    fn resolve(cfg: &RunConfig) -> Result<Self, ConfigError> {
        let cmd = cfg.command.ok_or_else(|| {
            ConfigError::new(
                "command",
                "missing (one of ml, solve, linear, compare, oscillator, laplace, suite)",
            )
        })?;
        let gamma = cfg.gamma.unwrap_or(if cmd == Command::Oscillator {
            0.25
        } else {
            0.5
        });
        if cmd != Command::Ml && !(gamma > 0.0 && gamma < 1.0) {
            return Err(ConfigError::new(
                "gamma",
                format!("{gamma} is outside (0, 1)"),
            ));
        }
        let (h, t_end) = match cmd {
            Command::Oscillator => (1.0 / 64.0, 200.0),
            Command::Laplace => (1.0 / 65536.0, 1.0),
            _ => (1.0 / 1024.0, 1.0),
        };
        let h = positive("h", cfg.step().unwrap_or(h))?;
        let t_end = positive("t_end", cfg.horizon().unwrap_or(t_end))?;
        let name = cfg.rhs.as_deref().unwrap_or("neg_identity");
        let rhs = catalog::lookup(name).ok_or_else(|| {
            ConfigError::new(
                "rhs",
                format!(
                    "unknown {name:?} (available: {})",
                    catalog::names().join(", ")
                ),
            )
        })?;
        let tol = positive("tol", cfg.tol.unwrap_or(1e-10))?;
        let max_iter = cfg.max_iter.unwrap_or(200);
        if max_iter == 0 {
            return Err(ConfigError::new("max_iter", "must be at least 1"));
        }
        let delta = cfg.delta.unwrap_or(0.5);
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(ConfigError::new(
                "delta",
                format!("{delta} must be nonnegative"),
            ));
        }
        let lambda = cfg
            .lambda
            .unwrap_or(if cmd == Command::Compare { 1.0 } else { -1.0 });
        Ok(Params {
            cmd,
            gamma,
            h,
            t_end,
            lambda: finite("lambda", lambda)?,
            c: finite(
                "c",
                cfg.c
                    .unwrap_or(if cmd == Command::Compare { 0.5 } else { 0.0 }),
            )?,
            v0: finite("v0", cfg.v0.unwrap_or(1.0))?,
            p0: finite("p0", cfg.p0.unwrap_or(0.0))?,
            q0: finite("q0", cfg.q0.unwrap_or(1.0))?,
            rhs,
            method: cfg.method.unwrap_or_default(),
            tol,
            max_iter,
            delta,
            phi: cfg.phi.unwrap_or_default(),
        })
    }

    fn rhs_params(&self) -> RhsParams {
        RhsParams {
            lambda: self.lambda,
            c: self.c,
        }
    }

    fn grid_len(&self) -> Result<usize, ConfigError> {
        GridFunction::steps_for(self.h, self.t_end).map_err(lib)
    }
}

fn header(cfg: &RunConfig, cmd: Command, params: &[(&str, String)], columns: Vec<String>) -> Table {
    let mut t = Table::new(columns);
    t.meta("fracode", env!("CARGO_PKG_VERSION"));
    t.meta("command", cmd);
    if !cfg.reproducible {
        t.meta(
            "timestamp",
            chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        );
    }
    for (k, v) in params {
        t.meta(*k, v);
    }
    t
}

fn f(x: f64) -> String {
    fmt_f64(x)
}

/// Runs the configured command.
pub fn run(cfg: &RunConfig) -> Result<Outcome, ConfigError> {
    let p = Params::resolve(cfg)?;
    match p.cmd {
        Command::Ml => ml_cmd(cfg),
        Command::Solve => solve(cfg, &p),
        Command::Linear => linear(cfg, &p),
        Command::Compare => compare(cfg, &p),
        Command::Oscillator => oscillator(cfg, &p),
        Command::Laplace => laplace(cfg, &p),
        Command::Suite => suite_cmd(cfg),
    }
}

fn ml_cmd(cfg: &RunConfig) -> Result<Outcome, ConfigError> {
    let alpha = cfg.alpha.unwrap_or(1.0);
    let beta = cfg.beta.unwrap_or(1.0);
    let z = cfg
        .z
        .ok_or_else(|| ConfigError::new("z", "missing (the argument of E_{alpha,beta})"))?;
    let value = ml(alpha, beta, finite("z", z)?).map_err(lib)?;
    let mut t = header(
        cfg,
        Command::Ml,
        &[("alpha", f(alpha)), ("beta", f(beta))],
        vec!["z".into(), "value".into()],
    );
    t.push(vec![z, value]);
    Ok(Outcome::complete(t))
}

fn solve(cfg: &RunConfig, p: &Params) -> Result<Outcome, ConfigError> {
    let dim = p.rhs.dim;
    let v0 = match dim {
        1 => vec![p.v0],
        // two-component entries are (q, p) systems
        _ => vec![p.q0, p.p0],
    };
    let problem =
        FodeProblem::new(p.gamma, p.rhs.build(p.rhs_params()), v0.clone()).map_err(lib)?;
    p.grid_len()?;
    let bounds = p.rhs.bounds(p.rhs_params(), &v0, 1.0, p.t_end);
    let t1 = problem
        .clone()
        .with_bounds(bounds)
        .and_then(|b| existence_horizon(&b))
        .ok();
    let report: SolveReport = match p.method {
        Method::Step => step_solve(&problem, p.h, p.t_end),
        Method::Picard => picard_solve(&problem, p.h, p.t_end, p.tol, p.max_iter),
    }
    .map_err(lib)?;

    let mut columns = vec!["t".to_string()];
    if dim == 1 {
        columns.push("v".into());
    } else {
        columns.extend((0..dim).map(|i| format!("v_{i}")));
    }
    let mut params = vec![
        ("gamma", f(p.gamma)),
        ("h", f(p.h)),
        ("t_end", f(p.t_end)),
        ("rhs", p.rhs.name.to_string()),
        ("v0", v0.iter().map(|&x| f(x)).collect::<Vec<_>>().join(" ")),
        ("method", format!("{:?}", p.method).to_lowercase()),
    ];
    if p.rhs.name == "linear" {
        params.push(("lambda", f(p.lambda)));
        params.push(("c", f(p.c)));
    }
    if p.method == Method::Picard {
        params.push(("tol", f(p.tol)));
        params.push(("max_iter", p.max_iter.to_string()));
        params.push(("picard_iters", report.picard_iters.unwrap_or(0).to_string()));
    }
    if let Some(t1) = t1 {
        params.push(("existence_horizon_a1", f(t1)));
    }
    params.push(("max_residual", f(report.max_residual)));
    let mut t = header(cfg, Command::Solve, &params, columns);
    let g = &report.solution;
    for k in 0..g[0].len() {
        let mut row = vec![g[0].t(k)];
        row.extend(g.iter().map(|c| c.values[k]));
        t.push(row);
    }
    let incomplete = if report.blowup_suspected {
        Some(format!(
            "blow-up suspected: solution left the representable range after t = {}",
            f(report.t_end())
        ))
    } else if !report.converged {
        Some(format!(
            "Picard iteration did not reach tol = {} in {} iterations",
            f(p.tol),
            p.max_iter
        ))
    } else {
        None
    };
    if let Some(why) = &incomplete {
        t.meta("status", why);
    }
    Ok(Outcome {
        table: t,
        incomplete,
    })
}

fn linear(cfg: &RunConfig, p: &Params) -> Result<Outcome, ConfigError> {
    let n = p.grid_len()?;
    let b = GridFunction::constant(p.h, n, p.c).map_err(lib)?;
    let v = fracode::fode::solve_linear(p.gamma, p.lambda, &b, p.v0).map_err(lib)?;
    // v = v₀ E_γ(λt^γ) + c t^γ E_{γ,γ+1}(λt^γ)
    let e = ml_e_samples(p.gamma, p.lambda, p.h, n).map_err(lib)?;
    let forced = MlEvaluator::new(p.gamma, p.gamma + 1.0).map_err(lib)?;
    let mut t = header(
        cfg,
        Command::Linear,
        &[
            ("gamma", f(p.gamma)),
            ("h", f(p.h)),
            ("t_end", f(p.t_end)),
            ("lambda", f(p.lambda)),
            ("c", f(p.c)),
            ("v0", f(p.v0)),
        ],
        vec!["t".into(), "v".into(), "exact".into(), "error".into()],
    );
    for (k, &ek) in e.iter().enumerate() {
        let s = v.t(k);
        let tg = s.powf(p.gamma);
        let tail = if s == 0.0 {
            0.0
        } else {
            p.c * tg * forced.eval(p.lambda * tg).map_err(lib)?
        };
        let exact = p.v0 * ek + tail;
        t.push(vec![s, v.values[k], exact, (v.values[k] - exact).abs()]);
    }
    Ok(Outcome::complete(t))
}

fn compare(cfg: &RunConfig, p: &Params) -> Result<Outcome, ConfigError> {
    let (g, lambda, c) = (p.gamma, p.lambda, p.c);
    let sub = FodeProblem::scalar(g, move |_, v| lambda * v + c, p.v0 - p.delta).map_err(lib)?;
    let sub_solution = step_solve(&sub, p.h, p.t_end).map_err(lib)?.solution[0].clone();
    let case = ComparisonCase {
        gamma: g,
        sub_solution: sub_solution.clone(),
        sup_problem: FodeProblem::scalar(g, move |_, v| lambda * v + c, p.v0).map_err(lib)?,
    };
    let out = check_comparison(&case, p.t_end, p.h).map_err(lib)?;
    let mut t = header(
        cfg,
        Command::Compare,
        &[
            ("gamma", f(g)),
            ("h", f(p.h)),
            ("t_end", f(p.t_end)),
            ("rhs", format!("{} v + {}", f(lambda), f(c))),
            ("v0", f(p.v0)),
            ("delta", f(p.delta)),
            ("holds", out.holds.to_string()),
            ("max_violation", f(out.max_violation)),
            ("tolerance", f(out.tolerance)),
        ],
        vec!["t".into(), "v1".into(), "v2".into(), "gap".into()],
    );
    let n = sub_solution.len().min(out.v2.len());
    for k in 0..n {
        let (a, b) = (sub_solution.values[k], out.v2.values[k]);
        t.push(vec![sub_solution.t(k), a, b, b - a]);
    }
    let incomplete = (out.checked_until < p.t_end)
        .then(|| format!("comparison only checked until t = {}", f(out.checked_until)));
    Ok(Outcome {
        table: t,
        incomplete,
    })
}

fn oscillator(cfg: &RunConfig, p: &Params) -> Result<Outcome, ConfigError> {
    let n = p.grid_len()?;
    let (q, pm, energy, source) = if p.gamma <= 0.5 {
        let s = oscillator_closed_form(p.gamma, p.p0, p.q0, p.h, n).map_err(lib)?;
        (s.q, s.p, s.energy, "closed_form")
    } else {
        // no closed-form decay statement here; march the system
        let rhs = catalog::lookup("oscillator")
            .expect("shipped entry")
            .build(RhsParams::default());
        let prob = FodeProblem::new(p.gamma, rhs, vec![p.q0, p.p0]).map_err(lib)?;
        let r = step_solve(&prob, p.h, p.t_end).map_err(lib)?;
        let energy = r.solution[0].map(|t, q| {
            let k = (t / p.h).round() as usize;
            0.5 * (q * q + r.solution[1].values[k].powi(2))
        });
        (
            r.solution[0].clone(),
            r.solution[1].clone(),
            energy,
            "step_solve",
        )
    };
    let hi = p.t_end.min(200.0);
    let slope = if hi >= 20.0 {
        fit_decay_exponent(&energy, 10.0, hi).unwrap_or(f64::NAN)
    } else {
        f64::NAN
    };
    let mut t = header(
        cfg,
        Command::Oscillator,
        &[
            ("gamma", f(p.gamma)),
            ("h", f(p.h)),
            ("t_end", f(p.t_end)),
            ("p0", f(p.p0)),
            ("q0", f(p.q0)),
            ("source", source.to_string()),
            ("fit_window", format!("[10, {}]", f(hi))),
            ("expected_slope", f(-2.0 * p.gamma)),
        ],
        vec![
            "t".into(),
            "q".into(),
            "p".into(),
            "E".into(),
            "fit_slope".into(),
        ],
    );
    for k in 0..q.len() {
        t.push(vec![
            q.t(k),
            q.values[k],
            pm.values[k],
            energy.values[k],
            slope,
        ]);
    }
    Ok(Outcome::complete(t))
}

fn laplace(cfg: &RunConfig, p: &Params) -> Result<Outcome, ConfigError> {
    let n = p.grid_len()?;
    let phi = match p.phi {
        Phi::One => GridFunction::constant(p.h, n, 1.0),
        Phi::T => GridFunction::sample(p.h, n, |t| t),
        Phi::Relax => {
            ml_e_samples(p.gamma, p.lambda, p.h, n).and_then(|v| GridFunction::new(0.0, p.h, v))
        }
    }
    .map_err(lib)?;
    let mut t = header(
        cfg,
        Command::Laplace,
        &[
            ("gamma", f(p.gamma)),
            ("h", f(p.h)),
            ("t_end", f(phi.t_end())),
            ("phi", format!("{:?}", p.phi).to_lowercase()),
            ("lambda", f(p.lambda)),
        ],
        vec!["s".into(), "lhs".into(), "rhs".into(), "gap".into()],
    );
    for st in [25.0, 30.0, 40.0, 50.0, 75.0, 100.0] {
        let s = st / phi.t_end();
        let (l, r) = laplace_check(p.gamma, &phi, s).map_err(lib)?;
        t.push(vec![s, l, r, relative_gap(l, r)]);
    }
    Ok(Outcome::complete(t))
}

fn suite_cmd(cfg: &RunConfig) -> Result<Outcome, ConfigError> {
    let report = suite::run_suite();
    let mut t = header(
        cfg,
        Command::Suite,
        &[],
        vec![
            "id".into(),
            "measured".into(),
            "bound".into(),
            "passed".into(),
        ],
    );
    for c in &report.criteria {
        t.meta(
            format!("criterion {}", c.id),
            format!(
                "{} {}: {}",
                c.name,
                if c.passed { "PASS" } else { "FAIL" },
                c.detail
            ),
        );
        t.push(vec![
            c.id as f64,
            c.measured,
            c.bound,
            if c.passed { 1.0 } else { 0.0 },
        ]);
    }
    let failed: Vec<String> = report.failed().map(|c| c.id.to_string()).collect();
    let incomplete =
        (!failed.is_empty()).then(|| format!("criteria failed: {}", failed.join(", ")));
    Ok(Outcome {
        table: t,
        incomplete,
    })
}
